"""Gap probabilities of scaled random-matrix ensembles.

Two independent evaluation routes, Fredholm determinants of integral
operators (Nystrom discretization) and Painleve tau-functions (connection
problems plus quadrature), with a verification suite for every identity
relating them.
"""

__version__ = "0.1.0"

from .gap import (  # noqa: F401
    CapabilityError,
    GapQuery,
    bulk_beta1_generating,
    gap_bulk,
    gap_eval,
    gap_hard,
    gap_soft,
    hard_to_soft_limit,
    spacing_density_bulk,
    verify_identities,
    wigner_surmise,
)
from .reports import IdentityReport  # noqa: F401

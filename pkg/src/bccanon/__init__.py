"""Canonical forms for self-adjoint boundary-condition matrix pairs.

Verifies the rank + Gram self-adjointness criterion, synthesizes pairs from
coupling unitaries, recovers the unique coupling unitary of a pair, and
assembles the CS-decomposition-based canonical factorizations for odd
(m = 2n+1) and even (m = 2n) matrix orders, together with rank prediction
and the mixed / coupled / separated classification.
"""

__version__ = "0.1.0"

from .csd import CsFactors, cs_core, cs_decompose, cs_reconstruct
from .errors import (
    BccanonError,
    ConvergenceFailure,
    DimensionMismatch,
    InvalidTarget,
    NotHermitian,
    NotSelfAdjoint,
    NotUnitary,
    OddSize,
    ParseError,
    PartitionMismatch,
    RankDeficient,
    UnsupportedOrder,
)
from .forms import (
    BoundaryPair,
    CanonicalForm,
    Classification,
    EvenCanonicalForm,
    SelfAdjointReport,
    canonical_decompose,
    check_self_adjoint,
    classify,
    construct_even_from_W,
    construct_from_W,
    coupling_block_ranks,
    even_canonical_decompose,
    generate_random_pair,
    predicted_ranks,
    recover_W,
)
from .linalg import (
    DEFAULT_TOL,
    Tolerances,
    haar_unitary,
    hermitian_eigendecomposition,
    numerical_rank,
    random_unitary,
    row_space_angles,
    singular_value_decomposition,
    unitarity_residual,
)
from .structure import (
    EigenBasis,
    OrderSpec,
    Parity,
    eigenbasis,
    even_order_Z,
    even_order_eigenbasis,
    q4_matrix,
    symplectic_matrix,
)

__all__ = [
    "__version__",
    "BccanonError",
    "BoundaryPair",
    "CanonicalForm",
    "Classification",
    "ConvergenceFailure",
    "CsFactors",
    "DEFAULT_TOL",
    "DimensionMismatch",
    "EigenBasis",
    "EvenCanonicalForm",
    "InvalidTarget",
    "NotHermitian",
    "NotSelfAdjoint",
    "NotUnitary",
    "OddSize",
    "OrderSpec",
    "ParseError",
    "Parity",
    "PartitionMismatch",
    "RankDeficient",
    "SelfAdjointReport",
    "Tolerances",
    "UnsupportedOrder",
    "canonical_decompose",
    "check_self_adjoint",
    "classify",
    "construct_even_from_W",
    "construct_from_W",
    "coupling_block_ranks",
    "cs_core",
    "cs_decompose",
    "cs_reconstruct",
    "eigenbasis",
    "even_canonical_decompose",
    "even_order_Z",
    "even_order_eigenbasis",
    "generate_random_pair",
    "haar_unitary",
    "hermitian_eigendecomposition",
    "numerical_rank",
    "predicted_ranks",
    "q4_matrix",
    "random_unitary",
    "recover_W",
    "row_space_angles",
    "singular_value_decomposition",
    "symplectic_matrix",
    "unitarity_residual",
]

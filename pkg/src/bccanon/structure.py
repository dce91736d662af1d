"""Fixed structural matrices underlying the canonical factorizations.

This module builds, in exact arithmetic up to 1/sqrt(2) factors:

* the signed antidiagonal symplectic matrices ``C_m``,
* the explicit unitary eigenbasis ``V`` that diagonalizes ``C_m (+) -C_m``
  for odd order m = 2n+1 (with two layouts, one per parity of n),
* the column transform ``Q4`` appearing in the canonical factorization,
* the fixed right factor ``Z`` of the even-order (m = 2n) canonical form,
  together with the eigenbasis derived from its block rows.

All index formulas are stated 1-based (matching the antidiagonal
definition) and converted to 0-based storage internally.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np
from scipy.linalg import block_diag

from .errors import UnsupportedOrder

__all__ = [
    "Parity",
    "OrderSpec",
    "EigenBasis",
    "symplectic_matrix",
    "eigenbasis",
    "q4_matrix",
    "even_order_Z",
    "even_order_eigenbasis",
]


class Parity(enum.Enum):
    """Case split of the canonical-form construction.

    ODD_N / EVEN_N cover odd order m = 2n+1 (split on the parity of n);
    EVEN_ORDER marks the m = 2n extension.
    """

    ODD_N = "odd_n"
    EVEN_N = "even_n"
    EVEN_ORDER = "even_order"


@dataclass(frozen=True)
class OrderSpec:
    """Matrix order m together with the derived n and construction parity."""

    m: int
    n: int
    parity: Parity

    def __post_init__(self):
        if self.m < 2:
            raise UnsupportedOrder(f"order must be at least 2, got {self.m}")
        if self.parity is Parity.EVEN_ORDER:
            if self.m != 2 * self.n:
                raise UnsupportedOrder(f"even order requires m = 2n, got m={self.m}, n={self.n}")
        else:
            if self.m != 2 * self.n + 1:
                raise UnsupportedOrder(f"odd order requires m = 2n+1, got m={self.m}, n={self.n}")
            expected = Parity.ODD_N if self.n % 2 == 1 else Parity.EVEN_N
            if self.parity is not expected:
                raise UnsupportedOrder(f"n={self.n} implies parity {expected}, got {self.parity}")

    @classmethod
    def from_order(cls, m: int) -> "OrderSpec":
        """Build the spec for a given matrix size (odd m >= 3 or even m >= 2)."""
        if m % 2 == 1:
            if m < 3:
                raise UnsupportedOrder(f"odd order must be at least 3, got {m}")
            n = (m - 1) // 2
            parity = Parity.ODD_N if n % 2 == 1 else Parity.EVEN_N
        else:
            if m < 2:
                raise UnsupportedOrder(f"even order must be at least 2, got {m}")
            n = m // 2
            parity = Parity.EVEN_ORDER
        return cls(m=m, n=n, parity=parity)

    @property
    def is_odd_order(self) -> bool:
        return self.parity is not Parity.EVEN_ORDER

    @property
    def csd_partition(self) -> tuple[int, int]:
        """CS-decomposition block sizes (p, q) used by the canonical form."""
        if self.parity is Parity.ODD_N:
            return self.n + 1, self.n
        if self.parity is Parity.EVEN_N:
            return self.n, self.n + 1
        return self.n, self.n


def symplectic_matrix(m: int) -> np.ndarray:
    """Signed antidiagonal matrix with entry (-1)^r at (r, m+1-r), 1-based.

    An involution (C^2 = I) for odd m and a skew involution (C^2 = -I)
    for even m.
    """
    if m < 1:
        raise ValueError(f"size must be positive, got {m}")
    c = np.zeros((m, m), dtype=complex)
    for i in range(m):
        c[i, m - 1 - i] = (-1.0) ** (i + 1)
    return c


@dataclass(frozen=True, eq=False)
class EigenBasis:
    """Unitary V with ``(C_m (+) -C_m) V = V (-I_m (+) I_m)``.

    The first m columns span the eigenvalue -1 eigenspace and the last m
    columns the eigenvalue +1 eigenspace.  Entries are 0, +-1/sqrt(2) or 1.
    """

    spec: OrderSpec
    V: np.ndarray

    @property
    def m(self) -> int:
        return self.spec.m

    @property
    def V11(self) -> np.ndarray:
        return self.V[: self.m, : self.m]

    @property
    def V12(self) -> np.ndarray:
        return self.V[: self.m, self.m :]

    @property
    def V21(self) -> np.ndarray:
        return self.V[self.m :, : self.m]

    @property
    def V22(self) -> np.ndarray:
        return self.V[self.m :, self.m :]


def _column_blocks(n: int):
    """The three column building blocks shared by both odd-order layouts."""
    m = 2 * n + 1
    cn = symplectic_matrix(n)
    plus = np.zeros((m, n), dtype=complex)
    plus[:n, :] = np.eye(n)
    plus[n + 1 :, :] = (-1.0) ** (n + 1) * cn
    plus /= np.sqrt(2.0)
    minus = np.zeros((m, n), dtype=complex)
    minus[:n, :] = np.eye(n)
    minus[n + 1 :, :] = (-1.0) ** n * cn
    minus /= np.sqrt(2.0)
    unit = np.zeros((m, 1), dtype=complex)
    unit[n, 0] = 1.0  # the (n+1)-th coordinate vector, built by index
    return plus, minus, unit


def eigenbasis(spec: OrderSpec) -> EigenBasis:
    """Explicit diagonalizing eigenbasis for odd order m = 2n+1.

    The column layout depends on the parity of n; both variants place the
    -1 eigenvectors first.  Raises UnsupportedOrder for even-order specs
    (use :func:`even_order_eigenbasis` instead).
    """
    if spec.parity is Parity.EVEN_ORDER:
        raise UnsupportedOrder("eigenbasis is defined for odd order only")
    n, m = spec.n, spec.m
    plus, minus, unit = _column_blocks(n)
    zn = np.zeros((m, n), dtype=complex)
    z1 = np.zeros((m, 1), dtype=complex)
    if spec.parity is Parity.ODD_N:
        top = np.hstack([minus, z1, zn, plus, unit, zn])
        bottom = np.hstack([zn, unit, plus, zn, z1, minus])
    else:
        top = np.hstack([minus, unit, zn, plus, z1, zn])
        bottom = np.hstack([zn, z1, plus, zn, unit, minus])
    return EigenBasis(spec=spec, V=np.vstack([top, bottom]))


def q4_matrix(spec: OrderSpec) -> np.ndarray:
    """Block-diagonal column transform: two copies of an m x m block.

    Each block is ``[I_n 0 (-1)^(n+1) C_n*; 0 sqrt(2) 0; I_n 0 (-1)^n C_n*]``
    and has pairwise orthogonal rows of squared norm 2, so Q4 Q4* = 2 I.
    """
    if spec.parity is Parity.EVEN_ORDER:
        raise UnsupportedOrder("q4_matrix is defined for odd order only")
    n, m = spec.n, spec.m
    cns = symplectic_matrix(n).conj().T
    blk = np.zeros((m, m), dtype=complex)
    blk[:n, :n] = np.eye(n)
    blk[:n, n + 1 :] = (-1.0) ** (n + 1) * cns
    blk[n, n] = np.sqrt(2.0)
    blk[n + 1 :, :n] = np.eye(n)
    blk[n + 1 :, n + 1 :] = (-1.0) ** n * cns
    return block_diag(blk, blk)


def even_order_Z(n: int) -> np.ndarray:
    """Fixed unitary right factor of the even-order (m = 2n) canonical form.

    Product of a 1/sqrt(2)-scaled sum/difference block matrix with the
    block-diagonal phase factor diag(I, (-1)^(n+1) i C_n, I, (-1)^(n+1) i C_n);
    block-diagonal over the two 2n x 2n quadrants.
    """
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    eye = np.eye(n, dtype=complex)
    butterfly = np.block([[eye, eye], [eye, -eye]]) / np.sqrt(2.0)
    first = block_diag(butterfly, butterfly)
    kappa = (-1.0) ** (n + 1) * 1j
    cn = symplectic_matrix(n)
    second = block_diag(eye, kappa * cn, eye, kappa * cn)
    return first @ second


def even_order_eigenbasis(n: int) -> np.ndarray:
    """4n x 4n unitary whose column halves split ``i C_2n (+) -i C_2n`` eigenspaces.

    Columns are the conjugated block rows of Z in the order (2, 3, 1, 4); the
    two halves carry opposite eigenvalues of the Hermitian involution
    ``i C_2n (+) -i C_2n`` (which sign goes first flips with the parity of n,
    and is immaterial to the recovery algorithm built on this basis).
    """
    z = even_order_Z(n)
    rows = [z[i * n : (i + 1) * n, :] for i in range(4)]
    return np.hstack([rows[1].conj().T, rows[2].conj().T, rows[0].conj().T, rows[3].conj().T])

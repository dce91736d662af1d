"""Self-adjoint boundary pairs: verification, synthesis, canonical forms.

A boundary pair is a pair (A, B) of m x m complex matrices encoding the
two-endpoint conditions A Y(a) + B Y(b) = 0.  The pair is self-adjoint
exactly when

    rank (A : B) = m    and    A C_m A* = B C_m B*

with C_m the signed antidiagonal symplectic matrix.  For odd m = 2n+1
every self-adjoint pair is, up to invertible row operations, of the
normalized form (I : W) V* for a unique unitary W, where V is the explicit
eigenbasis of C_m (+) -C_m.  Feeding W through a CS decomposition yields
the canonical factorization (A : B) = (1/sqrt 2) Q1 @ core @ Q2 whose
sparse central block exposes the cosine/sine spectrum, the rank of A and B
(through the K matrix), and the mixed/coupled classification.  Even m = 2n
admits the analogous factorization U @ middle @ blockdiag(...) @ Z with a
separated/mixed/coupled trichotomy read off the sine diagonal.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np
from scipy.linalg import block_diag

from .csd import CsFactors, cs_core, cs_decompose
from .errors import (
    ConvergenceFailure,
    InvalidTarget,
    NotSelfAdjoint,
    NotUnitary,
    OddSize,
    RankDeficient,
    UnsupportedOrder,
)
from .linalg import (
    DEFAULT_TOL,
    Tolerances,
    as_complex_matrix,
    haar_unitary,
    hermitian_eigendecomposition,
    numerical_rank,
    unitarity_residual,
)
from .structure import (
    OrderSpec,
    Parity,
    eigenbasis,
    even_order_Z,
    even_order_eigenbasis,
    q4_matrix,
    symplectic_matrix,
)

__all__ = [
    "Classification",
    "BoundaryPair",
    "SelfAdjointReport",
    "CanonicalForm",
    "EvenCanonicalForm",
    "check_self_adjoint",
    "construct_from_W",
    "construct_even_from_W",
    "recover_W",
    "canonical_decompose",
    "predicted_ranks",
    "classify",
    "coupling_block_ranks",
    "generate_random_pair",
    "even_canonical_decompose",
]


class Classification(enum.Enum):
    """Boundary-condition type; SEPARATED is reachable only for even order."""

    MIXED = "mixed"
    COUPLED = "coupled"
    SEPARATED = "separated"


@dataclass(frozen=True, eq=False)
class BoundaryPair:
    """Pair (A, B) of m x m complex matrices with its order bookkeeping."""

    A: np.ndarray
    B: np.ndarray
    spec: OrderSpec

    def __post_init__(self):
        a = as_complex_matrix(self.A)
        b = as_complex_matrix(self.B)
        m = self.spec.m
        if a.shape != (m, m) or b.shape != (m, m):
            raise ValueError(f"expected two {m} x {m} matrices, got {a.shape} and {b.shape}")
        object.__setattr__(self, "A", a)
        object.__setattr__(self, "B", b)

    @classmethod
    def from_matrices(cls, a, b) -> "BoundaryPair":
        """Build a pair, inferring the order spec from the matrix size."""
        a = as_complex_matrix(a)
        return cls(A=a, B=b, spec=OrderSpec.from_order(a.shape[0]))

    def stacked(self) -> np.ndarray:
        """The m x 2m concatenation (A : B)."""
        return np.hstack([self.A, self.B])


@dataclass(frozen=True)
class SelfAdjointReport:
    """Outcome of the rank + Gram self-adjointness criterion."""

    rank_AB: int
    rank_ok: bool
    gram_residual: float
    gram_ok: bool
    rank_A: int
    rank_B: int

    @property
    def ok(self) -> bool:
        return self.rank_ok and self.gram_ok


def check_self_adjoint(pair: BoundaryPair, tol: Tolerances = DEFAULT_TOL) -> SelfAdjointReport:
    """Evaluate rank (A : B) = m and A C_m A* = B C_m B*; never raises."""
    c = symplectic_matrix(pair.spec.m)
    gram = pair.A @ c @ pair.A.conj().T - pair.B @ c @ pair.B.conj().T
    gram_residual = float(np.linalg.norm(gram))
    rank_ab = numerical_rank(pair.stacked(), tol)
    return SelfAdjointReport(
        rank_AB=rank_ab,
        rank_ok=rank_ab == pair.spec.m,
        gram_residual=gram_residual,
        gram_ok=gram_residual <= tol.residual_abs,
        rank_A=numerical_rank(pair.A, tol),
        rank_B=numerical_rank(pair.B, tol),
    )


def construct_from_W(w, spec: OrderSpec, tol: Tolerances = DEFAULT_TOL) -> BoundaryPair:
    """Normalized self-adjoint pair (V11* + W V12* : V21* + W V22*) for odd order.

    Every unitary W yields a self-adjoint pair, and every self-adjoint pair
    is row-equivalent to exactly one pair of this form.
    """
    w = as_complex_matrix(w)
    basis = eigenbasis(spec)
    if w.shape != (spec.m, spec.m):
        raise ValueError(f"W must be {spec.m} x {spec.m}, got {w.shape}")
    residual = unitarity_residual(w)
    if residual > tol.unitary_abs:
        raise NotUnitary(f"unitarity residual {residual:.3e} exceeds {tol.unitary_abs:.3e}")
    a = basis.V11.conj().T + w @ basis.V12.conj().T
    b = basis.V21.conj().T + w @ basis.V22.conj().T
    return BoundaryPair(A=a, B=b, spec=spec)


def construct_even_from_W(w, spec: OrderSpec, tol: Tolerances = DEFAULT_TOL) -> BoundaryPair:
    """Normalized self-adjoint even-order pair (I : W) V* from a 2n x 2n unitary."""
    if spec.parity is not Parity.EVEN_ORDER:
        raise UnsupportedOrder("construct_even_from_W needs an even-order spec")
    w = as_complex_matrix(w)
    m = spec.m
    if w.shape != (m, m):
        raise ValueError(f"W must be {m} x {m}, got {w.shape}")
    residual = unitarity_residual(w)
    if residual > tol.unitary_abs:
        raise NotUnitary(f"unitarity residual {residual:.3e} exceeds {tol.unitary_abs:.3e}")
    basis = even_order_eigenbasis(spec.n)
    ab = np.hstack([np.eye(m, dtype=complex), w]) @ basis.conj().T
    return BoundaryPair(A=ab[:, :m], B=ab[:, m:], spec=spec)


def _recover_coupling(ab: np.ndarray, basis: np.ndarray, tol: Tolerances):
    """Unique unitary W with (A : B) row-equivalent to (I : W) basis*.

    Splits the rows of (A : B) over the two column halves of the basis
    (the two eigenspaces of the structure matrix), aligns the resulting
    coefficient matrices through their SVDs, and composes the right
    singular factors.  Returns (W, P) where P is the first-half coefficient
    matrix, i.e. the exact left factor with (A : B) = P (I : W) basis*.
    """
    m = ab.shape[0]
    p_coef = ab @ basis[:, :m]
    r_coef = ab @ basis[:, m:]
    up, sp, vph = np.linalg.svd(p_coef)
    ur, _, vrh = np.linalg.svd(r_coef)
    if sp[-1] <= tol.rank_rel * sp[0]:
        raise RankDeficient("eigenspace coefficient matrix is numerically singular")
    w = vph.conj().T @ (up.conj().T @ ur) @ vrh
    return w, p_coef


def recover_W(pair: BoundaryPair, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Invert :func:`construct_from_W` up to row equivalence (odd order).

    The result is invariant under left multiplication of the pair by any
    invertible matrix.  Raises NotSelfAdjoint when the rank/Gram criterion
    fails and RankDeficient on numerically singular coefficients.
    """
    report = check_self_adjoint(pair, tol)
    if not report.ok:
        raise NotSelfAdjoint(
            f"rank(A:B)={report.rank_AB} (need {pair.spec.m}), "
            f"gram residual {report.gram_residual:.3e}"
        )
    basis = eigenbasis(pair.spec)
    w, _ = _recover_coupling(pair.stacked(), basis.V, tol)
    return w


@dataclass(frozen=True, eq=False)
class CanonicalForm:
    """Assembled odd-order canonical factorization of a boundary pair.

    Satisfies ``(1/sqrt 2) Q1 @ core @ Q2 == construct_from_W(W, spec)``,
    i.e. reconstruction agrees with the row-normalized representative of
    the input pair, not the raw input.  ``Q2 = diag-factor @ Q3`` and
    ``Q3 = selector @ Q4``.  The K matrix drives rank and classification:
    rank A = rank B = 2n+1 - (number of unit eigenvalues of K K*).
    """

    spec: OrderSpec
    cs: CsFactors
    W: np.ndarray
    Q1: np.ndarray
    Q2: np.ndarray
    Q3: np.ndarray
    Q4: np.ndarray
    core: np.ndarray
    K: np.ndarray
    null_count: int
    predicted_rank_A: int
    predicted_rank_B: int
    classification: Classification
    r: int

    def reconstruct(self) -> np.ndarray:
        """The m x 2m product (1/sqrt 2) Q1 @ core @ Q2."""
        return (self.Q1 @ self.core @ self.Q2) / np.sqrt(2.0)


def _unit_eigenvalue_count(k: np.ndarray, tol: Tolerances) -> int:
    """Number of eigenvalues of K K* within ``unit_eig_abs`` of 1."""
    vals, _ = hermitian_eigendecomposition(k @ k.conj().T, tol)
    return int(np.count_nonzero(np.abs(vals - 1.0) <= tol.unit_eig_abs))


def canonical_decompose(pair: BoundaryPair, tol: Tolerances = DEFAULT_TOL) -> CanonicalForm:
    """Full canonical factorization of a self-adjoint odd-order pair.

    Recovers the coupling unitary W, CS-decomposes it over the
    parity-dependent partition (n+1, n) or (n, n+1), and assembles the
    factors Q1..Q4, the sparse central block, and the K matrix.
    """
    spec = pair.spec
    if not spec.is_odd_order:
        raise UnsupportedOrder("canonical_decompose handles odd order; use even_canonical_decompose")
    n, m = spec.n, spec.m
    w = recover_W(pair, tol)
    p, q = spec.csd_partition
    cs = cs_decompose(w, p, q, tol)

    cd = np.diag(cs.cos).astype(complex)
    sd = np.diag(cs.sin).astype(complex)
    i_n = np.eye(n, dtype=complex)
    i_n1 = np.eye(n + 1, dtype=complex)
    zeros_tall = np.zeros((n + 1, n), dtype=complex)
    zeros_wide = np.zeros((n, n + 1), dtype=complex)

    if spec.parity is Parity.ODD_N:
        big_c = block_diag(cd, np.eye(1))  # cos diagonal extended by the structural 1
        big_s = np.vstack([sd, np.zeros((1, n))])
        core = np.block([
            [big_c, i_n1, zeros_tall, i_n1, big_s],
            [-big_s.conj().T, zeros_wide, i_n, zeros_wide, cd],
        ])
        diag_factor = block_diag(cs.v1, cs.u1.conj().T, cs.u2.conj().T, cs.u1.conj().T, cs.v2)
        selector = block_diag(
            i_n1,
            np.vstack([i_n, np.zeros((1, n))]),
            i_n,
            i_n1[:, [n]],
            i_n,
        )
        k_matrix = cs.u1[:n, :] @ big_c
    else:
        big_c = block_diag(np.eye(1), cd)
        big_s = np.hstack([np.zeros((n, 1)), sd])
        core = np.block([
            [cd, zeros_wide, i_n, zeros_wide, big_s],
            [-big_s.conj().T, i_n1, zeros_tall, i_n1, big_c],
        ])
        diag_factor = block_diag(cs.v1, cs.u2.conj().T, cs.u1.conj().T, cs.u2.conj().T, cs.v2)
        selector = block_diag(
            i_n,
            i_n1[:, [0]],
            i_n,
            np.vstack([np.zeros((1, n)), i_n]),
            i_n1,
        )
        k_matrix = cs.u2[1:, :] @ big_c

    q4 = q4_matrix(spec)
    q3 = selector @ q4
    q2 = diag_factor @ q3
    q1 = block_diag(cs.u1, cs.u2)

    null_count = _unit_eigenvalue_count(k_matrix, tol)
    rank = m - null_count
    classification = Classification.COUPLED if null_count == 0 else Classification.MIXED
    return CanonicalForm(
        spec=spec,
        cs=cs,
        W=w,
        Q1=q1,
        Q2=q2,
        Q3=q3,
        Q4=q4,
        core=core,
        K=k_matrix,
        null_count=null_count,
        predicted_rank_A=rank,
        predicted_rank_B=rank,
        classification=classification,
        r=rank - (n + 1),
    )


def predicted_ranks(form: CanonicalForm, tol: Tolerances = DEFAULT_TOL):
    """Ranks of A and B implied by the K matrix: 2n+1 minus its unit-eigenvalue count."""
    null_count = _unit_eigenvalue_count(form.K, tol)
    rank = form.spec.m - null_count
    return rank, rank, null_count


def classify(pair: BoundaryPair, tol: Tolerances = DEFAULT_TOL):
    """Classify an odd-order pair; returns (classification, r).

    r = rank A - (n+1) lies in [0, n]; the pair is coupled exactly when
    r = n, mixed otherwise.  Fully separated conditions do not exist for
    odd order, so SEPARATED is never returned here.
    """
    form = canonical_decompose(pair, tol)
    return form.classification, form.r


def coupling_block_ranks(w, spec: OrderSpec, tol: Tolerances = DEFAULT_TOL):
    """Alternative rank route via numerical ranks of W's corner blocks.

    For odd n: rank A = n + rank of the lower-left (n+1) x (n+1) block,
    rank B = n+1 + rank of the upper-right n x n block; the roles flip for
    even n.  Cross-checks the K-matrix formula on concrete inputs.
    """
    w = as_complex_matrix(w)
    n = spec.n
    if spec.parity is Parity.ODD_N:
        rank_a = n + numerical_rank(w[n:, : n + 1], tol)
        rank_b = n + 1 + numerical_rank(w[:n, n + 1 :], tol)
    elif spec.parity is Parity.EVEN_N:
        rank_a = n + 1 + numerical_rank(w[n + 1 :, :n], tol)
        rank_b = n + numerical_rank(w[: n + 1, n:], tol)
    else:
        raise UnsupportedOrder("coupling_block_ranks is defined for odd order only")
    return rank_a, rank_b


@dataclass(frozen=True, eq=False)
class EvenCanonicalForm:
    """Even-order canonical factorization (A : B) = U @ middle @ right @ Z.

    U is 2n x 2n invertible (not necessarily unitary), ``middle`` is the
    sparse block [C I 0 S; -S 0 I C], ``right`` the block diagonal of
    V1, U1*, U2*, V2, and Z the fixed unitary right factor.  Classification
    is read off the sine diagonal: separated iff S = 0, coupled iff S has
    full rank n, mixed in between.
    """

    n: int
    U: np.ndarray
    cs: CsFactors
    W: np.ndarray
    Z: np.ndarray
    rank_S: int
    classification: Classification

    @property
    def U1(self) -> np.ndarray:
        return self.cs.u1

    @property
    def U2(self) -> np.ndarray:
        return self.cs.u2

    @property
    def V1(self) -> np.ndarray:
        return self.cs.v1

    @property
    def V2(self) -> np.ndarray:
        return self.cs.v2

    @property
    def cos(self) -> np.ndarray:
        return self.cs.cos

    @property
    def sin(self) -> np.ndarray:
        return self.cs.sin

    @property
    def middle(self) -> np.ndarray:
        n = self.n
        eye = np.eye(n, dtype=complex)
        zero = np.zeros((n, n), dtype=complex)
        cd = np.diag(self.cos).astype(complex)
        sd = np.diag(self.sin).astype(complex)
        return np.block([[cd, eye, zero, sd], [-sd, zero, eye, cd]])

    @property
    def right(self) -> np.ndarray:
        return block_diag(
            self.V1, self.U1.conj().T, self.U2.conj().T, self.V2
        ) @ self.Z

    def reconstruct(self) -> np.ndarray:
        """The 2n x 4n product U @ middle @ right; equals (A : B) exactly."""
        return self.U @ self.middle @ self.right


def even_canonical_decompose(pair: BoundaryPair, tol: Tolerances = DEFAULT_TOL) -> EvenCanonicalForm:
    """Canonical factorization for even order m = 2n.

    Mirrors the odd pipeline with the Z-derived eigenbasis and a balanced
    CS partition p = q = n; the recovered left coefficient matrix supplies
    the exact invertible factor U, so reconstruction matches the input pair
    itself (not only its row space).
    """
    spec = pair.spec
    if spec.parity is not Parity.EVEN_ORDER:
        raise OddSize(f"pair has odd size {spec.m}; use canonical_decompose")
    report = check_self_adjoint(pair, tol)
    if not report.ok:
        raise NotSelfAdjoint(
            f"rank(A:B)={report.rank_AB} (need {spec.m}), "
            f"gram residual {report.gram_residual:.3e}"
        )
    n = spec.n
    basis = even_order_eigenbasis(n)
    w, p_coef = _recover_coupling(pair.stacked(), basis, tol)
    cs = cs_decompose(w, n, n, tol)
    u = p_coef @ block_diag(cs.u1, cs.u2)
    # Sine entries have unit natural scale (cos^2 + sin^2 = 1), so the rank
    # cutoff is absolute; a relative one would promote roundoff to rank.
    rank_s = int(np.count_nonzero(cs.sin > tol.rank_rel))
    if rank_s == 0:
        classification = Classification.SEPARATED
    elif rank_s == n:
        classification = Classification.COUPLED
    else:
        classification = Classification.MIXED
    return EvenCanonicalForm(
        n=n,
        U=u,
        cs=cs,
        W=w,
        Z=even_order_Z(n),
        rank_S=rank_s,
        classification=classification,
    )


def generate_random_pair(
    spec: OrderSpec,
    seed: int,
    target_unit_cosines: int | None = None,
    tol: Tolerances = DEFAULT_TOL,
) -> BoundaryPair:
    """Seeded random self-adjoint pair, optionally with a prescribed spectrum.

    Without a target the coupling unitary is Haar distributed.  With
    ``target_unit_cosines = k`` exactly k cosines are set to 1 and the rest
    are drawn uniformly from (1e-3, 1 - 1e-3), which pins the unit-eigenvalue
    count of K K* to k for odd order (hence rank A = 2n+1-k) and the sine
    rank to n-k for even order.  Since the corner factors enter K, the
    realized count is verified and the pair is resampled under a derived
    seed on the (probability-zero) mismatches.
    """
    n = spec.n
    if target_unit_cosines is not None and not 0 <= target_unit_cosines <= n:
        raise InvalidTarget(f"target_unit_cosines must lie in [0, {n}], got {target_unit_cosines}")
    constructor = construct_from_W if spec.is_odd_order else construct_even_from_W
    for attempt in range(64):
        rng = np.random.default_rng([seed, attempt])
        if target_unit_cosines is None:
            return constructor(haar_unitary(spec.m, rng), spec, tol)
        k = target_unit_cosines
        cos = np.sort(np.concatenate([np.ones(k), rng.uniform(1e-3, 1.0 - 1e-3, n - k)]))[::-1]
        sin = np.sqrt(1.0 - cos**2)
        p, q = spec.csd_partition
        w = (
            block_diag(haar_unitary(p, rng), haar_unitary(q, rng))
            @ cs_core(p, q, cos, sin)
            @ block_diag(haar_unitary(p, rng), haar_unitary(q, rng))
        )
        pair = constructor(w, spec, tol)
        if spec.is_odd_order:
            realized = canonical_decompose(pair, tol).null_count
        else:
            realized = n - even_canonical_decompose(pair, tol).rank_S
        if realized == k:
            return pair
    raise ConvergenceFailure(
        f"could not realize {target_unit_cosines} unit cosines after 64 attempts"
    )

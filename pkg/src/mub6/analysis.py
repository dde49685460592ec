"""Structural predicates for order-6 Hadamard matrices.

Real-entry counting, real p x q submatrix detection (raw and up to
per-column rephasing), 2x2 Hadamard submatrix counting, H2-reducibility,
unitary k x k submatrices, product-vector columns, and numerical rank.

Counting conventions: a 2x2 submatrix is proportional to an order-2
Hadamard matrix exactly when its two rows are orthogonal, which for
unimodular entries is the standard equivalent condition.  The same
orthogonality test is applied to degenerate non-Hadamard inputs, where it
remains well defined even though the Hadamard reading no longer applies.

These operations only measure; none of them asserts a bound or a theorem
about which values may occur in sets of mutually unbiased bases.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations

import numpy as np

from .core import DEFAULT_TOL, SQRT6, Tolerances, as_matrix, as_vector
from .errors import InvalidInput

__all__ = [
    "SubmatrixLoc",
    "AnalysisReport",
    "count_real_entries",
    "exceeds_real_bound",
    "find_real_submatrices",
    "find_real_submatrices_up_to_rephasing",
    "count_h2_submatrices",
    "is_h2_reducible",
    "find_unitary_submatrices",
    "is_product_vector",
    "product_triple_exists",
    "submatrix_rank",
    "analyze",
    "REAL_ENTRY_BOUND",
]

REAL_ENTRY_BOUND = 22


@dataclass(frozen=True)
class SubmatrixLoc:
    """Row and column index sets of a submatrix, 1-based and sorted."""

    rows: tuple
    cols: tuple

    def __post_init__(self):
        for name in ("rows", "cols"):
            idx = tuple(int(v) for v in getattr(self, name))
            if not idx or any(not 1 <= v <= 6 for v in idx):
                raise InvalidInput(f"{name} must be indices in 1..6")
            if list(idx) != sorted(set(idx)):
                raise InvalidInput(f"{name} must be strictly increasing")
            object.__setattr__(self, name, idx)

    def take(self, A):
        """The selected block of a 6x6 array (0-based internally)."""
        return A[np.ix_([r - 1 for r in self.rows], [c - 1 for c in self.cols])]


def _real_mask(A, eq_tol):
    # entries carry the 1/sqrt(6) scale, so realness is tested scale-relative
    return np.abs(A.imag) * SQRT6 < eq_tol


def count_real_entries(H, tol: Tolerances = DEFAULT_TOL) -> int:
    return int(np.sum(_real_mask(as_matrix(H), tol.eq_tol)))


def exceeds_real_bound(H, tol: Tolerances = DEFAULT_TOL) -> bool:
    return count_real_entries(H, tol) > REAL_ENTRY_BOUND


def find_real_submatrices(H, p: int, q: int, tol: Tolerances = DEFAULT_TOL):
    """All p x q index selections whose entries are real as they stand."""
    if not (1 <= p <= 6 and 1 <= q <= 6):
        raise InvalidInput("submatrix dimensions must lie in 1..6")
    mask = _real_mask(as_matrix(H), tol.eq_tol)
    out = []
    for rows in combinations(range(6), p):
        rowmask = mask[list(rows), :].all(axis=0)
        for cols in combinations(range(6), q):
            if rowmask[list(cols)].all():
                out.append(SubmatrixLoc(tuple(r + 1 for r in rows), tuple(c + 1 for c in cols)))
    return out


def _collinear_mod_pi(entries, eq_tol):
    """True when one phase applied to all entries makes them real.

    Equivalent to all pairwise products e_i * conj(e_0) being real, tested
    scale-free on the angle.  Entries of negligible modulus never obstruct.
    """
    anchor = None
    for e in entries:
        if abs(e) < 1e-12:
            continue
        if anchor is None:
            anchor = e
            continue
        w = e * np.conj(anchor)
        if abs(w.imag) / abs(w) >= eq_tol:
            return False
    return True


def find_real_submatrices_up_to_rephasing(H, p: int, q: int, tol: Tolerances = DEFAULT_TOL):
    """All p x q selections that one phase per column makes entirely real."""
    if not (1 <= p <= 6 and 1 <= q <= 6):
        raise InvalidInput("submatrix dimensions must lie in 1..6")
    A = as_matrix(H)
    out = []
    for rows in combinations(range(6), p):
        sub = A[list(rows), :]
        colok = [_collinear_mod_pi(sub[:, c], tol.eq_tol) for c in range(6)]
        for cols in combinations(range(6), q):
            if all(colok[c] for c in cols):
                out.append(SubmatrixLoc(tuple(r + 1 for r in rows), tuple(c + 1 for c in cols)))
    return out


_ROWPAIRS = list(combinations(range(6), 2))


def _h2_block_ok(A, rpair, cpair, eq_tol):
    (a, b), (c, d) = rpair, cpair
    return abs(np.conj(A[a, c]) * A[b, c] + np.conj(A[a, d]) * A[b, d]) < eq_tol


def count_h2_submatrices(H, tol: Tolerances = DEFAULT_TOL) -> int:
    """Number of the 225 2x2 submatrices whose two rows are orthogonal."""
    A = as_matrix(H)
    P = np.conj(A)[:, None, :] * A[None, :, :]  # P[a, b, c] = conj(A_ac) A_bc
    G = P[:, :, :, None] + P[:, :, None, :]     # G[a, b, c, d]
    n = 0
    for a, b in _ROWPAIRS:
        for c, d in _ROWPAIRS:
            if abs(G[a, b, c, d]) < tol.eq_tol:
                n += 1
    return n


def _pair_partitions(items):
    """Partitions of an even-sized list into unordered pairs, lexicographic."""
    if not items:
        yield ()
        return
    head = items[0]
    for j in range(1, len(items)):
        rest = [x for k, x in enumerate(items) if k not in (0, j)]
        for sub in _pair_partitions(rest):
            yield ((head, items[j]),) + sub


def is_h2_reducible(H, tol: Tolerances = DEFAULT_TOL):
    """First pair-partition of rows and columns making all nine blocks
    orthogonal-row 2x2 submatrices, scanning both families of the 15
    partitions in canonical order.  Returns (row_pairing, col_pairing)
    with 1-based pairs, or None."""
    A = as_matrix(H)
    col_partitions = list(_pair_partitions(list(range(6))))
    for rp in _pair_partitions(list(range(6))):
        for cp in col_partitions:
            if all(_h2_block_ok(A, r, c, tol.eq_tol) for r in rp for c in cp):
                one_based = lambda pairing: tuple((i + 1, j + 1) for i, j in pairing)
                return one_based(rp), one_based(cp)
    return None


def find_unitary_submatrices(H, k: int, tol: Tolerances = DEFAULT_TOL):
    """All k x k submatrices proportional to a unitary matrix.

    The test is S S* = c I for some c > 0, entry-wise within eq_tol, which
    amounts to pairwise-orthogonal rows of equal norm.
    """
    if not (2 <= k <= 6):
        raise InvalidInput("k must lie in 2..6")
    A = as_matrix(H)
    out = []
    eye = np.eye(k)
    for rows in combinations(range(6), k):
        Ar = A[list(rows), :]
        for cols in combinations(range(6), k):
            S = Ar[:, list(cols)]
            G = S @ S.conj().T
            c = float(np.mean(np.diagonal(G).real))
            if c > 0.0 and np.max(np.abs(G - c * eye)) < tol.eq_tol:
                out.append(SubmatrixLoc(tuple(r + 1 for r in rows), tuple(c_ + 1 for c_ in cols)))
    return out


def submatrix_rank(H, loc: SubmatrixLoc, tol: Tolerances = DEFAULT_TOL) -> int:
    """Numerical rank of the selected block via singular values."""
    S = loc.take(as_matrix(H))
    sv = np.linalg.svd(S, compute_uv=False)
    if sv.size == 0 or sv[0] == 0.0:
        return 0
    return int(np.sum(sv > tol.rank_tol * sv[0]))


def is_product_vector(v, factorization: str, tol: Tolerances = DEFAULT_TOL) -> bool:
    """Rank-one test of the vector reshaped row-major to 2x3 or 3x2."""
    if factorization == "2x3":
        M = as_vector(v).reshape(2, 3)
    elif factorization == "3x2":
        M = as_vector(v).reshape(3, 2)
    else:
        raise InvalidInput("factorization must be '2x3' or '3x2'")
    sv = np.linalg.svd(M, compute_uv=False)
    return bool(sv[1] < tol.rank_tol * sv[0])


_PERMS = None


def _all_perms():
    global _PERMS
    if _PERMS is None:
        _PERMS = np.array(list(permutations(range(6))))
    return _PERMS


_COLTRIPLES = list(combinations(range(6), 3))


def product_triple_exists(H, tol: Tolerances = DEFAULT_TOL) -> bool:
    """True when some row permutation and factorization make three of the
    six columns simultaneously product vectors.  Brute force over all 720
    permutations and both reshapes; batched SVD keeps it in milliseconds."""
    A = as_matrix(H)
    perms = _all_perms()
    cols = np.transpose(A[perms], (0, 2, 1))          # (720, col, entry)
    for shape in ((2, 3), (3, 2)):
        blocks = cols.reshape(720, 6, *shape)
        sv = np.linalg.svd(blocks, compute_uv=False)  # (720, 6, 2)
        isprod = sv[..., 1] < tol.rank_tol * sv[..., 0]
        for tr in _COLTRIPLES:
            if np.any(isprod[:, tr].all(axis=1)):
                return True
    return False


@dataclass(frozen=True)
class AnalysisReport:
    """Aggregated measurements; fields are None when not requested."""

    label: str | None = None
    real_entry_count: int | None = None
    exceeds_bound: bool | None = None
    real_3x2_raw: list | None = None
    real_3x2_rephased: list | None = None
    h2_submatrix_count: int | None = None
    h2_reducible_partition: tuple | None = None
    unitary_3x3: list | None = None
    product_triple_found: bool | None = None


ALL_SECTIONS = ("real", "h2", "unitary", "product")


def analyze(H, tol: Tolerances = DEFAULT_TOL, sections=ALL_SECTIONS) -> AnalysisReport:
    fields = {"label": getattr(H, "label", None)}
    if "real" in sections:
        fields["real_entry_count"] = count_real_entries(H, tol)
        fields["exceeds_bound"] = fields["real_entry_count"] > REAL_ENTRY_BOUND
        fields["real_3x2_raw"] = find_real_submatrices(H, 3, 2, tol)
        fields["real_3x2_rephased"] = find_real_submatrices_up_to_rephasing(H, 3, 2, tol)
    if "h2" in sections:
        fields["h2_submatrix_count"] = count_h2_submatrices(H, tol)
        fields["h2_reducible_partition"] = is_h2_reducible(H, tol)
    if "unitary" in sections:
        fields["unitary_3x3"] = find_unitary_submatrices(H, 3, tol)
    if "product" in sections:
        fields["product_triple_found"] = product_triple_exists(H, tol)
    return AnalysisReport(**fields)

"""Spherical-code analytics on rescaled shells: histograms, distance
distributions, Gegenbauer moments, design strength, and quadrature identities.

Unit-sphere inner products of shell vectors are s_x.s_y / 32, so every pair
statistic is an exact integer count keyed by an exact rational.  The N^2
pair pass runs as blocked float32 matrix products; with entries bounded by
5 in absolute value every intermediate is an integer below 2^24, so the
float path is exact.  For antipodal shells the pass is folded onto a half
set (dot(+-x, +-y) = +-dot(x, y)), which cuts the work fourfold without
giving up exactness: antipodality itself is verified first.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .exactmath import Polynomial
from .gegenbauer import gegenbauer_expand, gegenbauer_poly
from .lattice32 import SHELL_NORM, Shell, _canonical_sort

ALL = "all"

_DEFAULT_BLOCK = 1024


@dataclass(frozen=True)
class InnerProductHistogram:
    """Ordered-pair counts (x != y) keyed by the unit inner product t."""

    counts: dict  # Fraction -> int
    n_points: int

    def total(self) -> int:
        return sum(self.counts.values())


@dataclass(frozen=True)
class DistanceDistribution:
    """Counts A_t of code points at inner product t from a fixed point,
    including t = 1 with A_1 = 1."""

    a: dict  # Fraction -> int

    def total(self) -> int:
        return sum(self.a.values())

    def __getitem__(self, t):
        return self.a.get(Fraction(t), 0)


@dataclass(frozen=True)
class MomentVector:
    dimension: int
    values: tuple  # (M_1, ..., M_k) as Fractions

    def __getitem__(self, i: int):
        if i < 1 or i > len(self.values):
            raise IndexError(f"moment index {i} out of range")
        return self.values[i - 1]


@dataclass(frozen=True)
class InvarianceReport:
    invariant: bool
    distribution: DistanceDistribution | None
    counterexample: tuple | None  # ((index, distribution), (index, distribution))
    checked: int
    mode: str


@dataclass(frozen=True)
class QuadratureVerdict:
    holds: bool
    lhs: Fraction
    rhs: Fraction
    warning: str | None = None


def _as_float32(vectors: np.ndarray) -> np.ndarray:
    # exactness guard: dots are sums of <= dim products of entries; with
    # |entry| <= 5 and dim <= 32 every partial sum stays far below 2^24
    assert int(np.abs(vectors).max(initial=0)) <= 11
    return vectors.astype(np.float32)


def _antipodal_half(vectors: np.ndarray):
    """Indices of one representative per antipodal pair, or None if the set
    is not antipodal."""
    n = len(vectors)
    neg_sorted, dups = _canonical_sort(-vectors)
    if dups or not np.array_equal(neg_sorted, vectors):
        return None
    first_nz = np.argmax(vectors != 0, axis=1)
    positive = vectors[np.arange(n), first_nz] > 0
    idx = np.flatnonzero(positive)
    if 2 * len(idx) != n:
        return None
    return idx


_EXPECTED_DOTS = (-32.0, -16.0, -8.0, 0.0, 8.0, 16.0, 32.0)


def _block_count_columns(D: np.ndarray, offset_counts: np.ndarray) -> None:
    """Per-column counts of each dot value in a float32 block, accumulated
    into offset_counts (shape (65, n_cols)).  Probes the shell's admissible
    values first and falls back to exact 65-bin counting for generic data."""
    matched = 0
    for v in _EXPECTED_DOTS:
        col = (D == np.float32(v)).sum(axis=0, dtype=np.int64)
        offset_counts[int(v) + SHELL_NORM] += col
        matched += int(col.sum())
    if matched != D.size:
        for v in _EXPECTED_DOTS:
            offset_counts[int(v) + SHELL_NORM] -= (D == np.float32(v)).sum(
                axis=0, dtype=np.int64
            )
        n_cols = D.shape[1]
        Du = (D + np.float32(SHELL_NORM)).astype(np.int64)
        Du += 65 * np.arange(n_cols, dtype=np.int64)[None, :]
        flat = Du.ravel()
        binned = np.zeros(65 * n_cols, dtype=np.int64)
        for i in range(0, flat.size, 1 << 24):
            binned += np.bincount(flat[i : i + (1 << 24)], minlength=65 * n_cols)
        offset_counts += binned.reshape(n_cols, 65).T


def _block_histogram(D: np.ndarray, hist: np.ndarray) -> None:
    """Global counts of each dot value in a float32 block (65-bin offset)."""
    matched = 0
    for v in _EXPECTED_DOTS:
        c = int(np.count_nonzero(D == np.float32(v)))
        hist[int(v) + SHELL_NORM] += c
        matched += c
    if matched != D.size:
        # generic shells: fall back to exact 65-bin counting for this block
        for v in _EXPECTED_DOTS:
            hist[int(v) + SHELL_NORM] -= int(np.count_nonzero(D == np.float32(v)))
        Du = (D + np.float32(SHELL_NORM)).astype(np.uint8)
        flat = Du.ravel()
        for i in range(0, flat.size, 1 << 24):
            hist += np.bincount(flat[i : i + (1 << 24)], minlength=65)


def _pair_histogram_ints(vectors: np.ndarray, block: int) -> np.ndarray:
    """Ordered-pair dot-value counts (65-bin, diagonal removed)."""
    n = len(vectors)
    hist = np.zeros(65, dtype=np.int64)
    if n <= 2048:
        D = vectors.astype(np.int64) @ vectors.astype(np.int64).T
        for v, c in zip(*np.unique(D, return_counts=True)):
            hist[int(v) + SHELL_NORM] += int(c)
    else:
        F = _as_float32(vectors)
        for j0 in range(0, n, block):
            D = F @ F[j0 : j0 + block].T
            _block_histogram(D, hist)
    hist[2 * SHELL_NORM] -= n  # remove the diagonal
    if hist[2 * SHELL_NORM] < 0:
        raise AssertionError("pair pass lost diagonal entries")
    return hist


def histogram(shell: Shell, block: int = _DEFAULT_BLOCK) -> InnerProductHistogram:
    """Exact inner-product counts over all N(N-1) ordered pairs."""
    vectors = shell.vectors
    n = len(vectors)
    half = _antipodal_half(vectors) if n > 2048 else None
    if half is None:
        hist = _pair_histogram_ints(vectors, block)
    else:
        ca = _pair_histogram_ints(vectors[half], block)
        if ca[0] or ca[2 * SHELL_NORM]:
            raise AssertionError("duplicate or antipodal vectors inside the half set")
        hist = np.zeros(65, dtype=np.int64)
        folded = ca + ca[::-1]
        hist[1 : 2 * SHELL_NORM] = 2 * folded[1 : 2 * SHELL_NORM]
        hist[0] = n  # each x pairs with -x
    counts = {
        Fraction(v - SHELL_NORM, SHELL_NORM): int(c)
        for v, c in enumerate(hist)
        if c
    }
    out = InnerProductHistogram(counts, n)
    if out.total() != n * (n - 1):
        raise AssertionError("histogram total does not match N(N-1)")
    return out


def histogram_from_distribution(
    dist: DistanceDistribution, n_points: int
) -> InnerProductHistogram:
    """The ordered-pair histogram a distance-invariant code with this
    per-point distribution would have (counts[t] = N * A_t for t != 1)."""
    counts = {t: n_points * c for t, c in dist.a.items() if t != 1}
    return InnerProductHistogram(counts, n_points)


def distance_distribution_at(shell: Shell, x) -> DistanceDistribution:
    """Exact counts of shell points at each inner product from x (x itself
    contributes A_1 = 1)."""
    xi = shell.index_of(x)
    if xi < 0:
        raise ValueError("point is not in the shell")
    dots = shell.vectors.astype(np.int32) @ np.asarray(x, dtype=np.int32)
    vals, cnts = np.unique(dots, return_counts=True)
    return DistanceDistribution(
        {Fraction(int(v), SHELL_NORM): int(c) for v, c in zip(vals, cnts)}
    )


def _fold_counts(per_col: np.ndarray) -> np.ndarray:
    return per_col + per_col[::-1]


def check_distance_invariance(
    shell: Shell,
    sample: int | str = 1000,
    seed: int = 0,
    block: int = _DEFAULT_BLOCK,
) -> InvarianceReport:
    """Verify that every (checked) point sees the same distance distribution.

    ``sample=ALL`` runs the gated full pass: per-point distributions for all
    N points.  On an antipodal shell this folds onto a half set: the counts
    seen from -x are the t -> -t mirror of those from x, so equality of the
    folded half-set rows is equivalent to full invariance.
    """
    vectors = shell.vectors
    n = len(vectors)
    if sample == ALL:
        half = _antipodal_half(vectors) if n > 2048 else None
        if half is not None:
            sub = vectors[half]
            index_map = half
            fold = True
        else:
            sub = vectors
            index_map = np.arange(n)
            fold = False
        m = len(sub)
        per_col = np.zeros((65, m), dtype=np.int64)
        if n <= 2048:
            D = vectors.astype(np.int64) @ sub.astype(np.int64).T
            for v in range(-SHELL_NORM, SHELL_NORM + 1):
                per_col[v + SHELL_NORM] = (D == v).sum(axis=0)
        else:
            F = _as_float32(sub if fold else vectors)
            right = _as_float32(sub)
            for j0 in range(0, m, block):
                D = F @ right[j0 : j0 + block].T
                _block_count_columns(D, per_col[:, j0 : j0 + block])
        if fold:
            # row-vs-half-set counts; self pair sits at +32, no antipode inside
            if per_col[0].any():
                raise AssertionError("antipodal pair inside the half set")
            per_col[2 * SHELL_NORM] -= 1
            if (per_col[2 * SHELL_NORM] < 0).any() or per_col[2 * SHELL_NORM].any():
                raise AssertionError("duplicate vectors in the half set")
            folded = _fold_counts(per_col)
            folded[0] = 1  # the antipode of each point
            folded[2 * SHELL_NORM] = 1  # the point itself (A_1 = 1 convention)
            table = folded
        else:
            # raw +32 column counts are exactly the self pair, i.e. A_1 = 1
            table = per_col
        mode = "full"
        checked = n
    else:
        k = min(int(sample), n)
        rng = np.random.default_rng(seed)
        index_map = np.sort(rng.choice(n, size=k, replace=False))
        sub = vectors[index_map]
        table = np.zeros((65, k), dtype=np.int64)
        if n <= 2048:
            D = vectors.astype(np.int64) @ sub.astype(np.int64).T
            for v in range(-SHELL_NORM, SHELL_NORM + 1):
                table[v + SHELL_NORM] = (D == v).sum(axis=0)
        else:
            F = _as_float32(vectors)
            right = _as_float32(sub)
            for j0 in range(0, k, block):
                D = F @ right[j0 : j0 + block].T
                _block_count_columns(D, table[:, j0 : j0 + block])
        mode = "sampled"
        checked = k

    ref = table[:, 0]
    same = (table == ref[:, None]).all(axis=0)
    if not same.all():
        j = int(np.flatnonzero(~same)[0])
        return InvarianceReport(
            False,
            None,
            (
                (int(index_map[0]), _dist_from_column(table[:, 0])),
                (int(index_map[j]), _dist_from_column(table[:, j])),
            ),
            checked,
            mode,
        )
    return InvarianceReport(True, _dist_from_column(ref), None, checked, mode)


def _dist_from_column(col: np.ndarray) -> DistanceDistribution:
    return DistanceDistribution(
        {
            Fraction(v - SHELL_NORM, SHELL_NORM): int(c)
            for v, c in enumerate(col)
            if c
        }
    )


def moments(
    shell: Shell, upto: int, hist: InnerProductHistogram | None = None
) -> MomentVector:
    """Exact Gegenbauer moments M_i = sum over ordered pairs (diagonal
    included) of P_i at the inner products, for i = 1..upto."""
    if hist is None:
        hist = histogram(shell)
    n = hist.n_points
    values = []
    for i in range(1, upto + 1):
        p = gegenbauer_poly(shell.dim, i)
        m = Fraction(n)  # diagonal: N * P_i(1) = N
        for t, c in hist.counts.items():
            m += c * p(t)
        values.append(m)
    return MomentVector(shell.dim, tuple(values))


@dataclass(frozen=True)
class StrengthReport:
    tau: int
    extra_vanishing: tuple
    moments: MomentVector


def design_strength(
    shell: Shell, cap: int = 12, hist: InnerProductHistogram | None = None
) -> StrengthReport:
    """Largest tau with M_1 = ... = M_tau = 0, plus higher vanishing moments
    up to the cap."""
    mv = moments(shell, cap, hist)
    tau = 0
    while tau < cap and mv[tau + 1] == 0:
        tau += 1
    extra = tuple(i for i in range(tau + 2, cap + 1) if mv[i] == 0)
    return StrengthReport(tau, extra, mv)


def quadrature_check(
    dist: DistanceDistribution, p: Polynomial, n: int, N: int, tau: int
) -> QuadratureVerdict:
    """Check N*f_0 = sum_t A_t p(t) exactly, f_0 from the Gegenbauer
    expansion.  Degrees above the declared design strength only warn: the
    identity is then not guaranteed, but may still be reported."""
    f0 = gegenbauer_expand(n, p).coeffs[0]
    lhs = N * f0
    rhs = sum((c * p(t) for t, c in dist.a.items()), Fraction(0))
    warning = None
    if p.degree > tau:
        warning = f"degree {p.degree} exceeds design strength {tau}; identity not guaranteed"
    return QuadratureVerdict(lhs == rhs, lhs, rhs, warning)


def _solve_exact(A: list, b: list) -> list:
    """Gaussian elimination over Fraction with partial pivoting by nonzero."""
    m = len(A)
    M = [row[:] + [b[i]] for i, row in enumerate(A)]
    for col in range(m):
        piv = next((r for r in range(col, m) if M[r][col] != 0), None)
        if piv is None:
            raise ValueError("singular system (duplicate quadrature nodes?)")
        M[col], M[piv] = M[piv], M[col]
        inv = Fraction(1) / M[col][col]
        M[col] = [v * inv for v in M[col]]
        for r in range(m):
            if r != col and M[r][col] != 0:
                f = M[r][col]
                M[r] = [v - f * w for v, w in zip(M[r], M[col])]
    return [M[r][m] for r in range(m)]


def distribution_from_design(
    I, N: int, n: int, tau: int, require_integral: bool = True
) -> DistanceDistribution:
    """Recover the distance distribution of a distance-invariant tau-design
    from its inner-product set alone, by solving the quadrature identities
    for the monomials 1, t, ..., t^d on the nodes I and 1 (a Vandermonde
    system; d = |I| must be at most tau - 1)."""
    nodes = sorted(Fraction(t) for t in I)
    d = len(nodes)
    if d > tau - 1:
        raise ValueError(f"|I| = {d} exceeds tau - 1 = {tau - 1}")
    if len(set(nodes)) != d or Fraction(1) in nodes:
        raise ValueError("singular system: duplicate quadrature nodes")
    pts = nodes + [Fraction(1)]
    A = [[t**k for t in pts] for k in range(d + 1)]
    b = [N * gegenbauer_expand(n, Polynomial.monomial(k)).coeffs[0] for k in range(d + 1)]
    sol = _solve_exact(A, b)
    for t, a in zip(pts, sol):
        if a < 0:
            raise ValueError(f"negative distribution entry A_{t} = {a}")
        if require_integral and a.denominator != 1:
            raise ValueError(f"non-integral distribution entry A_{t} = {a}")
    return DistanceDistribution(
        {t: (int(a) if a.denominator == 1 else a) for t, a in zip(pts, sol)}
    )

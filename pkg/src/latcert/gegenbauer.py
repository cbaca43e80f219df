"""Normalized Gegenbauer basis for a given dimension, with exact conversions.

For dimension n the polynomials P_i are orthogonal on [-1, 1] with weight
(1 - t^2)^((n-3)/2) and normalized so that P_i(1) = 1.  They satisfy the
three-term recurrence

    (i + n - 2) P_{i+1}(t) = (2i + n - 2) t P_i(t) - i P_{i-1}(t),

with P_0 = 1 and P_1 = t.  All coefficients are exact rationals, which is
what makes the expansion tables in the bound certificates reproducible
bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exactmath import Polynomial, rat

# Basis polynomials are precomputed up to this degree; raise it if a deeper
# expansion is ever needed (all built-in certificates stop at degree 10).
MAX_DEGREE = 64


@lru_cache(maxsize=None)
def _basis(n: int, upto: int) -> tuple:
    if n < 2:
        raise ValueError(f"invalid dimension n={n}; need n >= 2")
    polys = [Polynomial([1])]
    if upto >= 1:
        polys.append(Polynomial([0, 1]))
    t = Polynomial([0, 1])
    for i in range(1, upto):
        nxt = (t * polys[i]).scale(Fraction(2 * i + n - 2, i + n - 2)) - polys[
            i - 1
        ].scale(Fraction(i, i + n - 2))
        polys.append(nxt)
    return tuple(polys)


def gegenbauer_poly(n: int, i: int) -> Polynomial:
    """The degree-i normalized Gegenbauer polynomial for dimension n."""
    if i < 0:
        raise ValueError("index must be nonnegative")
    if i > MAX_DEGREE:
        raise ValueError(f"degree {i} above the configured cap {MAX_DEGREE}")
    return _basis(n, i)[i]


@dataclass(frozen=True)
class GegExpansion:
    """Coefficients f_0..f_d of f(t) = sum f_i P_i(t) in dimension n.

    Since every basis element is 1 at t = 1, the coefficients sum to f(1).
    """

    dimension: int
    coeffs: tuple

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i]

    def value_at_1(self):
        return sum(self.coeffs)


def gegenbauer_expand(n: int, p: Polynomial) -> GegExpansion:
    """Exact basis conversion by back-substitution against the triangular
    change-of-basis matrix (P_k has degree exactly k)."""
    if p.degree > MAX_DEGREE:
        raise ValueError(f"degree {p.degree} above the configured cap {MAX_DEGREE}")
    if p.is_zero():
        return GegExpansion(n, (Fraction(0),))
    d = p.degree
    basis = _basis(n, d)
    residual = list(p.coeffs)
    out = [Fraction(0)] * (d + 1)
    for k in range(d, -1, -1):
        lead = basis[k].coeffs[k]
        fk = residual[k] / lead
        out[k] = fk
        for j, c in enumerate(basis[k].coeffs):
            residual[j] = residual[j] - fk * c
    return GegExpansion(n, tuple(out))


def reconstruct(e: GegExpansion) -> Polynomial:
    """Inverse of gegenbauer_expand: sum of f_i P_i as a dense polynomial."""
    p = Polynomial()
    for i, c in enumerate(e.coeffs):
        p = p + gegenbauer_poly(e.dimension, i).scale(c)
    return p


@dataclass(frozen=True)
class PDVerdict:
    positive_definite: bool
    negative_indices: tuple = ()


def is_positive_definite(e: GegExpansion) -> PDVerdict:
    """True iff every expansion coefficient is >= 0 (the basis is positive
    definite on the sphere, so such an f has nonnegative moments on any code)."""
    bad = tuple(i for i, c in enumerate(e.coeffs) if c < 0)
    return PDVerdict(not bad, bad)


def weight_moment(n: int, k: int) -> Fraction:
    """k-th moment of the Gegenbauer weight on [-1,1], normalized to mass 1.

    For even k = 2m this is (2m-1)!! / (n (n+2) ... (n+2m-2)); odd moments
    vanish.  The normalization makes weight_moment(n, 0) = 1, so applying
    this functional to a polynomial yields exactly its 0-th Gegenbauer
    coefficient; it is the independent integration oracle used by the tests.
    """
    if n < 2:
        raise ValueError(f"invalid dimension n={n}; need n >= 2")
    if k < 0:
        raise ValueError("moment order must be nonnegative")
    if k % 2 == 1:
        return Fraction(0)
    num = 1
    den = 1
    for j in range(k // 2):
        num *= 2 * j + 1
        den *= n + 2 * j
    return Fraction(num, den)


def integrate_weighted(n: int, p: Polynomial) -> Fraction:
    """Weight-normalized integral of p; equals the 0-th expansion coefficient."""
    return sum(
        (c * weight_moment(n, k) for k, c in enumerate(p.coeffs)), Fraction(0)
    )

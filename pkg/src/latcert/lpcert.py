"""Machine-checked linear-programming bound certificates.

A max-code certificate witnesses |C| <= f(1)/f_0 for every T-avoiding
s-code of assumed design strength: the polynomial must be <= 0 on
[-1, s] \\ T and its Gegenbauer coefficients above the assumed strength
must be nonnegative.  A min-design certificate witnesses |C| >= f(1)/f_0
for every T-avoiding tau-design: the polynomial must have degree <= tau
and be >= 0 on [-1, 1] \\ T.  Everything is evaluated exactly; an invalid
certificate always carries a rational witness.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactmath import (
    FactoredPolynomial,
    IntervalRegion,
    SignReport,
    closed_interval,
    factored,
    fmt,
    open_interval,
    poly_to_json,
    region_difference,
    region_union,
    sign_on_region,
)
from .gegenbauer import GegExpansion, gegenbauer_expand


@dataclass(frozen=True)
class BoundCertificate:
    kind: str  # "max_code" | "min_design"
    polynomial: FactoredPolynomial
    dimension: int
    avoided: IntervalRegion
    expansion: GegExpansion
    sign_report: SignReport
    bound: Fraction
    valid: bool
    s_max: Fraction | None = None
    assumed_strength: int | None = None
    tau: int | None = None
    failure: str | None = None

    def to_json_dict(self) -> dict:
        d = {
            "kind": self.kind,
            "polynomial": poly_to_json(self.polynomial),
            "dimension": self.dimension,
            "T": str(self.avoided),
            "coefficients": [fmt(c) for c in self.expansion.coeffs],
            "sign_report": {
                "verdict": self.sign_report.verdict,
                "positive_witness": _fmt_opt(self.sign_report.positive_witness),
                "negative_witness": _fmt_opt(self.sign_report.negative_witness),
            },
            "bound": fmt(self.bound),
            "valid": self.valid,
        }
        if self.kind == "max_code":
            d["s"] = fmt(self.s_max)
            d["assumed_strength"] = self.assumed_strength
        else:
            d["tau"] = self.tau
        if self.failure:
            d["failure"] = self.failure
        return d


def _fmt_opt(x):
    return None if x is None else fmt(x)


def certify_max_code(
    p: FactoredPolynomial,
    n: int,
    T: IntervalRegion,
    s,
    strength: int,
) -> BoundCertificate:
    """Certificate that a T-avoiding s-code of design strength >= `strength`
    has at most f(1)/f_0 points."""
    expansion = gegenbauer_expand(n, p.expand())
    f0 = expansion.coeffs[0]
    if f0 <= 0:
        raise ValueError(f"f_0 = {f0} is not positive; no bound derivable")
    region = region_difference(closed_interval(-1, Fraction(s)), T)
    report = sign_on_region(p, region)
    failure = None
    if report.positive_witness is not None:
        failure = (
            f"polynomial is positive at t = {report.positive_witness} "
            f"inside [-1,{s}] minus T"
        )
    bad = [
        i
        for i in range(strength + 1, len(expansion.coeffs))
        if expansion.coeffs[i] < 0
    ]
    if failure is None and bad:
        failure = (
            f"negative Gegenbauer coefficient f_{bad[0]} = "
            f"{expansion.coeffs[bad[0]]} above assumed strength {strength}"
        )
    bound = p(Fraction(1)) / f0
    return BoundCertificate(
        kind="max_code",
        polynomial=p,
        dimension=n,
        avoided=T,
        expansion=expansion,
        sign_report=report,
        bound=bound,
        valid=failure is None,
        s_max=Fraction(s),
        assumed_strength=strength,
        failure=failure,
    )


def certify_min_design(
    p: FactoredPolynomial,
    n: int,
    T: IntervalRegion,
    tau: int,
) -> BoundCertificate:
    """Certificate that a T-avoiding spherical tau-design has at least
    f(1)/f_0 points."""
    if p.degree > tau:
        raise ValueError(
            f"degree {p.degree} exceeds tau = {tau}; the design identity is unavailable"
        )
    expansion = gegenbauer_expand(n, p.expand())
    f0 = expansion.coeffs[0]
    if f0 <= 0:
        raise ValueError(f"f_0 = {f0} is not positive; no bound derivable")
    region = region_difference(closed_interval(-1, 1), T)
    report = sign_on_region(p, region)
    failure = None
    if report.negative_witness is not None:
        failure = (
            f"polynomial is negative at t = {report.negative_witness} "
            f"inside [-1,1] minus T"
        )
    bound = p(Fraction(1)) / f0
    return BoundCertificate(
        kind="min_design",
        polynomial=p,
        dimension=n,
        avoided=T,
        expansion=expansion,
        sign_report=report,
        bound=bound,
        valid=failure is None,
        tau=tau,
        failure=failure,
    )


# ---------------------------------------------------------------------------
# Built-in polynomials with their reference expansions as regression fixtures.

H = Fraction(1, 2)
Q = Fraction(1, 4)

# degree-10 polynomial of the maximal-code bound:
# (t+1)(t+1/2)^2(t+1/4)^2 t (t-1/4)(t-1/2)^3
MAX_CODE_POLY = factored(
    1, [(-1, 1), (-H, 2), (-Q, 2), (0, 1), (Q, 1), (H, 3)]
)
MAX_CODE_EXPANSION = tuple(
    Fraction(*pq)
    for pq in [
        (5, 1114112),
        (65, 992256),
        (-31, 196608),
        (-93, 165376),
        (217, 417792),
        (899, 58368),
        (2387, 188416),
        (20119, 894976),
        (0, 1),
        (3441, 11776),
        (14911, 47104),
    ]
)

# degree-7 polynomial of the tight-design bound:
# t(t+1)(t+1/2)^2(t+1/4)(t-1/4)(t-1/2)
MIN_DESIGN_POLY = factored(
    1, [(0, 1), (-1, 1), (-H, 2), (-Q, 1), (Q, 1), (H, 1)]
)
MIN_DESIGN_F0 = Fraction(1, 69632)
MIN_DESIGN_F1 = Fraction(135, 64)  # f(1)

# seventh partial product of the energy interpolant:
# (t+1)^2(t+1/2)(t+1/4) t^2 (t-1/4)
P7_POLY = factored(1, [(-1, 2), (-H, 1), (-Q, 1), (0, 2), (Q, 1)])
P7_EXPANSION = tuple(
    Fraction(*pq)
    for pq in [
        (97, 104448),
        (619, 41344),
        (12245, 116736),
        (2139, 5168),
        (13981, 13056),
        (4433, 2432),
        (11935, 7296),
        (341, 608),
    ]
)


@dataclass(frozen=True)
class BuiltinPolynomial:
    name: str
    polynomial: FactoredPolynomial
    value_at_1: Fraction
    f0: Fraction
    reference_coeffs: tuple | None = None


def builtin_polynomials() -> list:
    return [
        BuiltinPolynomial(
            "maxcode",
            MAX_CODE_POLY,
            Fraction(675, 1024),
            MAX_CODE_EXPANSION[0],
            MAX_CODE_EXPANSION,
        ),
        BuiltinPolynomial(
            "mindesign", MIN_DESIGN_POLY, MIN_DESIGN_F1, MIN_DESIGN_F0, None
        ),
        BuiltinPolynomial(
            "p7", P7_POLY, Fraction(45, 8), P7_EXPANSION[0], P7_EXPANSION
        ),
    ]


def builtin_polynomial(name: str) -> BuiltinPolynomial:
    for b in builtin_polynomials():
        if b.name == name:
            return b
    raise ValueError(f"unknown builtin polynomial {name!r}")


# the avoided sets of the two built-in bounds
MAX_CODE_T = open_interval(0, Q)
MIN_DESIGN_T = region_union(open_interval(-Q, 0), open_interval(Q, H))

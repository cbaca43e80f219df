from fractions import Fraction

import mpmath as mp
import pytest

from latcert.exactmath import EMPTY_REGION, Polynomial, open_interval, rat
from latcert.energycert import (
    PAPER_NODES,
    T_SYMMETRIC,
    NodeMultiset,
    Potential,
    code_energy,
    design_distribution,
    divided_differences,
    energy_lower_bound,
    error_sign_check,
    expt,
    gauss,
    hermite_interpolant,
    invlin,
    node_polynomial,
    partial_products,
    poly_potential,
    potential_by_spec,
    riesz,
)
from latcert.lpcert import P7_EXPANSION
from latcert.sphercode import InnerProductHistogram

H = Fraction(1, 2)
Q = Fraction(1, 4)
N = 146880

INVLIN_BOUND = N * (
    Fraction(1, 4)
    + 1240 * Fraction(1, 3)
    + 31744 * Fraction(2, 5)
    + 80910 * Fraction(1, 2)
    + 31744 * Fraction(2, 3)
    + 1240
)


def test_node_multiset_validation():
    with pytest.raises(ValueError, match="ascending"):
        NodeMultiset((Fraction(1), Fraction(0)))
    with pytest.raises(ValueError, match="twice"):
        NodeMultiset((Fraction(0), Fraction(0), Fraction(0)))
    assert len(PAPER_NODES) == 8


def test_leading_divided_difference_of_monic_degree7():
    dd = divided_differences(poly_potential(Polynomial.monomial(7)), PAPER_NODES)
    assert dd[7] == 1


def test_divided_differences_invlin_all_nonnegative():
    dd = divided_differences(invlin(), PAPER_NODES)
    assert len(dd) == 8
    assert all(d >= 0 for d in dd)
    assert dd[0] == Fraction(1, 4)  # h(-1)


def test_divided_differences_constant_potential():
    dd = divided_differences(poly_potential(Polynomial([Fraction(5)])), PAPER_NODES)
    assert dd[0] == 5
    assert all(d == 0 for d in dd[1:])


def test_hermite_reproduces_degree7_polynomial():
    p = Polynomial([1, -2, Fraction(3, 7), 0, 1, 0, Fraction(-1, 3), 2])
    h = poly_potential(p)
    assert hermite_interpolant(h, PAPER_NODES) == p


def test_hermite_invlin_values():
    h7 = hermite_interpolant(invlin(), PAPER_NODES)
    assert h7.degree <= 7
    assert h7(Fraction(-1, 2)) == Fraction(1, 3)
    assert h7.derivative()(Fraction(0)) == Fraction(1, 2)  # doubled node
    assert h7(Fraction(1, 2)) == 1


def test_hermite_matches_values_and_derivatives_at_all_nodes():
    h = invlin()
    h7 = hermite_interpolant(h, PAPER_NODES)
    d7 = h7.derivative()
    seen = set()
    for t in PAPER_NODES.nodes:
        assert h7(t) == h.value(t)
        if t in seen:
            assert d7(t) == h.derivative(t)
        seen.add(t)


def test_partial_products_reference_p7():
    pps = partial_products(PAPER_NODES, 32)
    assert len(pps) == 7
    assert pps[6].expansion.coeffs == P7_EXPANSION
    assert all(pp.pd.positive_definite for pp in pps)
    assert sum(pps[6].expansion.coeffs) == Fraction(45, 8)  # P_7(1)


def test_node_polynomial_structure():
    fp = node_polynomial(PAPER_NODES)
    assert fp.degree == 8
    assert dict(fp.factors)[Fraction(-1)] == 2
    assert dict(fp.factors)[Fraction(0)] == 2


def test_error_sign_nonnegative_outside_symmetric_T():
    rep = error_sign_check(PAPER_NODES, T_SYMMETRIC)
    assert rep.verdict == "nonnegative"


def test_node_polynomial_negative_inside_gap():
    fp = node_polynomial(PAPER_NODES)
    assert fp(Fraction(3, 8)) < 0


def test_error_sign_mixed_without_T():
    rep = error_sign_check(PAPER_NODES, EMPTY_REGION)
    assert rep.verdict == "mixed"
    assert node_polynomial(PAPER_NODES)(rep.negative_witness) < 0


def test_design_distribution_values():
    dist = design_distribution()
    assert dist.a[Fraction(0)] == 80910
    assert dist.total() == N


def test_energy_lower_bound_invlin():
    cert = energy_lower_bound(invlin())
    assert cert.valid
    assert cert.lower_bound == INVLIN_BOUND
    assert cert.dual_bound == INVLIN_BOUND  # the design quadrature identity
    assert cert.precision_digits is None


def test_energy_lower_bound_rejects_other_dimensions():
    with pytest.raises(ValueError, match="dimension 32"):
        energy_lower_bound(invlin(), n=16)


def test_energy_constant_potential():
    cert = energy_lower_bound(poly_potential(Polynomial([Fraction(3)])))
    assert cert.lower_bound == N * (N - 1) * 3
    assert all(d == 0 for d in cert.divided_differences[1:])


def test_energy_invalid_for_non_monotone_potential():
    cert = energy_lower_bound(poly_potential(Polynomial([0, 0, -1])))  # -t^2
    assert not cert.valid
    assert "divided difference" in cert.failure


def test_energy_attained_on_shell(rm_hist):
    h = invlin()
    cert = energy_lower_bound(h)
    energy = code_energy(rm_hist.result, h)
    assert energy == cert.lower_bound
    done = cert.with_energy(energy)
    assert done.gap == 0
    assert done.code_energy == energy


def test_code_energy_small_cases(rm_hist):
    two = InnerProductHistogram({Fraction(-1): 2}, 2)
    assert code_energy(two, poly_potential(Polynomial([0, 1]))) == -2
    # h(t) = t^2 on the shell: quadrature value 4590 minus the diagonal
    sq = code_energy(rm_hist.result, poly_potential(Polynomial.monomial(2)))
    assert sq == N * (4590 - 1)


def test_code_energy_singular_potential():
    sing = Potential(
        "invneg",
        lambda t: 1 / (2 + 2 * rat(t)),
        lambda t: -2 / (2 + 2 * rat(t)) ** 2,
        exact_on_rationals=True,
    )
    two = InnerProductHistogram({Fraction(-1): 2}, 2)
    with pytest.raises(ValueError, match="singular at t = -1"):
        code_energy(two, sing)


def test_dominance_at_support_points():
    # every support inner product is an interpolation node, so H_7 = h there
    h = invlin()
    h7 = hermite_interpolant(h, PAPER_NODES)
    for t in design_distribution().a:
        if t != 1:
            assert h7(t) == h.value(t)


def test_expt_certificate_at_precision():
    cert = energy_lower_bound(expt(), precision=60)
    assert cert.valid
    rel = abs(cert.dual_bound - cert.lower_bound) / cert.lower_bound
    assert rel < mp.mpf(10) ** -20
    assert cert.precision_digits == 60


def test_riesz_even_is_exact():
    r4 = riesz(4)
    assert r4.exact_on_rationals
    assert r4.value(Fraction(0)) == Fraction(1, 4)
    cert = energy_lower_bound(r4)
    assert cert.valid
    assert isinstance(cert.lower_bound, Fraction)
    assert cert.lower_bound == cert.dual_bound


def test_riesz_two_equals_invlin():
    r2, il = riesz(2), invlin()
    for t in PAPER_NODES.nodes:
        assert r2.value(t) == il.value(t)
        assert r2.derivative(t) == il.derivative(t)


def test_gauss_certificate():
    cert = energy_lower_bound(gauss(Fraction(1, 2)))
    assert cert.valid


def test_derivative_consistent_with_finite_differences():
    # the declared derivative of each inexact potential matches a central
    # difference at 60-digit precision
    eps = Fraction(1, 10**15)
    with mp.workdps(60):
        for h in (expt(), gauss(1), riesz(3)):
            for t in (Fraction(0), Fraction(1, 4), Fraction(-1, 2)):
                fd = (h.value(t + eps) - h.value(t - eps)) / (2 * mp.mpf(10) ** -15)
                assert abs(fd - h.derivative(t)) < mp.mpf(10) ** -20


def test_potential_by_spec_parsing():
    assert potential_by_spec("invlin").name == "invlin"
    assert potential_by_spec("riesz:4").name == "riesz:4"
    assert potential_by_spec("gauss:1/2").name == "gauss:1/2"
    with pytest.raises(ValueError, match="unknown potential"):
        potential_by_spec("coulomb")


def test_certificate_json_shape():
    cert = energy_lower_bound(invlin())
    d = cert.to_json_dict()
    assert d["kind"] == "energy_lower_bound"
    assert d["valid"] is True
    assert d["lower_bound"] == str(INVLIN_BOUND)
    assert d["dual_form"] == d["lower_bound"]
    assert len(d["divided_differences"]) == 8
    assert d["partial_products_positive_definite"] == [True] * 7

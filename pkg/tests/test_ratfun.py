from fractions import Fraction

import pytest

from helpers import build, example_plus_minus, group_for, theta_equation
from qdepend.constgroup import ConstGroupError
from qdepend.ratfun import (
    FactoredRatFun,
    MultFunction,
    RootRef,
    apply_phi,
    apply_phi_closed_form,
    apply_sigma_q,
    apply_sigma_zeta,
    combine,
    exponent_sums,
    sigma_q_ratio,
)

# exact values for t = 2 (zeta = -1)
VALUES = {"q": Fraction(3), "r0": Fraction(5), "r1": Fraction(7, 2), "lam": Fraction(11), "eps": -1}


def test_sigma_q_examples():
    g = group_for(3)
    z2 = FactoredRatFun(g, [], g.one(), 2)
    assert sigma_q_ratio(z2) == FactoredRatFun(g, [], g.q**2)
    lin = build(3, [[(0, 0, 1)]], group=g)
    assert apply_sigma_q(lin) == FactoredRatFun(g, lin.bases, g.q, 0, {RootRef(0, 0, -1): 1})
    a = example_plus_minus()
    shifted = apply_sigma_q(a)
    assert shifted.constant.is_one()
    assert all(ref.d == -1 for ref in shifted.factors)


def test_sigma_q_round_trip():
    a = build(3, [[(0, 0, 2), (1, 1, -1)], [(2, -1, 1)]], "eps_q", T=1)
    back = a._like(
        apply_sigma_q(a).constant * a.group.q ** -a.degree(),
        a.z_power,
        [(RootRef(r.orbit, r.k, r.d + 1), s) for r, s in apply_sigma_q(a).factors.items()],
    )
    assert back == a


def test_sigma_zeta_examples():
    a = example_plus_minus()
    assert apply_sigma_zeta(a, 0) == a
    s = apply_sigma_zeta(a, 1)
    assert s.factors == {RootRef(0, 0, 0): 1, RootRef(0, 1, 0): -1}
    assert s.constant.is_one()
    f = build(5, [[(1, 2, 3), (4, -1, -1)]], "q", T=2)
    g = f
    for _ in range(5):
        g = apply_sigma_zeta(g)
    assert g == f


def test_sigma_zeta_matches_expanded_evaluation():
    # f(zeta z) with exact rational arithmetic at t = 2
    f = build(2, [[(0, 1, 1), (1, -1, 2)], [(1, 0, -1)]], "eps_q", T=1)
    s = apply_sigma_zeta(f)
    for z in (Fraction(2), Fraction(-7, 3), Fraction(13, 5)):
        assert s.evaluate(z, VALUES) == f.evaluate(-z, VALUES)
        assert apply_sigma_q(f).evaluate(z, VALUES) == f.evaluate(3 * z, VALUES)


def test_combine_examples():
    a = example_plus_minus()
    one = combine(a, a, 1, -1)
    assert one.is_constant() and one.constant.is_one() and not one.factors
    lin = build(2, [[(0, 0, 1)]])
    assert (lin * lin).factors == {RootRef(0, 0, 0): 2}
    assert (a * apply_sigma_zeta(a)).is_constant()
    other = build(2, [[(0, 0, 1)]], group=group_for(3))
    with pytest.raises(ConstGroupError):
        combine(lin, other, 1, 1)


def test_apply_phi_examples():
    a = example_plus_minus()
    assert apply_phi(MultFunction((1, 0)), a) == a
    res = apply_phi(MultFunction((1, 1)), a)
    assert res.is_constant() and res.constant.is_one()
    for t in (2, 3, 4, 6):
        th = theta_equation(t)
        n = [0] * t
        n[0], n[1] = t, -t
        res = apply_phi(MultFunction(n), th)
        assert res.is_constant() and res.constant.is_one()


def test_apply_phi_length_mismatch():
    with pytest.raises(ValueError):
        apply_phi(MultFunction((1, 0, 0)), example_plus_minus())


def test_sigma_q_ratio_examples():
    g = group_for(2)
    one = FactoredRatFun(g, ["r0"])
    assert sigma_q_ratio(one) == one
    assert sigma_q_ratio(FactoredRatFun(g, ["r0"], g.one(), 3)) == FactoredRatFun(g, ["r0"], g.q**3)
    lin = build(2, [[(0, 0, 1)]], group=g)
    ratio = sigma_q_ratio(lin)
    assert ratio == FactoredRatFun(g, ["r0"], g.q, 0, {RootRef(0, 0, -1): 1, RootRef(0, 0, 0): -1})
    assert set(exponent_sums(ratio).values()) == {0}


def test_closed_form_agrees():
    f = build(3, [[(0, 0, 1), (2, 1, -2)], [(1, -1, 3)]], "eps_q", T=1)
    phi = MultFunction((2, -1, 4))
    assert apply_phi(phi, f) == apply_phi_closed_form(phi, f)


def test_json_round_trip_and_text():
    f = build(3, [[(1, 1, 2)], [(0, -2, -1)]], "q", T=-1)
    assert FactoredRatFun.from_json(f.group, f.bases, f.to_json()) == f
    assert str(f) == "q*z^-1*(z - zeta*q*r0)^2*(z - q^-2*r1)^-1"
    assert str(MultFunction((2, 0, -2))) == "x^2*sigma_zeta^2(x)^-2"
    assert str(MultFunction((0, 0))) == "1"


def test_window_and_degree():
    f = build(3, [[(1, 1, 2)], [(0, -2, -1)]], T=3)
    assert f.window() == (-2, 1)
    assert f.degree() == 4
    assert build(3, []).window() is None

import pytest
from hypothesis import given, settings, strategies as st

from qdepend.constgroup import (
    CaseTag,
    ConstGroup,
    ConstGroupError,
    classify_lambda,
    const_equal,
    meets_q_nontrivially,
    subgroup_member,
)


def test_const_equal_examples():
    g = ConstGroup(2)
    assert const_equal(g, g.zeta**2, g.one())
    rel = ConstGroup(4, ["lam"], relations=[{"lam": 2, "q": -2}])
    lam = rel.generator("lam")
    assert const_equal(rel, lam**2 * rel.q**-2, rel.one())
    g4 = ConstGroup(4)
    assert not const_equal(g4, g4.q, g4.zeta)


def test_mixed_groups_rejected():
    a, b = ConstGroup(2), ConstGroup(2, ["lam"])
    with pytest.raises(ConstGroupError):
        const_equal(a, a.q, b.q)
    with pytest.raises(ConstGroupError):
        a.q * b.q


def test_lambda_meets_q():
    g = ConstGroup(2, orders={"eps": 2})
    minus_q = g.generator("eps") * g.q
    assert meets_q_nontrivially(g, minus_q) == (2, 2)
    free = ConstGroup(3, ["lam"])
    assert meets_q_nontrivially(free, free.generator("lam")) is None
    assert not subgroup_member(free, free.generator("lam"), [free.q])
    # zeta is torsion; its relation with q only has v == 0
    assert meets_q_nontrivially(g, g.zeta) is None
    assert subgroup_member(g, g.q**3, [g.q])


def test_classify_examples():
    g = ConstGroup(2, orders={"eps": 2})
    minus_q = g.generator("eps") * g.q
    assert classify_lambda(g, g.one(), 0).case == CaseTag.CASE1
    assert classify_lambda(g, g.one(), 0).w == 1
    assert classify_lambda(g, minus_q, 1).case == CaseTag.CASE2
    c = classify_lambda(g, minus_q, 0)
    assert (c.case, c.uv, c.w) == (CaseTag.CASE1, (2, 2), None)
    free = ConstGroup(2, ["lam"])
    assert classify_lambda(free, free.generator("lam"), 0).case == CaseTag.CASE2


def test_bad_declarations():
    with pytest.raises(ConstGroupError):
        ConstGroup(3, relations=[{"q": 2}])
    with pytest.raises(ConstGroupError):
        ConstGroup(4, relations=[{"zeta": 2}])
    with pytest.raises(ConstGroupError):
        ConstGroup(2, ["q"])


def test_str_and_log():
    g = ConstGroup(3, orders={"eps": 2})
    x = g.generator("eps") * g.q
    assert str(x) == "q*eps"
    assert g.log_q(g.q**5) == 5
    assert g.log_q(x) is None
    assert g.order_of(g.zeta) == 3 and g.order_of(g.q) is None


exps = st.tuples(st.integers(-6, 6), st.integers(-6, 6), st.integers(-6, 6), st.integers(-6, 6))


@settings(max_examples=200, deadline=None, derandomize=True)
@given(st.integers(1, 6), exps, exps, st.integers(-1, 1))
def test_constgroup_properties(t, x, y, T):
    g = ConstGroup(t, ["lam"], {"eps": 2})
    a = g.element(dict(zip(g.names, x)))
    b = g.element(dict(zip(g.names, y)))
    # canonicalization is idempotent and compatible with products
    assert g.canonical(a.exps) == a.exps
    assert (a * b) / b == a
    assert const_equal(g, a * b, b * a)
    cls = classify_lambda(g, a, T)
    if cls.case == CaseTag.CASE1:
        assert T == 0
        if cls.w is not None:
            assert (a**cls.w).is_one()
        else:
            u, v = cls.uv
            assert u and v and a**u == g.q**v

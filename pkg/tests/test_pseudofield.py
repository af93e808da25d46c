import itertools
import random

import pytest

from qdepend.exactalg import CycNum
from qdepend.pseudofield import (
    Action,
    ComponentMap,
    PfElement,
    Pseudofield,
    TaylorError,
    enumerate_lifts,
    f_sigma1,
    gamma_mu,
    is_sigma_equivariant,
    quartic_split_ring,
    poly_image,
    taylor_hom,
)


def _random_element(pf, rng):
    return pf.element([rng.randint(-5, 5) for _ in range(pf.n)])


def test_f_sigma1_shapes():
    z2 = f_sigma1(1, [2])
    assert z2.n == 2 and z2.actions["rho1"].perm == (1, 0)
    z3 = f_sigma1(1, [3])
    assert z3.actions["rho1"].perm == (1, 2, 0)
    assert z3.is_simple(["rho1"])


def test_translation_action_klein():
    pf = f_sigma1(1, [2, 2])
    x = pf.element([10, 20, 30, 40])
    for mu in pf.group_elements:
        moved = pf.act_sigma1(mu, x)
        for tau in pf.group_elements:
            # (mu f)(tau) = f(mu^-1 tau)
            assert gamma_mu(pf, tau, moved) == gamma_mu(pf, pf.mul(pf.inv(mu), tau), x)


def test_gamma_mu_examples():
    pf = f_sigma1(1, [4])
    x = pf.element([3, 1, 4, 1])
    assert gamma_mu(pf, (0,), x) == CycNum.from_int(1, 3)
    for mu, tau in itertools.product(pf.group_elements, repeat=2):
        assert gamma_mu(pf, tau, pf.act_sigma1(mu, x)) == gamma_mu(pf, pf.mul(pf.inv(mu), tau), x)
    c = pf.scalar(7)
    assert {gamma_mu(pf, mu, c) for mu in pf.group_elements} == {CycNum.from_int(1, 7)}


def test_regular_action_is_free_and_transitive():
    for factors in ([2], [3], [4], [2, 2], [2, 3]):
        pf = f_sigma1(1, factors)
        assert pf.is_simple(pf.sigma1)
        seen = set()
        for mu in pf.group_elements:
            img = pf.index[pf.mul(mu, pf.group_elements[0])]
            seen.add(img)
        assert len(seen) == pf.n


@pytest.mark.parametrize("factors", [[2], [4], [2, 2]])
def test_taylor_hom_commutes_and_is_equivariant(factors):
    A = f_sigma1(1, factors)
    F = f_sigma1(1, factors)
    rng = random.Random(1)
    samples = [_random_element(A, rng) for _ in range(10)] + A.idempotents()
    for c in range(A.n):
        phi = ComponentMap(c)
        for mu in F.group_elements:
            Psi = taylor_hom(A, phi, mu, F)
            assert all(gamma_mu(F, mu, Psi(a)) == phi(a) for a in samples)
            assert is_sigma_equivariant(A, F, Psi, samples)


def test_taylor_identity_case():
    A = f_sigma1(1, [2, 2])
    Psi = taylor_hom(A, ComponentMap(0), (0, 0), A)
    rng = random.Random(2)
    for _ in range(5):
        a = _random_element(A, rng)
        assert Psi(a) == a


def test_taylor_lift_is_unique():
    for factors in ([2], [4], [2, 2]):
        A = f_sigma1(1, factors)
        F = f_sigma1(1, factors)
        mu = (1,) + (0,) * (len(factors) - 1)
        lifts = enumerate_lifts(A, ComponentMap(0), mu, F)
        assert len(lifts) == 1
        Psi = taylor_hom(A, ComponentMap(0), mu, F)
        for e in A.idempotents():
            assert Psi(e) == PfElement(cm(e) for cm in lifts[0])


def test_taylor_with_galois_sigma():
    # B = Q(i) with sigma = complex conjugation
    A = f_sigma1(4, [2], sigma_aut=3)
    F = f_sigma1(4, [2], sigma_aut=3)
    Psi = taylor_hom(A, ComponentMap(1), (1,), F)
    i = CycNum.zeta(4)
    samples = [A.element([i, 2]), A.element([1 + i, -i])]
    assert is_sigma_equivariant(A, F, Psi, samples)


def test_taylor_rejects_non_ring_map():
    A = f_sigma1(1, [2])

    def doubled(x):
        return x.coords[0] + x.coords[0]

    with pytest.raises(TaylorError):
        taylor_hom(A, doubled, (0,), A)
    with pytest.raises(TaylorError):
        taylor_hom(A, ComponentMap(0), (0,), f_sigma1(1, [3]))


def test_quartic_split_ring():
    pf = quartic_split_ring()
    consts = pf.constants_subring(["sigma"])
    assert consts.dimension == 2 and not consts.is_field
    assert [e.coords for e in consts.idempotents] == [
        pf.element([1, 0, 1, 0]).coords,
        pf.element([0, 1, 0, 1]).coords,
    ]
    x2 = poly_image(pf, [0, 0, 1])
    assert x2 == pf.element([1, -1, 1, -1])
    assert pf.act("sigma", x2) == x2
    # x^2 generates: 1 and x^2 span the same space as the two idempotents
    e0, e1 = consts.idempotents
    assert (pf.one() + x2) == e0 + e0 and (pf.one() - x2) == e1 + e1
    assert pf.is_simple() and not pf.is_simple(["sigma"])
    x = poly_image(pf, [0, 1])
    assert pf.act("sigma", x) == -x
    assert pf.act("rho", x) == PfElement(CycNum.zeta(4) * c for c in x.coords)


def test_constants_examples():
    pf = f_sigma1(1, [2, 2])
    full = pf.constants_subring()
    assert full.dimension == 1 and full.is_field
    trivial = pf.constants_subring([])
    assert trivial.dimension == pf.n
    # Galois twist shrinks the fixed field: conjugation on Q(i) fixes only Q
    conj = Pseudofield(4, 1, {"c": Action((0,), (3,))}, {"c": 2})
    info = conj.constants_subring()
    assert info.dimension is None and info.rank_over_q == 1


def test_idempotents_sum_to_one_and_are_permuted():
    pf = quartic_split_ring()
    idem = pf.idempotents()
    total = idem[0]
    for e in idem[1:]:
        total = total + e
    assert total == pf.one()
    for g in pf.actions:
        assert {pf.act(g, e) for e in idem} == set(idem)
    assert all(e.is_idempotent() for e in idem)


def test_two_components_trivial_action_not_simple():
    pf = Pseudofield(1, 2, {"s": Action.permutation([0, 1])}, {"s": None})
    assert not pf.is_simple()


def test_validation_errors():
    with pytest.raises(ValueError):
        Pseudofield(1, 2, {"s": Action.permutation([0, 0])})
    with pytest.raises(ValueError):
        Pseudofield(4, 1, {"s": Action((0,), (2,))})
    with pytest.raises(ValueError):
        Pseudofield(1, 3, {"s": Action.permutation([1, 2, 0])}, {"s": 2})
    with pytest.raises(ValueError):
        Pseudofield(
            1, 3,
            {"a": Action.permutation([1, 0, 2]), "b": Action.permutation([0, 2, 1])},
        )

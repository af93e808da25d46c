from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qdepend.exactalg import circulant
from qdepend.gm_subgroups import (
    EmptySolutionSet,
    MonomialEquation,
    MonomialSystem,
    group_structure,
    is_proper_subgroup,
    mult_function_rows,
    reduce_to_phi,
    satisfies,
    solve_system,
    torus_rows,
)


def test_circulant_group():
    g = group_structure(circulant([1, 0, 1]), 3)
    assert (g.free_rank, g.torsion, g.order) == (0, (2,), 2)
    assert g.element_strings() == ["(1, 1, 1)", "(-1, -1, -1)"]
    assert all(satisfies(circulant([1, 0, 1]), el) for el in g.elements)


def test_structure_examples():
    assert group_structure([[0, 0], [0, 0]], 2).to_json() == {
        "free_rank": 2, "torsion": [], "order": None, "elements": None,
    }
    for t in (2, 3, 5):
        row = [t] + [0] * (t - 1)
        g = group_structure([row], t)
        assert (g.free_rank, g.torsion) == (t - 1, (t,))
        assert not g.is_finite


def test_reduce_defG():
    # x * rho(x) = 1 on every idempotent, t = 3
    eqs = tuple(MonomialEquation(i, (1, 1, 0)) for i in range(3))
    sys = MonomialSystem(3, eqs)
    phi = reduce_to_phi(sys)
    assert sorted(phi.rows) == sorted(tuple(r) for r in circulant([1, 0, 1]))
    assert solve_system(sys).element_strings() == ["(1, 1, 1)", "(-1, -1, -1)"]


def test_reduce_trivial_and_square():
    sys = MonomialSystem(2, ())
    assert group_structure(reduce_to_phi(sys).matrix(), 2).free_rank == 2
    sys = MonomialSystem(2, (MonomialEquation(0, (2, 0)),))
    phi = reduce_to_phi(sys)
    assert phi.rows == ((2, 0), (0, 0))
    assert solve_system(sys).torsion == (2,)


def test_empty_solution_set():
    sys = MonomialSystem(2, (MonomialEquation(0, (1, 0), rhs=1),))
    assert solve_system(sys) is EmptySolutionSet
    assert solve_system(sys).to_json() == {"empty": True}


def test_validation():
    with pytest.raises(ValueError):
        MonomialSystem(3, (MonomialEquation(0, (1, 0)),))
    with pytest.raises(ValueError):
        MonomialSystem(2, (MonomialEquation(2, (1, 0)),))
    with pytest.raises(ValueError):
        reduce_to_phi(MonomialSystem(1, (MonomialEquation(0, (1,)), MonomialEquation(0, (2,)))))


def test_from_json():
    sys = MonomialSystem.from_json({"t": 3, "equations": [{"idempotent": 1, "exponents": [1, 1, 0]}]})
    assert sys.equations[0].target == 1


def test_proper_subgroup():
    assert is_proper_subgroup((1, 1))
    assert is_proper_subgroup((2, -2, 0))
    assert not is_proper_subgroup((0, 0, 0))


def test_phases_are_fractions():
    g = group_structure([[4, 0], [0, 6]], 2)
    assert g.order == 24
    assert all(isinstance(p, Fraction) for el in g.elements for p in el)
    assert len(set(g.elements)) == 24


equations = st.integers(2, 3).flatmap(
    lambda t: st.tuples(
        st.just(t),
        st.lists(
            st.tuples(st.integers(0, t - 1), st.lists(st.integers(-2, 2), min_size=t, max_size=t)),
            min_size=t,
            max_size=t,
        ),
    )
)


@settings(max_examples=200, deadline=None, derandomize=True)
@given(equations)
def test_reduction_preserves_solutions(data):
    t, raw = data
    sys = MonomialSystem(t, tuple(MonomialEquation(i, tuple(k)) for i, k in raw))
    direct = group_structure(torus_rows(sys), t)
    reduced = solve_system(sys)
    assert (direct.free_rank, direct.torsion) == (reduced.free_rank, reduced.torsion)
    if reduced.elements is not None:
        assert set(direct.elements) == set(reduced.elements)
        rows = torus_rows(sys)
        assert all(satisfies(rows, el) for el in reduced.elements)


@settings(max_examples=200, deadline=None, derandomize=True)
@given(st.lists(st.integers(-3, 3), min_size=2, max_size=5).filter(any))
def test_uniform_phi_is_proper(n):
    g = group_structure(mult_function_rows(n), len(n), enumerate_limit=0)
    assert g.free_rank < len(n)

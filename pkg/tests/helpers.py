"""Builders and random generators shared by the test modules."""

from __future__ import annotations

import random

from hypothesis import strategies as st

from qdepend.constgroup import ConstGroup
from qdepend.ratfun import FactoredRatFun, RootRef

LAMBDA_KINDS = ("one", "zeta", "q", "eps_q", "free")


def group_for(t: int) -> ConstGroup:
    """Group with q, zeta, a sign ``eps`` of order 2 and a free symbol ``lam``."""
    return ConstGroup(t, ["lam"], {"eps": 2})


def lambda_of(g: ConstGroup, kind: str, j: int = 1):
    return {
        "one": g.one(),
        "zeta": g.zeta**j,
        "q": g.q,
        "eps_q": g.generator("eps") * g.q,
        "free": g.generator("lam"),
    }[kind]


def build(t: int, orbits, lam=None, T: int = 0, group: ConstGroup | None = None) -> FactoredRatFun:
    """``orbits`` is a list of ``[(k, d, s), ...]``, one list per orbit."""
    g = group or group_for(t)
    factors = [(RootRef(i, k, d), s) for i, orb in enumerate(orbits) for k, d, s in orb]
    bases = [f"r{i}" for i in range(len(orbits))]
    if lam is None:
        lam = g.one()
    elif isinstance(lam, str):
        lam = lambda_of(g, lam)
    return FactoredRatFun(g, bases, lam, T, factors)


def example_plus_minus() -> FactoredRatFun:
    """``(z + 1) / (z - 1)`` with ``t = 2``: a zero at ``zeta * 1`` and a pole at ``1``."""
    return build(2, [[(1, 0, 1), (0, 0, -1)]])


def theta_equation(t: int) -> FactoredRatFun:
    """``a = -q z``: lambda = eps * q, T = 1, no finite roots."""
    return build(t, [], "eps_q", T=1)


def random_input(rng: random.Random, t: int, R: int, smax: int, drange: tuple[int, int], nfactors: int = 3):
    g = group_for(t)
    kind = rng.choice(LAMBDA_KINDS)
    lam = lambda_of(g, kind, rng.randrange(t))
    T = rng.choice((0, 1))
    orbits = []
    for _ in range(R):
        orb = []
        for _ in range(rng.randint(1, nfactors)):
            s = rng.choice([e for e in range(-smax, smax + 1) if e])
            orb.append((rng.randrange(t), rng.randint(*drange), s))
        orbits.append(orb)
    return build(t, orbits, lam, T, g)


@st.composite
def factored_inputs(draw, tmax: int = 6, Rmax: int = 3, smax: int = 3, dmax: int = 2, fmax: int = 4):
    t = draw(st.integers(2, tmax))
    g = group_for(t)
    kind = draw(st.sampled_from(LAMBDA_KINDS))
    lam = lambda_of(g, kind, draw(st.integers(0, t - 1)))
    T = draw(st.integers(-1, 1))
    R = draw(st.integers(0, Rmax))
    fac = st.tuples(
        st.integers(0, t - 1),
        st.integers(-dmax, dmax),
        st.integers(-smax, smax).filter(bool),
    )
    orbits = [draw(st.lists(fac, min_size=1, max_size=fmax)) for _ in range(R)]
    return build(t, orbits, lam, T, g)


def same_group_pair(draw_t: int):
    """Strategy for two inputs over one group (for multiplicativity checks)."""

    @st.composite
    def pair(draw):
        f = draw(factored_inputs(tmax=draw_t))
        fac = st.tuples(st.integers(0, f.t - 1), st.integers(-2, 2), st.integers(-3, 3).filter(bool))
        extra = [(RootRef(draw(st.integers(0, max(f.R - 1, 0))), k, d), s) for k, d, s in draw(st.lists(fac, max_size=4))]
        if not f.R:
            extra = []
        g = FactoredRatFun(f.group, f.bases, f.group.q ** draw(st.integers(-2, 2)), draw(st.integers(-1, 1)), extra)
        return f, g

    return pair()

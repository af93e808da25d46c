"""Finite difference pseudofields: products of cyclotomic fields with a group action.

A :class:`Pseudofield` is a finite product ``K x ... x K`` with
``K = Q(zeta_m)`` (``m = 1`` gives Q), together with commuting generator
actions.  A generator moves component ``c`` to component ``perm[c]`` and
applies the field automorphism ``zeta_m -> zeta_m^auts[c]`` on the way:

    (g . x)[perm[c]] = aut_{auts[c]}(x[c])

Quotients such as ``Q(i)[x]/(x^4 - 1)`` enter already split by CRT.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd
from typing import Callable, Iterable, Mapping, Sequence

from .exactalg import CycNum, euler_phi


@dataclass(frozen=True)
class Action:
    perm: tuple[int, ...]
    auts: tuple[int, ...]

    @classmethod
    def permutation(cls, perm: Sequence[int]) -> "Action":
        return cls(tuple(perm), (1,) * len(perm))

    def then(self, other: "Action", m: int) -> "Action":
        """The action "first self, then other"."""
        perm = tuple(other.perm[p] for p in self.perm)
        auts = tuple((other.auts[p] * a) % m if m > 1 else 1 for p, a in zip(self.perm, self.auts))
        return Action(perm, auts)


def _identity_action(n: int) -> Action:
    return Action(tuple(range(n)), (1,) * n)


class PfElement:
    __slots__ = ("coords",)

    def __init__(self, coords: Iterable[CycNum]):
        self.coords = tuple(coords)

    def __add__(self, other):
        return PfElement(a + b for a, b in zip(self.coords, other.coords))

    def __sub__(self, other):
        return PfElement(a - b for a, b in zip(self.coords, other.coords))

    def __mul__(self, other):
        return PfElement(a * b for a, b in zip(self.coords, other.coords))

    def __neg__(self):
        return PfElement(-a for a in self.coords)

    def __eq__(self, other):
        return isinstance(other, PfElement) and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def is_idempotent(self) -> bool:
        return self * self == self

    def __repr__(self):
        return "PfElement(" + ", ".join(str(c) for c in self.coords) + ")"


class Pseudofield:
    """Product of ``n`` copies of ``Q(zeta_m)`` with generator actions.

    ``orders[g]`` is the order of generator ``g`` in Sigma (None for the
    infinite generator of Sigma_0).  ``sigma1`` names the Sigma_1 generators in
    a fixed order.
    """

    def __init__(
        self,
        m: int,
        n: int,
        actions: Mapping[str, Action],
        orders: Mapping[str, int | None] | None = None,
        sigma1: Sequence[str] = (),
    ):
        self.m = m
        self.n = n
        self.actions = dict(actions)
        self.orders = dict(orders or {})
        self.sigma1 = tuple(sigma1)
        self._validate()

    def _validate(self) -> None:
        ident = _identity_action(self.n)
        for name, act in self.actions.items():
            if sorted(act.perm) != list(range(self.n)) or len(act.auts) != self.n:
                raise ValueError(f"action {name!r} is not a permutation of {self.n} components")
            if any(gcd(a, self.m) != 1 for a in act.auts):
                raise ValueError(f"action {name!r} uses a non-invertible exponent")
            order = self.orders.get(name)
            if order is not None and self.power(name, order) != ident:
                raise ValueError(f"action {name!r} does not have order dividing {order}")
        for g, h in itertools.combinations(self.actions, 2):
            if self.actions[g].then(self.actions[h], self.m) != self.actions[h].then(self.actions[g], self.m):
                raise ValueError(f"actions {g!r} and {h!r} do not commute")
        for g in self.sigma1:
            if self.orders.get(g) is None:
                raise ValueError(f"Sigma_1 generator {g!r} needs a finite order")

    def _norm(self, act: Action) -> Action:
        if self.m <= 2:
            return Action(act.perm, (1,) * self.n)
        return act

    def power(self, name: str, k: int) -> Action:
        act = self.actions[name]
        order = self.orders.get(name)
        if k < 0:
            if order is None:
                raise ValueError(f"negative powers of {name!r} need a finite order")
            k %= order
        out = _identity_action(self.n)
        for _ in range(k):
            out = out.then(act, self.m)
        return self._norm(out)

    # -- elements -----------------------------------------------------------

    def element(self, values: Sequence) -> PfElement:
        if len(values) != self.n:
            raise ValueError(f"expected {self.n} coordinates")
        return PfElement(v if isinstance(v, CycNum) else CycNum(self.m, v if isinstance(v, (list, tuple)) else [v])
                         for v in values)

    def scalar(self, value) -> PfElement:
        return self.element([value] * self.n)

    def one(self) -> PfElement:
        return self.scalar(1)

    def idempotents(self) -> list[PfElement]:
        return [self.element([int(i == c) for i in range(self.n)]) for c in range(self.n)]

    def apply(self, act: Action, x: PfElement) -> PfElement:
        out: list = [None] * self.n
        for c, (p, a) in enumerate(zip(act.perm, act.auts)):
            v = x.coords[c]
            out[p] = v.galois(a) if a != 1 else v
        return PfElement(out)

    def act(self, name: str, x: PfElement, k: int = 1) -> PfElement:
        return self.apply(self.power(name, k), x)

    def act_sigma1(self, mu: Sequence[int], x: PfElement) -> PfElement:
        """Apply the Sigma_1 element ``prod sigma1[i]^mu[i]``."""
        for name, e in zip(self.sigma1, mu):
            if e % self.orders[name]:
                x = self.act(name, x, e % self.orders[name])
        return x

    # -- structure ----------------------------------------------------------

    def orbits(self, gens: Iterable[str] | None = None) -> list[list[int]]:
        gens = list(self.actions if gens is None else gens)
        seen: set[int] = set()
        out = []
        for start in range(self.n):
            if start in seen:
                continue
            orbit = [start]
            seen.add(start)
            for c in orbit:
                for g in gens:
                    p = self.actions[g].perm[c]
                    if p not in seen:
                        seen.add(p)
                        orbit.append(p)
            out.append(sorted(orbit))
        return out

    def is_simple(self, gens: Iterable[str] | None = None) -> bool:
        """Transitivity on components, i.e. on the indecomposable idempotents."""
        return len(self.orbits(gens)) == 1

    def constants_subring(self, gens: Iterable[str] | None = None) -> "ConstantsInfo":
        """The subring fixed by every generator in ``gens``.

        Fixed elements are constant along orbits up to the transported field
        automorphisms, so the ring is ``prod_orbits K^{H_orbit}`` with
        ``H_orbit`` the automorphisms induced by the stabilizer.
        """
        gens = list(self.actions if gens is None else gens)
        orbits = self.orbits(gens)
        phi_m = euler_phi(self.m)
        degrees = []
        for orbit in orbits:
            H = self._stabilizer_auts(orbit[0], gens)
            degrees.append(phi_m // len(H))
        idempotents = [self.element([int(c in orbit) for c in range(self.n)]) for orbit in orbits]
        k_linear = all(d == phi_m for d in degrees)
        table = [[idempotents[i] if i == j else self.scalar(0) for j in range(len(orbits))]
                 for i in range(len(orbits))]
        return ConstantsInfo(
            dimension=len(orbits) if k_linear else None,
            rank_over_q=sum(degrees),
            idempotents=idempotents,
            multiplication_table=table,
            orbits=orbits,
        )

    def _stabilizer_auts(self, c0: int, gens: Sequence[str]) -> set[int]:
        # BFS over components, recording the automorphism that transports c0 there
        m = self.m if self.m > 2 else 1
        reach = {c0: 1}
        H = {1}
        queue = [c0]
        while queue:
            c = queue.pop()
            for g in gens:
                act = self.actions[g]
                p, a = act.perm[c], (act.auts[c] * reach[c]) % m if m > 1 else 1
                if p in reach:
                    # stabilizer element: reach[p]^{-1} * a
                    if m > 1:
                        H.add((a * pow(reach[p], -1, m)) % m)
                else:
                    reach[p] = a
                    queue.append(p)
        # close under multiplication
        changed = True
        while changed and m > 1:
            changed = False
            for x, y in list(itertools.product(H, H)):
                z = (x * y) % m
                if z not in H:
                    H.add(z)
                    changed = True
        return H

    def structure_report(self) -> dict:
        return {
            "components": self.n,
            "base_field": "Q" if self.m == 1 else f"Q(zeta_{self.m})",
            "action_tables": {g: {"perm": list(a.perm), "auts": list(a.auts)} for g, a in self.actions.items()},
        }


@dataclass
class ConstantsInfo:
    dimension: int | None  # over the base field, when the fixed ring is a K-subspace
    rank_over_q: int
    idempotents: list[PfElement]
    multiplication_table: list[list[PfElement]]
    orbits: list[list[int]]

    @property
    def idempotent_count(self) -> int:
        return len(self.idempotents)

    @property
    def is_field(self) -> bool:
        return len(self.idempotents) == 1

    def to_json(self) -> dict:
        return {
            "dimension": self.dimension,
            "rank_over_Q": self.rank_over_q,
            "idempotents": len(self.idempotents),
            "orbits": self.orbits,
            "is_field": self.is_field,
        }


# ---------------------------------------------------------------------------
# F_{Sigma_1}(B) and the Taylor homomorphism
# ---------------------------------------------------------------------------


class FSigma1(Pseudofield):
    """``{f : Sigma_1 -> B}`` with ``(mu f)(tau) = f(mu^{-1} tau)``.

    ``B = Q(zeta_m)`` carries the Sigma_0 automorphism ``zeta_m ->
    zeta_m^sigma_aut``, applied componentwise by ``sigma``.
    """

    def __init__(self, m: int, factors: Sequence[int], sigma_aut: int = 1):
        self.factors = tuple(factors)
        if not self.factors or any(f < 1 for f in self.factors):
            raise ValueError("Sigma_1 must be given as a nonempty list of cyclic orders")
        self.group_elements = list(itertools.product(*(range(f) for f in self.factors)))
        self.index = {g: i for i, g in enumerate(self.group_elements)}
        self.sigma_aut = sigma_aut % m if m > 2 else 1
        n = len(self.group_elements)
        actions = {"sigma": Action(tuple(range(n)), (self.sigma_aut,) * n)}
        orders: dict[str, int | None] = {"sigma": None}
        names = []
        for i, f in enumerate(self.factors):
            name = f"rho{i + 1}"
            names.append(name)
            e = tuple(int(j == i) for j in range(len(self.factors)))
            perm = tuple(self.index[self.mul(g, e)] for g in self.group_elements)
            actions[name] = Action.permutation(perm)
            orders[name] = f
        super().__init__(m, n, actions, orders, names)

    def mul(self, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
        return tuple((x + y) % f for x, y, f in zip(a, b, self.factors))

    def inv(self, a: Sequence[int]) -> tuple[int, ...]:
        return tuple((-x) % f for x, f in zip(a, self.factors))

    def base_sigma(self, v: CycNum) -> CycNum:
        return v.galois(self.sigma_aut) if self.sigma_aut != 1 else v

    def from_function(self, f: Callable[[tuple[int, ...]], object]) -> PfElement:
        return self.element([f(g) for g in self.group_elements])


def f_sigma1(m: int, factors: Sequence[int], sigma_aut: int = 1) -> FSigma1:
    return FSigma1(m, factors, sigma_aut)


def gamma_mu(pf: FSigma1, mu: Sequence[int], x: PfElement) -> CycNum:
    """Evaluation ``f -> f(mu)``."""
    return x.coords[pf.index[tuple(e % f for e, f in zip(mu, pf.factors))]]


@dataclass(frozen=True)
class ComponentMap:
    """The ring map ``K^n -> K``, ``x -> aut_j(x[component])``."""

    component: int
    aut: int = 1

    def __call__(self, x: PfElement) -> CycNum:
        v = x.coords[self.component]
        return v.galois(self.aut) if self.aut != 1 else v


class TaylorError(ValueError):
    pass


def _check_ring_map(A: Pseudofield, phi: Callable[[PfElement], CycNum]) -> None:
    idem = A.idempotents()
    one = A.one()
    if phi(one) != CycNum.from_int(A.m, 1):
        raise TaylorError("phi does not preserve 1")
    zeta = A.scalar(CycNum.zeta(A.m)) if A.m > 2 else A.scalar(2)
    for e, f in itertools.product(idem + [zeta], repeat=2):
        if phi(e * f) != phi(e) * phi(f) or phi(e + f) != phi(e) + phi(f):
            raise TaylorError("phi is not a ring homomorphism on the sampled basis")


def taylor_hom(
    A: Pseudofield,
    phi: Callable[[PfElement], CycNum],
    mu: Sequence[int],
    target: FSigma1,
) -> Callable[[PfElement], PfElement]:
    """``Phi_mu(a)(tau) = phi(mu tau^{-1} a)``, the unique Sigma-lift of ``phi``.

    ``A`` must share the Sigma_1 generator orders of ``target``; ``phi`` must
    be a Sigma_0-homomorphism into the base field of ``target``.
    """
    if tuple(A.orders[g] for g in A.sigma1) != target.factors:
        raise TaylorError("A and F_Sigma1(B) have different Sigma_1")
    _check_ring_map(A, phi)
    if "sigma" in A.actions:
        for e in A.idempotents() + [A.scalar(CycNum.zeta(A.m))]:
            if phi(A.act("sigma", e)) != target.base_sigma(phi(e)):
                raise TaylorError("phi does not commute with sigma")
    mu = tuple(mu)

    def lift(a: PfElement) -> PfElement:
        return target.from_function(lambda tau: phi(A.act_sigma1(target.mul(mu, target.inv(tau)), a)))

    return lift


def is_sigma_equivariant(
    A: Pseudofield, target: FSigma1, Psi: Callable[[PfElement], PfElement], samples: Iterable[PfElement]
) -> bool:
    """``Psi(g a) == g Psi(a)`` for every generator g of Sigma_1 (and sigma if present)."""
    names = list(A.sigma1) + (["sigma"] if "sigma" in A.actions and "sigma" in target.actions else [])
    for a in samples:
        for g in names:
            tg = g if g == "sigma" else target.sigma1[A.sigma1.index(g)]
            if Psi(A.act(g, a)) != target.act(tg, Psi(a)):
                return False
    return True


def quartic_split_ring() -> Pseudofield:
    """``Q(i)[x]/(x^4 - 1)`` split along ``x -> (1, i, -1, -i)``.

    ``sigma: x -> -x`` and ``rho: x -> i x``; on components ``c`` (the root
    ``i^c``) they read ``(sigma y)[c] = y[c + 2]`` and ``(rho y)[c] = y[c + 1]``.
    """
    n = 4
    sigma = Action.permutation([(c - 2) % n for c in range(n)])
    rho = Action.permutation([(c - 1) % n for c in range(n)])
    return Pseudofield(4, n, {"sigma": sigma, "rho": rho}, {"sigma": None, "rho": 4}, ["rho"])


def poly_image(pf: Pseudofield, coeffs: Sequence[int]) -> PfElement:
    """Image of ``sum coeffs[j] x^j`` in the split ring of :func:`quartic_split_ring`."""
    i = CycNum.zeta(4)
    vals = []
    for c in range(pf.n):
        root = i**c
        acc = CycNum.from_int(4, 0)
        for j, a in enumerate(coeffs):
            acc = acc + a * root**j
        vals.append(acc)
    return PfElement(vals)


def _unit_exponents(m: int) -> list[int]:
    return [a for a in range(1, max(m, 2)) if gcd(a, m) == 1] if m > 2 else [1]


def enumerate_lifts(
    A: Pseudofield,
    phi: Callable[[PfElement], CycNum],
    mu: Sequence[int],
    target: FSigma1,
) -> list[tuple[ComponentMap, ...]]:
    """Every ring map ``A -> F_Sigma1(B)`` that is a Sigma-map and restricts to ``phi`` at ``mu``.

    Ring maps ``K^n -> K^N`` fixing Q are tuples of component maps, one per
    target coordinate, so the search is exhaustive.
    """
    choices = [ComponentMap(c, a) for c in range(A.n) for a in _unit_exponents(A.m)]
    samples = A.idempotents() + ([A.scalar(CycNum.zeta(A.m))] if A.m > 2 else [])
    mu_idx = target.index[tuple(e % f for e, f in zip(mu, target.factors))]
    found = []
    for combo in itertools.product(choices, repeat=target.n):
        if any(combo[mu_idx](e) != phi(e) for e in samples):
            continue

        def Psi(a, combo=combo):
            return PfElement(cm(a) for cm in combo)

        if is_sigma_equivariant(A, target, Psi, samples):
            found.append(combo)
    return found

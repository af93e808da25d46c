"""Finitely presented abelian group of multiplicative constants.

Every constant that can appear in a factored rational function (q, zeta, the
leading coefficient lambda, torsion symbols such as -1) is an integer exponent
vector over a fixed list of named generators, taken modulo a relation lattice
kept in Hermite normal form.  Equality of constants is lattice membership, so
no complex number is ever compared numerically.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .exactalg import hnf_basis, hnf_reduce, integer_kernel

Q = "q"
ZETA = "zeta"


class ConstGroupError(ValueError):
    pass


class ConstGroup:
    """Abelian group ``Z^m / L`` on named generators.

    ``q`` and ``zeta`` are always present.  ``zeta`` gets the relation
    ``zeta^t = 1``; symbols listed in ``orders`` get ``s^order = 1``; every
    mapping in ``relations`` declares ``prod s^e = 1``.
    """

    def __init__(
        self,
        t: int,
        symbols: Sequence[str] = (),
        orders: Mapping[str, int] | None = None,
        relations: Iterable[Mapping[str, int]] = (),
    ):
        if t < 1:
            raise ConstGroupError(f"order of zeta must be positive, got {t}")
        names = [Q, ZETA]
        for s in symbols:
            if s in names:
                raise ConstGroupError(f"duplicate generator {s!r}")
            names.append(s)
        orders = dict(orders or {})
        for s in orders:
            if s not in names:
                names.append(s)
        self.t = t
        self.names: tuple[str, ...] = tuple(names)
        self._index = {s: i for i, s in enumerate(self.names)}

        rows = [self._vector({ZETA: t})]
        for s, o in orders.items():
            if o < 1:
                raise ConstGroupError(f"order of {s!r} must be positive")
            rows.append(self._vector({s: o}))
        for rel in relations:
            rows.append(self._vector(rel))
        self.relations = hnf_basis(rows, len(self.names))

        if self.order_of(self.generator(Q)) is not None:
            raise ConstGroupError("declared relations make q a root of unity")
        if self.order_of(self.generator(ZETA)) != t:
            raise ConstGroupError(f"declared relations change the order of zeta from {t}")

    def _vector(self, exps: Mapping[str, int]) -> list[int]:
        v = [0] * len(self.names)
        for s, e in exps.items():
            if s not in self._index:
                raise ConstGroupError(f"unknown constant symbol {s!r}")
            v[self._index[s]] += int(e)
        return v

    @property
    def rank(self) -> int:
        return len(self.names)

    def element(self, exps: Mapping[str, int] | None = None) -> "ConstElem":
        return ConstElem(self, self._vector(exps or {}))

    def generator(self, name: str) -> "ConstElem":
        return self.element({name: 1})

    def one(self) -> "ConstElem":
        return self.element()

    @property
    def q(self) -> "ConstElem":
        return self.generator(Q)

    @property
    def zeta(self) -> "ConstElem":
        return self.generator(ZETA)

    def canonical(self, vec: Sequence[int]) -> tuple[int, ...]:
        return tuple(hnf_reduce(self.relations, vec))

    def relation_lattice(self, elems: Sequence["ConstElem"]) -> list[list[int]]:
        """HNF basis of ``{c in Z^k : prod elems[i]^c[i] = 1}``."""
        k = len(elems)
        for e in elems:
            self._check(e)
        # columns: the elements, then the relation generators
        cols = [list(e.exps) for e in elems] + [list(r) for r in self.relations]
        matrix = [[col[row] for col in cols] for row in range(self.rank)]
        kernel = integer_kernel(matrix, len(cols))
        return hnf_basis([v[:k] for v in kernel], k)

    def order_of(self, x: "ConstElem") -> int | None:
        """Multiplicative order of ``x``, or None when it is infinite."""
        lat = self.relation_lattice([x])
        return lat[0][0] if lat else None

    def log_q(self, x: "ConstElem") -> int | None:
        """The integer M with ``x == q^M``, or None when x is not a power of q."""
        lat = self.relation_lattice([x, self.q])
        # first coordinates generate an ideal of Z; x in <q> iff it contains 1
        if lat and lat[0][0] == 1:
            return -lat[0][1]
        return None

    def _check(self, x: "ConstElem") -> None:
        if x.group != self:
            raise ConstGroupError("constant belongs to a different group")

    def __eq__(self, other):
        if not isinstance(other, ConstGroup):
            return NotImplemented
        return self is other or (self.t, self.names, self.relations) == (other.t, other.names, other.relations)

    def __hash__(self):
        return hash((self.t, self.names))

    def __repr__(self):
        return f"ConstGroup(t={self.t}, names={self.names}, relations={self.relations})"


class ConstElem:
    """A group element in canonical form (exponents reduced modulo the HNF)."""

    __slots__ = ("group", "exps")

    def __init__(self, group: ConstGroup, vec: Sequence[int]):
        if len(vec) != group.rank:
            raise ConstGroupError("exponent vector has the wrong length")
        self.group = group
        self.exps = group.canonical(vec)

    def __mul__(self, other: "ConstElem") -> "ConstElem":
        self.group._check(other)
        return ConstElem(self.group, [a + b for a, b in zip(self.exps, other.exps)])

    def __truediv__(self, other: "ConstElem") -> "ConstElem":
        return self * other**-1

    def __pow__(self, k: int) -> "ConstElem":
        return ConstElem(self.group, [k * a for a in self.exps])

    def __eq__(self, other):
        if not isinstance(other, ConstElem):
            return NotImplemented
        return self.group == other.group and self.exps == other.exps

    def __hash__(self):
        return hash((self.group.t, self.exps))

    def is_one(self) -> bool:
        return not any(self.exps)

    def as_dict(self) -> dict[str, int]:
        return {s: e for s, e in zip(self.group.names, self.exps) if e}

    def __str__(self):
        parts = []
        for s, e in self.as_dict().items():
            parts.append(s if e == 1 else f"{s}^{e}")
        return "*".join(parts) if parts else "1"

    def __repr__(self):
        return f"ConstElem({self})"


def const_equal(g: ConstGroup, x: ConstElem, y: ConstElem) -> bool:
    """True iff ``x / y`` lies in the relation lattice of ``g``."""
    g._check(x)
    g._check(y)
    return x == y


def subgroup_member(g: ConstGroup, x: ConstElem, gens: Sequence[ConstElem]) -> bool:
    """True iff ``x`` lies in the subgroup generated by ``gens``."""
    lat = g.relation_lattice([x, *gens])
    return bool(lat) and lat[0][0] == 1


def meets_q_nontrivially(g: ConstGroup, lam: ConstElem) -> tuple[int, int] | None:
    """Exponents ``(u, v)``, both nonzero, with ``lam^u == q^v``; None if none exist."""
    # q has infinite order, so this lattice has rank <= 1
    lat = g.relation_lattice([lam, g.q**-1])
    if lat and lat[0][0] and lat[0][1]:
        return lat[0][0], lat[0][1]
    return None


class CaseTag(enum.IntEnum):
    CASE1 = 1
    CASE2 = 2


@dataclass(frozen=True)
class Classification:
    """Case of the dependence criterion plus the relation used for rescaling.

    Exactly one of ``uv`` (``lambda^u == q^v``, ``v != 0``) and ``w``
    (``lambda^w == 1``) is set in case 1; both are None in case 2.
    """

    case: CaseTag
    uv: tuple[int, int] | None = None
    w: int | None = None


def classify_lambda(g: ConstGroup, lam: ConstElem, T: int) -> Classification:
    """Case 1 iff ``T == 0`` and lambda is torsion or meets ``q^Z`` nontrivially."""
    g._check(lam)
    if T != 0:
        return Classification(CaseTag.CASE2)
    w = g.order_of(lam)
    if w is not None:
        return Classification(CaseTag.CASE1, w=w)
    uv = meets_q_nontrivially(g, lam)
    if uv is not None:
        return Classification(CaseTag.CASE1, uv=uv)
    return Classification(CaseTag.CASE2)

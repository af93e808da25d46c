"""Sigma_1-algebraic subgroups of the multiplicative group.

The constants ring is ``C = K^t`` (one component per element of the cyclic
group ``Z/t`` generated by rho, with ``rho(a)_c = a_{c-1}``), so a point of
``G_m`` over ``C`` is a tuple ``(x_0, ..., x_{t-1})`` of units.  A monomial
equation ``e_i * prod_j rho^j(x)^{k_j} = e_i`` constrains only component
``i``: ``prod_j x_{i-j}^{k_j} = 1``.  Solution groups are described
structurally (free rank, torsion, explicit roots of unity when finite), never
as complex floats.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exactalg import mat_vec, smith_normal_form


@dataclass(frozen=True)
class MonomialEquation:
    """``e_idempotent * prod_j rho^j(x)^{exponents[j]} = e_rhs``."""

    idempotent: int
    exponents: tuple[int, ...]
    rhs: int | None = None

    @property
    def target(self) -> int:
        return self.idempotent if self.rhs is None else self.rhs


@dataclass(frozen=True)
class MonomialSystem:
    t: int
    equations: tuple[MonomialEquation, ...] = ()

    def __post_init__(self):
        for eq in self.equations:
            if len(eq.exponents) != self.t:
                raise ValueError(f"exponent vector {eq.exponents} must have length {self.t}")
            if not (0 <= eq.idempotent < self.t and 0 <= eq.target < self.t):
                raise ValueError(f"idempotent index out of range in {eq}")

    @classmethod
    def from_json(cls, doc) -> "MonomialSystem":
        t = int(doc["t"])
        eqs = tuple(
            MonomialEquation(int(e["idempotent"]), tuple(map(int, e["exponents"])), e.get("rhs"))
            for e in doc.get("equations", [])
        )
        return cls(t, eqs)


@dataclass(frozen=True)
class ComponentwisePhi:
    """A multiplicative ``phi = sum_c e_c * phi_c`` written on torus coordinates.

    ``rows[c]`` is the exponent vector of ``phi_c`` in ``x_0, ..., x_{t-1}``;
    ``phi(x) = 1`` is the system ``x^rows[c] = 1`` for all ``c``.  ``empty``
    marks a system with no solutions (a constant idempotent on one side).
    """

    rows: tuple[tuple[int, ...], ...]
    empty: bool = False

    @property
    def t(self) -> int:
        return len(self.rows)

    def matrix(self) -> list[list[int]]:
        return [list(r) for r in self.rows]


def _row_for(t: int, i: int, k: Sequence[int]) -> list[int]:
    row = [0] * t
    for j, e in enumerate(k):
        row[(i - j) % t] += e
    return row


def torus_rows(sys: MonomialSystem) -> list[list[int]]:
    """Read every equation directly as one torus equation on its component."""
    return [_row_for(sys.t, eq.idempotent, eq.exponents) for eq in sys.equations]


def reduce_to_phi(sys: MonomialSystem) -> ComponentwisePhi:
    """Collapse a monomial system into one multiplicative equation ``phi(x) = 1``.

    Each equation is moved onto ``e_0`` with ``rho^{-i}``, the list is padded
    with trivial equations up to ``t`` entries, the ``c``-th equation is moved
    onto ``e_c`` with ``rho^c`` and the results are summed.  Orthogonality of
    the idempotents makes the sum multiplicative.
    """
    t = sys.t
    if len(sys.equations) > t:
        raise ValueError(f"at most t={t} equations are supported, got {len(sys.equations)}")
    empty = any(eq.target != eq.idempotent for eq in sys.equations)
    # on e_0: rho^{-i}(prod rho^j(x)^{k_j}) = prod rho^{j'}(x)^{k_{j'+i}}
    on_e0 = [tuple(eq.exponents[(j + eq.idempotent) % t] for j in range(t)) for eq in sys.equations]
    on_e0 += [(0,) * t] * (t - len(on_e0))
    rows = []
    for c, k in enumerate(on_e0):
        # component c of rho^c(psi(x)) is component 0 of psi(x) = prod x_{-j}^{k_j}
        rows.append(tuple(_row_for(t, 0, k)))
    return ComponentwisePhi(tuple(rows), empty)


def mult_function_rows(n: Sequence[int]) -> list[list[int]]:
    """Torus rows of the uniform ``phi(x) = prod_r rho^r(x)^{n_r}``."""
    t = len(n)
    return [_row_for(t, c, n) for c in range(t)]


@dataclass(frozen=True)
class GroupStructure:
    """``G ~= (K^*)^free_rank x prod Z/torsion``.

    ``elements`` lists the points of a finite group as tuples of phases
    ``p`` in ``[0, 1)``, standing for ``exp(2 pi i p)``.
    """

    free_rank: int
    torsion: tuple[int, ...]
    elements: tuple[tuple[Fraction, ...], ...] | None = None
    empty: bool = False

    @property
    def is_finite(self) -> bool:
        return not self.empty and self.free_rank == 0

    @property
    def order(self) -> int | None:
        if self.empty:
            return 0
        if self.free_rank:
            return None
        out = 1
        for d in self.torsion:
            out *= d
        return out

    def element_strings(self) -> list[str] | None:
        if self.elements is None:
            return None
        return ["(" + ", ".join(format_root(p) for p in el) + ")" for el in self.elements]

    def to_json(self) -> dict:
        if self.empty:
            return {"empty": True}
        return {
            "free_rank": self.free_rank,
            "torsion": list(self.torsion),
            "order": self.order,
            "elements": self.element_strings(),
        }


EmptySolutionSet = GroupStructure(0, (), (), empty=True)


def format_root(p: Fraction) -> str:
    p = Fraction(p) % 1
    if p == 0:
        return "1"
    if p == Fraction(1, 2):
        return "-1"
    return f"exp(2*pi*i*{p})"


def group_structure(matrix: Sequence[Sequence[int]], t: int, *, enumerate_limit: int = 10_000) -> GroupStructure:
    """Structure of ``{x in (K^*)^t : x^row = 1 for each row}``.

    ``K`` is algebraically closed of characteristic zero, so the group is
    ``Hom(Z^t / rowspace, K^*)``: free rank ``t - rank`` and torsion the
    elementary divisors above 1.
    """
    rows = [list(map(int, r)) for r in matrix if any(r)]
    if not rows:
        return GroupStructure(t, (), None)
    snf = smith_normal_form(rows)
    diag = [e for e in snf.diagonal if e]
    free = t - len(diag)
    torsion = tuple(e for e in diag if e > 1)
    elements = None
    order = 1
    for e in torsion:
        order *= e
    if free == 0 and order <= enumerate_limit:
        elements = _enumerate(snf, t)
    return GroupStructure(free, torsion, elements)


def _enumerate(snf, t: int) -> tuple[tuple[Fraction, ...], ...]:
    # phases p with rows @ p in Z^m; substitute p = V f, then S f in Z^m
    diag = snf.diagonal + [0] * (t - len(snf.diagonal))
    choices = [[Fraction(j, d) for j in range(d)] if d else [Fraction(0)] for d in diag]
    seen = set()
    for f in itertools.product(*choices):
        p = tuple(sum((snf.V[c][k] * f[k] for k in range(t)), Fraction(0)) % 1 for c in range(t))
        seen.add(p)
    return tuple(sorted(seen))


def satisfies(matrix: Sequence[Sequence[int]], phases: Sequence[Fraction]) -> bool:
    """Exact check that the roots of unity ``exp(2 pi i p)`` solve every row."""
    return all(Fraction(v).denominator == 1 for v in mat_vec([list(r) for r in matrix], list(phases)))


def solve_system(sys: MonomialSystem) -> GroupStructure:
    phi = reduce_to_phi(sys)
    if phi.empty:
        return EmptySolutionSet
    return group_structure(phi.matrix(), sys.t)


def is_proper_subgroup(n: Sequence[int]) -> bool:
    """Whether ``phi_n(x) = 1`` cuts out a proper subgroup (free rank < t)."""
    return group_structure(mult_function_rows(n), len(n), enumerate_limit=0).free_rank < len(n)

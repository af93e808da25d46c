"""Factored rational functions and the actions of sigma_q and sigma_zeta.

A :class:`FactoredRatFun` is

    c * z^T * prod (z - zeta^k q^d r_i)^s

with ``c`` a :class:`~qdepend.constgroup.ConstElem`, ``r_i`` opaque base
roots (one per orbit, assumed pairwise distinct modulo zeta^Z q^Z), ``k``
taken modulo ``t`` and ``d`` any integer.  Factors are stored sparsely.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .constgroup import ConstElem, ConstGroup, ConstGroupError


@dataclass(frozen=True, order=True)
class RootRef:
    """The root ``zeta^k q^d r_orbit``."""

    orbit: int
    k: int
    d: int


class FactoredRatFun:
    __slots__ = ("group", "bases", "constant", "z_power", "factors")

    def __init__(
        self,
        group: ConstGroup,
        bases: Sequence[str],
        constant: ConstElem | None = None,
        z_power: int = 0,
        factors: Mapping[RootRef, int] | Iterable[tuple[RootRef, int]] = (),
    ):
        self.group = group
        self.bases = tuple(bases)
        if len(set(self.bases)) != len(self.bases):
            raise ValueError("orbit base names must be unique")
        if constant is None:
            constant = group.one()
        group._check(constant)
        self.constant = constant
        self.z_power = int(z_power)
        t = group.t
        acc: dict[RootRef, int] = {}
        items = factors.items() if isinstance(factors, Mapping) else factors
        for ref, s in items:
            if not 0 <= ref.orbit < len(self.bases):
                raise ValueError(f"orbit index {ref.orbit} out of range")
            key = RootRef(ref.orbit, ref.k % t, ref.d)
            acc[key] = acc.get(key, 0) + int(s)
        self.factors: dict[RootRef, int] = {r: s for r, s in sorted(acc.items()) if s}

    @property
    def t(self) -> int:
        return self.group.t

    @property
    def R(self) -> int:
        return len(self.bases)

    def degree(self) -> int:
        """Total degree ``T + sum s`` (zeros minus poles, counting z)."""
        return self.z_power + sum(self.factors.values())

    def window(self) -> tuple[int, int] | None:
        """Smallest ``(dmin, dmax)`` containing every stored q-shift."""
        if not self.factors:
            return None
        ds = [r.d for r in self.factors]
        return min(ds), max(ds)

    def is_constant(self) -> bool:
        return self.z_power == 0 and not self.factors

    def _like(self, constant, z_power, factors) -> "FactoredRatFun":
        return FactoredRatFun(self.group, self.bases, constant, z_power, factors)

    def _check_compatible(self, other: "FactoredRatFun") -> None:
        if other.group != self.group or other.bases != self.bases:
            raise ConstGroupError("rational functions live over different constant groups or orbits")

    def __eq__(self, other):
        if not isinstance(other, FactoredRatFun):
            return NotImplemented
        return (
            self.group == other.group
            and self.bases == other.bases
            and self.constant == other.constant
            and self.z_power == other.z_power
            and self.factors == other.factors
        )

    def __hash__(self):
        return hash((self.constant, self.z_power, tuple(self.factors.items())))

    def __mul__(self, other: "FactoredRatFun") -> "FactoredRatFun":
        return combine(self, other, 1, 1)

    def __truediv__(self, other: "FactoredRatFun") -> "FactoredRatFun":
        return combine(self, other, 1, -1)

    def __pow__(self, k: int) -> "FactoredRatFun":
        return combine(self, self, k, 0)

    def __str__(self):
        parts = []
        if not self.constant.is_one() or (not self.z_power and not self.factors):
            parts.append(str(self.constant))
        if self.z_power:
            parts.append("z" if self.z_power == 1 else f"z^{self.z_power}")
        for ref, s in self.factors.items():
            root = [self.bases[ref.orbit]]
            if ref.k:
                root.insert(0, "zeta" if ref.k == 1 else f"zeta^{ref.k}")
            if ref.d:
                root.insert(-1, "q" if ref.d == 1 else f"q^{ref.d}")
            fac = f"(z - {'*'.join(root)})"
            parts.append(fac if s == 1 else f"{fac}^{s}")
        return "*".join(parts)

    def __repr__(self):
        return f"FactoredRatFun({self})"

    # -- serialization -----------------------------------------------------

    def to_json(self) -> dict:
        return {
            "constant": self.constant.as_dict(),
            "z_power": self.z_power,
            "factors": [
                {"orbit": self.bases[r.orbit], "k": r.k, "d": r.d, "s": s}
                for r, s in self.factors.items()
            ],
        }

    @classmethod
    def from_json(cls, group: ConstGroup, bases: Sequence[str], doc: Mapping) -> "FactoredRatFun":
        index = {b: i for i, b in enumerate(bases)}
        factors = []
        for rec in doc.get("factors", []):
            orbit = rec["orbit"]
            i = index[orbit] if isinstance(orbit, str) else int(orbit)
            factors.append((RootRef(i, int(rec["k"]), int(rec["d"])), int(rec["s"])))
        return cls(group, bases, group.element(doc.get("constant", {})), doc.get("z_power", 0), factors)

    # -- numeric evaluation --------------------------------------------------

    def evaluate(self, z, values: Mapping[str, object]):
        """Evaluate at ``z`` given numeric values for constants and base roots.

        ``values`` maps generator names (``q``, user symbols) and base names
        to numbers.  ``zeta`` defaults to ``exp(2*pi*i/t)``; for ``t`` in
        ``{1, 2}`` the exact value ``1`` / ``-1`` is used so that Fractions
        stay exact.
        """
        vals = dict(values)
        if "zeta" not in vals:
            vals["zeta"] = {1: 1, 2: -1}.get(self.t, cmath.exp(2j * cmath.pi / self.t))
        out = _power(1, 0)
        for name, e in self.constant.as_dict().items():
            out *= _power(vals[name], e)
        out *= _power(z, self.z_power)
        for ref, s in self.factors.items():
            root = _power(vals["zeta"], ref.k) * _power(vals["q"], ref.d) * vals[self.bases[ref.orbit]]
            out *= _power(z - root, s)
        return out


def _power(x, e: int):
    if isinstance(x, int) and e < 0:
        x = Fraction(x)
    return x**e


@dataclass(frozen=True)
class MultFunction:
    """``phi(x) = prod_r sigma_zeta^r(x)^{n[r]}``."""

    n: tuple[int, ...]

    def __init__(self, n: Iterable[int]):
        object.__setattr__(self, "n", tuple(int(e) for e in n))

    @property
    def t(self) -> int:
        return len(self.n)

    def is_trivial(self) -> bool:
        return not any(self.n)

    def __str__(self):
        parts = []
        for r, e in enumerate(self.n):
            if e:
                base = "x" if r == 0 else ("sigma_zeta(x)" if r == 1 else f"sigma_zeta^{r}(x)")
                parts.append(base if e == 1 else f"{base}^{e}")
        return "*".join(parts) or "1"


def apply_sigma_q(f: FactoredRatFun) -> FactoredRatFun:
    """``f(qz)``: every q-shift drops by one and the constant gains ``q^deg f``."""
    const = f.constant * f.group.q ** f.degree()
    factors = [(RootRef(r.orbit, r.k, r.d - 1), s) for r, s in f.factors.items()]
    return f._like(const, f.z_power, factors)


def apply_sigma_zeta(f: FactoredRatFun, r: int = 1) -> FactoredRatFun:
    """``f(zeta^r z)``: exponent at twist k becomes the old exponent at ``k + r``."""
    const = f.constant * f.group.zeta ** (r * f.degree())
    factors = [(RootRef(ref.orbit, ref.k - r, ref.d), s) for ref, s in f.factors.items()]
    return f._like(const, f.z_power, factors)


def combine(f: FactoredRatFun, g: FactoredRatFun, exp_f: int, exp_g: int) -> FactoredRatFun:
    """``f^exp_f * g^exp_g``."""
    f._check_compatible(g)
    const = f.constant**exp_f * g.constant**exp_g
    acc: dict[RootRef, int] = {}
    for ref, s in f.factors.items():
        acc[ref] = acc.get(ref, 0) + exp_f * s
    for ref, s in g.factors.items():
        acc[ref] = acc.get(ref, 0) + exp_g * s
    return f._like(const, exp_f * f.z_power + exp_g * g.z_power, acc)


def one_like(f: FactoredRatFun) -> FactoredRatFun:
    return f._like(f.group.one(), 0, ())


def apply_phi(phi: MultFunction, f: FactoredRatFun) -> FactoredRatFun:
    """``prod_r sigma_zeta^r(f)^{n_r}``."""
    if phi.t != f.t:
        raise ValueError(f"multiplicative function has length {phi.t}, expected {f.t}")
    out = one_like(f)
    for r, e in enumerate(phi.n):
        if e:
            out = combine(out, apply_sigma_zeta(f, r), 1, e)
    return out


def apply_phi_closed_form(phi: MultFunction, f: FactoredRatFun) -> FactoredRatFun:
    """Same value as :func:`apply_phi`, from the explicit exponent formulas.

    constant ``lambda^{sum n} zeta^{deg(f) * sum r n_r}``, z-power
    ``T * sum n``, exponent ``sum_r n_r s_{k+r,d,i}`` at ``(k, d, i)``.
    """
    t = f.t
    n = phi.n
    total = sum(n)
    const = f.constant**total * f.group.zeta ** (f.degree() * sum(r * e for r, e in enumerate(n)))
    acc: dict[RootRef, int] = {}
    for ref, s in f.factors.items():
        for r, e in enumerate(n):
            if e:
                key = RootRef(ref.orbit, (ref.k - r) % t, ref.d)
                acc[key] = acc.get(key, 0) + e * s
    return f._like(const, f.z_power * total, acc)


def sigma_q_ratio(b: FactoredRatFun) -> FactoredRatFun:
    """``sigma_q(b) / b``."""
    return combine(apply_sigma_q(b), b, 1, -1)


def exponent_sums(f: FactoredRatFun) -> dict[tuple[int, int], int]:
    """``{(orbit, k): sum over d of the exponents}`` for every occurring pair."""
    sums: dict[tuple[int, int], int] = {}
    for ref, s in f.factors.items():
        key = (ref.orbit, ref.k)
        sums[key] = sums.get(key, 0) + s
    return sums

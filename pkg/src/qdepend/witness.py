"""Certificates ``(phi, b)`` with ``phi(a) == sigma_q(b) / b``.

The synthesis follows the linear system behind the criterion: a nonzero
integer ``n`` in the common kernel of the circulants ``A_i`` (plus
``sum n == 0`` in case 2), pre-scaled by ``t`` to kill the zeta torsion and by
the lambda relation, then ``b`` from telescoping prefix sums over the q-shift.
:func:`brute_force_oracle` searches bounded ``n`` directly and shares none of
that path except the final :func:`verify`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd
from typing import Iterator

import numpy as np

from .constgroup import CaseTag, Classification, classify_lambda
from .criterion import ExponentSummary, InternalInvariantError, exponent_summary
from .exactalg import hnf_basis, integer_kernel
from .ratfun import (
    FactoredRatFun,
    MultFunction,
    RootRef,
    apply_phi,
    apply_sigma_zeta,
    exponent_sums,
    sigma_q_ratio,
)


@dataclass(frozen=True)
class Witness:
    phi: MultFunction
    b: FactoredRatFun

    @property
    def M(self) -> int:
        return self.b.z_power

    def to_json(self, verified: bool | None = None) -> dict:
        out = {"phi": list(self.phi.n), "b": str(self.b), "b_factored": self.b.to_json(), "M": self.M}
        if verified is not None:
            out["verified"] = verified
        return out


@dataclass(frozen=True)
class ConstantPlan:
    """How ``M`` is completed once ``n`` and ``l`` are known.

    ``kind`` is ``"uv"`` (``lambda^u == q^v``: ``M = v*sum(n)/u - sum(l)``),
    ``"w"`` (``lambda^w == 1``) or ``"sum"`` (case 2); the last two use
    ``M = -sum(l)``.  ``scale`` is the factor applied to the kernel vector.
    """

    kind: str
    scale: int
    u: int = 1
    v: int = 0

    def complete_M(self, n: tuple[int, ...], l_total: int) -> int:
        if self.kind == "uv":
            num = self.v * sum(n)
            if num % self.u:
                raise InternalInvariantError("rescaled n is not divisible by u")
            return num // self.u - l_total
        return -l_total

    def to_json(self) -> dict:
        out = {"kind": self.kind, "scale": self.scale}
        if self.kind == "uv":
            out.update(u=self.u, v=self.v)
        return out


def _stacked_system(s: ExponentSummary, case: CaseTag) -> list[list[int]]:
    rows = [row for A in s.circulants() for row in A]
    if case == CaseTag.CASE2:
        rows.append([1] * s.t)
    return rows


def _sort_key(v: list[int]):
    first = next(i for i, e in enumerate(v) if e)
    return (max(abs(e) for e in v), first, tuple(v))


def _normalize_sign(v: list[int]) -> list[int]:
    first = next(e for e in v if e)
    return v if first > 0 else [-e for e in v]


def kernel_basis(s: ExponentSummary, case: CaseTag) -> list[list[int]]:
    return integer_kernel(_stacked_system(s, case), s.t)


def solve_n(s: ExponentSummary, case: CaseTag) -> tuple[int, ...] | None:
    """A nonzero integer solution of the stacked circulant system, or None.

    Candidates are the Hermite basis vectors and their pairwise sums and
    differences; the smallest by (max-norm, first nonzero position,
    lexicographic) wins.
    """
    basis = kernel_basis(s, case)
    if not basis:
        return None
    cands = [list(v) for v in basis]
    for a, b in itertools.combinations(basis, 2):
        for sgn in (1, -1):
            w = [x + sgn * y for x, y in zip(a, b)]
            if any(w):
                cands.append(_normalize_sign(w))
    return tuple(min(cands, key=_sort_key))


def rescale_n(n, t: int, cls: Classification) -> tuple[tuple[int, ...], ConstantPlan]:
    """Scale ``n`` so that the constant equation can be met exactly."""
    if not any(n):
        raise ValueError("n must be nonzero")
    if cls.case == CaseTag.CASE2:
        plan = ConstantPlan("sum", t)
    elif cls.w is not None:
        plan = ConstantPlan("w", t * cls.w)
    elif cls.uv is not None:
        u, v = cls.uv
        plan = ConstantPlan("uv", t * u, u, v)
    else:
        raise ValueError("case-1 classification without a lambda relation")
    return tuple(plan.scale * e for e in n), plan


def _phi_exponents(f: FactoredRatFun, n) -> dict[RootRef, int]:
    t = f.t
    acc: dict[RootRef, int] = {}
    for ref, s in f.factors.items():
        for r, e in enumerate(n):
            if e:
                key = RootRef(ref.orbit, (ref.k - r) % t, ref.d)
                acc[key] = acc.get(key, 0) + e * s
    return {k: v for k, v in acc.items() if v}


def _telescope(exps: dict[RootRef, int]) -> dict[RootRef, int] | None:
    """Solve ``l_{d+1} - l_d == c_d`` per (orbit, k); None if some sum is nonzero."""
    groups: dict[tuple[int, int], dict[int, int]] = {}
    for ref, c in exps.items():
        groups.setdefault((ref.orbit, ref.k), {})[ref.d] = c
    out: dict[RootRef, int] = {}
    for (i, k), by_d in groups.items():
        lo, hi = min(by_d), max(by_d)
        acc = 0
        for d in range(lo, hi + 1):
            acc += by_d.get(d, 0)
            if acc:
                out[RootRef(i, k, d + 1)] = acc
        if acc:
            return None
    return out


def recover_l_M(f: FactoredRatFun, n, plan: ConstantPlan) -> FactoredRatFun:
    """Build ``b = z^M prod (z - zeta^k q^d r_i)^{l_{k,d,i}}`` for a kernel vector ``n``."""
    l = _telescope(_phi_exponents(f, n))
    if l is None:
        raise InternalInvariantError(f"n={tuple(n)} is not in the kernel: telescoping sums do not vanish")
    M = plan.complete_M(tuple(n), sum(l.values()))
    return FactoredRatFun(f.group, f.bases, f.group.one(), M, l)


def verify(a: FactoredRatFun, w: Witness) -> bool:
    """Exact check of ``phi(a) == sigma_q(b) / b`` with ``phi`` nontrivial."""
    try:
        if w.phi.t != a.t or w.phi.is_trivial():
            return False
        return apply_phi(w.phi, a) == sigma_q_ratio(w.b)
    except (ValueError, KeyError):
        return False


def _shrink(a: FactoredRatFun, w: Witness) -> Witness:
    g = 0
    for e in (*w.phi.n, *w.b.factors.values(), w.M):
        g = gcd(g, e)
    for d in sorted((d for d in range(2, g + 1) if g % d == 0), reverse=True):
        cand = Witness(
            MultFunction(e // d for e in w.phi.n),
            FactoredRatFun(a.group, a.bases, a.group.one(), w.M // d,
                           {r: s // d for r, s in w.b.factors.items()}),
        )
        if verify(a, cand):
            return cand
    return w


def synthesize(
    f: FactoredRatFun,
    s: ExponentSummary | None = None,
    cls: Classification | None = None,
    *,
    n=None,
    shrink: bool = True,
) -> tuple[Witness, ConstantPlan]:
    """Witness for a dependent ``f``; raises ValueError if the kernel is trivial."""
    if s is None:
        s = exponent_summary(f)
    if cls is None:
        cls = classify_lambda(f.group, f.constant, f.z_power)
    if n is None:
        n = solve_n(s, cls.case)
        if n is None:
            raise ValueError("no witness: the criterion reports independence")
    n2, plan = rescale_n(n, f.t, cls)
    b = recover_l_M(f, n2, plan)
    w = Witness(MultFunction(n2), b)
    if shrink:
        w = _shrink(f, w)
    return w, plan


# ---------------------------------------------------------------------------
# brute-force oracle
# ---------------------------------------------------------------------------


def _shell(t: int, m: int, block: int = 200_000) -> Iterator[np.ndarray]:
    """Sign-normalized vectors of max-norm exactly ``m``, lexicographic, in blocks."""
    vals = np.arange(-m, m + 1, dtype=np.int64)
    tail = t
    while tail > 1 and (2 * m + 1) ** tail > block:
        tail -= 1
    grid = np.stack(np.meshgrid(*([vals] * tail), indexing="ij"), -1).reshape(-1, tail)
    for prefix in itertools.product(range(-m, m + 1), repeat=t - tail):
        rows = np.hstack([np.tile(np.array(prefix, dtype=np.int64), (len(grid), 1)), grid])
        keep = np.abs(rows).max(axis=1) == m
        nz = rows != 0
        first = rows[np.arange(len(rows)), nz.argmax(axis=1)]
        keep &= first > 0
        if keep.any():
            yield rows[keep]


def _lattice_member(basis: list[list[int]], vecs: np.ndarray) -> np.ndarray:
    v = vecs.copy()
    for row in basis:
        p = next(j for j, e in enumerate(row) if e)
        qt = np.floor_divide(v[:, p], row[p])
        v -= qt[:, None] * np.array(row, dtype=np.int64)[None, :]
    return ~v.any(axis=1)


def brute_force_oracle(a: FactoredRatFun, bound: int) -> Witness | None:
    """First verified witness with ``max|n_r| <= bound``, searching by shells.

    Within each shell vectors are sign-normalized (first nonzero entry positive)
    and visited lexicographically.  Cheap exact necessary conditions are
    evaluated in bulk; every survivor is rebuilt in the factored calculus and
    checked with :func:`verify`.
    """
    if bound < 1:
        raise ValueError("bound must be >= 1")
    t = a.t
    g = a.group
    # exponent sums over d of sigma_zeta^r(a), one column per r
    keys = sorted({(ref.orbit, k) for ref in a.factors for k in range(t)})
    P = np.zeros((len(keys), t), dtype=np.int64)
    for r in range(t):
        sums = exponent_sums(apply_sigma_zeta(a, r))
        for row, key in enumerate(keys):
            P[row, r] = sums.get(key, 0)
    # constant of phi(a) is lambda^{sum n} zeta^{deg * sum r n_r}; it must lie in <q>
    const_lat = [row[:2] for row in g.relation_lattice([a.constant, g.zeta, g.q])]
    const_lat = hnf_basis(const_lat, 2)
    weights = np.arange(t, dtype=np.int64)
    deg = a.degree()

    for m in range(1, bound + 1):
        for block in _shell(t, m):
            ok = ~(block @ P.T).any(axis=1) if len(keys) else np.ones(len(block), bool)
            total = block.sum(axis=1)
            ok &= a.z_power * total == 0
            pair = np.stack([total, deg * (block @ weights)], axis=1)
            ok &= _lattice_member(const_lat, pair)
            for n in block[ok]:
                w = _oracle_candidate(a, tuple(int(e) for e in n))
                if w is not None and verify(a, w):
                    return w
    return None


def _oracle_candidate(a: FactoredRatFun, n: tuple[int, ...]) -> Witness | None:
    phi = MultFunction(n)
    target = apply_phi(phi, a)
    if target.z_power:
        return None
    l = _telescope(target.factors)
    if l is None:
        return None
    M = a.group.log_q(target.constant * a.group.q ** -sum(l.values()))
    if M is None:
        return None
    return Witness(phi, FactoredRatFun(a.group, a.bases, a.group.one(), M, l))

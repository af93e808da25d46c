"""Numeric checks with Jacobi's theta function.

    theta(z) = -sum_n (-1)^n q^{-n(n-1)/2} z^n,   theta(qz) = -qz theta(z)

The series is summed over ``|n| <= N`` in double precision.  All relation
checks are ratios, so the leading sign is irrelevant to them.  ``theta``
vanishes exactly on ``q^Z`` (``theta(1) == 0`` by the pairing ``n <-> 1-n``);
sample points therefore stay off the rays ``arg z = 2 pi j / t`` that carry
the zeros of ``theta(zeta^j z)``.
"""

from __future__ import annotations

import cmath
import math
from itertools import combinations_with_replacement
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

EPS = np.finfo(float).eps


def annulus_samples(count: int = 32, t: int = 1, r_min: float = 0.5, r_max: float = 2.0) -> list[complex]:
    """Deterministic points on ``r_min <= |z| <= r_max``, halfway between the zeta-rays."""
    out = []
    rays = max(t, 1)
    for j in range(count):
        r = r_min * (r_max / r_min) ** ((j + 0.5) / count)
        sector = j % rays
        # golden-ratio spread inside the sector, kept away from its edges
        frac = 0.2 + 0.6 * ((j * 0.6180339887498949) % 1.0)
        ang = 2 * math.pi * (sector + frac) / rays
        out.append(cmath.rect(r, ang))
    return out


@dataclass
class ThetaParams:
    q: complex = 2.0
    truncation: int = 40
    samples: list[complex] = field(default_factory=annulus_samples)

    def __post_init__(self):
        if abs(self.q) <= 1:
            raise ValueError("|q| must exceed 1 for the theta series to converge")
        if self.truncation < 8:
            raise ValueError("truncation must be at least 8")
        if any(z == 0 for z in self.samples):
            raise ValueError("sample points must be nonzero")


def theta_eval(p: ThetaParams, z: complex) -> tuple[complex, float]:
    """Truncated theta value and an error estimate.

    The estimate adds the two outermost terms (a bound for the
    super-geometric tail) and the accumulated rounding ``(4N+2) eps sum|terms|``.
    """
    if z == 0:
        raise ValueError("theta is evaluated at nonzero z only")
    N = p.truncation
    n = np.arange(-N, N + 1)
    logq = np.log(complex(p.q))
    terms = (-1.0) ** n * np.exp(-n * (n - 1) / 2 * logq + n * np.log(complex(z)))
    value = -complex(terms.sum())
    err = float(abs(terms[0]) + abs(terms[-1]) + (4 * N + 2) * EPS * np.abs(terms).sum())
    return value, err


def theta(p: ThetaParams, z: complex) -> complex:
    return theta_eval(p, z)[0]


def functional_eq_residual(p: ThetaParams) -> float:
    """Max over samples of ``|theta(qz) + qz theta(z)|``, scaled by ``|qz theta(z)| + 1``."""
    worst = 0.0
    for z in p.samples:
        lhs = theta(p, p.q * z)
        rhs = -p.q * z * theta(p, z)
        worst = max(worst, abs(lhs - rhs) / (abs(rhs) + 1.0))
    return worst


@dataclass(frozen=True)
class RelationSpec:
    """``lambda(z) = prod_j theta(zeta^shift_j z)^power_j``."""

    t: int
    terms: tuple[tuple[int, int], ...]  # (shift, power)
    nondegenerate: bool = True


def relation_spec(kind: int, t: int, u: int | None = None, v: int | None = None, n: int | None = None) -> RelationSpec:
    """The theta expression for the three relation families.

    kind 1: ``theta(z) theta(zeta z)^-2 theta(zeta^2 z)``, ``t >= 3``.
    kind 2: ``theta(zeta^u z)^n theta(zeta^v z)^-n`` with ``n | t``,
    ``gcd(n, t/n) == 1``, ``u != v mod t`` and ``t | (u - v) n``;
    ``nondegenerate`` reports whether ``zeta^{un} != 1``.
    kind 3: ``theta(z)^t theta(zeta z)^-t``.
    """
    if t < 2:
        raise ValueError("t must be at least 2")
    if kind == 1:
        if t < 3:
            raise ValueError("kind 1 needs t >= 3")
        return RelationSpec(t, ((0, 1), (1, -2), (2, 1)))
    if kind == 2:
        if u is None or v is None or n is None:
            raise ValueError("kind 2 needs u, v and n")
        if n < 1 or t % n or math.gcd(n, t // n) != 1:
            raise ValueError(f"n={n} must divide t={t} with gcd(n, t/n) == 1")
        if (u - v) % t == 0:
            raise ValueError("u and v must differ modulo t")
        if ((u - v) * n) % t:
            raise ValueError("zeta^{un} and zeta^{vn} must agree")
        return RelationSpec(t, ((u % t, n), (v % t, -n)), nondegenerate=(u * n) % t != 0)
    if kind == 3:
        return RelationSpec(t, ((0, t), (1, -t)))
    raise ValueError(f"unknown relation kind {kind}")


def default_kind2(t: int) -> tuple[int, int, int]:
    """``(u, v, n)`` for kind 2, preferring a nondegenerate choice."""
    fallback = None
    for n in range(1, t + 1):
        if t % n or math.gcd(n, t // n) != 1:
            continue
        for u in range(t):
            for v in range(u + 1, t):
                if ((u - v) * n) % t == 0:
                    if (u * n) % t:
                        return u, v, n
                    if fallback is None or fallback[0] == 0:
                        fallback = (u, v, n)
    if fallback is None:
        raise ValueError(f"no admissible kind-2 parameters for t={t}")
    return fallback


def _log_lambda(p: ThetaParams, spec: RelationSpec, z: complex) -> complex:
    zeta = cmath.exp(2j * math.pi / spec.t)
    acc = 0j
    for shift, power in spec.terms:
        acc += power * cmath.log(theta(p, zeta**shift * z))
    return acc


def invariance_residual(p: ThetaParams, spec: RelationSpec) -> float:
    """Max over samples of ``|lambda(qz)/lambda(z) - 1|``."""
    worst = 0.0
    for z in p.samples:
        ratio = cmath.exp(_log_lambda(p, spec, p.q * z) - _log_lambda(p, spec, z))
        worst = max(worst, abs(ratio - 1))
    return worst


def relation_check(
    kind: int,
    t: int,
    p: ThetaParams,
    u: int | None = None,
    v: int | None = None,
    n: int | None = None,
    exponent_override: Sequence[tuple[int, int]] | None = None,
) -> float:
    """Sigma_q-invariance residual of one relation family.

    ``exponent_override`` replaces the (shift, power) terms, which is how the
    negative controls perturb an exponent.
    """
    if kind == 2 and (u is None or v is None or n is None):
        u, v, n = default_kind2(t)
    spec = relation_spec(kind, t, u, v, n)
    if exponent_override is not None:
        spec = RelationSpec(t, tuple(exponent_override), spec.nondegenerate)
    return invariance_residual(p, spec)


def witness_residual(p: ThetaParams, phi: Sequence[int]) -> float:
    """Residual of ``phi(theta)`` being sigma_q-invariant, for ``phi = prod sigma_zeta^r(x)^phi[r]``."""
    spec = RelationSpec(len(phi), tuple((r, e) for r, e in enumerate(phi) if e))
    return invariance_residual(p, spec)


def collocation_rank(p: ThetaParams, t: int, degree: int = 2, tol: float = 1e-8) -> tuple[int, int]:
    """Heuristic probe: numerical rank of monomials in ``theta(zeta^j z)`` at the samples.

    Returns ``(rank, number of monomials)``.  A full rank says no polynomial
    relation of that degree with constant coefficients shows up on the sample
    set; it proves nothing.
    """
    zeta = cmath.exp(2j * math.pi / t)
    monos = list(combinations_with_replacement(range(t), degree))
    rows = []
    for z in p.samples:
        vals = [theta(p, zeta**j * z) for j in range(t)]
        rows.append([np.prod([vals[j] for j in mono]) for mono in monos])
    mat = np.array(rows, dtype=complex)
    mat /= np.abs(mat).max(axis=0, keepdims=True)
    sv = np.linalg.svd(mat, compute_uv=False)
    return int((sv > tol * sv[0]).sum()), len(monos)

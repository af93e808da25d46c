"""Decision procedure for sigma_zeta-dependence of solutions of sigma_q(f) = a f.

For ``a = lambda z^T prod (z - zeta^k q^d r_i)^{s_{k,d,i}}`` put

    a[i][k] = sum_d s_{k,d,i}
    D[k][i] = sum_j zeta^{k j} a[i][j]      (exact, in Q(zeta_t))

Case 1 (``T == 0`` and lambda is a root of unity or ``lambda^u == q^v`` with
``u, v != 0``): dependent iff D has a zero row.  Case 2 (everything else):
dependent iff D has a zero row other than row 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .constgroup import CaseTag, Classification, classify_lambda
from .exactalg import CycNum, circulant, cyc_reduce
from .ratfun import FactoredRatFun


class InternalInvariantError(RuntimeError):
    """Two routes that must agree did not (a bug, never a user error)."""


@dataclass(frozen=True)
class ExponentSummary:
    """``a[i][k]``: total multiplicity of orbit ``i`` at zeta-twist ``k``."""

    a: tuple[tuple[int, ...], ...]
    t: int
    window: tuple[int, int] | None = None

    @property
    def R(self) -> int:
        return len(self.a)

    def circulants(self) -> list[list[list[int]]]:
        return [circulant(row) for row in self.a]


def exponent_summary(f: FactoredRatFun) -> ExponentSummary:
    t = f.t
    a = [[0] * t for _ in range(f.R)]
    for ref, s in f.factors.items():
        a[ref.orbit][ref.k] += s
    return ExponentSummary(tuple(map(tuple, a)), t, f.window())


def dft_entry(t: int, row, k: int) -> CycNum:
    poly = [0] * t
    for j, e in enumerate(row):
        poly[(k * j) % t] += e
    return cyc_reduce(t, poly)


@dataclass(frozen=True)
class DMatrix:
    t: int
    entries: tuple[tuple[CycNum, ...], ...]  # t rows, R columns

    def zero_rows(self) -> list[int]:
        return [k for k, row in enumerate(self.entries) if all(e.is_zero() for e in row)]

    def as_strings(self) -> list[list[str]]:
        return [[str(e) for e in row] for row in self.entries]

    def as_coefficients(self) -> list[list[list[str]]]:
        return [[e.coefficient_strings() for e in row] for row in self.entries]


def build_D(s: ExponentSummary) -> DMatrix:
    t = s.t
    entries = tuple(tuple(dft_entry(t, s.a[i], k) for i in range(s.R)) for k in range(t))
    return DMatrix(t, entries)


def dft_identity_check(s: ExponentSummary) -> bool:
    """Check ``E_+ A_i == D_i E_-`` exactly for every orbit.

    ``E_+[m][k] = zeta^{mk}``, ``E_-[m][r] = zeta^{-mr}``, ``A_i`` the
    circulant of row ``i`` and ``D_i = diag(D[:, i])``.
    """
    t = s.t
    D = build_D(s)
    for i, row in enumerate(s.a):
        A = circulant(row)
        for m in range(t):
            d = D.entries[m][i]
            for r in range(t):
                poly = [0] * t
                for k in range(t):
                    poly[(m * k) % t] += A[k][r]
                if cyc_reduce(t, poly) != d.times_zeta(-m * r):
                    return False
    return True


@dataclass
class Verdict:
    dependent: bool
    case: CaseTag
    zero_rows: list[int]
    witness: object | None = None
    classification: Classification | None = None
    summary: ExponentSummary | None = None
    D: DMatrix | None = None
    trace: dict = field(default_factory=dict)


def decide(f: FactoredRatFun, *, synthesize: bool = True) -> Verdict:
    """Run the zero-row criterion on ``f`` and attach a verified witness."""
    from . import witness as wit  # witness imports this module

    if f.t < 2:
        raise ValueError("the finite group generated by zeta must be nontrivial (t >= 2)")
    cls = classify_lambda(f.group, f.constant, f.z_power)
    summary = exponent_summary(f)
    D = build_D(summary)
    # with R == 0 every row of the t x 0 matrix is vacuously zero
    zero = D.zero_rows()
    if cls.case == CaseTag.CASE1:
        dependent = bool(zero)
    else:
        dependent = any(k != 0 for k in zero)

    verdict = Verdict(dependent, cls.case, zero, None, cls, summary, D)
    n = wit.solve_n(summary, cls.case)
    verdict.trace["kernel_basis"] = wit.kernel_basis(summary, cls.case)
    if (n is not None) != dependent:
        raise InternalInvariantError(
            f"zero-row test says dependent={dependent} but the integer kernel disagrees for {f}"
        )
    if dependent and synthesize:
        w, plan = wit.synthesize(f, summary, cls, n=n)
        if not wit.verify(f, w):
            raise InternalInvariantError(f"synthesized witness fails verification for {f}")
        verdict.witness = w
        verdict.trace["n"] = list(n)
        verdict.trace["plan"] = plan.to_json()
    return verdict

"""Exact arithmetic kernels.

Two independent pieces live here:

* :class:`CycNum`, elements of the cyclotomic field Q(zeta_t) stored in the
  power basis modulo the t-th cyclotomic polynomial, so that zero testing is
  exact;
* integer lattice routines on plain ``list[list[int]]`` matrices: Hermite and
  Smith normal forms with their unimodular transforms, and a primitive basis of
  the integer kernel.

Nothing in this module touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence

IntMatrix = list[list[int]]


# ---------------------------------------------------------------------------
# cyclotomic polynomials and Q(zeta_t)
# ---------------------------------------------------------------------------


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    """Exact division of integer polynomials (coefficients low degree first)."""
    num = list(num)
    dq = len(den) - 1
    lead = den[-1]
    out = [0] * (len(num) - dq)
    for i in range(len(num) - 1, dq - 1, -1):
        c = num[i]
        if c == 0:
            continue
        if c % lead:
            raise ArithmeticError("polynomial division is not exact")
        c //= lead
        out[i - dq] = c
        for j, dj in enumerate(den):
            num[i - dq + j] -= c * dj
    if any(num[:dq]):
        raise ArithmeticError("polynomial division is not exact")
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(t: int) -> tuple[int, ...]:
    """Coefficients of Phi_t, lowest degree first."""
    if t < 1:
        raise ValueError(f"cyclotomic order must be positive, got {t}")
    poly = [-1] + [0] * (t - 1) + [1]
    for d in range(1, t):
        if t % d == 0:
            poly = _poly_divexact(poly, list(cyclotomic_poly(d)))
    return tuple(poly)


@lru_cache(maxsize=None)
def euler_phi(t: int) -> int:
    return len(cyclotomic_poly(t)) - 1


def _reduce_coeffs(t: int, poly: Iterable) -> tuple[Fraction, ...]:
    folded = [Fraction(0)] * t
    for i, c in enumerate(poly):
        if c:
            folded[i % t] += c
    phi = cyclotomic_poly(t)
    deg = len(phi) - 1
    # Phi_t is monic
    for i in range(t - 1, deg - 1, -1):
        c = folded[i]
        if c:
            shift = i - deg
            for j in range(deg + 1):
                folded[shift + j] -= c * phi[j]
    return tuple(folded[:deg])


class CycNum:
    """An element of Q(zeta_t), zeta a primitive t-th root of unity.

    ``coeffs[j]`` is the coefficient of ``zeta**j`` for ``0 <= j < phi(t)``.
    Instances are immutable and hashable.
    """

    __slots__ = ("t", "coeffs")

    def __init__(self, t: int, coeffs: Iterable = ()):
        if t < 1:
            raise ValueError(f"cyclotomic order must be positive, got {t}")
        self.t = t
        self.coeffs = _reduce_coeffs(t, coeffs)

    @classmethod
    def _raw(cls, t: int, coeffs: tuple[Fraction, ...]) -> "CycNum":
        obj = object.__new__(cls)
        obj.t = t
        obj.coeffs = coeffs
        return obj

    @classmethod
    def zeta(cls, t: int, power: int = 1) -> "CycNum":
        poly = [0] * t
        poly[power % t] = 1
        return cls(t, poly)

    @classmethod
    def from_int(cls, t: int, value) -> "CycNum":
        return cls(t, [value])

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def _coerce(self, other) -> "CycNum":
        if isinstance(other, CycNum):
            if other.t != self.t:
                raise ValueError(f"mixing Q(zeta_{self.t}) with Q(zeta_{other.t})")
            return other
        if isinstance(other, (int, Fraction)):
            return CycNum.from_int(self.t, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycNum._raw(self.t, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycNum._raw(self.t, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        prod = [Fraction(0)] * (2 * len(self.coeffs))
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        prod[i + j] += a * b
        return CycNum(self.t, prod)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not supported")
        result = CycNum.from_int(self.t, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def times_zeta(self, power: int) -> "CycNum":
        poly = [Fraction(0)] * self.t
        for j, c in enumerate(self.coeffs):
            poly[(j + power) % self.t] += c
        return CycNum(self.t, poly)

    def galois(self, j: int) -> "CycNum":
        """Image under the automorphism zeta -> zeta**j (gcd(j, t) = 1)."""
        if gcd(j, self.t) != 1:
            raise ValueError(f"{j} is not a unit modulo {self.t}")
        poly = [Fraction(0)] * self.t
        for i, c in enumerate(self.coeffs):
            poly[(i * j) % self.t] += c
        return CycNum(self.t, poly)

    def to_complex(self) -> complex:
        import cmath

        w = cmath.exp(2j * cmath.pi / self.t)
        return sum(float(c) * w**i for i, c in enumerate(self.coeffs))

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CycNum.from_int(self.t, other)
        if not isinstance(other, CycNum):
            return NotImplemented
        return self.t == other.t and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.t, self.coeffs))

    def coefficient_strings(self) -> list[str]:
        return [str(c) for c in self.coeffs]

    def __str__(self):
        terms = []
        for j, c in enumerate(self.coeffs):
            if not c:
                continue
            if j == 0:
                terms.append(str(c))
            else:
                mono = "z" if j == 1 else f"z^{j}"
                if c == 1:
                    terms.append(mono)
                elif c == -1:
                    terms.append("-" + mono)
                else:
                    terms.append(f"{c}*{mono}")
        if not terms:
            return "0"
        return " + ".join(terms).replace("+ -", "- ")

    def __repr__(self):
        return f"CycNum({self.t}, {self})"


def cyc_reduce(t: int, poly: Sequence) -> CycNum:
    """Canonical representative of ``sum poly[j] * zeta**j`` in Q(zeta_t)."""
    return CycNum(t, poly)


# ---------------------------------------------------------------------------
# integer matrices
# ---------------------------------------------------------------------------


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def mat_mul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    if any(len(row) != inner for row in a):
        raise ValueError("dimension mismatch in mat_mul")
    return [[sum(row[k] * b[k][j] for k in range(inner)) for j in range(cols)] for row in a]


def mat_vec(a: IntMatrix, v: Sequence[int]) -> list[int]:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def transpose(a: IntMatrix, ncols: int | None = None) -> IntMatrix:
    if not a:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*a)]


def determinant(a: IntMatrix) -> int:
    """Bareiss fraction-free determinant."""
    n = len(a)
    if n == 0:
        return 1
    m = [row[:] for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``x*a + y*b == g == gcd(a, b) >= 0``."""
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    if g < 0:
        g, x, y = -g, -x, -y
    return g, x, y


def _combine_rows(rows: IntMatrix, r: int, i: int, x: int, y: int, u: int, v: int) -> None:
    ra, rb = rows[r], rows[i]
    rows[r] = [x * p + y * s for p, s in zip(ra, rb)]
    rows[i] = [u * p + v * s for p, s in zip(ra, rb)]


def hermite_normal_form(m: IntMatrix, ncols: int | None = None) -> tuple[IntMatrix, IntMatrix]:
    """Row-style Hermite normal form.

    Returns ``(H, U)`` with ``U`` unimodular and ``U @ m == H``.  ``H`` is in
    row echelon form with positive pivots, entries above each pivot reduced into
    ``[0, pivot)``, and zero rows at the bottom.
    """
    nrows = len(m)
    if ncols is None:
        ncols = len(m[0]) if m else 0
    a = [list(map(int, row)) for row in m]
    u = identity(nrows)
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        for i in range(r + 1, nrows):
            b = a[i][c]
            if b == 0:
                continue
            p = a[r][c]
            g, x, y = xgcd(p, b)
            _combine_rows(a, r, i, x, y, -b // g, p // g)
            _combine_rows(u, r, i, x, y, -b // g, p // g)
        piv = a[r][c]
        if piv == 0:
            continue
        if piv < 0:
            a[r] = [-e for e in a[r]]
            u[r] = [-e for e in u[r]]
            piv = -piv
        for i in range(r):
            qt = a[i][c] // piv
            if qt:
                a[i] = [e - qt * f for e, f in zip(a[i], a[r])]
                u[i] = [e - qt * f for e, f in zip(u[i], u[r])]
        r += 1
    return a, u


def hnf_basis(rows: Iterable[Sequence[int]], ncols: int) -> IntMatrix:
    """Canonical (HNF) basis of the lattice spanned by ``rows``."""
    rows = [list(map(int, r)) for r in rows]
    if not rows:
        return []
    h, _ = hermite_normal_form(rows, ncols)
    return [row for row in h if any(row)]


def hnf_reduce(basis: IntMatrix, vec: Sequence[int]) -> list[int]:
    """Reduce ``vec`` modulo the lattice with HNF ``basis``.

    The result is the unique representative whose entry at every pivot column
    lies in ``[0, pivot)``.
    """
    v = list(vec)
    for row in basis:
        p = next(j for j, e in enumerate(row) if e)
        qt = v[p] // row[p]
        if qt:
            v = [a - qt * b for a, b in zip(v, row)]
    return v


def rank(m: IntMatrix) -> int:
    if not m:
        return 0
    return len(hnf_basis(m, len(m[0])))


@dataclass(frozen=True)
class SnfDecomposition:
    """``U @ M @ V == S`` with ``S`` diagonal, ``S[i][i] | S[i+1][i+1]``."""

    U: IntMatrix
    S: IntMatrix
    V: IntMatrix

    @property
    def diagonal(self) -> list[int]:
        return [self.S[i][i] for i in range(min(len(self.S), len(self.S[0]) if self.S else 0))]


def smith_normal_form(m: IntMatrix) -> SnfDecomposition:
    """Smith normal form with unimodular transforms."""
    if not m or not m[0]:
        raise ValueError("smith_normal_form needs a nonempty matrix")
    nr, nc = len(m), len(m[0])
    a = [list(map(int, row)) for row in m]
    u = identity(nr)
    v = identity(nc)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):  # row_dst += k * row_src
        a[dst] = [x + k * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + k * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, k):  # col_dst += k * col_src
        for row in a:
            row[dst] += k * row[src]
        for row in v:
            row[dst] += k * row[src]

    for k in range(min(nr, nc)):
        while True:
            best = None
            for i in range(k, nr):
                for j in range(k, nc):
                    e = a[i][j]
                    if e and (best is None or abs(e) < abs(a[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                return SnfDecomposition(u, a, v)
            if best[0] != k:
                swap_rows(k, best[0])
            if best[1] != k:
                swap_cols(k, best[1])
            piv = a[k][k]
            clean = True
            for i in range(k + 1, nr):
                if a[i][k]:
                    add_row(i, k, -(a[i][k] // piv))
                    clean = clean and a[i][k] == 0
            for j in range(k + 1, nc):
                if a[k][j]:
                    add_col(j, k, -(a[k][j] // piv))
                    clean = clean and a[k][j] == 0
            if not clean:
                continue
            bad = next(
                (i for i in range(k + 1, nr) for j in range(k + 1, nc) if a[i][j] % piv),
                None,
            )
            if bad is None:
                break
            add_row(k, bad, 1)
        if a[k][k] < 0:
            a[k] = [-e for e in a[k]]
            u[k] = [-e for e in u[k]]
    return SnfDecomposition(u, a, v)


def primitive(vec: Sequence[int]) -> list[int]:
    g = 0
    for e in vec:
        g = gcd(g, e)
    if g == 0:
        return list(vec)
    return [e // g for e in vec]


def integer_kernel(m: IntMatrix, ncols: int | None = None) -> IntMatrix:
    """Hermite-reduced basis of ``{v in Z^ncols : m @ v == 0}``.

    Each returned vector is primitive and has a positive leading entry; the
    list is empty when the kernel is trivial.
    """
    if ncols is None:
        if not m:
            raise ValueError("ncols is required for a matrix with no rows")
        ncols = len(m[0])
    if not m:
        return identity(ncols)
    h, u = hermite_normal_form(transpose(m, ncols), len(m))
    kernel = [u[i] for i, row in enumerate(h) if not any(row)]
    return [primitive(v) for v in hnf_basis(kernel, ncols)]


def circulant(row: Sequence[int]) -> IntMatrix:
    """``C[k][r] = row[(k + r) % t]`` (each row is the previous one shifted left)."""
    t = len(row)
    return [[row[(k + r) % t] for r in range(t)] for k in range(t)]

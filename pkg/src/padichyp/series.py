"""
Truncated power and Laurent series in one local variable, 2x2 matrices of
them, and a small rational-function type in lambda.

Every series carries the name of its local variable:

    "lambda"    expansion at 0 in lambda
    "1-lambda"  expansion at 1 in t = 1 - lambda
    "1/lambda"  expansion at infinity in t = 1/lambda

and an order M meaning the series is known modulo var^(M+1).  Coefficients are
Fractions (exact) or PadicNumbers (certified modulo p^N).
"""
from __future__ import annotations

from fractions import Fraction
from typing import Callable, Sequence

from .padic import PadicNumber

VAR_ZERO = "lambda"
VAR_ONE = "1-lambda"
VAR_INF = "1/lambda"
LOCAL_VARS = (VAR_ZERO, VAR_ONE, VAR_INF)


class SeriesError(ValueError):
    pass


def _is_zero(c) -> bool:
    if isinstance(c, PadicNumber):
        return c.is_zero()
    return c == 0


def _ring_of(coeffs) -> str:
    for c in coeffs:
        if isinstance(c, PadicNumber):
            return "padic"
    return "rational"


class TruncSeries:
    """sum_{i=lower}^{order} c_i var^i + O(var^(order+1))."""

    __slots__ = ("coeffs", "lower", "order", "var", "ring")

    def __init__(self, coeffs: Sequence, lower: int = 0, order: int | None = None,
                 var: str = VAR_ZERO):
        coeffs = list(coeffs)
        if order is None:
            order = lower + len(coeffs) - 1
        if order < lower - 1:
            raise SeriesError("order below lower index")
        n = order - lower + 1
        if len(coeffs) < n:
            coeffs += [Fraction(0)] * (n - len(coeffs))
        self.coeffs = tuple(Fraction(c) if isinstance(c, int) else c for c in coeffs[:n])
        self.lower = lower
        self.order = order
        self.var = var
        self.ring = _ring_of(self.coeffs)

    # -- construction -------------------------------------------------------
    @classmethod
    def from_function(cls, fn: Callable[[int], object], order: int, lower: int = 0,
                      var: str = VAR_ZERO) -> "TruncSeries":
        return cls([fn(i) for i in range(lower, order + 1)], lower, order, var)

    @classmethod
    def constant(cls, c, order: int, var: str = VAR_ZERO) -> "TruncSeries":
        return cls([c], 0, order, var)

    @classmethod
    def monomial(cls, k: int, order: int, c=1, var: str = VAR_ZERO) -> "TruncSeries":
        if order < k:
            return cls([], k, k - 1, var)
        return cls([c] + [0] * (order - k), k, order, var)

    # -- access -------------------------------------------------------------
    def __getitem__(self, i: int):
        if i < self.lower:
            return Fraction(0)
        if i > self.order:
            raise SeriesError(f"coefficient {i} beyond certified order {self.order}")
        return self.coeffs[i - self.lower]

    def items(self):
        return zip(range(self.lower, self.order + 1), self.coeffs)

    def __repr__(self):
        terms = [f"({c})*{self.var}^{i}" for i, c in self.items() if not _is_zero(c)][:6]
        more = " + ..." if len(terms) == 6 else ""
        return f"TruncSeries[{self.var}]({' + '.join(terms) or '0'}{more} + O({self.order + 1}))"

    def _check(self, other: "TruncSeries"):
        if self.var != other.var:
            raise SeriesError(f"variable mismatch: {self.var} vs {other.var}")

    def normalized(self) -> "TruncSeries":
        """Drop leading zero coefficients (raises the lower index)."""
        k = 0
        while k < len(self.coeffs) and _is_zero(self.coeffs[k]) and not (
                isinstance(self.coeffs[k], PadicNumber)):
            k += 1
        if k == 0:
            return self
        return TruncSeries(self.coeffs[k:], self.lower + k, self.order, self.var)

    def valuation(self) -> int | None:
        """Index of the first nonzero coefficient, None if all known ones vanish."""
        for i, c in self.items():
            if not _is_zero(c):
                return i
        return None

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, TruncSeries):
            other = TruncSeries.constant(other, self.order, self.var)
        self._check(other)
        lo = min(self.lower, other.lower)
        hi = min(self.order, other.order)
        out = []
        for i in range(lo, hi + 1):
            a = self.coeffs[i - self.lower] if i >= self.lower else None
            b = other.coeffs[i - other.lower] if i >= other.lower else None
            if a is None:
                out.append(b)
            elif b is None:
                out.append(a)
            else:
                out.append(a + b)
        return TruncSeries(out, lo, hi, self.var)

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries([-c for c in self.coeffs], self.lower, self.order, self.var)

    def __sub__(self, other):
        if not isinstance(other, TruncSeries):
            other = TruncSeries.constant(other, self.order, self.var)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "TruncSeries":
        return TruncSeries([c * x for x in self.coeffs], self.lower, self.order, self.var)

    def __mul__(self, other):
        if not isinstance(other, TruncSeries):
            return self.scale(other)
        self._check(other)
        lo = self.lower + other.lower
        hi = min(self.order + other.lower, other.order + self.lower)
        f, g = self.coeffs, other.coeffs
        out = []
        for n in range(lo, hi + 1):
            k = n - lo
            acc = None
            for i in range(max(0, k - len(g) + 1), min(k, len(f) - 1) + 1):
                t = f[i] * g[k - i]
                acc = t if acc is None else acc + t
            out.append(Fraction(0) if acc is None else acc)
        return TruncSeries(out, lo, hi, self.var)

    def __rmul__(self, other):
        return self.scale(other)

    def shift(self, k: int) -> "TruncSeries":
        """Multiply by var^k."""
        return TruncSeries(self.coeffs, self.lower + k, self.order + k, self.var)

    def truncate(self, order: int) -> "TruncSeries":
        if order > self.order:
            raise SeriesError(f"requested order {order} beyond certified order {self.order}")
        return TruncSeries(self.coeffs[: max(order - self.lower + 1, 0)], self.lower, order, self.var)

    def derivative(self) -> "TruncSeries":
        if self.lower >= 0:
            out = [i * c for i, c in self.items() if i >= 1]
            return TruncSeries(out, max(self.lower - 1, 0), self.order - 1, self.var)
        out = [i * c for i, c in self.items()]
        return TruncSeries(out, self.lower - 1, self.order - 1, self.var)

    def inverse(self, M: int | None = None) -> "TruncSeries":
        """Multiplicative inverse; the leading coefficient must be invertible.
        Exact leading zeros are dropped first."""
        self = self.normalized()
        c0 = self.coeffs[0] if self.coeffs else Fraction(0)
        if _is_zero(c0):
            raise SeriesError("leading coefficient is not invertible")
        rel = self.order - self.lower
        if M is not None:
            rel = min(rel, M + self.lower)
        f = self.coeffs
        inv0 = 1 / c0
        out = [inv0]
        for n in range(1, rel + 1):
            acc = None
            for i in range(1, n + 1):
                t = f[i] * out[n - i]
                acc = t if acc is None else acc + t
            out.append(-(acc * inv0))
        return TruncSeries(out, -self.lower, rel - self.lower, self.var)

    def evaluate(self, x):
        """Exact sum of the known terms at var = x."""
        acc = Fraction(0)
        for i, c in self.items():
            if _is_zero(c) and not isinstance(c, PadicNumber):
                continue
            acc = c * x ** i + acc
        return acc

    def map(self, fn) -> "TruncSeries":
        return TruncSeries([fn(c) for c in self.coeffs], self.lower, self.order, self.var)

    def retag(self, var: str) -> "TruncSeries":
        return TruncSeries(self.coeffs, self.lower, self.order, var)

    def power(self, k: int) -> "TruncSeries":
        """Substitute var -> var^k (k >= 1)."""
        out = [Fraction(0)] * ((self.order + 1) * k - self.lower * k)
        for i, c in self.items():
            out[(i - self.lower) * k] = c
        return TruncSeries(out, self.lower * k, (self.order + 1) * k - 1, self.var)


def series_arith(op: str, f: TruncSeries, g=None) -> TruncSeries:
    if op == "add":
        return f + g
    if op == "mul":
        return f * g
    if op == "derivative":
        return f.derivative()
    if op == "scalar_mul":
        return f.scale(g)
    raise SeriesError(f"unknown operation {op!r}")


def series_inverse(f: TruncSeries, M: int | None = None) -> TruncSeries:
    return f.inverse(M)


# The substitutions relate the three local charts.  A series in the local
# variable of one chart, composed with the map, is the same list of
# coefficients read in the local variable of another chart.
_RETAG = {
    "one_minus": {VAR_ZERO: VAR_ONE, VAR_ONE: VAR_ZERO},
    "reciprocal": {VAR_ZERO: VAR_INF, VAR_INF: VAR_ZERO},
    # lambda -> 1/(1-lambda) sends the chart at infinity to the chart at 1;
    # its inverse lambda -> 1 - 1/lambda goes the other way.
    "moebius_theta": {VAR_INF: VAR_ONE, VAR_ONE: VAR_INF},
}


def series_substitute(f: TruncSeries, kind: str, p: int | None = None) -> TruncSeries:
    if kind == "power_p":
        if p is None:
            raise SeriesError("power_p needs a prime")
        return f.power(p)
    try:
        table = _RETAG[kind]
    except KeyError:
        raise SeriesError(f"unknown substitution {kind!r}") from None
    if f.var not in table:
        raise SeriesError(f"substitution {kind} is not defined on a series in {f.var}")
    return f.retag(table[f.var])


def first_discrepancy(f: TruncSeries, g: TruncSeries) -> int:
    """First index where f and g differ (at certified precision), or the
    common order + 1 when they agree."""
    f._check(g)
    d = f - g
    for i, c in d.items():
        if not _is_zero(c):
            return i
    return d.order + 1


class SeriesMatrix2:
    """2x2 matrix of series in a common variable, entries [[a, b], [c, d]]."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        (a, b), (c, d) = rows
        self.rows = ((a, b), (c, d))
        var = a.var
        for e in (b, c, d):
            if e.var != var:
                raise SeriesError("matrix entries in different variables")

    @classmethod
    def identity(cls, order: int, var: str = VAR_ZERO) -> "SeriesMatrix2":
        one = TruncSeries.constant(1, order, var)
        zero = TruncSeries.constant(0, order, var)
        return cls(((one, zero), (zero, one)))

    @classmethod
    def constant(cls, m, order: int, var: str = VAR_ZERO) -> "SeriesMatrix2":
        return cls(tuple(tuple(TruncSeries.constant(m[i][j], order, var) for j in range(2))
                         for i in range(2)))

    @classmethod
    def diagonal(cls, d1: TruncSeries, d2: TruncSeries) -> "SeriesMatrix2":
        z1 = TruncSeries.constant(0, d1.order, d1.var)
        z2 = TruncSeries.constant(0, d2.order, d2.var)
        return cls(((d1, z1), (z2, d2)))

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    @property
    def var(self):
        return self.rows[0][0].var

    @property
    def order(self):
        return min(e.order for row in self.rows for e in row)

    def entries(self):
        return [e for row in self.rows for e in row]

    def __mul__(self, other):
        if not isinstance(other, SeriesMatrix2):
            return self.map(lambda e: e.scale(other))
        A, B = self.rows, other.rows
        return SeriesMatrix2(tuple(tuple(A[i][0] * B[0][j] + A[i][1] * B[1][j] for j in range(2))
                                   for i in range(2)))

    def __add__(self, other):
        return SeriesMatrix2(tuple(tuple(self.rows[i][j] + other.rows[i][j] for j in range(2))
                                   for i in range(2)))

    def __sub__(self, other):
        return SeriesMatrix2(tuple(tuple(self.rows[i][j] - other.rows[i][j] for j in range(2))
                                   for i in range(2)))

    def scale_rows(self, c1, c2) -> "SeriesMatrix2":
        """Left multiplication by diag(c1, c2); c may be scalars or series."""
        (a, b), (c, d) = self.rows
        return SeriesMatrix2(((a * c1, b * c1), (c * c2, d * c2)))

    def map(self, fn) -> "SeriesMatrix2":
        return SeriesMatrix2(tuple(tuple(fn(e) for e in row) for row in self.rows))

    def transpose(self) -> "SeriesMatrix2":
        (a, b), (c, d) = self.rows
        return SeriesMatrix2(((a, c), (b, d)))

    def det(self) -> TruncSeries:
        (a, b), (c, d) = self.rows
        return a * d - b * c

    def inverse(self, M: int | None = None) -> "SeriesMatrix2":
        (a, b), (c, d) = self.rows
        dinv = self.det().inverse(M)
        return SeriesMatrix2(((d * dinv, -(b * dinv)), (-(c * dinv), a * dinv)))

    def truncate(self, order: int) -> "SeriesMatrix2":
        return self.map(lambda e: e.truncate(order))

    def substitute(self, kind: str, p: int | None = None) -> "SeriesMatrix2":
        return self.map(lambda e: series_substitute(e, kind, p))

    def const(self):
        return [[self.rows[i][j][0] for j in range(2)] for i in range(2)]

    def __repr__(self):
        return f"SeriesMatrix2({self.rows!r})"


def matrix2_ops(op: str, A: SeriesMatrix2, B: SeriesMatrix2 | None = None):
    if op == "mul":
        return A * B
    if op == "inverse":
        return A.inverse()
    if op == "det":
        return A.det()
    raise SeriesError(f"unknown matrix operation {op!r}")


def matrix_first_discrepancy(A: SeriesMatrix2, B: SeriesMatrix2) -> int:
    return min(first_discrepancy(A.rows[i][j], B.rows[i][j]) for i in range(2) for j in range(2))


# -- polynomials and rational functions in lambda ---------------------------

def _ptrim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def poly_mul(f, g):
    if not f or not g:
        return []
    out = [Fraction(0)] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return _ptrim(out)


def poly_add(f, g):
    n = max(len(f), len(g))
    return _ptrim([(f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0) for i in range(n)])


def poly_compose_affine(f, alpha, beta):
    """f(alpha + beta*t) as a polynomial in t."""
    out = []
    power = [Fraction(1)]
    for c in f:
        out = poly_add(out, [c * x for x in power])
        power = poly_mul(power, [Fraction(alpha), Fraction(beta)])
    return out


def poly_compose_one_minus(f):
    """f(1 - t) as a polynomial in t."""
    return poly_compose_affine(f, 1, -1)


class RationalFunction:
    """num(lambda)/den(lambda) with Fraction coefficients (low degree first)."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=(1,)):
        num = _ptrim(Fraction(c) for c in num)
        den = _ptrim(Fraction(c) for c in den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        self.num, self.den = num, den

    @classmethod
    def const(cls, c) -> "RationalFunction":
        return cls([c])

    def __call__(self, x):
        n = sum((c * x ** i for i, c in enumerate(self.num)), Fraction(0))
        d = sum((c * x ** i for i, c in enumerate(self.den)), Fraction(0))
        return n / d

    def __add__(self, other):
        if not isinstance(other, RationalFunction):
            other = RationalFunction.const(other)
        return RationalFunction(poly_add(poly_mul(self.num, other.den), poly_mul(other.num, self.den)),
                                poly_mul(self.den, other.den))

    def __mul__(self, other):
        if not isinstance(other, RationalFunction):
            other = RationalFunction.const(other)
        return RationalFunction(poly_mul(self.num, other.num), poly_mul(self.den, other.den))

    __rmul__ = __mul__

    def __neg__(self):
        return RationalFunction([-c for c in self.num], self.den)

    def __sub__(self, other):
        return self + (-other)

    def __truediv__(self, other):
        if not isinstance(other, RationalFunction):
            other = RationalFunction.const(other)
        return RationalFunction(poly_mul(self.num, other.den), poly_mul(self.den, other.num))

    def compose_affine(self, alpha, beta) -> "RationalFunction":
        """lambda -> alpha + beta*t."""
        return RationalFunction(poly_compose_affine(self.num, alpha, beta),
                                poly_compose_affine(self.den, alpha, beta))

    def compose_reciprocal(self) -> "RationalFunction":
        """lambda -> 1/t."""
        n = max(len(self.num), len(self.den)) - 1
        num = list(reversed(self.num + [Fraction(0)] * (n + 1 - len(self.num))))
        den = list(reversed(self.den + [Fraction(0)] * (n + 1 - len(self.den))))
        return RationalFunction(num, den)

    def to_chart(self, var: str) -> "RationalFunction":
        """The same function written in the local variable of a chart."""
        if var == VAR_ZERO:
            return self
        if var == VAR_ONE:
            return self.compose_affine(1, -1)
        if var == VAR_INF:
            return self.compose_reciprocal()
        raise SeriesError(f"unknown variable {var!r}")

    def equals(self, other) -> bool:
        return poly_add(poly_mul(self.num, other.den), [-c for c in poly_mul(other.num, self.den)]) == []

    def series(self, order: int, var: str = VAR_ZERO) -> TruncSeries:
        """Laurent expansion in the local variable of the requested chart."""
        local = self.to_chart(var)
        num, den = local.num, local.den
        if not num:
            return TruncSeries([], 0, order, var)
        kd = next(i for i, c in enumerate(den) if c != 0)
        den_s = TruncSeries(den[kd:], 0, order + kd + 1 + len(den), var)
        num_s = TruncSeries(num, 0, order + kd + 1 + len(num), var)
        out = num_s * den_s.inverse()
        return out.shift(-kd).truncate(order)

    def __repr__(self):
        return f"RationalFunction({[str(c) for c in self.num]}/{[str(c) for c in self.den]})"


def solve_linear(A, b):
    """Exact Gaussian elimination; returns None when A is singular."""
    n = len(A)
    M = [list(map(Fraction, row)) + [Fraction(v)] for row, v in zip(A, b)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            return None
        M[col], M[piv] = M[piv], M[col]
        inv = 1 / M[col][col]
        M[col] = [x * inv for x in M[col]]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col]
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
    return [M[r][n] for r in range(n)]


def pade(f: TruncSeries, degree: int) -> RationalFunction | None:
    """Rational function P/Q with deg P, deg Q <= degree (after clearing the
    Laurent tail) whose expansion matches every known coefficient of f.

    f must be a series in lambda with exact rational coefficients.  Returns
    None when no such function exists at this degree bound.
    """
    if f.ring != "rational":
        raise SeriesError("rational reconstruction needs exact coefficients")
    k = max(0, -f.lower)
    g = f.shift(k)  # power series
    c = [g[i] if i >= g.lower else Fraction(0) for i in range(0, g.order + 1)]
    for d in range(0, degree + 1):
        if len(c) < 2 * d + 2:
            break
        if d == 0:
            q = [Fraction(1)]
        else:
            A = [[c[n - j] if n - j >= 0 else 0 for j in range(1, d + 1)] for n in range(d + 1, 2 * d + 1)]
            rhs = [-c[n] for n in range(d + 1, 2 * d + 1)]
            sol = solve_linear(A, rhs)
            if sol is None:
                continue
            q = [Fraction(1)] + sol
        P = _ptrim(sum(q[j] * c[n - j] for j in range(len(q)) if n - j >= 0) for n in range(d + 1))
        cand = RationalFunction(P, poly_mul(q, [0] * k + [1]))
        if first_discrepancy(cand.series(f.order), f.truncate(f.order)) > f.order:
            return cand
    return None

"""
Gauss hypergeometric series, the prime map a -> a', the hypergeometric system
dY/dlambda = Y G_a(lambda) and its solution matrices at 0, 1 and infinity.

Parameter convention: the classical (a, b, c) of F(a, b, c; lambda) is the
triple (a1, a2, a3) everywhere, so u2 at 0 is a3 * F(a1, a2, a3; lambda).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .series import (VAR_INF, VAR_ONE, VAR_ZERO, RationalFunction, SeriesMatrix2,
                     TruncSeries, first_discrepancy)

POINTS = (0, 1, "inf")
_POINT_VAR = {0: VAR_ZERO, 1: VAR_ONE, "inf": VAR_INF}


class ParameterError(ValueError):
    """Parameters outside the domain of an operation."""


class ResonanceError(ParameterError):
    """Integer local exponent difference (logarithmic case, unsupported)."""


class PeriodOverflow(RuntimeError):
    pass


def normalize_point(z):
    if z in (0, "0"):
        return 0
    if z in (1, "1"):
        return 1
    if z in ("inf", "oo", "infinity", math.inf):
        return "inf"
    raise ParameterError(f"unknown singular point {z!r}")


def _F(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class ParamTriple:
    a1: Fraction
    a2: Fraction
    a3: Fraction

    def __post_init__(self):
        for name in ("a1", "a2", "a3"):
            object.__setattr__(self, name, _F(getattr(self, name)))

    @classmethod
    def of(cls, a) -> "ParamTriple":
        if isinstance(a, ParamTriple):
            return a
        a1, a2, a3 = a
        return cls(a1, a2, a3)

    def as_tuple(self):
        return (self.a1, self.a2, self.a3)

    def __iter__(self):
        return iter(self.as_tuple())

    def __getitem__(self, i):
        return self.as_tuple()[i]

    def __add__(self, u):
        u1, u2, u3 = u
        return ParamTriple(self.a1 + u1, self.a2 + u2, self.a3 + u3)

    def __sub__(self, u):
        u1, u2, u3 = u
        return ParamTriple(self.a1 - u1, self.a2 - u2, self.a3 - u3)

    def scaled(self, k) -> "ParamTriple":
        return ParamTriple(self.a1 * k, self.a2 * k, self.a3 * k)

    def linear_forms(self):
        """(l1, l2, l3, l4) = (a3 - a1, a3 - a2, a2, a1)."""
        return (self.a3 - self.a1, self.a3 - self.a2, self.a2, self.a1)

    def in_Zp(self, p: int) -> bool:
        return all(x.denominator % p for x in self)

    def __str__(self):
        return ",".join(str(x) for x in self)


def prime_step(a, p: int):
    """The unique (a', mu) with p*a' - a = mu, mu in {0, ..., p-1}, a' in Z_p."""
    a = _F(a)
    if a.denominator % p == 0:
        raise ParameterError(f"{a} is not in Z_{p}")
    mu = (-a.numerator * pow(a.denominator, -1, p)) % p
    return (a + mu) / p, mu


def prime_step_triple(a: ParamTriple, p: int):
    steps = [prime_step(x, p) for x in a]
    return ParamTriple(*(s[0] for s in steps)), tuple(s[1] for s in steps)


@dataclass
class OrbitRecord:
    sequence: list
    mu_sequence: list
    period: int | None
    p: int


def orbit(a, p: int, f_max: int = 8) -> OrbitRecord:
    """Iterate the prime map until the start point recurs (period <= f_max).

    Accepts a ParamTriple or a single rational; the period is minimal.
    """
    if isinstance(a, ParamTriple):
        cur, shape = a.as_tuple(), "triple"
    elif isinstance(a, (tuple, list)):
        cur = tuple(_F(x) for x in a)
        shape = "triple" if len(cur) == 3 else "tuple"
    else:
        cur, shape = (_F(a),), "scalar"
    start = cur
    seq, mus = [], []
    for i in range(1, f_max + 1):
        steps = [prime_step(x, p) for x in cur]
        if shape == "scalar":
            seq.append(cur[0])
            mus.append(steps[0][1])
        else:
            seq.append(ParamTriple(*cur) if shape == "triple" else cur)
            mus.append(tuple(s[1] for s in steps))
        cur = tuple(s[0] for s in steps)
        if cur == start:
            return OrbitRecord(seq, mus, i, p)
    raise PeriodOverflow(f"period of {start} exceeds {f_max}")


def mu_vector(a, b, p: int):
    """p*b - a as an integer vector (raises unless it is integral)."""
    out = []
    for x, y in zip(a, b):
        m = p * _F(y) - _F(x)
        if m.denominator != 1:
            raise ParameterError("p*b - a is not integral")
        out.append(int(m))
    return tuple(out)


# -- hypergeometric series ---------------------------------------------------

def hyper_coefficients(a, b, c, M: int):
    """(a)_s (b)_s / ((c)_s s!) for s = 0..M."""
    a, b, c = _F(a), _F(b), _F(c)
    out = [Fraction(1)]
    for s in range(M):
        if c + s == 0:
            raise ParameterError(f"Pochhammer zero: ({c})_{s + 1} = 0")
        out.append(out[-1] * (a + s) * (b + s) / ((c + s) * (s + 1)))
    return out


def hyper_truncated(a, b, c, M: int, var: str = VAR_ZERO) -> TruncSeries:
    return TruncSeries(hyper_coefficients(a, b, c, M), 0, M, var)


def hyper_eval_truncated(a, b, c, x, n: int) -> Fraction:
    """Exact value of the partial sum of the first n terms at x."""
    acc = Fraction(0)
    term = Fraction(1)
    a, b, c, x = _F(a), _F(b), _F(c), _F(x)
    for s in range(n):
        acc += term
        if c + s == 0:
            raise ParameterError(f"Pochhammer zero: ({c})_{s + 1} = 0")
        term = term * (a + s) * (b + s) * x / ((c + s) * (s + 1))
    return acc


# -- the system ---------------------------------------------------------------

def system_matrix(a) -> list:
    """G_a(lambda) as a 2x2 list of rational functions (row convention
    dY/dlambda = Y G)."""
    a1, a2, a3 = ParamTriple.of(a)
    lam = [0, 1]
    one_minus = [1, -1]
    return [[RationalFunction([-a3], lam), RationalFunction([a3 - a1], one_minus)],
            [RationalFunction([a3 - a2], lam), RationalFunction([a1 + a2 - a3], one_minus)]]


@dataclass
class SingularData:
    point: object
    var: str
    exponents: tuple   # diagonal of D_z(a)

    @property
    def l_z(self) -> str:
        return {0: "lambda", 1: "1-lambda", "inf": "lambda^-1"}[self.point]


def exponent_matrix(z, a) -> tuple:
    """Diagonal of D_z(a): (0, -a3), (0, a3 - a1 - a2), (a1, a2)."""
    a1, a2, a3 = ParamTriple.of(a)
    z = normalize_point(z)
    if z == 0:
        return (Fraction(0), -a3)
    if z == 1:
        return (Fraction(0), a3 - a1 - a2)
    return (a1, a2)


def exponent_difference(z, a) -> Fraction:
    a1, a2, a3 = ParamTriple.of(a)
    z = normalize_point(z)
    return {0: a3, 1: a3 - a1 - a2, "inf": a2 - a1}[z]


def resonance_guard(z, a, M: int):
    d = exponent_difference(z, a)
    if d.denominator == 1 and abs(d) <= M:
        raise ResonanceError(f"integer exponent difference {d} at {z}")


def _u(scale, a, b, c, M, var, shift=0) -> TruncSeries:
    f = hyper_truncated(a, b, c, M - shift, var)
    return f.scale(scale).shift(shift)


def solution_matrix(z, a, M: int = 30):
    """(SingularData, U^(z)) with Y = l_z^{D_z} U^(z) solving dY/dlambda = Y G.

    Entries are exact rational series in the local variable of z.
    """
    z = normalize_point(z)
    a = ParamTriple.of(a)
    resonance_guard(z, a, M)
    a1, a2, a3 = a
    var = _POINT_VAR[z]
    if z == 0:
        rows = ((_u(a3 - a2, a1, a2, a3 + 1, M, var), _u(a3, a1, a2, a3, M, var)),
                (_u(1 - a3, a2 - a3, a1 - a3, 1 - a3, M, var),
                 _u(a3 - a1, 1 + a2 - a3, 1 + a1 - a3, 2 - a3, M, var, shift=1)))
    elif z == 1:
        s = a1 + a2 - a3
        rows = ((_u(s, a1, a2, s, M, var), _u(a1 - a3, a1, a2, s + 1, M, var)),
                (_u(a3 - a2, a3 - a1 + 1, a3 - a2 + 1, 2 - s, M, var, shift=1),
                 _u(s - 1, a3 - a1, a3 - a2, 1 - s, M, var)))
    else:
        rows = ((_u(a3 - a2, a1, a1 - a3, a1 - a2 + 1, M, var),
                 _u(a3 - a1, a1, a1 - a3 + 1, a1 - a2 + 1, M, var)),
                (_u(a2 - a1 + 1, a2 - a3, a2, a2 - a1 + 1, M, var),
                 _u(a2 - a1 + 1, a2 - a3 + 1, a2, a2 - a1 + 1, M, var)))
    return SingularData(z, var, exponent_matrix(z, a)), SeriesMatrix2(rows)


def local_system(z, a) -> list:
    """H(t) = t * dlambda/dt * G(lambda(t)) in the local variable t of z.

    A row t^e v(t) solves the system exactly when t v' + e v = v H.
    """
    z = normalize_point(z)
    G = system_matrix(a)
    t = RationalFunction([0, 1])
    if z == 0:
        factor = t
    elif z == 1:
        factor = -t          # lambda = 1 - t
    else:
        factor = RationalFunction([-1], [0, 1])   # t * d(1/t)/dt = -1/t
    var = _POINT_VAR[z]
    return [[factor * G[i][j].to_chart(var) for j in range(2)] for i in range(2)]


def ode_residual(z, a, Y: SeriesMatrix2, exponents) -> list:
    """Rows of t v' + e v - v H for each row v of Y (series in t)."""
    H = local_system(z, a)
    order = Y.order
    Hs = [[H[i][j].series(order, VAR_ZERO).retag(Y.var) for j in range(2)] for i in range(2)]
    out = []
    for r in range(2):
        v = Y.rows[r]
        e = exponents[r]
        res = []
        for j in range(2):
            lhs = v[j].derivative().shift(1) + v[j].scale(e)
            rhs = v[0] * Hs[0][j] + v[1] * Hs[1][j]
            res.append(lhs - rhs)
        out.append(res)
    return out


def check_ode(z, a, M: int = 30) -> int:
    """First order at which l_z^{D_z} U^(z) fails dY/dlambda = Y G, or M + 1."""
    data, U = solution_matrix(z, a, M + 1)
    res = ode_residual(z, a, U, data.exponents)
    first = M + 1
    for row in res:
        for r in row:
            for i, c in r.items():
                if i > M:
                    break
                if c != 0:
                    first = min(first, i)
                    break
    return first


def local_solution_at_ordinary(z0, a, M: int = 30) -> SeriesMatrix2:
    """Taylor expansion of C_a(z0, lambda) in x = lambda - z0 with C(z0) = I."""
    z0 = _F(z0)
    if z0 in (0, 1):
        raise ParameterError("z0 must be an ordinary point")
    G = system_matrix(a)
    var = f"lambda-({z0})"
    Gs = [[G[i][j].compose_affine(z0, 1).series(M, VAR_ZERO).coeffs for j in range(2)]
          for i in range(2)]
    C = [[[Fraction(1), Fraction(0)], [Fraction(0), Fraction(1)]]]
    for n in range(M):
        nxt = [[Fraction(0)] * 2 for _ in range(2)]
        for k in range(n + 1):
            Ck = C[n - k]
            for i in range(2):
                for j in range(2):
                    nxt[i][j] += Ck[i][0] * Gs[0][j][k] + Ck[i][1] * Gs[1][j][k]
        C.append([[x / (n + 1) for x in row] for row in nxt])
    rows = tuple(tuple(TruncSeries([C[n][i][j] for n in range(M + 1)], 0, M, var)
                       for j in range(2)) for i in range(2))
    return SeriesMatrix2(rows)


def ordinary_ode_residual(z0, a, C: SeriesMatrix2) -> int:
    """First order at which C' - C G(z0 + x) is nonzero."""
    G = system_matrix(a)
    M = C.order
    Gs = [[TruncSeries(G[i][j].compose_affine(_F(z0), 1).series(M, VAR_ZERO).coeffs, 0, M, C.var)
           for j in range(2)] for i in range(2)]
    first = M
    for i in range(2):
        for j in range(2):
            lhs = C.rows[i][j].derivative()
            rhs = C.rows[i][0] * Gs[0][j] + C.rows[i][1] * Gs[1][j]
            first = min(first, first_discrepancy(lhs, rhs.truncate(lhs.order)))
    return first


# -- orbit conditions ---------------------------------------------------------

@dataclass
class ConditionReport:
    kind: str
    passed: bool
    per_index: list
    orbit: OrbitRecord
    failed_indices: list = field(default_factory=list)

    def as_dict(self):
        return {
            "kind": self.kind,
            "passed": self.passed,
            "period": self.orbit.period,
            "mu_sequence": [list(m) for m in self.orbit.mu_sequence],
            "per_index": self.per_index,
            "failed_indices": self.failed_indices,
        }


def _kd_modified(m):
    ma, mb, mc = m
    return min(ma, mb) > 0 and mc > ma + mb


def _kd_intro(m, c, p):
    ma, mb, mc = m
    return mc >= ma + mb and vp_unit(c, p)


def vp_unit(x, p) -> bool:
    x = _F(x)
    return x != 0 and x.numerator % p != 0 and x.denominator % p != 0


def _t2(m):
    return m[2] > max(m[0], m[1])


def _young(m, p):
    ma, mb = m
    return ma <= mb < p - 1 and ma % 2 == 0 and 2 * mb - ma <= p - 1


def condition_check(kind: str, params: Sequence, p: int, f_max: int = 8) -> ConditionReport:
    """Evaluate the T2, KD (modified), KD_intro or Young inequalities along the
    whole prime-map orbit.  Young takes a pair (a, b)."""
    kind = kind.upper() if kind.lower() != "kd_intro" else "KD_intro"
    if kind == "YOUNG":
        kind = "Young"
    if kind == "Young":
        if len(params) != 2:
            raise ParameterError("Young conditions take a pair (a, b)")
        rec = orbit(tuple(_F(x) for x in params), p, f_max)
        seq = [tuple(s) for s in rec.sequence]
    else:
        rec = orbit(ParamTriple.of(params), p, f_max)
        seq = [tuple(s) for s in rec.sequence]
    per = []
    for i, (m, pt) in enumerate(zip(rec.mu_sequence, seq)):
        if kind == "T2":
            ok = _t2(m)
        elif kind == "KD":
            ok = _kd_modified(m)
        elif kind == "KD_intro":
            ok = _kd_intro(m, pt[2], p)
        elif kind == "Young":
            ok = _young(m, p)
        else:
            raise ParameterError(f"unknown condition {kind!r}")
        per.append(bool(ok))
    failed = [i for i, ok in enumerate(per) if not ok]
    return ConditionReport(kind, not failed, per, rec, failed)

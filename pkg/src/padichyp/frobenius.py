"""
Frobenius eigenvalues xi_j^(z) at the singular points, the Kummer
transformation tables, the contiguity data alpha / phi / B, and the Frobenius
matrix of the standard lifting lambda -> lambda^p as a series at the origin.

Conventions.  Solutions are row vectors: Y' = Y G.  The Frobenius relation at
the origin reads

    U_b(lambda^p) Gamma = diag(xi_1, xi_2 lambda^mu3) U_a(lambda)

and `frobenius_matrix_series` returns Gamma, the transpose of the matrix
usually written gamma(a, b; lambda).  Signs (-1)^x are only ever evaluated at
integer x (combinations of mu components or shift vectors).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .gamma import DomainError, GammaPair, _evaluate_path, symbol_path
from .hypergeo import (ParameterError, ParamTriple, hyper_coefficients, mu_vector,
                       normalize_point, solution_matrix)
from .padic import INF, PadicNumber, PiElement, padic_from_rational, vp_rational
from .series import (VAR_ZERO, RationalFunction, SeriesMatrix2, TruncSeries,
                     matrix_first_discrepancy, pade)

# A linear form is (coefficients on (a1, a2, a3), constant).
Form = tuple


def _ev(form: Form, a) -> Fraction:
    (c1, c2, c3), k = form
    a1, a2, a3 = a
    return c1 * a1 + c2 * a2 + c3 * a3 + k


def _mu_sign(coeffs, mu) -> int:
    s = sum(c * m for c, m in zip(coeffs, mu))
    return -1 if s % 2 else 1


# -- closed forms of the eigenvalues ----------------------------------------

@dataclass(frozen=True)
class XiFormula:
    """sign (-1)^(sign . mu) * prod gamma_p(num) / prod gamma_p(den)."""
    sign: tuple
    num: tuple
    den: tuple


_XI_FORMULAS = {
    # origin (the LDE values)
    (0, 1): XiFormula((0, 0, 0), (((0, 1, 0), 0), ((0, -1, 1), 0)), (((0, 0, 1), 1),)),
    (0, 2): XiFormula((0, 1, -1), (((0, 0, 1), -1), ((-1, 0, 0), 1)), (((-1, 0, 1), 1),)),
    # one and infinity: closed forms, normalized so the undetermined constants are 1
    (1, 1): XiFormula((0, 1, 0), (((0, 1, 0), 0), ((1, 0, -1), 0)), (((1, 1, -1), 1),)),
    (1, 2): XiFormula((0, 0, 0), (((1, 1, -1), -1), ((0, -1, 1), 0)), (((1, 0, 0), 0),)),
    ("inf", 1): XiFormula((1, 1, 1), (((0, -1, 1), 0), ((1, 0, -1), 0)), (((1, -1, 0), 1),)),
    ("inf", 2): XiFormula((0, 1, 0), (((1, -1, 0), -1), ((0, 1, 0), 0)), (((1, 0, 0), 0),)),
}

# Alternative closed form for xi_2 at the origin (same value as the (0, 2) entry).
XI2_ORIGIN_ALT = XiFormula((0, 1, 0), (((1, 0, -1), 0), ((0, 0, 1), -1)), (((1, 0, 0), 0),))


def xi_formula(z, j) -> XiFormula:
    return _XI_FORMULAS[(normalize_point(z), j)]


@dataclass
class EigenvalueValue:
    point: object
    index: int
    value: PiElement
    sign: int
    factors: list = field(default_factory=list)   # (x, y, power, PiElement)

    def recompute(self) -> PiElement:
        """sign times the product of the recorded gamma_p factors."""
        p = self.value.prime
        acc = PiElement(padic_from_rational(self.sign, p, 64), 0)
        for _, _, power, val in self.factors:
            acc = acc * (val if power > 0 else val.inverse())
        return acc


def _admissible_path(pair: GammaPair):
    """Canonical reduction path, or a nearby one when it meets a pole/zero."""
    for n in (0, 1, -1, 2, -2):
        try:
            return symbol_path(pair, n)
        except DomainError:
            continue
    raise DomainError(f"no admissible reduction path for {pair}")


def evaluate_xi_formula(formula: XiFormula, a, b, p: int, N: int, point=None, index=None
                        ) -> EigenvalueValue:
    a, b = ParamTriple.of(a), ParamTriple.of(b)
    mu = mu_vector(a, b, p)
    sign = _mu_sign(formula.sign, mu)
    parts = []
    for forms, power in ((formula.num, 1), (formula.den, -1)):
        for f in forms:
            x, y = _ev(f, a), _ev(f, b)
            pair = GammaPair(x, y, p)
            parts.append((pair, power, _admissible_path(pair)))
    # exact valuation bookkeeping, then one evaluation at the right precision
    V = sum(power * int(vp_rational(path.ratio, p)) for _, power, path in parts)
    E = sum(power * path.pi_exp for _, power, path in parts)
    v_total = V + E // (p - 1)
    rel = max(N - v_total, 1) + 1
    acc = PiElement(padic_from_rational(sign, p, rel + 2), 0)
    factors = []
    for pair, power, path in parts:
        val = _evaluate_path(path, p, path.valuation(p) + rel)
        factors.append((pair.x, pair.y, power, val))
        acc = acc * (val if power > 0 else val.inverse())
    value = PiElement(acc.coeff.with_precision(N), acc.pi_exponent)
    return EigenvalueValue(point, index, value, sign, factors)


def xi_closed_form(z, j: int, a, b, p: int, N: int = 6) -> EigenvalueValue:
    z = normalize_point(z)
    return evaluate_xi_formula(xi_formula(z, j), a, b, p, N, z, j)


def M_one(a) -> ParamTriple:
    a1, a2, a3 = ParamTriple.of(a)
    return ParamTriple(a1, a2, a1 + a2 - a3)


def M_inf(a) -> ParamTriple:
    a1, a2, a3 = ParamTriple.of(a)
    return ParamTriple(a1, a1 - a3, a1 - a2)


def xi_via_pullback(z, j: int, a, b, p: int, N: int = 6) -> EigenvalueValue:
    """xi at 1 or infinity through the origin values at transformed parameters."""
    z = normalize_point(z)
    a, b = ParamTriple.of(a), ParamTriple.of(b)
    mu = mu_vector(a, b, p)
    if z == 1:
        sign, Ma, Mb = _mu_sign((0, 1, 0), mu), M_one(a), M_one(b)
    elif z == "inf":
        sign, Ma, Mb = _mu_sign((1, 1, -1), mu), M_inf(a), M_inf(b)
    else:
        raise ParameterError("pullback is defined for z in {1, inf}")
    inner = xi_closed_form(0, j, Ma, Mb, p, N)
    value = inner.value * padic_from_rational(sign, p, N + 2)
    value = PiElement(value.coeff.with_precision(N), value.pi_exponent)
    return EigenvalueValue(z, j, value, sign * inner.sign, inner.factors)


def pi_value_agreement(x: PiElement, y: PiElement) -> float:
    """Precision of x = y; -inf when the pi exponents differ."""
    if x.pi_exponent != y.pi_exponent:
        return -INF
    return x.coeff.agreement(y.coeff)


# -- Kummer transformations ---------------------------------------------------

@dataclass(frozen=True)
class KummerRecord:
    index: int
    theta: str
    substitution: str | None          # series_substitute kind relating the charts
    M: tuple                          # 3x3 integer matrix acting on (a1, a2, a3)
    h_a_sign: tuple | None            # (-)^(linear form in a)
    h_a_factor: str | None
    h_ab_sign: tuple                  # (-)^(linear form in mu)
    h_ab_factor: str
    N: tuple | None

    def apply(self, a) -> ParamTriple:
        a = ParamTriple.of(a)
        return ParamTriple(*(sum(c * x for c, x in zip(row, a)) for row in self.M))


KUMMER = {
    9: KummerRecord(9, "lambda^-1", "reciprocal", ((1, 0, 0), (1, 0, -1), (1, -1, 0)),
                    (-1, -1, 1), "lambda^(-a1)", (1, 1, -1), "lambda^(-mu1)", ((1, 0), (1, -1))),
    5: KummerRecord(5, "1-lambda", "one_minus", ((1, 0, 0), (0, 1, 0), (1, 1, -1)),
                    (0, 1, 0), "1", (0, -1, 0), "1", ((0, 1), (1, 0))),
    11: KummerRecord(11, "(1-lambda)^-1", "moebius_theta", ((1, 0, 0), (0, -1, 1), (1, -1, 0)),
                     (0, -1, 1), "(1-lambda)^(-a1)", (0, 1, -1), "(1-lambda^p)^b1/(1-lambda)^a1",
                     ((1, -1), (1, 0))),
    # theta_7 inverts theta_11; only its specialization h_7(M_11 a, M_11 b) is
    # available, which in terms of its own arguments reads (-)^(-mu2) lambda^mu1
    7: KummerRecord(7, "1-lambda^-1", "moebius_theta", ((1, 0, 0), (1, 0, -1), (1, 1, -1)),
                    None, None, (0, -1, 0), "lambda^mu1", None),
}


def kummer_record(m: int) -> KummerRecord:
    try:
        return KUMMER[m]
    except KeyError:
        raise ParameterError(f"unsupported Kummer index {m}") from None


def compose_maps(A, B) -> tuple:
    """Matrix of A o B."""
    return tuple(tuple(sum(A[i][k] * B[k][j] for k in range(3)) for j in range(3)) for i in range(3))


_KUMMER_SIDES = {9: ("inf", 0), 5: (1, 0), 11: (1, "inf")}


def kummer_sides(which: int, a, M: int = 30):
    """(left, right) of U^(z)_a(lambda) = U^(w)_{M_m a}(theta_m(lambda)) N_m^t,
    both as series in the local variable of z."""
    rec = kummer_record(which)
    if which not in _KUMMER_SIDES:
        raise ParameterError(f"no solution identity for m = {which}")
    z, w = _KUMMER_SIDES[which]
    a = ParamTriple.of(a)
    _, left = solution_matrix(z, a, M)
    _, Uw = solution_matrix(w, rec.apply(a), M)
    right = Uw.substitute(rec.substitution)
    Nt = ((rec.N[0][0], rec.N[1][0]), (rec.N[0][1], rec.N[1][1]))
    right = right * SeriesMatrix2.constant(Nt, M, right.var)
    return left, right


def kummer_solution_identity_check(which: int, a, M: int = 30) -> int:
    """First order where the identity fails, or M + 1."""
    left, right = kummer_sides(which, a, M)
    return matrix_first_discrepancy(left, right)


def kummer_row_normalization(which: int, a, M: int = 30):
    """Diagonal (d1, d2) read off the constant terms with left = diag(d) right,
    and the first order where that corrected identity fails (or M + 1)."""
    left, right = kummer_sides(which, a, M)
    L0, R0 = left.const(), right.const()
    d = []
    for i in range(2):
        j = 0 if R0[i][0] != 0 else 1
        d.append(L0[i][j] / R0[i][j])
    return tuple(d), matrix_first_discrepancy(left, right.scale_rows(d[0], d[1]))


# -- alpha and phi tables -----------------------------------------------------

def _f(c1, c2, c3, k=0) -> Form:
    return ((c1, c2, c3), k)


# alpha^(z)_i(a, e_k) = const * prod(num forms) / prod(den forms)
_ALPHA = {
    (0, 1, 1): (1, (), ()),
    (0, 2, 1): (1, (_f(1, 0, 0),), (_f(1, 0, -1),)),
    (0, 1, 2): (1, (_f(0, -1, 1, -1),), (_f(0, 1, 0),)),
    (0, 2, 2): (-1, (), ()),
    (0, 1, 3): (1, (_f(0, 0, 1, 1),), (_f(0, -1, 1),)),
    (0, 2, 3): (1, (_f(1, 0, -1, -1),), (_f(0, 0, 1, -1),)),
    (1, 1, 1): (1, (_f(1, 1, -1, 1),), (_f(1, 0, -1),)),
    (1, 2, 1): (1, (_f(1, 0, 0),), (_f(1, 1, -1, -1),)),
    (1, 1, 2): (1, (_f(-1, -1, 1, -1),), (_f(0, 1, 0),)),
    (1, 2, 2): (1, (_f(0, 1, -1, 1),), (_f(-1, -1, 1, 1),)),
    (1, 1, 3): (1, (_f(1, 0, -1, -1),), (_f(1, 1, -1),)),
    (1, 2, 3): (1, (_f(1, 1, -1, -2),), (_f(0, -1, 1),)),
    ("inf", 1, 1): (1, (_f(1, -1, 0, 1),), (_f(-1, 0, 1),)),
    ("inf", 2, 1): (1, (_f(1, 0, 0),), (_f(1, -1, 0, -1),)),
    ("inf", 1, 2): (1, (_f(0, -1, 1, -1),), (_f(-1, 1, 0),)),
    ("inf", 2, 2): (1, (_f(-1, 1, 0, 2),), (_f(0, 1, 0),)),
    ("inf", 1, 3): (1, (_f(-1, 0, 1, 1),), (_f(0, -1, 1),)),
    ("inf", 2, 3): (1, (), ()),
}

# phi^(z)_i(a) = (-)^(sign form) prod Gamma(num) / prod Gamma(den)
_PHI = {
    (0, 1): ((0, 0, 0), (_f(0, 0, 1, 1),), (_f(0, 1, 0), _f(0, -1, 1))),
    (0, 2): ((0, 1, 0), (_f(1, 0, 0),), (_f(1, 0, -1), _f(0, 0, 1, -1))),
    (1, 1): ((0, 1, 0), (_f(1, 1, -1, 1),), (_f(0, 1, 0), _f(1, 0, -1))),
    (1, 2): ((0, 0, 0), (_f(1, 0, 0),), (_f(1, 1, -1, -1), _f(0, -1, 1))),
    ("inf", 1): ((1, 1, 1), (_f(1, -1, 0, 1),), (_f(0, -1, 1), _f(1, 0, -1))),
    ("inf", 2): ((0, 1, 0), (_f(1, 0, 0),), (_f(1, -1, 0, -1), _f(0, 1, 0))),
}

ALPHA_KEYS = tuple(_ALPHA.keys())


def alpha(z, i: int, a, k: int) -> Fraction:
    """alpha^(z)_i(a, e_k) from the tabulated contiguity factors."""
    z = normalize_point(z)
    c, num, den = _ALPHA[(z, i, k)]
    val = Fraction(c)
    for f in num:
        val *= _ev(f, a)
    for f in den:
        d = _ev(f, a)
        if d == 0:
            raise ParameterError(f"alpha^({z})_{i}(a, e_{k}) has a pole at {a}")
        val /= d
    return val


def alpha_shift(z, i: int, a, u: Sequence[int]) -> Fraction:
    """alpha^(z)_i(a, u) for any integer vector u, by the multiplicative rule
    alpha(a, u + v) = alpha(a + u, v) alpha(a, u) and alpha(a, 0) = 1."""
    a = ParamTriple.of(a)
    val = Fraction(1)
    cur = a
    for k in range(3):
        e = [0, 0, 0]
        e[k] = 1
        steps = u[k]
        for _ in range(abs(steps)):
            if steps > 0:
                val *= alpha(z, i, cur, k + 1)
                cur = cur + e
            else:
                prev = cur - e
                val /= alpha(z, i, prev, k + 1)
                cur = prev
    return val


# Sparse multivariate polynomials in (a1, a2, a3): {exponent tuple: Fraction}.

def _poly_from_form(form: Form) -> dict:
    (c1, c2, c3), k = form
    out = {}
    for exp, c in (((1, 0, 0), c1), ((0, 1, 0), c2), ((0, 0, 1), c3), ((0, 0, 0), k)):
        if c:
            out[exp] = Fraction(c)
    return out


def _poly_mul(f: dict, g: dict) -> dict:
    out = {}
    for e1, c1 in f.items():
        for e2, c2 in g.items():
            e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2])
            out[e] = out.get(e, 0) + c1 * c2
    return {e: c for e, c in out.items() if c}


def _poly_prod(forms, c=1) -> dict:
    acc = {(0, 0, 0): Fraction(c)}
    for f in forms:
        acc = _poly_mul(acc, _poly_from_form(f))
    return acc


def phi_ratio_forms(z, i: int, k: int):
    """phi(a + e_k) / phi(a) reduced by Gamma(x+1) = x Gamma(x):
    returns (sign, numerator forms, denominator forms)."""
    z = normalize_point(z)
    sign_form, gnum, gden = _PHI[(z, i)]
    sign = -1 if sign_form[k - 1] % 2 else 1
    num, den = [], []

    def shift_factor(form, into_num, into_den):
        (coeffs, const) = form
        n = coeffs[k - 1]
        # Gamma(x + n) / Gamma(x)
        if n > 0:
            into_num.extend((coeffs, const + j) for j in range(n))
        elif n < 0:
            into_den.extend((coeffs, const + n + j) for j in range(-n))

    for f in gnum:
        shift_factor(f, num, den)
    for f in gden:
        shift_factor(f, den, num)
    return sign, num, den


def alpha_phi_consistency_check(z, i: int, k: int, a=None) -> bool:
    """alpha table entry equals the phi ratio as rational functions of a
    (cross-multiplied polynomial identity).  When a is given, the two are
    also compared at that point."""
    z = normalize_point(z)
    c, anum, aden = _ALPHA[(z, i, k)]
    sign, pnum, pden = phi_ratio_forms(z, i, k)
    lhs = _poly_mul(_poly_prod(anum, c), _poly_prod(pden))
    rhs = _poly_mul(_poly_prod(pnum, sign), _poly_prod(aden))
    ok = lhs == rhs
    if a is not None and ok:
        a = ParamTriple.of(a)
        val = Fraction(sign)
        for f in pnum:
            val *= _ev(f, a)
        for f in pden:
            val /= _ev(f, a)
        ok = val == alpha(z, i, a, k)
    return ok


# -- contiguity matrices ------------------------------------------------------

def contiguity_B(a, shift=(1, 0, 0)):
    """B(a, a + e1; lambda)^t as a 2x2 list of rational functions."""
    if tuple(shift) != (1, 0, 0):
        raise ParameterError("the closed form is available for e1 only; use derive_B")
    a1, a2, a3 = ParamTriple.of(a)
    if a1 == 0:
        raise ParameterError("a1 = 0")
    s = 1 / a1
    return [[RationalFunction([(a1 - a3) * s]), RationalFunction([0, (a1 - a3) * s], [-1, 1])],
            [RationalFunction([(a3 - a2) * s]), RationalFunction([a1 * s, -(a3 - a2) * s], [1, -1])]]


def _rf_matrix_series(B, order: int, var: str) -> SeriesMatrix2:
    return SeriesMatrix2(tuple(tuple(B[i][j].series(order, var) for j in range(2)) for i in range(2)))


def _singular_shift(z, u):
    """Row exponents of l_z^{-D_z(u)} in the local variable."""
    z = normalize_point(z)
    u1, u2, u3 = u
    if z == 0:
        return (0, u3)
    if z == 1:
        return (0, u1 + u2 - u3)
    return (-u1, -u2)


def _alpha_diag(z, a, u):
    return tuple(alpha_shift(z, i, a, u) for i in (1, 2))


@dataclass
class DerivedB:
    shift: tuple
    matrix: list | None            # rational functions, or None on failure
    series: SeriesMatrix2          # the raw series solve


def derive_B(a, shift, z=0, M: int = 30, degree: int = 2) -> DerivedB:
    """Solve B(a, a+u)^t = U_a^-1 l^{D(u)} diag(alpha)^-1 U_{a+u} as series at
    the origin and reconstruct each entry as a rational function."""
    z = normalize_point(z)
    if z != 0:
        raise ParameterError("B is derived from the expansion at the origin")
    a = ParamTriple.of(a)
    u = tuple(shift)
    _, Ua = solution_matrix(0, a, M)
    _, Uu = solution_matrix(0, a + u, M)
    al = _alpha_diag(0, a, u)
    s1, s2 = _singular_shift(0, u)
    rows = Uu.scale_rows(1 / al[0], 1 / al[1])
    rows = SeriesMatrix2(((rows[0, 0].shift(-s1), rows[0, 1].shift(-s1)),
                          (rows[1, 0].shift(-s2), rows[1, 1].shift(-s2))))
    Bt = Ua.inverse() * rows
    mat = []
    for i in range(2):
        row = []
        for j in range(2):
            r = pade(Bt[i, j], degree)
            if r is None:
                return DerivedB(u, None, Bt)
            row.append(r)
        mat.append(row)
    return DerivedB(u, mat, Bt)


@dataclass
class ContiguityCheck:
    point: object
    first_failure: int            # first order where Delta is not the constant alpha diagonal
    delta_constant: tuple          # constant terms of the diagonal of Delta
    alpha: tuple


def contiguity_formula_check(z, a, u, Bt, M: int = 20) -> ContiguityCheck:
    """With W = l^{-D(u)} U_a B^t, compute Delta = U_{a+u} W^-1 and check that
    it is the constant diagonal diag(alpha_1(a,u), alpha_2(a,u))."""
    z = normalize_point(z)
    a = ParamTriple.of(a)
    _, Ua = solution_matrix(z, a, M + 4)
    _, Uu = solution_matrix(z, a + tuple(u), M + 4)
    var = Ua.var
    Bs = _rf_matrix_series(Bt, M + 4, var)
    s1, s2 = _singular_shift(z, u)
    W = Ua * Bs
    W = SeriesMatrix2(((W[0, 0].shift(s1), W[0, 1].shift(s1)), (W[1, 0].shift(s2), W[1, 1].shift(s2))))
    Delta = Uu * W.inverse()
    al = _alpha_diag(z, a, u)
    target = SeriesMatrix2.constant(((al[0], 0), (0, al[1])), Delta.order, var)
    first = min(matrix_first_discrepancy(Delta.truncate(min(Delta.order, M)),
                                         target.truncate(min(Delta.order, M))), M + 1)
    return ContiguityCheck(z, first, (Delta[0, 0][0], Delta[1, 1][0]), al)


# -- modular property ---------------------------------------------------------

def xi_modular_check(z, i: int, a, b, u, v, p: int, N: int = 6) -> float:
    """Precision of xi(a+u, b+v) alpha(a, u) = xi(a, b) alpha(b, v)."""
    a, b = ParamTriple.of(a), ParamTriple.of(b)
    lhs = xi_closed_form(z, i, a + tuple(u), b + tuple(v), p, N + 4).value
    rhs = xi_closed_form(z, i, a, b, p, N + 4).value
    lhs = lhs * padic_from_rational(alpha_shift(z, i, a, u), p, N + 4)
    rhs = rhs * padic_from_rational(alpha_shift(z, i, b, v), p, N + 4)
    return min(pi_value_agreement(lhs, rhs), N)


# -- the Frobenius matrix at the origin ----------------------------------------

@dataclass
class FrobeniusMatrix:
    a: ParamTriple
    b: ParamTriple
    p: int
    mu: tuple
    xi1: EigenvalueValue
    xi2: EigenvalueValue
    R1: SeriesMatrix2            # exact: U_b(l^p)^-1 E11 U_a
    R2: SeriesMatrix2            # exact: U_b(l^p)^-1 E22 l^mu3 U_a
    matrix: SeriesMatrix2        # p-adic: xi1 R1 + xi2 R2
    certified_precision: int
    guard: int
    min_valuations: tuple

    def entry_valuations(self, order: int | None = None):
        """Minimal valuation of the coefficients of each entry up to `order`."""
        out = []
        for e in self.matrix.entries():
            vals = [c.valuation for i, c in e.items()
                    if (order is None or i <= order) and not c.is_zero()]
            out.append(min(vals) if vals else INF)
        return tuple(out)


def _frobenius_exact_parts(a, b, p, M):
    mu = mu_vector(a, b, p)
    Mb = M // p + 1
    _, Ub = solution_matrix(0, b, Mb)
    _, Ua = solution_matrix(0, a, M)
    Ubp = Ub.substitute("power_p", p).truncate(M)
    Binv = Ubp.inverse(M)
    zero = TruncSeries.constant(0, M)
    row0 = (Ua[0, 0], Ua[0, 1])
    row1 = (Ua[1, 0].shift(mu[2]), Ua[1, 1].shift(mu[2]))
    R1 = Binv * SeriesMatrix2((row0, (zero, zero)))
    R2 = Binv * SeriesMatrix2(((zero, zero), row1))
    return mu, R1.truncate(min(R1.order, M)), R2.truncate(min(R2.order, M))


def _min_val(S: SeriesMatrix2, p: int) -> int:
    v = 0
    for e in S.entries():
        for _, c in e.items():
            if c != 0:
                v = min(v, int(vp_rational(c, p)))
    return v


def frobenius_matrix_series(a, b, p: int, M: int = 30, N: int = 6) -> FrobeniusMatrix:
    """Gamma = U_b(lambda^p)^-1 diag(xi1, xi2 lambda^mu3) U_a(lambda) with
    p-adic coefficients certified modulo p^N (absolute)."""
    a, b = ParamTriple.of(a), ParamTriple.of(b)
    mu, R1, R2 = _frobenius_exact_parts(a, b, p, M)
    # the exact parts are rational: their worst valuation fixes the guard
    guard = max(0, -min(_min_val(R1, p), _min_val(R2, p)))
    x1 = xi_closed_form(0, 1, a, b, p, N + guard)
    x2 = xi_closed_form(0, 2, a, b, p, N + guard)
    for x in (x1, x2):
        if x.value.pi_exponent != 0:
            raise DomainError("pi exponents of the eigenvalues do not cancel")
    c1, c2 = x1.value.coeff, x2.value.coeff

    def combine(e1: TruncSeries, e2: TruncSeries) -> TruncSeries:
        lo, hi = min(e1.lower, e2.lower), min(e1.order, e2.order)
        out = []
        for i in range(lo, hi + 1):
            t = PadicNumber.zero(p, N)
            for c, r in ((c1, e1[i]), (c2, e2[i])):
                if r != 0:
                    t = t + c * r
            out.append(t.with_precision(N))
        return TruncSeries(out, lo, hi, e1.var)

    rows = tuple(tuple(combine(R1[i, j], R2[i, j]) for j in range(2)) for i in range(2))
    mat = SeriesMatrix2(rows)
    cert = N
    for e in mat.entries():
        for _, c in e.items():
            cert = min(cert, c.abs_precision)
    res = FrobeniusMatrix(a, b, p, mu, x1, x2, R1, R2, mat, cert, guard, ())
    res.min_valuations = res.entry_valuations()
    return res


def splitting_case(mu) -> str:
    m1, m2, m3 = mu
    for m in mu:
        if not isinstance(m, int) or m < 0:
            raise ParameterError("mu components must be non-negative integers")
    if m3 < min(m1, m2):
        return "case1"
    if m3 > max(m1, m2):
        return "case2"
    return "none"


@dataclass
class SplittingReport:
    case: str
    order: int
    row_valuations: tuple       # (top row min valuation, bottom row min valuation)
    certified_precision: int
    passed: bool


def splitting_pattern_check(fm: FrobeniusMatrix, order: int | None = None) -> SplittingReport:
    """Case 1: bottom row divisible by p; case 2: top row divisible by p; the
    other row must contain a unit coefficient."""
    case = splitting_case(tuple(m % fm.p if 0 <= m < fm.p else m for m in fm.mu))
    order = fm.matrix.order if order is None else order
    v = fm.entry_valuations(order)
    top, bottom = min(v[0], v[1]), min(v[2], v[3])
    if case == "case1":
        ok = bottom >= 1 and top == 0
    elif case == "case2":
        ok = top >= 1 and bottom == 0
    else:
        ok = False
    return SplittingReport(case, order, (top, bottom), fm.certified_precision, ok)


def supersingular_poly(mu, p: int):
    """Mod-p coefficients (degree <= p-1) of F(a1, a2, a3; lambda) at the
    fixed-point parameters a_i = mu_i / (p - 1) (a heuristic Hasse-type
    polynomial).  Raises when a coefficient is not p-integral."""
    for m in mu:
        if not 0 <= m < p:
            raise ParameterError("mu out of range")
    a = [Fraction(m, p - 1) for m in mu]
    if a[2] == 0:
        a[2] = Fraction(p)      # same residue, avoids the Pochhammer zero
    coeffs = hyper_coefficients(a[0], a[1], a[2], p - 1)
    out = []
    for c in coeffs:
        if c != 0 and vp_rational(c, p) < 0:
            raise ParameterError("coefficient not p-integral (no mod-p reduction)")
        out.append(0 if c == 0 else c.numerator * pow(c.denominator, -1, p) % p)
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def supersingular_cross_check(mu, p: int, M: int | None = None) -> bool:
    """For the fixed point a = mu/(p-1), the unit entry D of the case-(2)
    Frobenius matrix reduces mod p to D(0) times the polynomial above, so its
    roots are exactly the residue classes where |D| < 1."""
    H = supersingular_poly(mu, p)
    a = ParamTriple(*(Fraction(m, p - 1) for m in mu))
    M = p * p if M is None else M
    D = frobenius_matrix_series(a, a, p, M, 2).matrix[1, 1]
    red = [0 if D[i].valuation > 0 else D[i].lift() % p for i in range(M + 1)]
    target = [red[0] * h % p for h in H] + [0] * (M + 1 - len(H))
    return red[0] != 0 and red == target


# -- contiguity / Frobenius compatibility -------------------------------------


def contiguity_frobenius_compat_check(a, b, p: int, u=(1, 0, 0), v=(0, 0, 0), M: int = 15,
                                      N: int = 6):
    """Gamma(a,b) B(a,a+u)^t against B(b,b+v; lambda^p)^t Gamma(a+u,b+v).

    Returns (first order with a discrepancy above the certified precision or
    M + 1, certified precision)."""
    a, b = ParamTriple.of(a), ParamTriple.of(b)
    u, v = tuple(u), tuple(v)
    g0 = frobenius_matrix_series(a, b, p, M + 2, N)
    g1 = frobenius_matrix_series(a + u, b + v, p, M + 2, N)

    def b_series(base, shift, order):
        if shift == (0, 0, 0):
            return SeriesMatrix2.identity(order)
        if shift == (1, 0, 0):
            Bt = contiguity_B(base)
        else:
            Bt = derive_B(base, shift, 0, 40).matrix
            if Bt is None:
                raise ParameterError("B reconstruction failed")
        return _rf_matrix_series(Bt, order, VAR_ZERO)

    Ba = b_series(a, u, M + 2)
    Bb = b_series(b, v, M // p + 2).substitute("power_p", p).truncate(M + 2)
    to_padic = lambda S: S.map(lambda e: e.map(lambda c: padic_from_rational(c, p, N + 8)))
    lhs = g0.matrix * to_padic(Ba)
    rhs = to_padic(Bb) * g1.matrix
    first = matrix_first_discrepancy(lhs.truncate(M), rhs.truncate(M))
    cert = N
    for S in (lhs, rhs):
        for e in S.entries():
            for i, c in e.items():
                if i <= M and not c.is_exact_zero:
                    cert = min(cert, c.abs_precision)
    return first, cert

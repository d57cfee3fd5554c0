"""
Dwork's ratio F(a; lambda) / F(a'; lambda^p) through truncation levels, the
Koblitz-Diamond and Young evaluations, the unit-root ratio eta and the
contraction whose fixed point it is.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from . import _backend
from .frobenius import (FrobeniusMatrix, frobenius_matrix_series, pi_value_agreement,
                        xi_closed_form)
from .gamma import gamma_p
from .hypergeo import (ParameterError, ParamTriple, PeriodOverflow, _F, condition_check,
                       prime_step, prime_step_triple, solution_matrix)
from .padic import INF, PadicNumber, PiElement, padic_from_rational, vp_rational
from .series import VAR_ZERO, TruncSeries

DEFAULT_THRESHOLD = 4


# -- truncation levels ---------------------------------------------------------

def _unit_rep(x: Fraction, p: int, P: int) -> int:
    return x.numerator * pow(x.denominator, -1, P) % P


def partial_sum_values(a: ParamTriple, lam, p: int, K: int, counts, backend=None):
    """Partial sums (first n terms, n in counts) of F(a1, a2, a3; lam) as
    p-adic numbers modulo p^K (absolute).  Computed modulo p^(K+E) with a
    guard E against negative term valuations, grown on demand."""
    lam = _F(lam)
    a1, a2, a3 = ParamTriple.of(a)
    for x in (a1, a2, a3):
        if x.denominator % p == 0:
            raise ParameterError(f"{x} is not in Z_{p}")
    if lam == 0:
        lam_v, lam_num = 0, 0
    else:
        lam_v = int(vp_rational(lam, p))
        if lam_v < 0:
            raise ParameterError("|lambda0| > 1")
        lam_num = lam / Fraction(p) ** lam_v
    E = 2
    while True:
        P = p ** (K + E)
        lam_u = 0 if lam == 0 else _unit_rep(lam_num, p, P)
        try:
            raw = _backend.hyper_partial_sums(
                a1.numerator, a1.denominator, a2.numerator, a2.denominator,
                a3.numerator, a3.denominator, lam_v, lam_u, p, K, E, list(counts),
                backend=backend)
            break
        except OverflowError as exc:
            if "guard" not in str(exc) or E > 64:
                raise
            E *= 2
        except ZeroDivisionError:
            raise ParameterError("Pochhammer zero in the lower parameter") from None
    out = []
    for s, d in raw:
        val = PadicNumber.from_rational(Fraction(s, d), p, K + E) if s else PadicNumber.zero(p, K + E)
        # divide by p^E: shift the valuation, keep absolute precision K
        if val.is_zero():
            out.append(PadicNumber.zero(p, K))
        else:
            out.append(PadicNumber(p, val.valuation - E, val.unit, K))
    return out


@dataclass
class RatioCertificate:
    params: ParamTriple
    lam0: Fraction
    p: int
    levels: list                      # (s, PadicNumber R_s)
    certified_value: PadicNumber
    agreement_exponent: int           # v(R_smax - R_{smax-1}), capped at N
    precision: int

    @property
    def deepest(self) -> PadicNumber:
        return self.levels[-1][1]


def dwork_ratio(a, lam0, p: int, s_max: int = 4, N: int = 6, backend=None) -> RatioCertificate:
    """R_s = [F(a; .) to degree < p^s](lam0) / [F(a'; .) to degree < p^(s-1)](lam0^p)
    for s = 2..s_max; certified by the agreement of the two deepest levels."""
    a = ParamTriple.of(a)
    lam0 = _F(lam0)
    if s_max < 2:
        raise ParameterError("s_max must be at least 2")
    if lam0 == 0:
        one = padic_from_rational(1, p, N)
        return RatioCertificate(a, lam0, p, [(s, one) for s in range(2, s_max + 1)], one, N, N)
    b, _ = prime_step_triple(a, p)
    K = N + 2
    counts = [p ** s for s in range(2, s_max + 1)]
    num = partial_sum_values(a, lam0, p, K, counts, backend)
    den = partial_sum_values(b, lam0 ** p, p, K, [p ** (s - 1) for s in range(2, s_max + 1)],
                             backend)
    levels = []
    for s, x, y in zip(range(2, s_max + 1), num, den):
        if y.is_zero():
            raise ParameterError(f"denominator partial sum vanishes at level {s}")
        levels.append((s, x / y))
    if len(levels) >= 2:
        agree = levels[-1][1].agreement(levels[-2][1])
        agree = int(min(agree, N))
    else:
        agree = 0
    agree = max(agree, 0)
    cert = levels[-1][1].with_precision(agree) if agree > 0 else PadicNumber.zero(p, 0)
    return RatioCertificate(a, lam0, p, levels, cert, agree, N)


def direct_ratio(a, lam0, p: int, terms: int, N: int = 6) -> PadicNumber:
    """F(a; lam0) / F(a'; lam0^p) from exact rational truncations (|lam0| < 1)."""
    from .hypergeo import hyper_eval_truncated
    a = ParamTriple.of(a)
    b, _ = prime_step_triple(a, p)
    lam0 = _F(lam0)
    x = hyper_eval_truncated(*a, lam0, terms)
    y = hyper_eval_truncated(*b, lam0 ** p, terms)
    return padic_from_rational(x / y, p, N)


# -- closed forms ----------------------------------------------------------------

def kd_rhs(a, p: int, N: int = 6) -> PadicNumber:
    """Gamma_p(c) Gamma_p(c-a-b) / (Gamma_p(c-a) Gamma_p(c-b))."""
    a1, a2, a3 = ParamTriple.of(a)
    g = lambda x: gamma_p(x, p, N)
    return (g(a3) * g(a3 - a1 - a2)) / (g(a3 - a1) * g(a3 - a2))


def young_rhs(a, b, p: int, N: int = 6) -> PadicNumber:
    """(-1)^(mu_a/2) Gamma_p(a/2) Gamma_p(b-a/2) / (Gamma_p(a) Gamma_p(b-a))."""
    a, b = _F(a), _F(b)
    _, mu_a = prime_step(a, p)
    if mu_a % 2:
        raise ParameterError("mu_a is odd")
    g = lambda x: gamma_p(x, p, N)
    sign = -1 if (mu_a // 2) % 2 else 1
    return padic_from_rational(sign, p, N) * (g(a / 2) * g(b - a / 2)) / (g(a) * g(b - a))


def _agreement(x: PadicNumber, y: PadicNumber, N: int) -> int:
    return int(max(min(x.agreement(y), N), 0))


@dataclass
class VerificationReport:
    kind: str
    params: tuple
    p: int
    conditions: dict
    applicable: bool
    certificate: RatioCertificate | None
    rhs: PadicNumber | None
    agreement: int                     # deepest level against the closed form
    threshold: int
    verdict: str                       # pass | fail | not applicable
    orbit_agreement: int | None = None
    extra: dict = field(default_factory=dict)


def kd_verify(a, p: int, N: int = 6, s_max: int = 4, f_max: int = 8,
              threshold: int = DEFAULT_THRESHOLD, backend=None) -> VerificationReport:
    a = ParamTriple.of(a)
    conds = {}
    try:
        for kind in ("T2", "KD", "KD_intro"):
            conds[kind] = condition_check(kind, a, p, f_max).as_dict()
    except (ParameterError, PeriodOverflow) as exc:
        return VerificationReport("kd", a.as_tuple(), p, {"error": str(exc)}, False, None, None,
                                  0, threshold, "not applicable")
    if not conds["KD"]["passed"]:
        return VerificationReport("kd", a.as_tuple(), p, conds, False, None, None, 0, threshold,
                                  "not applicable")
    cert = dwork_ratio(a, 1, p, s_max, N, backend)
    rhs = kd_rhs(a, p, N)
    agree = _agreement(cert.deepest, rhs, N)
    rep = VerificationReport("kd", a.as_tuple(), p, conds, True, cert, rhs, agree, threshold,
                             "pass" if agree >= threshold else "fail")
    period = conds["KD"]["period"]
    if period > 1:
        # product over the orbit: the f-step Frobenius eigenvalue on both sides
        lhs_prod, rhs_prod = cert.deepest, rhs
        cur = a
        for _ in range(period - 1):
            cur, _ = prime_step_triple(cur, p)
            lhs_prod = lhs_prod * dwork_ratio(cur, 1, p, s_max, N, backend).deepest
            rhs_prod = rhs_prod * kd_rhs(cur, p, N)
        rep.orbit_agreement = _agreement(lhs_prod, rhs_prod, N)
    return rep


def young_verify(a, b, p: int, N: int = 6, s_max: int = 4, f_max: int = 8,
                 threshold: int = DEFAULT_THRESHOLD, backend=None) -> VerificationReport:
    a, b = _F(a), _F(b)
    try:
        cond = condition_check("Young", (a, b), p, f_max)
    except (ParameterError, PeriodOverflow) as exc:
        return VerificationReport("young", (a, b), p, {"error": str(exc)}, False, None, None, 0,
                                  threshold, "not applicable")
    conds = {"Young": cond.as_dict()}
    if not cond.passed:
        return VerificationReport("young", (a, b), p, conds, False, None, None, 0, threshold,
                                  "not applicable")
    triple = ParamTriple(a, b, 1 + a - b)
    cert = dwork_ratio(triple, -1, p, s_max, N, backend)
    rhs = young_rhs(a, b, p, N)
    agree = _agreement(cert.deepest, rhs, N)
    return VerificationReport("young", (a, b), p, conds, True, cert, rhs, agree, threshold,
                              "pass" if agree >= threshold else "fail")


# -- the xi-ratio expression ----------------------------------------------------

def xi_ratio_value(a, p: int, N: int = 6) -> PiElement:
    """(a3'/a3) ((a1-a3)/(a1'-a3')) xi_1^(1)(a,a') / xi_1^(0)(a,a')."""
    a = ParamTriple.of(a)
    b, _ = prime_step_triple(a, p)
    W = N + 4
    x1 = xi_closed_form(1, 1, a, b, p, W).value
    x0 = xi_closed_form(0, 1, a, b, p, W).value
    (a1, _, a3), (b1, _, b3) = a, b
    scal = (b3 / a3) * ((a1 - a3) / (b1 - b3))
    return x1 * x0.inverse() * padic_from_rational(scal, p, W)


def _gp(x, y, p, W) -> PiElement:
    from .gamma import GammaPair, gamma_symbol
    return gamma_symbol(GammaPair(x, y, p), N=W)


def reduction_chain(a, p: int, N: int = 6) -> list:
    """The successive forms of the xi-ratio down to the Koblitz-Diamond
    product, each evaluated independently."""
    a = ParamTriple.of(a)
    b, mu = prime_step_triple(a, p)
    a1, a2, a3 = a
    b1, b2, b3 = b
    W = N + 4
    sgn2 = padic_from_rational(-1 if mu[1] % 2 else 1, p, W)
    scal = padic_from_rational((b3 / a3) * ((a1 - a3) / (b1 - b3)), p, W)
    M1a = ParamTriple(a1, a2, a1 + a2 - a3)
    M1b = ParamTriple(b1, b2, b1 + b2 - b3)
    g = lambda x, y: _gp(x, y, p, W)
    G = lambda x: gamma_p(x, p, W)
    lines = []
    lines.append(("xi ratio", xi_ratio_value(a, p, N)))
    lines.append(("pullback", xi_closed_form(0, 1, M1a, M1b, p, W).value
                  * xi_closed_form(0, 1, a, b, p, W).value.inverse() * sgn2 * scal))
    lines.append(("gamma symbols",
                  g(a2, b2) * g(a1 - a3, b1 - b3) * g(1 + a3, 1 + b3)
                  * (g(a1 + a2 - a3 + 1, b1 + b2 - b3 + 1) * g(a2, b2) * g(a3 - a2, b3 - b2)).inverse()
                  * sgn2 * scal))
    lines.append(("shifted symbols",
                  g(a1 - a3 + 1, b1 - b3 + 1) * g(a3, b3)
                  * (g(a1 + a2 - a3 + 1, b1 + b2 - b3 + 1) * g(a3 - a2, b3 - b2)).inverse() * sgn2))
    lines.append(("Gamma_p window", PiElement(
        G(a1 - a3 + 1) * G(a3) / (G(a1 + a2 - a3 + 1) * G(a3 - a2)) * sgn2, 0)))
    s = (mu[1] + (mu[0] - mu[2]) - (mu[0] + mu[1] - mu[2])) % 2
    lines.append(("reflection", PiElement(
        padic_from_rational(-1 if s else 1, p, W) * G(a3 - a2 - a1) * G(a3)
        / (G(a3 - a1) * G(a3 - a2)), 0)))
    lines.append(("Koblitz-Diamond", PiElement(kd_rhs(a, p, W), 0)))
    return lines


@dataclass
class IdentityReport:
    params: tuple
    p: int
    ratio: PadicNumber                 # deepest truncation level at lambda = 1
    xi_expression: PiElement
    rhs: PadicNumber
    pi_cancelled: bool
    pairwise: dict                     # agreement exponents
    chain: list                        # (step, agreement with the previous step)
    passed: bool


def xi_ratio_identity_check(a, p: int, N: int = 6, s_max: int = 4,
                            threshold: int = DEFAULT_THRESHOLD, backend=None) -> IdentityReport:
    a = ParamTriple.of(a)
    xi = xi_ratio_value(a, p, N)
    if xi.pi_exponent != 0:
        raise ArithmeticError("pi exponents of the xi ratio do not cancel")
    cert = dwork_ratio(a, 1, p, s_max, N, backend)
    rhs = kd_rhs(a, p, N)
    xv = xi.coeff
    pair = {
        "ratio~xi": _agreement(cert.deepest, xv, N),
        "ratio~kd": _agreement(cert.deepest, rhs, N),
        "xi~kd": _agreement(xv, rhs, N),
    }
    lines = reduction_chain(a, p, N)
    chain = [(lines[0][0], N)]
    for (_, prev), (name, cur) in zip(lines, lines[1:]):
        chain.append((name, int(max(min(pi_value_agreement(prev, cur), N), 0))))
    ok = min(pair.values()) >= threshold and all(c >= N for _, c in chain)
    return IdentityReport(a.as_tuple(), p, cert.deepest, xi, rhs, True, pair, chain, ok)


# -- search for admissible parameters --------------------------------------------

def _fractions(p: int, max_den: int):
    out = set()
    for d in range(2, max_den + 1):
        if d % p == 0:
            continue
        for n in range(1, d):
            if gcd(n, d) == 1:
                out.add(Fraction(n, d))
    return sorted(out)


def kd_triple_search(p: int, max_den: int = 12, f_max: int = 8) -> list:
    """Triples in (0,1)^3 with a1 <= a2 and denominators <= max_den prime to
    p that pass the modified Koblitz-Diamond conditions along their orbit."""
    fr = _fractions(p, max_den)
    mu = {x: prime_step(x, p)[1] for x in fr}
    found = []
    for i, x in enumerate(fr):
        if mu[x] == 0:
            continue
        for y in fr[i:]:
            if mu[y] == 0:
                continue
            for z in fr:
                # cheap first-step filter before the orbit walk
                if mu[z] <= mu[x] + mu[y]:
                    continue
                try:
                    if condition_check("KD", (x, y, z), p, f_max).passed:
                        found.append(ParamTriple(x, y, z))
                except PeriodOverflow:
                    continue
    return found


def young_pair_search(p: int, max_den: int = 12, f_max: int = 8) -> list:
    fr = _fractions(p, max_den)
    found = []
    for x in fr:
        for y in fr:
            try:
                if condition_check("Young", (x, y), p, f_max).passed:
                    found.append((x, y))
            except PeriodOverflow:
                continue
    return found


# -- the unit root ------------------------------------------------------------------

def eta_singular_class(z, a, M: int = 30) -> TruncSeries:
    """eta = u_1 / u_2 for the first row (u_1, u_2) of U^(z), exact."""
    from .hypergeo import normalize_point
    z = normalize_point(z)
    if z not in (0, 1):
        raise ParameterError("eta is defined here in the classes of 0 and 1")
    _, U = solution_matrix(z, a, M)
    u1, u2 = U[0, 0], U[0, 1]
    if u2[0] == 0:
        raise ParameterError("u_2 has a non-invertible constant term")
    return u1 * u2.inverse(M)


def riccati_residual(a, eta: TruncSeries) -> int:
    """First order where eta' = G11 eta + G21 - eta (G12 eta + G22) fails,
    or the order + 1.  This is Y' = Y G read on the ratio of a row."""
    from .hypergeo import system_matrix
    from .series import first_discrepancy
    G = system_matrix(a)
    M = eta.order
    g = [[G[i][j].series(M + 2, VAR_ZERO) for j in range(2)] for i in range(2)]
    lhs = eta.derivative()
    rhs = g[0][0] * eta + g[1][0] - eta * (g[0][1] * eta + g[1][1])
    k = min(lhs.order, rhs.order)
    return first_discrepancy(lhs.truncate(k), rhs.truncate(k))


def case2_entries(fm: FrobeniusMatrix):
    """(A, B, C, D) with Gamma = [[pA, pB], [C, D]]."""
    p = fm.p
    inv_p = Fraction(1, p)
    A = fm.matrix[0, 0].map(lambda c: c * inv_p)
    B = fm.matrix[0, 1].map(lambda c: c * inv_p)
    return A, B, fm.matrix[1, 0], fm.matrix[1, 1]


@dataclass
class FixedPointResult:
    eta: TruncSeries
    iterations: int
    step_valuations: list              # v(omega_{k+1} - omega_k) per step
    samples: list                      # (z, eta(z)) at the sample points
    converged: bool


def _series_min_val(f: TruncSeries) -> float:
    v = INF
    for _, c in f.items():
        if not c.is_zero():
            v = min(v, c.valuation)
    return v


def unit_root_fixed_point(A, B, C, D, p: int, N: int = 4, max_iter: int = 40,
                          samples=()) -> FixedPointResult:
    """Iterate omega -> (pA omega(lambda^p) + C) / (pB omega(lambda^p) + D)
    from omega_0 = C/D on p-adic series until successive iterates agree mod
    p^N.  `samples` are points of the open unit disk where the fixed point is
    also tabulated."""
    M = min(e.order for e in (A, B, C, D))
    pA = A.map(lambda c: c * p)
    pB = B.map(lambda c: c * p)
    omega = (C * D.inverse(M)).truncate(M)
    steps = []
    converged = False
    it = 0
    for it in range(1, max_iter + 1):
        w = omega.power(p).truncate(M)
        new = ((pA * w + C) * (pB * w + D).inverse(M)).truncate(M)
        diff = _series_min_val(new - omega)
        steps.append(diff)
        omega = new
        if diff >= N:
            converged = True
            break
    table = []
    for z in samples:
        z = _F(z)
        if vp_rational(z, p) < 1:
            raise ParameterError("sample points must lie in the open unit disk")
        acc = PadicNumber.zero(p, N)
        for i, c in omega.items():
            if z != 0 or i == 0:
                acc = acc + c * z ** i
        table.append((z, acc.with_precision(min(acc.abs_precision, N))))
    return FixedPointResult(omega, it, steps, table, converged)


def unit_root_check(a, p: int, N: int = 4, M: int | None = None):
    """Fixed point of the case-(2) contraction for a period-one triple against
    eta at the origin.  Returns (result, agreement exponent)."""
    a = ParamTriple.of(a)
    b, mu = prime_step_triple(a, p)
    if b != a:
        raise ParameterError("the check runs on period-one parameters")
    M = p * p if M is None else M
    fm = frobenius_matrix_series(a, a, p, M, N + 2)
    res = unit_root_fixed_point(*case2_entries(fm), p, N, samples=(0, p, 2 * p))
    eta = eta_singular_class(0, a, M)
    agree = N
    for i in range(M + 1):
        c = res.eta[i]
        e = eta[i]
        agree = min(agree, int(min(c.agreement(padic_from_rational(e, p, N + 2)), N)))
    return res, agree

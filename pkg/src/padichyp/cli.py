"""
Command line interface: `padichyp <command> [options]`.

Exit codes: 0 computed or verified, 1 a verification failed, 2 bad input or
a domain error.  Reports go to stdout (JSON by default), diagnostics to
stderr.  Defaults can be overridden with PADICHYP_PRIME, PADICHYP_PREC,
PADICHYP_ORDER, PADICHYP_S_MAX, PADICHYP_F_MAX and PADICHYP_OUTPUT.
"""
from __future__ import annotations

import argparse
import json
import os
import random
import sys
from fractions import Fraction

from . import frobenius as fr
from . import unitroot as ur
from ._backend import BACKEND
from .gamma import (DomainError, GammaPair, gamma_p, gamma_p_reflection_check, gamma_symbol,
                    symbol_reduction_independence_check, symplectic_check)
from .hypergeo import (POINTS, ParameterError, ParamTriple, PeriodOverflow, check_ode,
                       hyper_coefficients, normalize_point, orbit, prime_step_triple)
from .padic import INF, PadicNumber, PiElement

COMMANDS = ("gammap", "gsymbol", "hyper", "orbit", "xi", "kummer", "alpha", "frobmat", "ratio",
            "kd", "young", "identity", "suite")


class InputError(ValueError):
    pass


# -- parsing -------------------------------------------------------------------

def parse_rational(s: str) -> Fraction:
    try:
        return Fraction(s.strip())
    except (ValueError, ZeroDivisionError):
        raise InputError(f"not a rational number: {s!r}") from None


def parse_list(s: str) -> list:
    return [parse_rational(x) for x in s.split(",") if x.strip()]


def parse_triple(s: str) -> ParamTriple:
    vals = parse_list(s)
    if len(vals) != 3:
        raise InputError(f"expected three parameters, got {s!r}")
    return ParamTriple(*vals)


def parse_point(s: str):
    s = s.strip().lower()
    if s in ("inf", "infinity", "oo"):
        return "inf"
    try:
        return normalize_point(int(s))
    except (ValueError, ParameterError):
        raise InputError(f"point must be 0, 1 or inf: {s!r}") from None


def _is_odd_prime(n: int) -> bool:
    if n < 3 or n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


# -- serialization ---------------------------------------------------------------

def _num(x):
    if x == INF:
        return "inf"
    if x == -INF:
        return "-inf"
    return int(x) if float(x).is_integer() else x


def ser(x):
    """JSON-ready form with a fixed field order."""
    if isinstance(x, PiElement):
        d = ser(x.coeff)
        d["pi_exponent"] = x.pi_exponent
        return d
    if isinstance(x, PadicNumber):
        if x.is_exact_zero:
            return {"valuation": "inf", "digits": [], "precision": "inf"}
        if x.is_zero():
            return {"valuation": _num(x.abs_precision), "digits": [],
                    "precision": _num(x.abs_precision)}
        return {"valuation": _num(x.valuation), "digits": x.digits(),
                "precision": _num(x.abs_precision)}
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, (int, float)):
        return _num(x)
    if isinstance(x, ParamTriple):
        return [str(c) for c in x]
    if isinstance(x, dict):
        return {str(k): ser(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [ser(v) for v in x]
    return str(x)


def padic_from_json(d: dict, p: int) -> PadicNumber:
    """Inverse of the PadicNumber serialization (digits are base p)."""
    if d["valuation"] == "inf":
        return PadicNumber.exact_zero(p)
    unit = sum(c * p ** i for i, c in enumerate(d["digits"]))
    if not d["digits"]:
        return PadicNumber.zero(p, d["precision"])
    return PadicNumber(p, d["valuation"], unit, d["precision"])


def _flat(v) -> bool:
    """Lists of scalars, or of lists of scalars, print on one line."""
    if not isinstance(v, list):
        return False
    return all(not isinstance(e, (dict, list)) or (
        isinstance(e, list) and all(not isinstance(f, (dict, list)) for f in e)) for e in v)


def _text(obj, indent=0) -> list:
    pad = "  " * indent
    out = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and not _flat(v):
                out.append(f"{pad}{k}:")
                out.extend(_text(v, indent + 1))
            else:
                out.append(f"{pad}{k}: {v}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)):
                out.append(f"{pad}-")
                out.extend(_text(v, indent + 1))
            else:
                out.append(f"{pad}- {v}")
    else:
        out.append(f"{pad}{obj}")
    return out


def report(command, inputs, values, verdict="computed", **extra) -> dict:
    r = {"command": command, "inputs": inputs, "values": values}
    r.update(extra)
    r["verdict"] = verdict
    return r


# -- commands ----------------------------------------------------------------------

def cmd_gammap(args):
    p, N = args.prime, args.prec
    vals = []
    for s in args.x:
        x = parse_rational(s)
        vals.append({"x": str(x), "value": ser(gamma_p(x, p, N))})
    return report("gammap", {"prime": p, "prec": N}, vals), 0


def cmd_gsymbol(args):
    p, N = args.prime, args.prec
    x, y = parse_rational(args.x), parse_rational(args.y)
    pair = GammaPair(x, y, p)
    val = gamma_symbol(pair, N=N)
    return report("gsymbol", {"prime": p, "prec": N, "x": str(x), "y": str(y)},
                  {"mu": pair.mu, "value": ser(val)}), 0


def cmd_hyper(args):
    a = parse_triple(args.params)
    M = args.order
    coeffs = hyper_coefficients(*a, M)
    checks = {}
    ok = True
    if args.check_ode:
        for z in POINTS:
            r = check_ode(z, a, M)
            checks[str(z)] = r
            ok = ok and r > M
    values = {"coefficients": [str(c) for c in coeffs]}
    if checks:
        values["ode_residual_order"] = checks
    return report("hyper", {"params": ser(a), "order": M}, values,
                  "pass" if ok and checks else ("fail" if checks else "computed")), (0 if ok else 1)


def cmd_orbit(args):
    vals = parse_list(args.params)
    p = args.prime
    target = vals[0] if len(vals) == 1 else tuple(vals)
    rec = orbit(target, p, args.f_max)
    seq = [ser(s) if not isinstance(s, tuple) else [str(c) for c in s] for s in rec.sequence]
    return report("orbit", {"prime": p, "params": [str(v) for v in vals], "f_max": args.f_max},
                  {"period": rec.period, "sequence": seq, "mu_sequence": ser(rec.mu_sequence)}), 0


def _pair_args(args):
    a = parse_triple(args.params)
    b = parse_triple(args.b) if args.b else prime_step_triple(a, args.prime)[0]
    return a, b


def cmd_xi(args):
    p, N = args.prime, args.prec
    a, b = _pair_args(args)
    z = parse_point(args.point)
    v = fr.xi_closed_form(z, args.index, a, b, p, N)
    values = {"point": str(z), "index": args.index, "value": ser(v.value), "sign": v.sign,
              "factors": [{"x": str(x), "y": str(y), "power": pw, "value": ser(val)}
                          for x, y, pw, val in v.factors]}
    verdict, code = "computed", 0
    if z != 0:
        w = fr.xi_via_pullback(z, args.index, a, b, p, N)
        agree = fr.pi_value_agreement(v.value, w.value)
        values["pullback"] = ser(w.value)
        values["pullback_agreement"] = _num(min(agree, N))
        verdict = "pass" if agree >= N else "fail"
        code = 0 if agree >= N else 1
    return report("xi", {"prime": p, "prec": N, "a": ser(a), "b": ser(b)}, values, verdict), code


def cmd_kummer(args):
    rec = fr.kummer_record(args.which)
    values = {"record": {"index": rec.index, "theta": rec.theta, "M": ser(rec.M),
                         "h_a_sign": ser(rec.h_a_sign), "h_a_factor": rec.h_a_factor,
                         "h_ab_sign": ser(rec.h_ab_sign), "h_ab_factor": rec.h_ab_factor,
                         "N": ser(rec.N)}}
    inputs = {"which": args.which}
    if not args.params or args.which == 7:
        return report("kummer", inputs, values), 0
    a = parse_triple(args.params)
    M = args.order
    inputs.update(params=ser(a), order=M)
    r = fr.kummer_solution_identity_check(args.which, a, M)
    d, r2 = fr.kummer_row_normalization(args.which, a, M)
    values["identity_order"] = r
    values["row_normalization"] = ser(d)
    values["normalized_identity_order"] = r2
    ok = r > M
    return report("kummer", inputs, values, "pass" if ok else "fail"), (0 if ok else 1)


def cmd_alpha(args):
    a = parse_triple(args.params)
    z = parse_point(args.point)
    val = fr.alpha(z, args.index, a, args.shift)
    ok = fr.alpha_phi_consistency_check(z, args.index, args.shift, a)
    return report("alpha", {"params": ser(a), "point": str(z), "index": args.index,
                            "shift": args.shift},
                  {"value": str(val), "phi_consistent": ok}, "pass" if ok else "fail"), (0 if ok else 1)


def cmd_frobmat(args):
    p, N, M = args.prime, args.prec, args.order
    a, b = _pair_args(args)
    fm = fr.frobenius_matrix_series(a, b, p, M, N)
    rep = fr.splitting_pattern_check(fm)
    values = {"mu": list(fm.mu), "case": rep.case, "certified_precision": fm.certified_precision,
              "guard": fm.guard,
              "min_valuations": ser(fm.min_valuations),
              "row_valuations": ser(rep.row_valuations),
              "xi1": ser(fm.xi1.value), "xi2": ser(fm.xi2.value)}
    if args.coefficients:
        values["entries"] = [[ser(c) for _, c in e.items()] for e in fm.matrix.entries()]
    verdict, code = "computed", 0
    if rep.case != "none":
        verdict, code = ("pass", 0) if rep.passed else ("fail", 1)
    return report("frobmat", {"prime": p, "prec": N, "order": M, "a": ser(a), "b": ser(b)},
                  values, verdict), code


def _cert(c: ur.RatioCertificate):
    return {"levels": [{"s": s, "value": ser(v)} for s, v in c.levels],
            "certified_value": ser(c.certified_value),
            "agreement_exponent": c.agreement_exponent}


def cmd_ratio(args):
    p, N = args.prime, args.prec
    a = parse_triple(args.params)
    lam = parse_rational(args.at)
    c = ur.dwork_ratio(a, lam, p, args.s_max, N)
    return report("ratio", {"prime": p, "prec": N, "params": ser(a), "at": str(lam),
                            "s_max": args.s_max}, _cert(c)), 0


def _verification(r: ur.VerificationReport):
    values = {}
    if r.certificate is not None:
        values["ratio"] = _cert(r.certificate)
        values["rhs"] = ser(r.rhs)
    extra = {"conditions": ser(r.conditions), "agreement": r.agreement, "threshold": r.threshold}
    if r.orbit_agreement is not None:
        extra["orbit_agreement"] = r.orbit_agreement
    return values, extra


def cmd_kd(args):
    p, N = args.prime, args.prec
    a = parse_triple(args.params)
    r = ur.kd_verify(a, p, N, args.s_max, args.f_max, args.threshold)
    values, extra = _verification(r)
    code = 1 if r.verdict == "fail" else 0
    return report("kd", {"prime": p, "prec": N, "params": ser(a), "s_max": args.s_max}, values,
                  r.verdict, **extra), code


def cmd_young(args):
    p, N = args.prime, args.prec
    vals = parse_list(args.params)
    if len(vals) != 2:
        raise InputError("young takes a pair a,b")
    r = ur.young_verify(vals[0], vals[1], p, N, args.s_max, args.f_max, args.threshold)
    values, extra = _verification(r)
    code = 1 if r.verdict == "fail" else 0
    return report("young", {"prime": p, "prec": N, "params": ser(vals), "s_max": args.s_max},
                  values, r.verdict, **extra), code


def cmd_identity(args):
    p, N = args.prime, args.prec
    a = parse_triple(args.params)
    r = ur.xi_ratio_identity_check(a, p, N, args.s_max, args.threshold)
    values = {"ratio": ser(r.ratio), "xi_expression": ser(r.xi_expression), "rhs": ser(r.rhs),
              "pi_cancelled": r.pi_cancelled, "pairwise": r.pairwise,
              "chain": [{"step": s, "agreement": c} for s, c in r.chain]}
    return report("identity", {"prime": p, "prec": N, "params": ser(a), "s_max": args.s_max},
                  values, "pass" if r.passed else "fail"), (0 if r.passed else 1)


# -- suite ------------------------------------------------------------------------------

def _random_triple(rng, dens=(3, 4, 5, 6, 8, 9, 10, 12)):
    while True:
        t = [Fraction(rng.randint(1, 3 * d), d) for d in (rng.choice(dens) for _ in range(3))]
        a1, a2, a3 = t
        forms = (a1, a2, a3, a3 - a2, a1 - a3, a3 - a1 - a2, a2 - a1)
        if all(f.denominator != 1 for f in forms):
            return ParamTriple(*t)


def _suite_cases(quick: bool, p: int, N: int, M: int, s_max: int):
    rng = random.Random(20240601)
    n = 5 if quick else 20
    triples = [_random_triple(rng) for _ in range(n)]

    def case_reflection():
        xs = [Fraction(rng.randint(-50, 50), rng.choice([1, 2, 3, 4, 6])) for _ in range(n * 4)]
        return all(gamma_p_reflection_check(x, p, N) >= N for x in xs)

    def case_symbol():
        ok = True
        for _ in range(n * 2):
            y = Fraction(rng.randint(-20, 20), rng.choice([2, 3, 4, 5, 6]))
            if y.denominator % p == 0:
                continue
            x = p * y - rng.randint(-3 * p, 3 * p)
            pair = GammaPair(x, y, p)
            try:
                ok = ok and symplectic_check(pair, N) >= N
                ok = ok and symbol_reduction_independence_check(pair, N)
            except DomainError:
                continue
        return ok

    def case_ode():
        return all(check_ode(z, a, M) > M for a in triples for z in POINTS)

    def case_kummer(m):
        return lambda: all(fr.kummer_solution_identity_check(m, a, M) > M for a in triples)

    def case_alpha():
        return all(fr.alpha_phi_consistency_check(*k) for k in fr.ALPHA_KEYS)

    def case_xi():
        ok = True
        for a in triples:
            b = prime_step_triple(a, p)[0]
            for z in (1, "inf"):
                for j in (1, 2):
                    try:
                        x = fr.xi_closed_form(z, j, a, b, p, N).value
                        y = fr.xi_via_pullback(z, j, a, b, p, N).value
                    except DomainError:
                        continue
                    ok = ok and fr.pi_value_agreement(x, y) >= N
        return ok

    def case_modular():
        ok = True
        for a in triples[:3]:
            b = prime_step_triple(a, p)[0]
            for z in POINTS:
                for i in (1, 2):
                    for k in range(3):
                        e = [0, 0, 0]
                        e[k] = 1
                        try:
                            ok = ok and fr.xi_modular_check(z, i, a, b, e, e, p, N) >= N
                        except (DomainError, ParameterError):
                            continue
        return ok

    def case_splitting():
        ok = True
        for mu in ((1, 1, 5), (5, 5, 1)) if p == 7 else ():
            a = ParamTriple(*(Fraction(m, p - 1) for m in mu))
            rep = fr.splitting_pattern_check(fr.frobenius_matrix_series(a, a, p, p * p, N))
            ok = ok and rep.passed
        return ok

    def case_ratio_monotone():
        a = ParamTriple(Fraction(1, 6), Fraction(1, 6), Fraction(5, 6))
        exps = [ur.dwork_ratio(a, 1, 7, s, N).agreement_exponent for s in range(3, s_max + 1)]
        return all(x <= y for x, y in zip(exps, exps[1:]))

    def case_kd_example():
        return ur.kd_verify((Fraction(1, 6), Fraction(1, 6), Fraction(5, 6)), 7, N, s_max).verdict == "pass"

    def case_young_example():
        return ur.young_verify(Fraction(1, 3), Fraction(2, 3), 7, N, s_max).verdict == "pass"

    def case_identity_example():
        return ur.xi_ratio_identity_check((Fraction(1, 6), Fraction(1, 6), Fraction(5, 6)), 7, N,
                                          s_max).passed

    def case_kd_search():
        ok = True
        for q in (5, 7, 11, 13):
            for a in ur.kd_triple_search(q):
                ok = ok and ur.kd_verify(a, q, N, s_max).verdict == "pass"
            for x, y in ur.young_pair_search(q):
                ok = ok and ur.young_verify(x, y, q, N, s_max).verdict == "pass"
        return ok

    cases = [
        ("gamma.reflection", case_reflection),
        ("gamma.symbol", case_symbol),
        ("hypergeo.ode", case_ode),
        ("frobenius.kummer9", case_kummer(9)),
        ("frobenius.kummer5", case_kummer(5)),
        ("frobenius.kummer11", case_kummer(11)),
        ("frobenius.alpha_phi", case_alpha),
        ("frobenius.pullback", case_xi),
        ("frobenius.modular", case_modular),
        ("frobenius.splitting", case_splitting),
        ("unitroot.ratio_monotone", case_ratio_monotone),
        ("unitroot.kd_example", case_kd_example),
        ("unitroot.young_example", case_young_example),
        ("unitroot.identity_example", case_identity_example),
    ]
    if not quick:
        cases.append(("unitroot.kd_young_search", case_kd_search))
    return sorted(cases)


def cmd_suite(args):
    results = {}
    for name, fn in _suite_cases(args.quick, args.prime, args.prec, min(args.order, 30),
                                 args.s_max):
        try:
            results[name] = "pass" if fn() else "fail"
        except Exception as exc:  # a crash is reported as a failing case
            results[name] = f"error: {type(exc).__name__}: {exc}"
    ok = all(v == "pass" for v in results.values())
    return report("suite", {"quick": args.quick, "prime": args.prime, "prec": args.prec},
                  {"cases": results, "backend": BACKEND}, "pass" if ok else "fail"), (0 if ok else 1)


# -- entry point -----------------------------------------------------------------------

def _env_int(name, default):
    v = os.environ.get(name)
    if v is None:
        return default
    try:
        return int(v)
    except ValueError:
        raise InputError(f"{name} must be an integer") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--prime", type=int, default=_env_int("PADICHYP_PRIME", 7))
    common.add_argument("--prec", type=int, default=_env_int("PADICHYP_PREC", 6))
    common.add_argument("--order", type=int, default=_env_int("PADICHYP_ORDER", 30))
    common.add_argument("--s-max", dest="s_max", type=int, default=_env_int("PADICHYP_S_MAX", 4))
    common.add_argument("--f-max", dest="f_max", type=int, default=_env_int("PADICHYP_F_MAX", 8))
    common.add_argument("--output", choices=("json", "text"),
                        default=os.environ.get("PADICHYP_OUTPUT", "json"))
    common.add_argument("--out", help="also write the report to this file")

    parser = argparse.ArgumentParser(prog="padichyp",
                                     description="p-adic hypergeometric computations")
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("gammap", parents=[common], help="Morita's Gamma_p")
    s.add_argument("x", nargs="+")
    s.set_defaults(fn=cmd_gammap)

    s = sub.add_parser("gsymbol", parents=[common], help="Dwork's gamma_p(x, y)")
    s.add_argument("x")
    s.add_argument("y")
    s.set_defaults(fn=cmd_gsymbol)

    s = sub.add_parser("hyper", parents=[common], help="series coefficients and ODE residuals")
    s.add_argument("--params", required=True)
    s.add_argument("--check-ode", action="store_true")
    s.set_defaults(fn=cmd_hyper)

    s = sub.add_parser("orbit", parents=[common], help="prime-map orbit")
    s.add_argument("--params", required=True)
    s.set_defaults(fn=cmd_orbit)

    for name, fn, hlp in (("xi", cmd_xi, "Frobenius eigenvalue"),
                          ("frobmat", cmd_frobmat, "Frobenius matrix at the origin")):
        s = sub.add_parser(name, parents=[common], help=hlp)
        s.add_argument("--params", required=True)
        s.add_argument("--b", help="second parameter triple (default: the prime image)")
        if name == "xi":
            s.add_argument("--point", default="0")
            s.add_argument("--index", type=int, choices=(1, 2), default=1)
        else:
            s.add_argument("--coefficients", action="store_true")
        s.set_defaults(fn=fn)

    s = sub.add_parser("kummer", parents=[common], help="Kummer records and identities")
    s.add_argument("--which", type=int, choices=(5, 7, 9, 11), required=True)
    s.add_argument("--params")
    s.set_defaults(fn=cmd_kummer)

    s = sub.add_parser("alpha", parents=[common], help="contiguity alpha table")
    s.add_argument("--params", required=True)
    s.add_argument("--point", default="0")
    s.add_argument("--index", type=int, choices=(1, 2), default=1)
    s.add_argument("--shift", type=int, choices=(1, 2, 3), default=1)
    s.set_defaults(fn=cmd_alpha)

    s = sub.add_parser("ratio", parents=[common], help="Dwork's ratio by truncation levels")
    s.add_argument("--params", required=True)
    s.add_argument("--at", default="1")
    s.set_defaults(fn=cmd_ratio)

    for name, fn in (("kd", cmd_kd), ("young", cmd_young), ("identity", cmd_identity)):
        s = sub.add_parser(name, parents=[common])
        s.add_argument("--params", required=True)
        s.add_argument("--threshold", type=int, default=ur.DEFAULT_THRESHOLD)
        s.set_defaults(fn=fn)

    s = sub.add_parser("suite", parents=[common], help="invariant batteries")
    s.add_argument("--quick", action="store_true")
    s.set_defaults(fn=cmd_suite)
    return parser


def _validate(args):
    if not _is_odd_prime(args.prime):
        raise InputError(f"--prime must be an odd prime, got {args.prime}")
    for name in ("prec", "order", "s_max", "f_max"):
        if getattr(args, name) < 1:
            raise InputError(f"--{name.replace('_', '-')} must be at least 1")


def run_command(argv) -> tuple:
    """(exit code, report or None)."""
    try:
        parser = build_parser()
    except InputError as exc:
        print(f"padichyp: {exc}", file=sys.stderr)
        return 2, None
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return (exc.code if isinstance(exc.code, int) else 2), None
    try:
        _validate(args)
        rep, code = args.fn(args)
    except (InputError, ParameterError, DomainError, PeriodOverflow, ZeroDivisionError,
            ValueError) as exc:
        print(f"padichyp: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2, None
    if args.output == "json":
        text = json.dumps(rep, indent=2)
    else:
        text = "\n".join(_text(rep))
    print(text)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    return code, rep


def main(argv=None) -> int:
    code, _ = run_command(sys.argv[1:] if argv is None else argv)
    return code


if __name__ == "__main__":
    sys.exit(main())

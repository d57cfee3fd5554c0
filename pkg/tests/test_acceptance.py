"""One test per acceptance criterion.  Each prints a single PASS/FAIL line
(also collected into the terminal summary)."""
import random
import time
from fractions import Fraction as F

from padichyp import frobenius as fr
from padichyp import unitroot as ur
from padichyp.gamma import (DomainError, GammaPair, gamma_p_reflection_check,
                            symbol_reduction_independence_check, symplectic_check)
from padichyp.hypergeo import (ParamTriple, ResonanceError, check_ode, prime_step_triple,
                               resonance_guard)

from conftest import ACCEPTANCE_LINES

N = 6
PRIMES = (5, 7, 11, 13)
A0 = ParamTriple(F(1, 6), F(1, 6), F(5, 6))


def report(n, ok, detail):
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'} {detail}"
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert ok, line


def rand_zp(rng, p):
    while True:
        x = F(rng.randint(-10 ** 6, 10 ** 6), rng.randint(1, 60))
        if x.denominator % p:
            return x


def rand_triple(rng, dens=(3, 4, 5, 6, 8, 10, 12)):
    return ParamTriple(*(F(rng.randint(-30, 30), rng.choice(dens)) for _ in range(3)))


def generic_triples(rng, count, M):
    out = []
    while len(out) < count:
        t = rand_triple(rng)
        try:
            for z in (0, 1, "inf"):
                resonance_guard(z, t, M)
        except ResonanceError:
            continue
        if all(x.denominator != 1 for x in (t[0], t[1], t[2] - t[0], t[2] - t[1])):
            out.append(t)
    return out


def test_criterion_01_reflection():
    rng = random.Random(1)
    t0 = time.perf_counter()
    worst = N
    for p in (5, 7, 13):
        for _ in range(100):
            worst = min(worst, gamma_p_reflection_check(rand_zp(rng, p), p, N))
    dt = time.perf_counter() - t0
    report(1, worst >= N and dt < 10, f"min agreement {worst} (need {N}), {dt:.2f}s (limit 10s)")


def test_criterion_02_symplectic():
    rng = random.Random(2)
    done, bad = 0, 0
    while done < 100:
        p = rng.choice((5, 7, 13))
        y = rand_zp(rng, p) / 1000
        if y.denominator == 1 or y.denominator % p == 0:
            continue
        mu = rng.randint(-3 * p, 3 * p)
        pair = GammaPair(p * y - mu, y, p)
        try:
            ok = symplectic_check(pair, N) >= N and symbol_reduction_independence_check(pair, N)
        except DomainError:
            continue
        done += 1
        bad += not ok
    report(2, bad == 0, f"{done - bad}/{done} pairs exact mod p^{N} (|mu| <= 3p)")


def test_criterion_03_ode():
    rng = random.Random(3)
    t0 = time.perf_counter()
    triples = generic_triples(rng, 20, 30)
    fails = [(t, z) for t in triples for z in (0, 1, "inf") if check_ode(z, t, 30) < 31]
    dt = time.perf_counter() - t0
    report(3, not fails and dt < 30, f"{len(fails)} residual failures over 20 triples x 3 points, "
           f"{dt:.2f}s (limit 30s)")


def test_criterion_04_kummer():
    rng = random.Random(4)
    triples = generic_triples(rng, 10, 30)
    held = {m: sum(fr.kummer_solution_identity_check(m, t, 30) >= 31 for t in triples)
            for m in (9, 5, 11)}
    normalized = {m: sum(fr.kummer_row_normalization(m, t, 30) == ((1, -1), 31) for t in triples)
                  for m in (5, 11)}
    ok = all(v == 10 for v in held.values())
    report(4, ok, "identities holding to order 30 per table entry "
           f"{held}; with rows normalized by diag(1,-1): {normalized}")


def test_criterion_05_alpha():
    table_ok = all(fr.alpha_phi_consistency_check(*k) for k in fr.ALPHA_KEYS)
    rng = random.Random(5)
    bad = []
    for a in generic_triples(rng, 3, 30):
        Bt = fr.contiguity_B(a)
        for z in (0, 1, "inf"):
            c = fr.contiguity_formula_check(z, a, (1, 0, 0), Bt, 20)
            if c.first_failure < 21 or tuple(c.delta_constant) != tuple(c.alpha):
                bad.append((a, z))
    report(5, table_ok and not bad and len(fr.ALPHA_KEYS) == 18,
           f"{len(fr.ALPHA_KEYS)} table entries match phi ratios: {table_ok}; "
           f"e1 Delta diagonal to order 20 failures: {len(bad)}")


def _units():
    out = [(0, 0, 0)]
    for k in range(3):
        for s in (1, -1):
            e = [0, 0, 0]
            e[k] = s
            out.append(tuple(e))
    return out


def test_criterion_06_modular():
    rng = random.Random(6)
    p = 7
    checked, bad = 0, 0
    pairs = 0
    while pairs < 20:
        a = rand_triple(rng)
        if any(x.denominator % p == 0 for x in a):
            continue
        b = prime_step_triple(a, p)[0]
        pairs += 1
        for z in (0, 1, "inf"):
            for i in (1, 2):
                for u in _units():
                    for v in _units():
                        try:
                            agree = fr.xi_modular_check(z, i, a, b, u, v, p, N)
                        except (DomainError, ZeroDivisionError, fr.ParameterError):
                            continue
                        checked += 1
                        bad += agree < N
    report(6, bad == 0 and checked > 0, f"{checked - bad}/{checked} (z, i, u, v) cases exact "
           f"mod p^{N} over 20 pairs")


def test_criterion_07_pullback():
    rng = random.Random(7)
    p = 7
    samples, bad = 0, 0
    while samples < 50:
        a = rand_triple(rng)
        if any(x.denominator % p == 0 for x in a):
            continue
        b = prime_step_triple(a, p)[0]
        try:
            vals = [(fr.xi_closed_form(z, j, a, b, p, N).value, fr.xi_via_pullback(z, j, a, b, p, N).value)
                    for z in (1, "inf") for j in (1, 2)]
        except DomainError:
            continue
        samples += 1
        bad += any(fr.pi_value_agreement(x, y) < N for x, y in vals)
    report(7, bad == 0, f"{samples - bad}/{samples} samples agree mod p^{N} at z in (1, inf), j in (1, 2)")


CASE_SAMPLES = [
    (F(2, 3), F(5, 6), F(1, 6)),
    (F(1, 3), F(1, 4), F(7, 8)),
    (F(1, 6), F(1, 6), F(5, 6)),
    (F(2, 5), F(3, 4), F(1, 8)),
]


def test_criterion_08_splitting():
    p = 7
    t0 = time.perf_counter()
    seen, bad = {}, []
    for a in CASE_SAMPLES:
        b = prime_step_triple(ParamTriple(*a), p)[0]
        fm = fr.frobenius_matrix_series(a, b, p, p * p, N)
        rep = fr.splitting_pattern_check(fm, p * p)
        seen[rep.case] = seen.get(rep.case, 0) + 1
        if not rep.passed or rep.certified_precision < 3:
            bad.append(a)
    dt = time.perf_counter() - t0
    ok = not bad and seen.get("case1") and seen.get("case2") and dt < 120
    report(8, ok, f"cases {seen}, pattern failures {len(bad)}, order {p * p}, {dt:.2f}s (limit 120s)")


def test_criterion_09_compat():
    p = 7
    rng = random.Random(9)
    results = []
    while len(results) < 5:
        a = ParamTriple(*(F(rng.randint(1, 11), 12) for _ in range(3)))
        b = prime_step_triple(a, p)[0]
        b1 = prime_step_triple(a + (1, 0, 0), p)[0]
        v = tuple(int(x - y) for x, y in zip(b1, b))
        try:
            first, cert = fr.contiguity_frobenius_compat_check(a, b, p, (1, 0, 0), v, 15, N)
        except (DomainError, fr.ParameterError, ResonanceError):
            continue
        results.append((first, cert))
    ok = all(f >= 16 for f, _ in results)
    report(9, ok, f"first discrepancy orders {[f for f, _ in results]} (need 16), "
           f"certified precisions {[c for _, c in results]}")


def _kd_triples():
    return [(a, p) for p in PRIMES for a in ur.kd_triple_search(p)]


def test_criterion_10_stabilization():
    low = []
    triples = _kd_triples()
    for a, p in triples:
        c = ur.dwork_ratio(a, 1, p, 4, N)
        if c.agreement_exponent < 4:
            low.append(c.agreement_exponent)
    report(10, not low, f"{len(triples) - len(low)}/{len(triples)} KD triples with "
           f"agreement_exponent >= 4 at s_max=4; exponents below: {sorted(set(low))}")


def test_criterion_11_koblitz_diamond():
    t0 = time.perf_counter()
    found = _kd_triples()
    bad = [(str(a), p) for a, p in found if ur.kd_verify(a, p, N, 4).agreement < 4]
    dt = time.perf_counter() - t0
    ok = len(found) >= 5 and (A0, 7) in found and not bad and dt < 300
    report(11, ok, f"{len(found)} triples found, {len(bad)} disagree mod p^4, "
           f"{dt:.2f}s (limit 300s)")


def test_criterion_12_young():
    found = [(pair, p) for p in PRIMES for pair in ur.young_pair_search(p)]
    bad = [(pair, p) for pair, p in found if ur.young_verify(*pair, p, N, 4).agreement < 4]
    ok = ((F(1, 3), F(2, 3)), 7) in found and not bad
    report(12, ok, f"{len(found)} pairs found, {len(bad)} disagree mod p^4")


def test_criterion_13_three_way():
    found = _kd_triples()
    bad = []
    for a, p in found:
        rep = ur.xi_ratio_identity_check(a, p, N, 4)
        if not (rep.passed and rep.pi_cancelled):
            bad.append((str(a), p))
    report(13, not bad, f"{len(found) - len(bad)}/{len(found)} KD triples: three-way agreement "
           f"mod p^4 with exact pi cancellation")


def test_criterion_14_unit_root():
    p = 7
    rows = []
    for mu in [(1, 1, 5), (0, 2, 4), (1, 0, 3), (2, 2, 5)]:
        a = ParamTriple(*(F(m, p - 1) for m in mu))
        res, agree = ur.unit_root_check(a, p, 4)
        finite = [v for v in res.step_valuations if v != float("inf")]
        contracting = all(b - a_ >= 1 for a_, b in zip(finite, finite[1:]))
        rows.append((mu, res.converged and contracting and agree >= 4, res.step_valuations))
    report(14, all(r[1] for r in rows), "; ".join(f"mu={m} steps={s}" for m, _, s in rows))

"""Regenerate tests/data/frozen.json from oracles that share no code with
the package: plain integer loops for Gamma_p and exact Fraction sums for the
truncated hypergeometric series.

    python3 tests/oracles/make_frozen.py
"""
import json
from fractions import Fraction
from pathlib import Path

OUT = Path(__file__).resolve().parents[1] / "data" / "frozen.json"


def residue(x: Fraction, p: int, N: int) -> int:
    P = p ** N
    return x.numerator * pow(x.denominator, -1, P) % P


def gamma_direct(x: Fraction, p: int, N: int) -> int:
    P = p ** N
    m = residue(x, p, N)
    if m == 0:
        m = P          # Gamma_p(0) = 1 = Gamma_p(p^N) mod p^N
    acc = 1
    for j in range(1, m):
        if j % p:
            acc = acc * j % P
    return (-acc) % P if m % 2 else acc


def hyper_sum(a, b, c, lam, terms) -> Fraction:
    t, s = Fraction(1), Fraction(0)
    for k in range(terms):
        s += t
        t = t * (a + k) * (b + k) / ((c + k) * (k + 1)) * lam
    return s


def prime_image(x: Fraction, p: int) -> Fraction:
    mu = (-x.numerator * pow(x.denominator, -1, p)) % p
    return (x + mu) / p


def padic_digits(r: Fraction, p: int, N: int):
    """(valuation, unit residue mod p^(N - v)) of r at absolute precision N."""
    v = 0
    num, den = r.numerator, r.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v, residue(Fraction(num, den), p, N - v)


def main():
    F = Fraction
    data = {"gamma_p": [], "dwork_levels": [], "kd_rhs": [], "young_rhs": []}
    for p in (5, 7, 13):
        for x in (F(1), F(2), F(1, 2), F(1, 3), F(-2, 3), F(5, 6), F(7, 4), F(-11, 8)):
            data["gamma_p"].append({"p": p, "x": str(x), "N": 4, "residue": gamma_direct(x, p, 4)})

    cases = [((F(1, 6), F(1, 6), F(5, 6)), F(1), 7),
             ((F(1, 3), F(2, 3), F(2, 3)), F(-1), 7),
             ((F(1, 6), F(1, 6), F(5, 6)), F(7, 3), 7)]
    N = 6
    for (a, b, c), lam, p in cases:
        ap, bp, cp = (prime_image(x, p) for x in (a, b, c))
        levels = []
        for s in (2, 3, 4):
            num = hyper_sum(a, b, c, lam, p ** s)
            den = hyper_sum(ap, bp, cp, lam ** p, p ** (s - 1))
            v, u = padic_digits(num / den, p, N)
            levels.append({"s": s, "valuation": v, "unit": u})
        data["dwork_levels"].append({"p": p, "params": [str(a), str(b), str(c)],
                                     "lambda": str(lam), "N": N, "levels": levels})

    def G(x, p):
        return gamma_direct(x, p, N)

    for (a, b, c), p in (((F(1, 6), F(1, 6), F(5, 6)), 7), ((F(1, 4), F(1, 4), F(2, 3)), 13)):
        P = p ** N
        val = G(c, p) * G(c - a - b, p) * pow(G(c - a, p) * G(c - b, p), -1, P) % P
        data["kd_rhs"].append({"p": p, "params": [str(a), str(b), str(c)], "N": N, "residue": val})

    a, b, p = F(1, 3), F(2, 3), 7
    P = p ** N
    mu_a = (-a.numerator * pow(a.denominator, -1, p)) % p
    sign = -1 if (mu_a // 2) % 2 else 1
    val = sign * G(a / 2, p) * G(b - a / 2, p) * pow(G(a, p) * G(b - a, p), -1, P) % P
    data["young_rhs"].append({"p": p, "a": str(a), "b": str(b), "N": N, "residue": val})

    OUT.write_text(json.dumps(data, indent=1) + "\n")
    print(f"wrote {OUT}")


if __name__ == "__main__":
    main()

"""
Morita's p-adic gamma function, Dwork's two-variable symbol gamma_p(x, y),
and Pochhammer ratios standing in for quotients of classical Gamma values.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import _backend
from .padic import INF, PadicNumber, PiElement, padic_from_rational, vp_rational


class DomainError(ValueError):
    """Argument outside the domain where the quantity is defined."""


def _as_fraction(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def integer_approximant(x, p: int, N: int) -> int:
    """The m in [0, p^N) with m = x mod p^N."""
    x = _as_fraction(x)
    if x.denominator % p == 0:
        raise DomainError(f"{x} is not in Z_{p}")
    m = p ** N
    return x.numerator * pow(x.denominator, -1, m) % m


# -- Gamma_p at a positive integer -------------------------------------------
#
# Gamma_p(m) = (-1)^m prod_{0<j<m, p∤j} j.  The default evaluation groups the
# product into blocks f(i) = prod_{r=1}^{p-1} (p*i + r).  As a polynomial in i,
# f has its coefficient of i^k divisible by p^k, so modulo p^N only degrees
# below N matter and prod_{i<q} f(i) follows from binary splitting on
# truncated polynomials.  The plain product is kept as an oracle.

def _poly_mul_mod(f, g, K, P):
    out = [0] * K
    for i, a in enumerate(f):
        if a:
            for j in range(min(len(g), K - i)):
                out[i + j] = (out[i + j] + a * g[j]) % P
    return out


def _poly_shift_mod(f, a, K, P):
    """f(s + a) truncated to degree < K."""
    out = [0] * K
    for j, c in enumerate(f):
        if not c:
            continue
        binom = 1
        apow = [1]
        for _ in range(j):
            apow.append(apow[-1] * a % P)
        for k in range(min(j, K - 1) + 1):
            out[k] = (out[k] + c * binom % P * apow[j - k]) % P
            binom = binom * (j - k) // (k + 1)
    return out


@lru_cache(maxsize=None)
def _block_poly(p: int, K: int):
    """prod_{r=1}^{p-1} (p*s + r) modulo p^K, truncated to degree < K."""
    P = p ** K
    f = [1]
    for r in range(1, p):
        f = _poly_mul_mod(f, [r, p], K, P)
    return tuple(f + [0] * (K - len(f)))


def _block_product(q: int, p: int, K: int) -> int:
    """prod_{i=0}^{q-1} prod_{r=1}^{p-1} (p*i + r) modulo p^K."""
    P = p ** K
    f = list(_block_poly(p, K))
    g = [1] + [0] * (K - 1)   # g_n(s) = prod_{i<n} f(s + i), start n = 0
    n = 0
    for bit in bin(q)[2:]:
        if n:
            g = _poly_mul_mod(g, _poly_shift_mod(g, n, K, P), K, P)
            n *= 2
        if bit == "1":
            g = _poly_mul_mod(g, _poly_shift_mod(f, n, K, P), K, P)
            n += 1
    return g[0] % P


@lru_cache(maxsize=1 << 16)
def gamma_p_integer(m: int, p: int, K: int, method: str = "block") -> int:
    """Gamma_p(m) modulo p^K for an integer 0 <= m, as an integer residue."""
    if m < 0:
        raise DomainError("integer approximant must be non-negative")
    P = p ** K
    if m <= 1:
        return 1 if m == 0 else P - 1
    if method == "direct":
        return _backend.gamma_p_direct(m, p, K)
    q, r1 = divmod(m - 1, p)
    acc = _block_product(q, p, K)
    for r in range(1, r1 + 1):
        acc = acc * (q * p + r) % P
    return (-acc) % P if m % 2 else acc


def gamma_p(x, p: int, N: int, method: str = "block") -> PadicNumber:
    """Morita's Gamma_p(x) modulo p^N for x in Z_p (a unit)."""
    m = integer_approximant(x, p, N)
    return PadicNumber(p, 0, gamma_p_integer(m, p, N, method), N)


def reflection_sign_t(x, p: int) -> int:
    """t in {0, ..., p-1} with t = -x mod p."""
    return integer_approximant(-_as_fraction(x), p, 1)


def gamma_p_reflection_check(x, p: int, N: int) -> float:
    """Precision to which Gamma_p(x) Gamma_p(1-x) = -(-1)^t holds."""
    x = _as_fraction(x)
    lhs = gamma_p(x, p, N) * gamma_p(1 - x, p, N)
    t = reflection_sign_t(x, p)
    rhs = padic_from_rational(-((-1) ** t), p, N)
    return min(lhs.agreement(rhs), N)


def continuity_check(m1: int, m2: int, p: int, N: int) -> float:
    """Agreement of Gamma_p at two integers (should be >= v_p(m1 - m2))."""
    a = PadicNumber(p, 0, gamma_p_integer(m1, p, N), N)
    b = PadicNumber(p, 0, gamma_p_integer(m2, p, N), N)
    return a.agreement(b)


# -- Pochhammer and classical Gamma ratios ------------------------------------

def pochhammer(x, m: int) -> Fraction:
    """(x)_m = x (x+1) ... (x+m-1), (x)_0 = 1."""
    if m < 0:
        raise ValueError("use gamma_ratio for negative shifts")
    x = _as_fraction(x)
    acc = Fraction(1)
    for i in range(m):
        acc *= x + i
    return acc


def gamma_ratio(x, m: int) -> Fraction:
    """Gamma(x + m) / Gamma(x) for an integer m, as an exact rational."""
    x = _as_fraction(x)
    if m >= 0:
        return pochhammer(x, m)
    d = pochhammer(x + m, -m)
    if d == 0:
        raise DomainError(f"Gamma({x}+{m})/Gamma({x}) has a pole")
    return 1 / d


# -- Dwork's symbol ----------------------------------------------------------

@dataclass(frozen=True)
class GammaPair:
    x: Fraction
    y: Fraction
    p: int

    def __post_init__(self):
        object.__setattr__(self, "x", _as_fraction(self.x))
        object.__setattr__(self, "y", _as_fraction(self.y))
        for v in (self.x, self.y):
            if v.denominator % self.p == 0:
                raise DomainError(f"{v} is not in Z_{self.p}")
        if (self.p * self.y - self.x).denominator != 1:
            raise DomainError("p*y - x is not an integer")

    @property
    def mu(self) -> int:
        return int(self.p * self.y - self.x)


@dataclass(frozen=True)
class SymbolPath:
    """gamma_p(x, y) = sign * ratio * pi^pi_exp * Gamma_p(x0)."""
    m: int
    n: int
    x0: Fraction
    sign: int
    ratio: Fraction
    pi_exp: int

    def valuation(self, p: int) -> int:
        return int(vp_rational(self.ratio, p)) + self.pi_exp // (p - 1)


def symbol_path(pair: GammaPair, n: int = 0) -> SymbolPath:
    """Reduction of gamma_p(x, y) to the window through (m, n) shifts.

    The base pair is (x - m, y - n) with p(y - n) - (x - m) in {0..p-1}.
    """
    p = pair.p
    mu0 = (pair.mu - p * n) % p
    m = mu0 - pair.mu + p * n
    x0, y0 = pair.x - m, pair.y - n
    num = gamma_ratio(x0, m)
    den = gamma_ratio(y0, n)
    if num == 0 or den == 0:
        raise DomainError(f"classical Gamma ratio degenerates for {pair}")
    sign = -1 if (n - m) % 2 else 1
    return SymbolPath(m, n, x0, sign, num / den, mu0 + n - m)


def _evaluate_path(path: SymbolPath, p: int, N: int) -> PiElement:
    """Value with absolute precision N (Gamma_p taken at relative precision
    N minus the valuation)."""
    v = path.valuation(p)
    rel = max(N - v, 1)
    g = gamma_p(path.x0, p, rel)
    coeff = g * Fraction(path.sign) * path.ratio
    return PiElement(coeff, path.pi_exp)


def gamma_symbol(pair: GammaPair, p: int | None = None, N: int = 6) -> PiElement:
    """Dwork's gamma_p(x, y) as coeff * pi^k, 0 <= k < p-1.

    Canonical path: x-shifts only (n = 0).  The coefficient is certified
    modulo p^N (absolute).
    """
    if p is not None and p != pair.p:
        raise DomainError("prime mismatch")
    return _evaluate_path(symbol_path(pair, 0), pair.p, N)


def gamma_symbol_valuation(pair: GammaPair) -> int:
    """Exact valuation of gamma_p(x, y) in units of v(pi) = 1/(p-1), folded:
    returns (valuation of the coefficient, pi exponent)."""
    path = symbol_path(pair, 0)
    return path.valuation(pair.p), path.pi_exp % (pair.p - 1)


def symbol_reduction_independence_check(pair: GammaPair, N: int = 6,
                                        shifts=(0, 1, -1, 2)) -> bool:
    """Evaluate through several (m, n) paths and require agreement mod p^N."""
    values = []
    for n in shifts:
        try:
            values.append(_evaluate_path(symbol_path(pair, n), pair.p, N))
        except DomainError:
            continue
    if len(values) < 2:
        raise DomainError("fewer than two admissible reduction paths")
    ref = values[0]
    for v in values[1:]:
        if v.pi_exponent != ref.pi_exponent:
            return False
        if min(v.coeff.agreement(ref.coeff), N) < N:
            return False
    return True


def symplectic_check(pair: GammaPair, N: int = 6) -> float:
    """Precision of gamma_p(x,y) gamma_p(1-x,1-y) = (-1)^(py-x) p (exact in
    PiElement arithmetic, so the pi exponent must fold to zero)."""
    p = pair.p
    other = GammaPair(1 - pair.x, 1 - pair.y, p)
    prod = gamma_symbol(pair, N=N + 2) * gamma_symbol(other, N=N + 2)
    if prod.pi_exponent != 0:
        return -INF
    rhs = padic_from_rational((-1) ** (pair.mu % 2) * p, p, N + 2)
    return min(prod.coeff.agreement(rhs), N)

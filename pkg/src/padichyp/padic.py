"""
Capped absolute precision arithmetic in Q_p, plus the pi-extension used by
Dwork's gamma symbol.

A PadicNumber stores a valuation v, a unit u modulo p^(N - v) and the absolute
precision N: the value is p^v * u + O(p^N).  Exact zero has valuation and
precision +inf and is kept distinct from a zero known only modulo p^N.
"""
from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational
from typing import Union

INF = math.inf

Scalar = Union[int, Fraction]


def vp(n: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def vp_rational(r: Scalar, p: int) -> float:
    r = Fraction(r)
    if r == 0:
        return INF
    return vp(r.numerator, p) - vp(r.denominator, p)


class PrimeMismatch(ValueError):
    pass


class PrecisionError(ArithmeticError):
    """Raised when a result would need more precision than is carried."""


class PadicNumber:
    __slots__ = ("prime", "valuation", "unit", "abs_precision")

    def __init__(self, prime: int, valuation, unit: int, abs_precision):
        self.prime = prime
        if valuation == INF:
            self.valuation = INF
            self.unit = 0
            self.abs_precision = INF
            return
        if abs_precision == INF:
            raise ValueError("only exact zero may carry infinite precision")
        abs_precision = int(abs_precision)
        valuation = int(valuation)
        rel = abs_precision - valuation
        if rel < 0:
            raise ValueError("valuation exceeds absolute precision")
        unit %= prime ** rel
        if rel > 0 and unit % prime == 0:
            # normalize: push factors of p into the valuation
            if unit == 0:
                valuation, unit = abs_precision, 0
            else:
                k = vp(unit, prime)
                valuation += k
                unit = (unit // prime ** k) % prime ** (abs_precision - valuation)
        self.valuation = valuation
        self.unit = unit
        self.abs_precision = abs_precision

    # -- constructors -------------------------------------------------------
    @classmethod
    def exact_zero(cls, p: int) -> "PadicNumber":
        return cls(p, INF, 0, INF)

    @classmethod
    def zero(cls, p: int, N: int) -> "PadicNumber":
        """Zero known modulo p^N (not exact)."""
        return cls(p, N, 0, N)

    @classmethod
    def from_rational(cls, r: Scalar, p: int, N: int) -> "PadicNumber":
        return padic_from_rational(r, p, N)

    # -- predicates ---------------------------------------------------------
    @property
    def is_exact_zero(self) -> bool:
        return self.valuation == INF

    def is_zero(self) -> bool:
        """True when the value is zero at its precision (exact or not)."""
        return self.valuation == INF or self.valuation >= self.abs_precision

    @property
    def relative_precision(self):
        if self.is_exact_zero:
            return INF
        return self.abs_precision - self.valuation

    def norm(self) -> float:
        if self.is_zero():
            return 0.0
        return float(self.prime) ** (-self.valuation)

    # -- conversion ---------------------------------------------------------
    def residue(self) -> Fraction:
        """Canonical rational representative p^v * u (u in [0, p^(N-v)))."""
        if self.is_zero():
            return Fraction(0)
        return Fraction(self.unit) * Fraction(self.prime) ** self.valuation

    def lift(self) -> int:
        """Integer representative modulo p^N; requires valuation >= 0."""
        if self.is_zero():
            return 0
        if self.valuation < 0:
            raise PrecisionError("negative valuation has no integer lift")
        return self.unit * self.prime ** self.valuation

    def digits(self) -> list[int]:
        """Base-p digits of the unit, little-endian, length N - v."""
        if self.is_exact_zero:
            return []
        out = []
        u = self.unit
        for _ in range(self.abs_precision - self.valuation):
            out.append(u % self.prime)
            u //= self.prime
        return out

    def with_precision(self, N) -> "PadicNumber":
        """Reduce to absolute precision min(N, current)."""
        if self.is_exact_zero:
            return self
        N = min(N, self.abs_precision)
        if self.valuation >= N:
            return PadicNumber.zero(self.prime, N)
        return PadicNumber(self.prime, self.valuation, self.unit, N)

    # -- arithmetic ---------------------------------------------------------
    def _coerce(self, other) -> "PadicNumber":
        if isinstance(other, PadicNumber):
            if other.prime != self.prime:
                raise PrimeMismatch(f"prime mismatch: {self.prime} vs {other.prime}")
            return other
        if isinstance(other, (int, Rational)):
            if self.is_exact_zero:
                raise PrecisionError("no precision to embed a rational next to an exact zero")
            vy = vp_rational(other, self.prime)
            if vy == INF:
                return PadicNumber.exact_zero(self.prime)
            # enough digits that the embedding never limits the result
            Ny = self.abs_precision + max(0, vy - self.valuation)
            return padic_from_rational(other, self.prime, max(Ny, vy + 1, 1))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return padic_add(self, other)

    __radd__ = __add__

    def __neg__(self):
        if self.is_zero():
            return self
        p = self.prime
        return PadicNumber(p, self.valuation, -self.unit, self.abs_precision)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return padic_add(self, -other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return padic_add(other, -self)

    def __mul__(self, other):
        if self.is_exact_zero:
            return self
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return padic_mul(self, other)

    __rmul__ = __mul__

    def inverse(self) -> "PadicNumber":
        if self.is_zero():
            raise ZeroDivisionError("inverse of a p-adic zero")
        p = self.prime
        rel = self.abs_precision - self.valuation
        return PadicNumber(p, -self.valuation, pow(self.unit, -1, p ** rel), rel - self.valuation)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return padic_mul(self, other.inverse())

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return padic_mul(other, self.inverse())

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        if n == 0:
            rel = 1 if self.is_exact_zero else max(int(self.relative_precision), 1)
            return padic_from_rational(1, self.prime, rel)
        result = None
        base = self
        while n:
            if n & 1:
                result = base if result is None else padic_mul(result, base)
            n >>= 1
            if n:
                base = padic_mul(base, base)
        return result

    def agreement(self, other) -> float:
        """Largest k (capped at the joint precision) with self = other mod p^k."""
        other = self._coerce(other)
        d = padic_add(self, -other)
        if d.is_exact_zero:
            return INF
        return d.valuation

    def __eq__(self, other):
        if isinstance(other, (PadicNumber, int, Rational)):
            try:
                other = self._coerce(other)
            except PrimeMismatch:
                return False
            return (self.valuation, self.unit, self.abs_precision) == (
                other.valuation, other.unit, other.abs_precision)
        return NotImplemented

    def __hash__(self):
        return hash((self.prime, self.valuation, self.unit, self.abs_precision))

    def __repr__(self):
        if self.is_exact_zero:
            return f"PadicNumber(0, p={self.prime}, exact)"
        return (f"PadicNumber(p={self.prime}, v={self.valuation}, unit={self.unit}, "
                f"N={self.abs_precision})")

    def __str__(self):
        if self.is_exact_zero:
            return "0"
        if self.is_zero():
            return f"O({self.prime}^{self.abs_precision})"
        return f"{self.prime}^{self.valuation}*{self.unit} + O({self.prime}^{self.abs_precision})"


def padic_from_rational(r: Scalar, p: int, N: int) -> PadicNumber:
    """Embed a rational number into Q_p, known modulo p^N."""
    if p < 3:
        raise ValueError("p must be an odd prime")
    if N < 1:
        raise ValueError("precision must be >= 1")
    r = Fraction(r)
    if r == 0:
        return PadicNumber.exact_zero(p)
    num, den = r.numerator, r.denominator
    v = vp(num, p) - vp(den, p)
    if v >= N:
        return PadicNumber.zero(p, N)
    num //= p ** vp(num, p)
    den //= p ** vp(den, p)
    m = p ** (N - v)
    return PadicNumber(p, v, num * pow(den, -1, m) % m, N)


def _check_prime(x: PadicNumber, y: PadicNumber):
    if x.prime != y.prime:
        raise PrimeMismatch(f"prime mismatch: {x.prime} vs {y.prime}")


def padic_add(x: PadicNumber, y: PadicNumber) -> PadicNumber:
    _check_prime(x, y)
    if x.is_exact_zero:
        return y
    if y.is_exact_zero:
        return x
    p = x.prime
    N = min(x.abs_precision, y.abs_precision)
    v = min(x.valuation, y.valuation)
    if v >= N:
        return PadicNumber.zero(p, N)
    m = p ** (N - v)
    s = 0
    for z in (x, y):
        if z.valuation < N and z.unit:
            s += z.unit * p ** (z.valuation - v)
    s %= m
    if s == 0:
        return PadicNumber.zero(p, N)
    return PadicNumber(p, v, s, N)


def padic_mul(x: PadicNumber, y: PadicNumber) -> PadicNumber:
    _check_prime(x, y)
    p = x.prime
    if x.is_exact_zero or y.is_exact_zero:
        return PadicNumber.exact_zero(p)
    v = x.valuation + y.valuation
    N = min(x.abs_precision + y.valuation, y.abs_precision + x.valuation)
    if v >= N or x.unit == 0 or y.unit == 0:
        return PadicNumber.zero(p, N)
    return PadicNumber(p, v, x.unit * y.unit, N)


class PiElement:
    """coeff * pi^k with pi^(p-1) = -p and 0 <= k < p - 1."""

    __slots__ = ("coeff", "pi_exponent")

    def __init__(self, coeff: PadicNumber, pi_exponent: int = 0):
        p = coeff.prime
        q, k = divmod(pi_exponent, p - 1)
        if q:
            coeff = padic_mul(coeff, _minus_p_power(p, q, coeff))
        self.coeff = coeff
        self.pi_exponent = k

    @property
    def prime(self) -> int:
        return self.coeff.prime

    def __mul__(self, other):
        if isinstance(other, PadicNumber):
            other = PiElement(other, 0)
        if not isinstance(other, PiElement):
            return NotImplemented
        return pi_mul(self, other)

    __rmul__ = __mul__

    def inverse(self) -> "PiElement":
        # (c pi^k)^-1 = c^-1 pi^-k
        return PiElement(self.coeff.inverse(), -self.pi_exponent)

    def __truediv__(self, other):
        if isinstance(other, PadicNumber):
            other = PiElement(other, 0)
        return pi_mul(self, other.inverse())

    def __neg__(self):
        return PiElement(-self.coeff, self.pi_exponent)

    def to_padic(self) -> PadicNumber:
        if self.pi_exponent != 0:
            raise ValueError("pi-exponent is nonzero; value is not in Q_p")
        return self.coeff

    def __eq__(self, other):
        if isinstance(other, PadicNumber):
            other = PiElement(other, 0)
        if not isinstance(other, PiElement):
            return NotImplemented
        return self.pi_exponent == other.pi_exponent and self.coeff == other.coeff

    def __hash__(self):
        return hash((self.coeff, self.pi_exponent))

    def __repr__(self):
        return f"PiElement({self.coeff!r}, pi^{self.pi_exponent})"


def _minus_p_power(p: int, q: int, like: PadicNumber) -> PadicNumber:
    """(-p)^q as an exact-enough p-adic number for scaling `like`."""
    rel = like.relative_precision
    rel = 1 if rel == INF else max(int(rel), 1)
    unit = (-1) ** (q % 2)
    return PadicNumber(p, q, unit, q + rel)


def pi_mul(x: PiElement, y: PiElement) -> PiElement:
    if x.prime != y.prime:
        raise PrimeMismatch(f"prime mismatch: {x.prime} vs {y.prime}")
    return PiElement(padic_mul(x.coeff, y.coeff), x.pi_exponent + y.pi_exponent)

"""Exact arithmetic in cyclotomic fields Q(zeta_N).

Elements are stored as an integer coefficient vector over the power basis
1, zeta, ..., zeta^(phi(N)-1) together with a positive common denominator.
Reduction is modulo the N-th cyclotomic polynomial, so the representation is
canonical and equality is structural.  Every level of the theory lives in a
single field of order N = 4(k+2) (N = 4 when delta = 2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Union

import mpmath

__all__ = [
    "cyc_arith",
    "Cyclotomic",
    "Level",
    "cyclotomic_polynomial",
    "approx_complex",
    "delta_of_level",
    "kauffman_z",
    "quantum_integer",
]

Number = Union[int, Fraction, "Cyclotomic"]


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    """Exact division of integer polynomials (coefficients low degree first); den monic."""
    num = list(num)
    dd = len(den) - 1
    if den[-1] != 1:
        raise ValueError("divisor must be monic")
    quot = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c:
            quot[i - dd] = c
            for j, d in enumerate(den):
                num[i - dd + j] -= c * d
    if any(num[:dd]):
        raise ArithmeticError("inexact polynomial division")
    return quot


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients (low degree first) of the n-th cyclotomic polynomial.

    Computed by dividing x^n - 1 by every Phi_d with d a proper divisor of n.
    """
    if n < 1:
        raise ValueError("order must be positive")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divexact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


class _Field:
    """Per-order lookup tables: reductions of zeta^e for 0 <= e < N."""

    __slots__ = ("order", "degree", "powers", "units")

    def __init__(self, order: int):
        self.order = order
        poly = cyclotomic_polynomial(order)
        deg = len(poly) - 1
        self.degree = deg
        powers: list[tuple[int, ...]] = []
        cur = [0] * deg
        cur[0] = 1
        for _ in range(order):
            powers.append(tuple(cur))
            # multiply by zeta: shift and reduce x^deg = -(poly[0] + ... )
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                for j in range(deg):
                    cur[j] -= top * poly[j]
        self.powers = tuple(powers)
        self.units = tuple(t for t in range(1, order) if math.gcd(t, order) == 1) or (1,)


@lru_cache(maxsize=None)
def _field(order: int) -> _Field:
    return _Field(order)


def _normalize(num: list[int] | tuple[int, ...], den: int) -> tuple[tuple[int, ...], int]:
    if den < 0:
        num = [-c for c in num]
        den = -den
    if den != 1:
        g = math.gcd(den, *num)
        if g > 1:
            num = [c // g for c in num]
            den //= g
    return tuple(num), den


class Cyclotomic:
    """An element of Q(zeta_N), immutable and hashable."""

    __slots__ = ("order", "num", "den", "_hash")

    def __init__(self, order: int, num, den: int = 1, _normalized: bool = False):
        if not _normalized:
            deg = _field(order).degree
            num = list(num)
            if len(num) > deg:
                num = _reduce(order, num)
            elif len(num) < deg:
                num = num + [0] * (deg - len(num))
            if den == 0:
                raise ZeroDivisionError("zero denominator")
            num, den = _normalize(num, den)
            if not any(num):
                den = 1
        self.order = order
        self.num = num
        self.den = den
        self._hash = None

    # -- constructors -------------------------------------------------------
    @classmethod
    def from_rational(cls, order: int, value: int | Fraction) -> "Cyclotomic":
        value = Fraction(value)
        deg = _field(order).degree
        num = [0] * deg
        num[0] = value.numerator
        return cls(order, num, value.denominator)

    @classmethod
    def zeta(cls, order: int, exponent: int = 1) -> "Cyclotomic":
        f = _field(order)
        return cls(order, f.powers[exponent % order], 1, _normalized=True)

    @classmethod
    def zero(cls, order: int) -> "Cyclotomic":
        return cls(order, (0,) * _field(order).degree, 1, _normalized=True)

    @classmethod
    def one(cls, order: int) -> "Cyclotomic":
        return cls.from_rational(order, 1)

    # -- coercion -----------------------------------------------------------
    def _coerce(self, other) -> "Cyclotomic":
        if isinstance(other, Cyclotomic):
            if other.order == self.order:
                return other
            if self.order % other.order == 0:
                return other.embed(self.order)
            raise ValueError(
                f"cannot combine elements of orders {self.order} and {other.order}"
            )
        if isinstance(other, (int, Fraction)):
            return Cyclotomic.from_rational(self.order, other)
        return NotImplemented

    def _binary(self, other):
        """Return (a, b) on a common order, or NotImplemented."""
        if isinstance(other, Cyclotomic) and other.order != self.order:
            if other.order % self.order == 0:
                return self.embed(other.order), other
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self, o

    def embed(self, order: int) -> "Cyclotomic":
        """Image in Q(zeta_order) for a multiple ``order`` of self.order."""
        if order == self.order:
            return self
        if order % self.order:
            raise ValueError(f"Q(zeta_{self.order}) does not embed in Q(zeta_{order})")
        step = order // self.order
        f = _field(order)
        acc = [0] * f.degree
        for j, c in enumerate(self.num):
            if c:
                p = f.powers[(j * step) % order]
                for i, v in enumerate(p):
                    if v:
                        acc[i] += c * v
        return Cyclotomic(order, acc, self.den)

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        pair = self._binary(other)
        if pair is NotImplemented:
            return NotImplemented
        a, b = pair
        if a.den == b.den:
            num = [x + y for x, y in zip(a.num, b.num)]
            den = a.den
        else:
            num = [x * b.den + y * a.den for x, y in zip(a.num, b.num)]
            den = a.den * b.den
        if den == 1:
            return Cyclotomic(a.order, tuple(num), 1, _normalized=True)
        return Cyclotomic(a.order, num, den)

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.order, tuple(-c for c in self.num), self.den, _normalized=True)

    def __sub__(self, other):
        pair = self._binary(other)
        if pair is NotImplemented:
            return NotImplemented
        a, b = pair
        return a + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return Cyclotomic.zero(self.order)
            num = [c * other for c in self.num]
            if self.den == 1:
                return Cyclotomic(self.order, tuple(num), 1, _normalized=True)
            return Cyclotomic(self.order, num, self.den)
        pair = self._binary(other)
        if pair is NotImplemented:
            return NotImplemented
        a, b = pair
        num = _mul_reduce(a.order, a.num, b.num)
        den = a.den * b.den
        if den == 1:
            return Cyclotomic(a.order, num, 1, _normalized=True)
        return Cyclotomic(a.order, num, den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        pair = self._binary(other)
        if pair is NotImplemented:
            return NotImplemented
        a, b = pair
        return a * b.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, exponent: int):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = Cyclotomic.one(self.order)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def galois(self, t: int) -> "Cyclotomic":
        """Apply the automorphism zeta -> zeta^t (t coprime to the order)."""
        f = _field(self.order)
        n = self.order
        acc = [0] * f.degree
        for j, c in enumerate(self.num):
            if c:
                p = f.powers[(j * t) % n]
                for i, v in enumerate(p):
                    if v:
                        acc[i] += c * v
        return Cyclotomic(self.order, acc, self.den)

    def conj(self) -> "Cyclotomic":
        """Complex conjugate, i.e. zeta -> zeta^-1."""
        return self.galois(self.order - 1)

    def norm(self) -> Fraction:
        """Field norm down to Q: product of all Galois conjugates."""
        prod = self
        for t in _field(self.order).units:
            if t != 1:
                prod = prod * self.galois(t)
        return prod.rational()

    def inverse(self) -> "Cyclotomic":
        if not self:
            raise ZeroDivisionError("inverse of zero in cyclotomic field")
        others = Cyclotomic.one(self.order)
        for t in _field(self.order).units:
            if t != 1:
                others = others * self.galois(t)
        n = (self * others).rational()
        return others * (Fraction(1) / n)

    # -- predicates ---------------------------------------------------------
    def __bool__(self) -> bool:
        return any(self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self.num[0], self.den)

    def __eq__(self, other) -> bool:
        if isinstance(other, Cyclotomic) and other.order == self.order:
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction, Cyclotomic)):
            try:
                pair = self._binary(other)
            except ValueError:
                return False
            if pair is NotImplemented:
                return False
            a, b = pair
            return a.num == b.num and a.den == b.den
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(Fraction(self.num[0], self.den))
            else:
                self._hash = hash((self.order, self.num, self.den))
        return self._hash

    # -- rendering ----------------------------------------------------------
    def to_string(self) -> str:
        """Exact text form, e.g. ``(3 - 2*z^2 + z^5)/7`` with z = zeta_N."""
        parts = []
        for j, c in enumerate(self.num):
            if not c:
                continue
            if j == 0:
                mono = str(abs(c))
            else:
                power = "z" if j == 1 else f"z^{j}"
                mono = power if abs(c) == 1 else f"{abs(c)}*{power}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, mono))
        if not parts:
            return "0"
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, mono in parts[1:]:
            text += f" {sign} {mono}"
        if self.den != 1:
            text = f"({text})/{self.den}" if len(parts) > 1 else f"{text}/{self.den}"
        return text

    def __str__(self) -> str:
        return self.to_string()

    def __repr__(self) -> str:
        return f"Cyclotomic({self.order}, {self.to_string()!r})"

    def __complex__(self) -> complex:
        re, im = approx_complex(self, 15)
        return complex(re, im)


@lru_cache(maxsize=None)
def _mul_plan(order: int):
    f = _field(order)
    return f.degree, f.powers


def _mul_reduce(order: int, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    deg, powers = _mul_plan(order)
    prod = [0] * (2 * deg - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    prod[i + j] += x * y
    out = prod[:deg]
    for e in range(deg, 2 * deg - 1):
        c = prod[e]
        if c:
            p = powers[e % order]
            for i in range(deg):
                v = p[i]
                if v:
                    out[i] += c * v
    return tuple(out)


def _reduce(order: int, coeffs: list[int]) -> list[int]:
    f = _field(order)
    out = [0] * f.degree
    for e, c in enumerate(coeffs):
        if c:
            p = f.powers[e % order]
            for i, v in enumerate(p):
                if v:
                    out[i] += c * v
    return out


def approx_complex(a: Cyclotomic, precision: int = 15) -> tuple[float, float]:
    """Evaluate at zeta_N = exp(2 pi i / N) with error below 10**-precision."""
    if precision < 1:
        raise ValueError("precision must be at least 1")
    with mpmath.workdps(precision + 10):
        total = mpmath.mpc(0)
        for j, c in enumerate(a.num):
            if c:
                total += c * mpmath.expjpi(mpmath.mpf(2 * j) / a.order)
        total /= a.den
        return float(total.real), float(total.imag)


@dataclass(frozen=True)
class Level:
    """Parameter choice: delta = 2cos(pi/(k+2)) for k >= 1, or delta = 2 when k is None."""

    k: int | None
    simple_bound: int = field(default=8, compare=False)

    def __post_init__(self):
        if self.k is not None and (not isinstance(self.k, int) or self.k < 1):
            raise ValueError(f"level k must be a positive integer, got {self.k!r}")

    @classmethod
    def root_of_unity(cls, k: int) -> "Level":
        return cls(k)

    @classmethod
    def delta_two(cls, simple_bound: int = 8) -> "Level":
        return cls(None, simple_bound)

    @classmethod
    def parse(cls, text: str) -> "Level":
        text = text.strip().lower()
        if text in ("delta2", "d2", "2.0"):
            return cls.delta_two()
        return cls(int(text.removeprefix("k=")))

    @property
    def is_delta_two(self) -> bool:
        return self.k is None

    @property
    def order(self) -> int:
        return 4 if self.k is None else 4 * (self.k + 2)

    @property
    def max_simple(self) -> int:
        """Largest simple index f^(s) handled at this level."""
        return self.simple_bound if self.k is None else self.k

    @property
    def name(self) -> str:
        return "delta2" if self.k is None else f"k={self.k}"

    def __str__(self) -> str:
        return self.name

    # convenience accessors
    def scalar(self, value: int | Fraction) -> Cyclotomic:
        return Cyclotomic.from_rational(self.order, value)

    @property
    def delta(self) -> Cyclotomic:
        return delta_of_level(self)

    @property
    def z(self) -> Cyclotomic:
        return kauffman_z(self)

    def qint(self, n: int) -> Cyclotomic:
        return quantum_integer(self, n)


@lru_cache(maxsize=None)
def delta_of_level(level: Level) -> Cyclotomic:
    """Loop value: zeta_{2(k+2)} + zeta_{2(k+2)}^-1, or 2."""
    if level.is_delta_two:
        return Cyclotomic.from_rational(4, 2)
    n = level.order
    return Cyclotomic.zeta(n, 2) + Cyclotomic.zeta(n, -2)


@lru_cache(maxsize=None)
def kauffman_z(level: Level) -> Cyclotomic:
    """Kauffman parameter z = i exp(pi i / (2(k+2))) = zeta_N^(k+3), or i when delta = 2."""
    if level.is_delta_two:
        return Cyclotomic.zeta(4, 1)
    return Cyclotomic.zeta(level.order, level.k + 3)


@lru_cache(maxsize=None)
def quantum_integer(level: Level, n: int) -> Cyclotomic:
    """[n] = (q^n - q^-n)/(q - q^-1) with q = zeta_{2(k+2)}; plain n when delta = 2."""
    if level.is_delta_two:
        return Cyclotomic.from_rational(4, n)
    order = level.order
    # [n] = sum_{j=0}^{n-1} q^(n-1-2j), avoiding the division
    total = Cyclotomic.zero(order)
    for j in range(abs(n)):
        total = total + Cyclotomic.zeta(order, 2 * (abs(n) - 1 - 2 * j))
    return total if n >= 0 else -total


def cyc_arith(op: str, a: Cyclotomic, b: Cyclotomic | None = None):
    """Dispatch ``add``, ``mul``, ``neg``, ``inv``, ``conj`` or ``eq`` by name."""
    unary = {"neg": lambda: -a, "inv": a.inverse, "conj": a.conj}
    binary = {"add": lambda: a + b, "mul": lambda: a * b, "eq": lambda: a == b}
    if op in unary:
        return unary[op]()
    if op in binary:
        if b is None:
            raise ValueError(f"{op} needs two operands")
        return binary[op]()
    raise ValueError(f"unknown operation {op!r}")

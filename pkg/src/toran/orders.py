"""Arithmetic in the five norm-Euclidean imaginary quadratic maximal orders.

Elements are written ``a + b*w`` where ``w`` depends on the discriminant:
``w = sqrt(disc)/2`` for even discriminants and ``w = (1 + sqrt(disc))/2``
for odd ones.  Everything is exact: coordinates are Python integers (or
:class:`fractions.Fraction` for field elements) and norms are computed from
the integral binary form of the order, never from floats.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

EUCLIDEAN_DISCS = (-3, -4, -7, -8, -11)


class DiscMismatchError(ValueError):
    """Raised when operands live over different discriminants."""


def _check_disc(disc: int) -> None:
    if disc not in EUCLIDEAN_DISCS:
        raise ValueError(f"discriminant {disc} is not one of {EUCLIDEAN_DISCS}")


def trace_omega(disc: int) -> int:
    """Trace of the generator w: 0 for even discriminants, 1 for odd."""
    _check_disc(disc)
    return 0 if disc % 4 == 0 else 1


def norm_omega(disc: int) -> int:
    """Norm of the generator w, i.e. the constant term of its minimal polynomial."""
    _check_disc(disc)
    t = 0 if disc % 4 == 0 else 1
    return (t * t - disc) // 4


class OrderElement:
    """An element a + b*w of the maximal order of discriminant ``disc``."""

    __slots__ = ("disc", "a", "b")

    def __init__(self, disc: int, a: int, b: int):
        _check_disc(disc)
        object.__setattr__(self, "disc", disc)
        object.__setattr__(self, "a", int(a))
        object.__setattr__(self, "b", int(b))

    def __setattr__(self, name, value):
        raise AttributeError("OrderElement is immutable")

    @classmethod
    def zero(cls, disc: int) -> OrderElement:
        return cls(disc, 0, 0)

    @classmethod
    def one(cls, disc: int) -> OrderElement:
        return cls(disc, 1, 0)

    @classmethod
    def omega(cls, disc: int) -> OrderElement:
        return cls(disc, 0, 1)

    @classmethod
    def from_int(cls, disc: int, n: int) -> OrderElement:
        return cls(disc, n, 0)

    def _coerce(self, other) -> OrderElement:
        if isinstance(other, OrderElement):
            if other.disc != self.disc:
                raise DiscMismatchError(
                    f"discriminants differ: {self.disc} vs {other.disc}"
                )
            return other
        if isinstance(other, int):
            return OrderElement(self.disc, other, 0)
        return NotImplemented

    def __add__(self, other) -> OrderElement:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return OrderElement(self.disc, self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __sub__(self, other) -> OrderElement:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return OrderElement(self.disc, self.a - other.a, self.b - other.b)

    def __rsub__(self, other) -> OrderElement:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other) -> OrderElement:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        t = trace_omega(self.disc)
        n0 = norm_omega(self.disc)
        a, b, c, d = self.a, self.b, other.a, other.b
        return OrderElement(self.disc, a * c - n0 * b * d, a * d + b * c + t * b * d)

    __rmul__ = __mul__

    def __neg__(self) -> OrderElement:
        return OrderElement(self.disc, -self.a, -self.b)

    def __pow__(self, n: int) -> OrderElement:
        if n < 0:
            raise ValueError("negative powers are not in the order")
        out = OrderElement.one(self.disc)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self.a == other and self.b == 0
        if not isinstance(other, OrderElement):
            return NotImplemented
        return (self.disc, self.a, self.b) == (other.disc, other.a, other.b)

    def __hash__(self):
        return hash((self.disc, self.a, self.b))

    def __bool__(self) -> bool:
        return self.a != 0 or self.b != 0

    def conjugate(self) -> OrderElement:
        t = trace_omega(self.disc)
        return OrderElement(self.disc, self.a + t * self.b, -self.b)

    def norm(self) -> int:
        """The field norm, a non-negative rational integer."""
        t = trace_omega(self.disc)
        n0 = norm_omega(self.disc)
        return self.a * self.a + t * self.a * self.b + n0 * self.b * self.b

    def trace(self) -> int:
        return 2 * self.a + trace_omega(self.disc) * self.b

    def is_unit(self) -> bool:
        return self.norm() == 1

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def __repr__(self) -> str:
        return f"OrderElement({self.disc}, {self.a}, {self.b})"

    def __str__(self) -> str:
        return format_element(self)


@lru_cache(maxsize=None)
def units(disc: int) -> tuple[OrderElement, ...]:
    """All units of the order: 6 for disc -3, 4 for disc -4, 2 otherwise."""
    _check_disc(disc)
    one = OrderElement.one(disc)
    out = [one, -one]
    if disc == -4:
        w = OrderElement.omega(disc)
        out += [w, -w]
    elif disc == -3:
        w = OrderElement.omega(disc)
        w2 = w * w
        out += [w, -w, w2, -w2]
    return tuple(out)


def canonical_associate(x: OrderElement) -> OrderElement:
    """The canonical representative among the unit multiples of ``x``.

    Among associates with a > 0, or a = 0 and b > 0, the lexicographically
    largest coordinate pair (a, b) is chosen; zero is its own representative.
    """
    if x.is_zero():
        return x
    best = None
    for u in units(x.disc):
        y = u * x
        if y.a > 0 or (y.a == 0 and y.b > 0):
            if best is None or (y.a, y.b) > (best.a, best.b):
                best = y
    assert best is not None
    return best


def canonicalizing_unit(x: OrderElement) -> OrderElement:
    """The unit u with u*x == canonical_associate(x)."""
    target = canonical_associate(x)
    for u in units(x.disc):
        if u * x == target:
            return u
    raise AssertionError("unreachable")


def _division_candidates(x: OrderElement, y: OrderElement) -> Iterator[OrderElement]:
    # Exact rational coordinates of x/y, then a 4x4 integer window around them.
    # The window provably contains every q with norm(x - q*y) < norm(y): the
    # smallest eigenvalue of the norm form over the five discriminants is 1/2.
    ny = y.norm()
    num = x * y.conjugate()
    u = Fraction(num.a, ny)
    v = Fraction(num.b, ny)
    fu, fv = u.__floor__(), v.__floor__()
    for m in range(fu - 1, fu + 3):
        for n in range(fv - 1, fv + 3):
            yield OrderElement(x.disc, m, n)


def euclid_div(x: OrderElement, y: OrderElement) -> tuple[OrderElement, OrderElement]:
    """Quotient and remainder with norm(r) < norm(y).

    The quotient is the lattice point nearest to x/y in the norm metric;
    ties go to the lexicographically smaller quotient coordinates.
    """
    if isinstance(y, int):
        y = OrderElement.from_int(x.disc, y)
    if y.is_zero():
        raise ZeroDivisionError("euclidean division by zero")
    if x.disc != y.disc:
        raise DiscMismatchError(f"discriminants differ: {x.disc} vs {y.disc}")
    best = None
    for q in _division_candidates(x, y):
        r = x - q * y
        key = (r.norm(), q.a, q.b)
        if best is None or key < best[0]:
            best = (key, q, r)
    _, q, r = best
    assert r.norm() < y.norm()
    return q, r


def canonical_residue(x: OrderElement, mod: OrderElement) -> OrderElement:
    """The representative of x modulo ``mod`` minimizing (norm, a, b).

    Unlike the euclid_div remainder this map is idempotent, which makes the
    echelon forms built on it canonical.
    """
    if mod.is_zero():
        return x
    best = None
    for q in _division_candidates(x, mod):
        r = x - q * mod
        key = (r.norm(), r.a, r.b)
        if best is None or key < best:
            best = key
            best_r = r
    return best_r


def exact_div(x: OrderElement, y: OrderElement) -> OrderElement:
    """x / y when y divides x exactly; raises ValueError otherwise."""
    q, r = euclid_div(x, y)
    if not r.is_zero():
        raise ValueError(f"{x} is not divisible by {y}")
    return q


def gcd(x: OrderElement, y: OrderElement) -> OrderElement:
    """Greatest common divisor, returned as a canonical associate."""
    if x.disc != y.disc:
        raise DiscMismatchError(f"discriminants differ: {x.disc} vs {y.disc}")
    while not y.is_zero():
        _, r = euclid_div(x, y)
        x, y = y, r
    return canonical_associate(x)


class QuadRat:
    """An element of the quadratic field, with Fraction coordinates over (1, w)."""

    __slots__ = ("disc", "x", "y")

    def __init__(self, disc: int, x, y):
        _check_disc(disc)
        object.__setattr__(self, "disc", disc)
        object.__setattr__(self, "x", Fraction(x))
        object.__setattr__(self, "y", Fraction(y))

    def __setattr__(self, name, value):
        raise AttributeError("QuadRat is immutable")

    @classmethod
    def from_order(cls, e: OrderElement) -> QuadRat:
        return cls(e.disc, e.a, e.b)

    @classmethod
    def zero(cls, disc: int) -> QuadRat:
        return cls(disc, 0, 0)

    @classmethod
    def one(cls, disc: int) -> QuadRat:
        return cls(disc, 1, 0)

    def _coerce(self, other) -> QuadRat:
        if isinstance(other, QuadRat):
            if other.disc != self.disc:
                raise DiscMismatchError(
                    f"discriminants differ: {self.disc} vs {other.disc}"
                )
            return other
        if isinstance(other, OrderElement):
            if other.disc != self.disc:
                raise DiscMismatchError(
                    f"discriminants differ: {self.disc} vs {other.disc}"
                )
            return QuadRat.from_order(other)
        if isinstance(other, (int, Fraction)):
            return QuadRat(self.disc, other, 0)
        return NotImplemented

    def __add__(self, other) -> QuadRat:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return QuadRat(self.disc, self.x + other.x, self.y + other.y)

    __radd__ = __add__

    def __sub__(self, other) -> QuadRat:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return QuadRat(self.disc, self.x - other.x, self.y - other.y)

    def __rsub__(self, other) -> QuadRat:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other) -> QuadRat:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        t = trace_omega(self.disc)
        n0 = norm_omega(self.disc)
        a, b, c, d = self.x, self.y, other.x, other.y
        return QuadRat(self.disc, a * c - n0 * b * d, a * d + b * c + t * b * d)

    __rmul__ = __mul__

    def __truediv__(self, other) -> QuadRat:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        n = other.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero field element")
        num = self * other.conjugate()
        return QuadRat(self.disc, num.x / n, num.y / n)

    def __neg__(self) -> QuadRat:
        return QuadRat(self.disc, -self.x, -self.y)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.x == other and self.y == 0
        if isinstance(other, OrderElement):
            return self.disc == other.disc and self.x == other.a and self.y == other.b
        if not isinstance(other, QuadRat):
            return NotImplemented
        return (self.disc, self.x, self.y) == (other.disc, other.x, other.y)

    def __hash__(self):
        return hash((self.disc, self.x, self.y))

    def __bool__(self) -> bool:
        return self.x != 0 or self.y != 0

    def conjugate(self) -> QuadRat:
        t = trace_omega(self.disc)
        return QuadRat(self.disc, self.x + t * self.y, -self.y)

    def norm(self) -> Fraction:
        t = trace_omega(self.disc)
        n0 = norm_omega(self.disc)
        return self.x * self.x + t * self.x * self.y + n0 * self.y * self.y

    def trace(self) -> Fraction:
        return 2 * self.x + trace_omega(self.disc) * self.y

    def rational_part(self) -> Fraction:
        """The coefficient of 1 in the basis (1, sqrt(disc)); equals trace/2."""
        return self.x + Fraction(trace_omega(self.disc) * self.y, 2)

    def is_integral(self) -> bool:
        return self.x.denominator == 1 and self.y.denominator == 1

    def to_order(self) -> OrderElement:
        if not self.is_integral():
            raise ValueError(f"{self!r} is not integral")
        return OrderElement(self.disc, int(self.x), int(self.y))

    def __repr__(self) -> str:
        return f"QuadRat({self.disc}, {self.x!r}, {self.y!r})"


_ELEMENT_RE = re.compile(
    r"""^\s*
    (?:(?P<a>[+-]?\d+)(?=\s*(?:[+-]|$)))?       # integer part, then sign or end
    \s*
    (?:(?P<sign>[+-])?\s*(?:(?P<b>\d+)\s*\*\s*)?(?P<w>w))?
    \s*$""",
    re.VERBOSE,
)


def parse_element(text: str, disc: int) -> OrderElement:
    """Parse "a+b*w" (zero terms elided, "w" meaning 1*w) into an element."""
    m = _ELEMENT_RE.match(text)
    if m is None or (m.group("a") is None and m.group("w") is None):
        raise ValueError(f"cannot parse order element from {text!r}")
    a = int(m.group("a")) if m.group("a") is not None else 0
    b = 0
    if m.group("w") is not None:
        b = int(m.group("b")) if m.group("b") is not None else 1
        if m.group("sign") == "-":
            b = -b
    return OrderElement(disc, a, b)


def format_element(x: OrderElement) -> str:
    """Inverse of parse_element; zero terms are elided."""
    if x.b == 0:
        return str(x.a)
    w_part = f"{x.b}*w"
    if x.a == 0:
        return w_part
    return f"{x.a}+{w_part}" if x.b > 0 else f"{x.a}{x.b}*w"

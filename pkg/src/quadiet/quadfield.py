"""Exact arithmetic in the real quadratic field Q(sqrt(d)).

Every value is stored as a reduced triple ``(m, n, r)`` meaning
``(m + n*sqrt(d)) / r`` with ``r > 0`` and ``gcd(m, n, r) == 1``.  Because the
representation is canonical, equality and hashing are exact, and ordering is
decided with integer arithmetic only.

>>> a = QuadNum(3, -1, 2, 5)
>>> a * a == 3 * a - 1
True
>>> a < 1 - a
True
"""

from __future__ import annotations

import enum
from decimal import Decimal, localcontext
from functools import lru_cache, reduce
from math import gcd, isqrt
from typing import Iterable, Sequence

from .errors import (
    DiscriminantMismatch,
    DivisionByZero,
    NonSquareFreeDiscriminant,
    NotRingElement,
    ZeroDenominator,
)

__all__ = [
    "QuadNum",
    "Order",
    "is_squarefree",
    "qn_make",
    "qn_arith",
    "qn_compare",
    "qn_psi",
    "qn_conjugate",
    "ring_rescale",
    "sign_of",
]


@lru_cache(maxsize=None)
def is_squarefree(d: int) -> bool:
    if d < 2:
        return False
    p = 2
    while p * p <= d:
        if d % (p * p) == 0:
            return False
        p += 1
    return True


def sign_of(a: int, b: int, d: int) -> int:
    """Sign of ``a + b*sqrt(d)`` for integers a, b and non-square d."""
    if b == 0:
        return (a > 0) - (a < 0)
    if a == 0:
        return 1 if b > 0 else -1
    if a > 0 and b > 0:
        return 1
    if a < 0 and b < 0:
        return -1
    # opposite signs: the side with the larger square wins
    if a * a > b * b * d:
        return 1 if a > 0 else -1
    return 1 if b > 0 else -1


_setattr = object.__setattr__


class Order(enum.Enum):
    LT = -1
    EQ = 0
    GT = 1


class QuadNum:
    """An element ``(m + n*sqrt(d)) / r`` of Q(sqrt(d)).

    Instances are immutable.  Python integers are accepted wherever a
    ``QuadNum`` operand is expected and are coerced into the other operand's
    field.
    """

    __slots__ = ("m", "n", "r", "d", "_hash")

    def __init__(self, m: int, n: int = 0, r: int = 1, d: int = 2):
        if r == 0:
            raise ZeroDenominator("denominator must be nonzero")
        if not is_squarefree(d):
            raise NonSquareFreeDiscriminant(f"d={d} is not a square-free integer >= 2")
        self._set(int(m), int(n), int(r), d)

    def _set(self, m: int, n: int, r: int, d: int) -> None:
        if r < 0:
            m, n, r = -m, -n, -r
        if m == 0 and n == 0:
            r = 1
        else:
            g = gcd(m, n, r)
            if g != 1:
                m //= g
                n //= g
                r //= g
        _setattr(self, "m", m)
        _setattr(self, "n", n)
        _setattr(self, "r", r)
        _setattr(self, "d", d)
        _setattr(self, "_hash", None)

    @classmethod
    def _make(cls, m: int, n: int, r: int, d: int) -> QuadNum:
        # trusted constructor: d already validated, r != 0
        obj = object.__new__(cls)
        obj._set(m, n, r, d)
        return obj

    @classmethod
    def from_int(cls, k: int, d: int) -> QuadNum:
        return cls._make(k, 0, 1, d)

    @classmethod
    def sqrt_d(cls, d: int) -> QuadNum:
        return cls(0, 1, 1, d)

    def __setattr__(self, name, value):
        raise AttributeError("QuadNum is immutable")

    # -- coercion -------------------------------------------------------------

    def _coerce(self, other) -> QuadNum | None:
        if isinstance(other, QuadNum):
            if other.d != self.d:
                raise DiscriminantMismatch(f"cannot combine sqrt({self.d}) with sqrt({other.d})")
            return other
        if isinstance(other, int):
            return QuadNum._make(other, 0, 1, self.d)
        return None

    # -- predicates -----------------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return self.n == 0

    @property
    def is_ring_element(self) -> bool:
        return self.r == 1

    def __bool__(self) -> bool:
        return self.m != 0 or self.n != 0

    def sign(self) -> int:
        return sign_of(self.m, self.n, self.d)

    # -- arithmetic -----------------------------------------------------------

    def __neg__(self) -> QuadNum:
        return QuadNum._make(-self.m, -self.n, self.r, self.d)

    def __pos__(self) -> QuadNum:
        return self

    def __abs__(self) -> QuadNum:
        return -self if self.sign() < 0 else self

    def __add__(self, other) -> QuadNum:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.r == o.r:
            return QuadNum._make(self.m + o.m, self.n + o.n, self.r, self.d)
        return QuadNum._make(
            self.m * o.r + o.m * self.r, self.n * o.r + o.n * self.r, self.r * o.r, self.d
        )

    __radd__ = __add__

    def __sub__(self, other) -> QuadNum:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.r == o.r:
            return QuadNum._make(self.m - o.m, self.n - o.n, self.r, self.d)
        return QuadNum._make(
            self.m * o.r - o.m * self.r, self.n * o.r - o.n * self.r, self.r * o.r, self.d
        )

    def __rsub__(self, other) -> QuadNum:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other) -> QuadNum:
        if isinstance(other, int):
            return QuadNum._make(self.m * other, self.n * other, self.r, self.d)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadNum._make(
            self.m * o.m + self.d * self.n * o.n,
            self.m * o.n + self.n * o.m,
            self.r * o.r,
            self.d,
        )

    __rmul__ = __mul__

    def norm(self) -> tuple[int, int]:
        """Field norm ``x * conj(x)`` as an (unreduced) fraction (num, den)."""
        return self.m * self.m - self.d * self.n * self.n, self.r * self.r

    def inverse(self) -> QuadNum:
        if not self:
            raise DivisionByZero("inverse of zero")
        num, _ = self.norm()
        # 1 / ((m + n sqrt d)/r) = r (m - n sqrt d) / (m^2 - d n^2)
        return QuadNum._make(self.r * self.m, -self.r * self.n, num, self.d)

    def __truediv__(self, other) -> QuadNum:
        if isinstance(other, int):
            if other == 0:
                raise DivisionByZero("division by zero")
            return QuadNum._make(self.m, self.n, self.r * other, self.d)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other) -> QuadNum:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int) -> QuadNum:
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = QuadNum._make(1, 0, 1, self.d)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self) -> QuadNum:
        return QuadNum._make(self.m, -self.n, self.r, self.d)

    # -- ordering -------------------------------------------------------------

    def compare(self, other) -> int:
        """Return -1, 0 or 1 as self is less than, equal to, or greater than other."""
        o = self._coerce(other)
        if o is None:
            raise TypeError(f"cannot compare QuadNum with {type(other).__name__}")
        if self.r == o.r:
            return sign_of(self.m - o.m, self.n - o.n, self.d)
        return sign_of(self.m * o.r - o.m * self.r, self.n * o.r - o.n * self.r, self.d)

    def __eq__(self, other) -> bool:
        if isinstance(other, QuadNum):
            if other.d != self.d:
                if self.n == 0 and other.n == 0:
                    return self.m == other.m and self.r == other.r
                raise DiscriminantMismatch(f"cannot compare sqrt({self.d}) with sqrt({other.d})")
            return self.m == other.m and self.n == other.n and self.r == other.r
        if isinstance(other, int):
            return self.n == 0 and self.r == 1 and self.m == other
        return NotImplemented

    def __ne__(self, other) -> bool:
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __lt__(self, other) -> bool:
        return self.compare(other) < 0

    def __le__(self, other) -> bool:
        return self.compare(other) <= 0

    def __gt__(self, other) -> bool:
        return self.compare(other) > 0

    def __ge__(self, other) -> bool:
        return self.compare(other) >= 0

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            # rationals hash like the equal int / tuple so mixed-d rationals agree
            if self.n == 0:
                h = hash(self.m) if self.r == 1 else hash((self.m, self.r))
            else:
                h = hash((self.m, self.n, self.r, self.d))
            _setattr(self, "_hash", h)
        return h

    def __reduce__(self):
        return (QuadNum, (self.m, self.n, self.r, self.d))

    # -- rounding / approximation --------------------------------------------

    def __floor__(self) -> int:
        # n*sqrt(d) rounded down, then corrected by exact comparison
        s = isqrt(self.n * self.n * self.d)
        approx = self.m + (s if self.n >= 0 else -s - 1)
        k = approx // self.r
        while self.compare(k) < 0:
            k -= 1
        while self.compare(k + 1) >= 0:
            k += 1
        return k

    def floor(self) -> int:
        return self.__floor__()

    def to_decimal(self, digits: int = 40) -> Decimal:
        with localcontext() as ctx:
            ctx.prec = digits + len(str(abs(self.m))) + len(str(abs(self.n)))
            return (Decimal(self.m) + Decimal(self.n) * Decimal(self.d).sqrt()) / Decimal(self.r)

    def __float__(self) -> float:
        return float(self.to_decimal(30))

    # -- text -----------------------------------------------------------------

    def to_text(self) -> str:
        """Render as an expression readable by the description parser in ietspec."""
        m, n, r, d = self.m, self.n, self.r, self.d
        if n == 0:
            body = str(m)
            return body if r == 1 else f"{body}/{r}"
        root = f"sqrt({d})"
        coef = "" if abs(n) == 1 else f"{abs(n)}*"
        if m == 0:
            body = f"{'-' if n < 0 else ''}{coef}{root}"
        else:
            body = f"{m} {'-' if n < 0 else '+'} {coef}{root}"
        if r == 1:
            return body
        if m == 0:
            return f"{body}/{r}"
        return f"({body})/{r}"

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"QuadNum({self.m}, {self.n}, {self.r}, d={self.d})"


# -- functional surface ------------------------------------------------------


def qn_make(m: int, n: int, r: int, d: int) -> QuadNum:
    return QuadNum(m, n, r, d)


def qn_arith(op: str, x: QuadNum, y: QuadNum) -> QuadNum:
    if x.d != y.d:
        raise DiscriminantMismatch(f"cannot combine sqrt({x.d}) with sqrt({y.d})")
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        if not y:
            raise DivisionByZero("division by zero")
        return x / y
    raise ValueError(f"unknown operation {op!r}")


def qn_compare(x: QuadNum, y: QuadNum) -> Order:
    return Order(x.compare(y))


def qn_psi(z: QuadNum) -> int:
    """Arithmetic height ``max(|m|, |n|)`` of a ring element ``m + n*sqrt(d)``."""
    if z.r != 1:
        raise NotRingElement(f"{z} is not in Z[sqrt({z.d})]")
    return max(abs(z.m), abs(z.n))


def qn_conjugate(z: QuadNum) -> QuadNum:
    return z.conjugate()


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def common_denominator(values: Iterable[QuadNum]) -> int:
    return reduce(_lcm, (v.r for v in values), 1)


def ring_rescale(values: Sequence[QuadNum]) -> tuple[int, list[QuadNum]]:
    """Smallest positive integer clearing every denominator, and the scaled values."""
    if not values:
        raise ValueError("ring_rescale needs at least one value")
    d = values[0].d
    for v in values:
        if v.d != d:
            raise DiscriminantMismatch("values live in different fields")
    factor = common_denominator(values)
    return factor, [v * factor for v in values]

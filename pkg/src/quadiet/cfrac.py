"""Continued fractions of quadratic irrationals and the 2-IET Rauzy trace."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import groupby

from .errors import Connection, NotTwoIntervals
from .iet import IET
from .induction import rauzy_update
from .quadfield import QuadNum

__all__ = [
    "CFExpansion",
    "FiniteExpansion",
    "cf_expand",
    "cf_digits",
    "iet_ratio",
    "induction_trace",
    "trace_run_lengths",
]


@dataclass(frozen=True)
class CFExpansion:
    """Eventually periodic expansion ``[preperiod..., (period...)]``."""

    preperiod: tuple[int, ...]
    period: tuple[int, ...]

    def digits(self, count: int) -> list[int]:
        out = list(self.preperiod[:count])
        while len(out) < count:
            out.extend(self.period[: count - len(out)])
        return out

    def __str__(self) -> str:
        periodic = "(" + ", ".join(map(str, self.period)) + ")"
        if not self.preperiod:
            return f"[{periodic}]"
        head, *rest = self.preperiod
        return f"[{head}; " + ", ".join([*map(str, rest), periodic]) + "]"


@dataclass(frozen=True)
class FiniteExpansion:
    """Terminating expansion of a rational input."""

    terms: tuple[int, ...]

    def digits(self, count: int) -> list[int]:
        return list(self.terms[:count])

    def __str__(self) -> str:
        head, *rest = self.terms
        return f"[{head}]" if not rest else f"[{head}; " + ", ".join(map(str, rest)) + "]"


def cf_expand(x: QuadNum, max_terms: int = 10**5) -> CFExpansion | FiniteExpansion:
    """Exact expansion; the period is found when a complete quotient repeats."""
    if x.is_rational:
        q = Fraction(x.m, x.r)
        terms = []
        while True:
            a = q.numerator // q.denominator
            terms.append(a)
            q -= a
            if not q:
                return FiniteExpansion(tuple(terms))
            q = 1 / q
    seen: dict[QuadNum, int] = {}
    digits: list[int] = []
    while x not in seen:
        if len(digits) >= max_terms:
            raise RuntimeError(f"no period within {max_terms} terms")
        seen[x] = len(digits)
        a = x.floor()
        digits.append(a)
        x = 1 / (x - a)
    start = seen[x]
    return CFExpansion(tuple(digits[:start]), tuple(digits[start:]))


def cf_digits(x: QuadNum, count: int) -> list[int]:
    """First ``count`` partial quotients by plain floor-and-invert, no period detection."""
    out = []
    for _ in range(count):
        a = x.floor()
        out.append(a)
        x = x - a
        if not x:
            break
        x = 1 / x
    return out


def iet_ratio(T: IET) -> QuadNum:
    if T.s != 2:
        raise NotTwoIntervals(f"expected a 2-interval transformation, got {T.s}")
    return T.lengths[0] / T.lengths[1]


def induction_trace(T: IET, steps: int) -> str:
    """Which exchanged interval is cut at each right induction: ``L`` or ``R``."""
    if T.s != 2 or T.perm != (1, 0):
        raise NotTwoIntervals("the trace is defined for the 2-interval rotation")
    out = []
    for _ in range(steps):
        c = T.lengths[0].compare(T.lengths[1])
        if c == 0:
            raise Connection("equal lengths: the induction degenerates")
        out.append("L" if c > 0 else "R")
        T = rauzy_update(T, "right")
    return "".join(out)


def trace_run_lengths(trace: str) -> list[int]:
    """Run lengths, with a leading 0 when the first run cuts the right interval.

    This matches the convention ``a0 = floor(ratio)``: a ratio below 1 has
    ``a0 = 0`` and starts by cutting the right interval.
    """
    runs = [len(list(g)) for _, g in groupby(trace)]
    if trace.startswith("R"):
        runs.insert(0, 0)
    return runs

"""Semi-intervals ``[lo, hi[`` and finite unions of them.

An :class:`IntervalSet` is always kept in canonical form: parts sorted by
left endpoint, pairwise disjoint, and never adjacent (touching parts are
merged).  With that form the number of parts and the boundary are well
defined, and set equality is tuple equality.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import EmptyInterval, NotContained
from .quadfield import QuadNum

__all__ = ["SemiInterval", "IntervalSet", "GrowingUnion", "iset_algebra"]


@dataclass(frozen=True, slots=True, order=True)
class SemiInterval:
    lo: QuadNum
    hi: QuadNum

    def __post_init__(self):
        if not self.lo < self.hi:
            raise EmptyInterval(f"[{self.lo}, {self.hi}[ is empty")

    @property
    def length(self) -> QuadNum:
        return self.hi - self.lo

    def __contains__(self, z) -> bool:
        return self.lo <= z and z < self.hi

    def contains_open(self, z) -> bool:
        """Membership in the open interval ``]lo, hi[``."""
        return self.lo < z and z < self.hi

    def issubset(self, other: SemiInterval) -> bool:
        return other.lo <= self.lo and self.hi <= other.hi

    def shift(self, t) -> SemiInterval:
        return SemiInterval(self.lo + t, self.hi + t)

    def __str__(self) -> str:
        return f"[{self.lo}, {self.hi}["


def _normalize(parts: Iterable[tuple[QuadNum, QuadNum]]) -> tuple[SemiInterval, ...]:
    items = sorted((lo, hi) for lo, hi in parts if lo < hi)
    out: list[list[QuadNum]] = []
    for lo, hi in items:
        if out and lo <= out[-1][1]:
            if hi > out[-1][1]:
                out[-1][1] = hi
        else:
            out.append([lo, hi])
    return tuple(SemiInterval(lo, hi) for lo, hi in out)


class IntervalSet:
    """A finite union of semi-intervals in canonical form."""

    __slots__ = ("parts",)

    def __init__(self, parts: Iterable[SemiInterval | tuple] = ()):
        pairs = []
        for p in parts:
            if isinstance(p, SemiInterval):
                pairs.append((p.lo, p.hi))
            else:
                lo, hi = p
                pairs.append((lo, hi))
        object.__setattr__(self, "parts", _normalize(pairs))

    @classmethod
    def _canonical(cls, parts: tuple[SemiInterval, ...]) -> IntervalSet:
        obj = object.__new__(cls)
        object.__setattr__(obj, "parts", parts)
        return obj

    @classmethod
    def of(cls, lo, hi) -> IntervalSet:
        return cls._canonical((SemiInterval(lo, hi),))

    @classmethod
    def empty(cls) -> IntervalSet:
        return cls._canonical(())

    def __setattr__(self, name, value):
        raise AttributeError("IntervalSet is immutable")

    def __iter__(self) -> Iterator[SemiInterval]:
        return iter(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __bool__(self) -> bool:
        return bool(self.parts)

    def __eq__(self, other) -> bool:
        if isinstance(other, IntervalSet):
            return self.parts == other.parts
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.parts)

    def __repr__(self) -> str:
        return f"IntervalSet({' U '.join(map(str, self.parts)) or 'empty'})"

    def normalize(self) -> IntervalSet:
        return IntervalSet(self.parts)

    # -- queries ------------------------------------------------------------

    def measure(self):
        total = 0
        for p in self.parts:
            total = p.hi - p.lo + total
        return total

    def boundary(self) -> frozenset[QuadNum]:
        pts = set()
        for p in self.parts:
            pts.add(p.lo)
            pts.add(p.hi)
        return frozenset(pts)

    def __contains__(self, z) -> bool:
        parts = self.parts
        lo, hi = 0, len(parts)
        while lo < hi:
            mid = (lo + hi) // 2
            if parts[mid].lo <= z:
                lo = mid + 1
            else:
                hi = mid
        return lo > 0 and z < parts[lo - 1].hi

    def issubset(self, other: IntervalSet) -> bool:
        return not (self - other)

    # -- algebra ------------------------------------------------------------

    def union(self, other: IntervalSet) -> IntervalSet:
        return IntervalSet(self.parts + other.parts)

    def intersect(self, other: IntervalSet) -> IntervalSet:
        a, b = self.parts, other.parts
        i = j = 0
        out = []
        while i < len(a) and j < len(b):
            lo = max(a[i].lo, b[j].lo)
            hi = min(a[i].hi, b[j].hi)
            if lo < hi:
                out.append(SemiInterval(lo, hi))
            if a[i].hi < b[j].hi:
                i += 1
            else:
                j += 1
        return IntervalSet._canonical(tuple(out))

    def subtract(self, other: IntervalSet) -> IntervalSet:
        out = []
        b = other.parts
        j = 0
        for p in self.parts:
            lo = p.lo
            while j < len(b) and b[j].hi <= lo:
                j += 1
            k = j
            while k < len(b) and b[k].lo < p.hi:
                if b[k].lo > lo:
                    out.append(SemiInterval(lo, b[k].lo))
                if b[k].hi > lo:
                    lo = b[k].hi
                if lo >= p.hi:
                    break
                k += 1
            if lo < p.hi:
                out.append(SemiInterval(lo, p.hi))
        return IntervalSet._canonical(tuple(out))

    def complement_in(self, ambient: SemiInterval) -> IntervalSet:
        amb = IntervalSet._canonical((ambient,))
        if not self.issubset(amb):
            raise NotContained(f"{self!r} is not contained in {ambient}")
        return amb.subtract(self)

    __or__ = union
    __and__ = intersect
    __sub__ = subtract

    def translate(self, t) -> IntervalSet:
        return IntervalSet._canonical(tuple(p.shift(t) for p in self.parts))


def iset_algebra(op: str, a: IntervalSet, b) -> IntervalSet:
    if op == "union":
        return a.union(b)
    if op == "intersect":
        return a.intersect(b)
    if op == "subtract":
        return a.subtract(b)
    if op == "complement_in":
        return a.complement_in(b)
    raise ValueError(f"unknown operation {op!r}")


class GrowingUnion:
    """Mutable union of semi-intervals supporting fast insert and containment.

    Used by return-time scans, where one image is added per step and the
    full canonical rebuild of :class:`IntervalSet` would be quadratic.
    """

    def __init__(self):
        self._lo: list[QuadNum] = []
        self._hi: list[QuadNum] = []

    def __len__(self) -> int:
        return len(self._lo)

    def add(self, lo: QuadNum, hi: QuadNum) -> None:
        los, his = self._lo, self._hi
        i = bisect_right(los, lo)
        # merge with the part on the left if touching
        if i > 0 and his[i - 1] >= lo:
            i -= 1
            lo = los[i]
            if his[i] > hi:
                hi = his[i]
        j = i
        while j < len(los) and los[j] <= hi:
            if his[j] > hi:
                hi = his[j]
            j += 1
        los[i:j] = [lo]
        his[i:j] = [hi]

    def covers(self, lo: QuadNum, hi: QuadNum) -> bool:
        i = bisect_right(self._lo, lo)
        return i > 0 and self._hi[i - 1] >= hi

    def to_set(self) -> IntervalSet:
        return IntervalSet._canonical(
            tuple(SemiInterval(lo, hi) for lo, hi in zip(self._lo, self._hi))
        )

"""Interval exchange transformations with exact quadratic lengths.

Permutations are position based and stored 0-based: the interval at domain
position ``i`` is translated onto image position ``perm[i]``.  The text and
JSON front ends use the familiar 1-based one-line notation (``"2 1"`` is the
swap).
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .errors import (
    DiscriminantMismatch,
    NonBijectivePermutation,
    NonPositiveLength,
    OutOfDomain,
    StepCapExceeded,
)
from .intervalset import IntervalSet, SemiInterval
from .quadfield import QuadNum

__all__ = [
    "IET",
    "ConnectionWitness",
    "STEP_CAP",
    "iet_build",
    "iet_apply",
    "iet_inverse",
    "iet_separation_points",
    "iet_find_connection",
    "iet_rho_point",
    "iet_neighbors",
    "iet_div_points",
    "iet_is_admissible",
    "iet_dmn",
    "iet_families",
]

STEP_CAP = 10**6


def _as_quad(x, d: int) -> QuadNum:
    if isinstance(x, QuadNum):
        if x.d != d:
            raise DiscriminantMismatch(f"value {x} is not in Q(sqrt({d}))")
        return x
    return QuadNum.from_int(int(x), d)


class IET:
    """An s-interval exchange transformation ``T_{perm, lengths}`` on ``[left, right[``."""

    __slots__ = (
        "perm", "lengths", "left", "right", "d", "gammas", "deltas", "alphas",
        "_inv_perm", "_gamma_index",
    )

    def __init__(self, perm: Sequence[int], lengths: Sequence, left=0, d: int | None = None):
        perm = tuple(int(p) for p in perm)
        s = len(perm)
        if s == 0 or sorted(perm) != list(range(s)):
            raise NonBijectivePermutation(f"{perm} is not a permutation of 0..{s - 1}")
        if len(lengths) != s:
            raise ValueError(f"{s} positions but {len(lengths)} lengths")
        if d is None:
            d = next((x.d for x in (*lengths, left) if isinstance(x, QuadNum)), 2)
        lengths = tuple(_as_quad(x, d) for x in lengths)
        left = _as_quad(left, d)
        for lam in lengths:
            if lam.sign() <= 0:
                raise NonPositiveLength(f"length {lam} is not positive")

        inv = [0] * s
        for i, p in enumerate(perm):
            inv[p] = i
        gammas = []
        acc = left
        for lam in lengths:
            gammas.append(acc)
            acc = acc + lam
        right = acc
        # deltas indexed by image position
        deltas = []
        acc = left
        for j in range(s):
            deltas.append(acc)
            acc = acc + lengths[inv[j]]
        alphas = tuple(deltas[perm[i]] - gammas[i] for i in range(s))

        sa = object.__setattr__
        sa(self, "perm", perm)
        sa(self, "lengths", lengths)
        sa(self, "left", left)
        sa(self, "right", right)
        sa(self, "d", d)
        sa(self, "gammas", tuple(gammas))
        sa(self, "deltas", tuple(deltas))
        sa(self, "alphas", alphas)
        sa(self, "_inv_perm", tuple(inv))
        sa(self, "_gamma_index", {g: i for i, g in enumerate(gammas)})
        self._check_partition()

    def __setattr__(self, name, value):
        raise AttributeError("IET is immutable")

    def _check_partition(self) -> None:
        images = IntervalSet(
            SemiInterval(self.deltas[self.perm[i]], self.deltas[self.perm[i]] + self.lengths[i])
            for i in range(self.s)
        )
        assert images == IntervalSet.of(self.left, self.right), "images do not tile the domain"

    # -- basic data ------------------------------------------------------------

    @property
    def s(self) -> int:
        return len(self.perm)

    @property
    def inv_perm(self) -> tuple[int, ...]:
        return self._inv_perm

    @property
    def domain(self) -> SemiInterval:
        return SemiInterval(self.left, self.right)

    @property
    def total_length(self) -> QuadNum:
        return self.right - self.left

    def interval(self, i: int) -> SemiInterval:
        """Exchanged interval I at domain position ``i``."""
        return SemiInterval(self.gammas[i], self.gammas[i] + self.lengths[i])

    def image_interval(self, i: int) -> SemiInterval:
        """Image J of the interval at domain position ``i``."""
        lo = self.deltas[self.perm[i]]
        return SemiInterval(lo, lo + self.lengths[i])

    def separation_points(self) -> tuple[QuadNum, ...]:
        return self.gammas

    def is_separation_point(self, z: QuadNum) -> bool:
        return z in self._gamma_index

    def __eq__(self, other) -> bool:
        if isinstance(other, IET):
            return (self.perm, self.lengths, self.left) == (other.perm, other.lengths, other.left)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.perm, self.lengths, self.left))

    def __repr__(self) -> str:
        perm = " ".join(str(p + 1) for p in self.perm)
        lens = ", ".join(map(str, self.lengths))
        return f"IET(perm=[{perm}], lengths=({lens}), left={self.left})"

    # -- evaluation ------------------------------------------------------------

    def locate(self, z: QuadNum) -> int:
        """Domain position of the interval containing ``z``."""
        i = bisect_right(self.gammas, z) - 1
        if i < 0 or not z < self.right:
            raise OutOfDomain(f"{z} is outside [{self.left}, {self.right}[")
        return i

    def locate_image(self, z: QuadNum) -> int:
        """Domain position of the interval whose image contains ``z``."""
        j = bisect_right(self.deltas, z) - 1
        if j < 0 or not z < self.right:
            raise OutOfDomain(f"{z} is outside [{self.left}, {self.right}[")
        return self._inv_perm[j]

    def __call__(self, z: QuadNum) -> QuadNum:
        return z + self.alphas[self.locate(z)]

    def inv(self, z: QuadNum) -> QuadNum:
        return z - self.alphas[self.locate_image(z)]

    def apply(self, z: QuadNum, n: int = 1) -> QuadNum:
        """``T^n(z)``; negative ``n`` iterates the inverse."""
        step = self.__call__ if n >= 0 else self.inv
        for _ in range(abs(n)):
            z = step(z)
        return z

    def orbit(self, z: QuadNum, n: int) -> list[QuadNum]:
        """``[z, T(z), ..., T^n(z)]`` (backwards when ``n < 0``)."""
        step = self.__call__ if n >= 0 else self.inv
        out = [z]
        for _ in range(abs(n)):
            z = step(z)
            out.append(z)
        return out

    # -- derived transformations -------------------------------------------------

    def inverse(self) -> IET:
        inv = self._inv_perm
        return IET(inv, [self.lengths[inv[j]] for j in range(self.s)], self.left, self.d)

    def reverse(self) -> IET:
        """Conjugate by the reflection ``x -> left + right - x``."""
        s = self.s
        perm = [0] * s
        for i, p in enumerate(self.perm):
            perm[s - 1 - i] = s - 1 - p
        return IET(perm, self.lengths[::-1], self.left, self.d)

    def scale(self, c) -> IET:
        """Rescale lengths and the left endpoint by ``c > 0``."""
        return IET(self.perm, [lam * c for lam in self.lengths], self.left * c, self.d)

    def translate(self, t) -> IET:
        return IET(self.perm, self.lengths, self.left + t, self.d)

    def at_origin(self) -> IET:
        return self if not self.left else IET(self.perm, self.lengths, 0, self.d)

    # -- images of sets ------------------------------------------------------------

    def image_set(self, S: IntervalSet, inverse: bool = False) -> IntervalSet:
        return IntervalSet(self.image_pieces(S.parts, inverse))

    def image_pieces(self, parts: Iterable[SemiInterval], inverse: bool = False) -> list[tuple]:
        """Images of the given parts as (lo, hi) pairs, split at the breakpoints."""
        out = []
        for p in parts:
            for lo, hi, shift in self.split(p.lo, p.hi, inverse):
                out.append((lo + shift, hi + shift))
        return out

    def split(self, lo: QuadNum, hi: QuadNum, inverse: bool = False) -> list[tuple]:
        """Cut ``[lo, hi[`` where T (or T^-1) is discontinuous.

        Returns ``(x, y, shift)`` triples: the map translates ``[x, y[`` by ``shift``.
        """
        cuts = self.deltas if inverse else self.gammas
        k = bisect_right(cuts, lo) - 1
        if k < 0 or self.right < hi:
            raise OutOfDomain(f"[{lo}, {hi}[ is not inside {self.domain}")
        out = []
        while lo < hi:
            nxt = cuts[k + 1] if k + 1 < len(cuts) else self.right
            top = hi if hi < nxt else nxt
            shift = -self.alphas[self._inv_perm[k]] if inverse else self.alphas[k]
            out.append((lo, top, shift))
            lo = top
            k += 1
        return out


@dataclass(frozen=True)
class ConnectionWitness:
    """``T^k(gamma_i) == gamma_j`` with positions reported 1-based."""

    i: int
    j: int
    k: int

    def describe(self) -> str:
        sub = str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉")
        power = "T" if self.k == 1 else f"T^{self.k}"
        return f"{power}(γ{str(self.i).translate(sub)}) = γ{str(self.j).translate(sub)}"


# -- functional surface -------------------------------------------------------


def iet_build(perm: Sequence[int], lengths: Sequence, left=0) -> IET:
    return IET(perm, lengths, left)


def iet_apply(T: IET, z: QuadNum, direction: str = "fwd", n: int = 1) -> QuadNum:
    if not (T.left <= z and z < T.right):
        raise OutOfDomain(f"{z} is outside [{T.left}, {T.right}[")
    return T.apply(z, n if direction == "fwd" else -n)


def iet_inverse(T: IET) -> IET:
    return T.inverse()


def iet_separation_points(T: IET) -> tuple[QuadNum, ...]:
    return T.gammas


def iet_find_connection(T: IET, depth: int) -> ConnectionWitness | None:
    """Search forward orbits of the nonzero separation points for a coincidence.

    Returns the witness with the smallest power ``k <= depth``; ``None`` only
    means no connection exists up to that depth.
    """
    targets = {g: j for j, g in enumerate(T.gammas) if j >= 1}
    points = {i: T.gammas[i] for i in range(1, T.s)}
    for k in range(1, depth + 1):
        for i in points:
            z = T(points[i])
            points[i] = z
            j = targets.get(z)
            if j is not None:
                return ConnectionWitness(i + 1, j + 1, k)
    return None


def iet_rho_point(T: IET, I: SemiInterval, z: QuadNum, sign: str, cap: int = STEP_CAP) -> int:
    """First ``n`` (``n > 0`` forwards, ``n >= 0`` backwards) with ``T^{+-n}(z)`` in ``]u, v[``."""
    u, v = I.lo, I.hi
    if sign == "plus":
        n = 0
        while True:
            z = T(z)
            n += 1
            if u < z and z < v:
                return n
            if n >= cap:
                raise StepCapExceeded(f"no forward return to {I} within {cap} steps")
    n = 0
    while not (u < z and z < v):
        z = T.inv(z)
        n += 1
        if n > cap:
            raise StepCapExceeded(f"no backward return to {I} within {cap} steps")
    return n


def iet_neighbors(T: IET, I: SemiInterval, z: QuadNum, cap: int = STEP_CAP) -> frozenset[QuadNum]:
    """The orbit segment ``{T^k(z) : -rho_minus <= k < rho_plus}``."""
    u, v = I.lo, I.hi
    pts = [z]
    w = z
    n = 0
    while not (u < w and w < v):
        w = T.inv(w)
        pts.append(w)
        n += 1
        if n > cap:
            raise StepCapExceeded(f"no backward return to {I} within {cap} steps")
    w = T(z)
    n = 1
    while not (u < w and w < v):
        pts.append(w)
        w = T(w)
        n += 1
        if n > cap:
            raise StepCapExceeded(f"no forward return to {I} within {cap} steps")
    return frozenset(pts)


def iet_div_points(T: IET, I: SemiInterval, cap: int = STEP_CAP) -> tuple[QuadNum, ...]:
    pts: set[QuadNum] = set()
    for g in T.gammas:
        pts |= iet_neighbors(T, I, g, cap)
    return tuple(sorted(pts))


def iet_is_admissible(T: IET, I: SemiInterval, cap: int = STEP_CAP) -> bool:
    if not I.issubset(T.domain):
        raise OutOfDomain(f"{I} is not inside {T.domain}")
    allowed = set(iet_div_points(T, I, cap))
    allowed.add(T.right)
    return I.lo in allowed and I.hi in allowed


def iet_dmn(T: IET, m: int, n: int | None = None) -> tuple[QuadNum, ...]:
    """Points ``T^i(Sep T)`` for ``1 - m <= i <= n``.

    With ``n`` omitted this is the one-sided family ``T^{-i}(Sep T)``,
    ``0 <= i < m`` (empty for ``m == 0``).
    """
    if m < 0 or (n is not None and n < 0):
        raise ValueError("m and n must be non-negative")
    if n is None:
        n = 0
    pts: set[QuadNum] = set()
    for g in T.gammas:
        if m > 0:
            z = g
            pts.add(z)
            for _ in range(m - 1):
                z = T.inv(z)
                pts.add(z)
        z = g
        for _ in range(n):
            z = T(z)
            pts.add(z)
    return tuple(sorted(pts))


def iet_families(T: IET, m: int, n: int, kind: str) -> list[SemiInterval]:
    """``U`` (cells cut out by the points) or ``V`` (all point pairs) families."""
    pts = sorted(set(iet_dmn(T, m, n)) | {T.left, T.right})
    if kind == "U":
        return [SemiInterval(a, b) for a, b in zip(pts, pts[1:])]
    if kind == "V":
        return [SemiInterval(a, b) for a, b in combinations(pts, 2)]
    raise ValueError(f"unknown family {kind!r}")

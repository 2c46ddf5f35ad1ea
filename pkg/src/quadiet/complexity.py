"""Arithmetic complexity of interval sets and return-time statistics.

All quantities here are measured on a *ring-normalized* transformation,
rescaled by the smallest integer that puts every boundary datum into
``Z[sqrt(d)]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import NotRingElement, StepCapExceeded
from .iet import IET, STEP_CAP
from .induction import Word, admissible_domains
from .intervalset import GrowingUnion, IntervalSet, SemiInterval
from .quadfield import QuadNum, common_denominator, qn_psi

__all__ = [
    "RingNormalizedIET",
    "ReturnTimes",
    "SurveyRow",
    "Survey",
    "ring_normalize",
    "psi_set",
    "pi_reduced",
    "u_constant",
    "return_times",
    "covering_check",
    "orbit_gap_check",
    "gap_constant_holds",
    "orbit_witness",
    "pi_survey",
    "survey_tsv",
]


@dataclass(frozen=True)
class RingNormalizedIET:
    base: IET
    factor: int

    @property
    def d(self) -> int:
        return self.base.d


def ring_normalize(T: IET) -> RingNormalizedIET:
    data = (*T.gammas, *T.deltas, *T.alphas, T.left, T.right)
    factor = common_denominator(data)
    base = T if factor == 1 else T.scale(factor)
    return RingNormalizedIET(base, factor)


def _base(T) -> IET:
    return T.base if isinstance(T, RingNormalizedIET) else T


def psi_set(T, S: IntervalSet | SemiInterval) -> int:
    """Largest height among the boundary points of ``S``."""
    if isinstance(S, SemiInterval):
        S = IntervalSet([S])
    pts = S.boundary()
    if not pts:
        raise ValueError("complexity of the empty set is undefined")
    return max(qn_psi(z) for z in pts)


def pi_reduced(T, S: IntervalSet | SemiInterval) -> QuadNum:
    if isinstance(S, SemiInterval):
        S = IntervalSet([S])
    return S.measure() * psi_set(T, S)


def u_constant(T) -> int:
    """Explicit bound on the height of every translation and boundary datum."""
    B = _base(T)
    data = (*B.alphas, *B.gammas, *B.deltas, B.right)
    for z in data:
        if z.r != 1:
            raise NotRingElement(f"{z} is not in Z[sqrt({z.d})]; ring_normalize first")
    return max(max(abs(z.m), abs(z.n)) for z in data)


@dataclass(frozen=True)
class ReturnTimes:
    rho_plus: int
    rho_minus: int
    sigma_plus: int
    sigma_minus: int


def _step_pieces(T: IET, pieces: list[tuple], inverse: bool) -> list[tuple]:
    out = []
    for lo, hi in pieces:
        for x, y, t in T.split(lo, hi, inverse):
            out.append((x + t, y + t))
    out.sort()
    merged = []
    for lo, hi in out:
        if merged and merged[-1][1] == lo:
            merged[-1] = (merged[-1][0], hi)
        else:
            merged.append((lo, hi))
    return merged


def _one_side(T: IET, S: IntervalSet, inverse: bool, cap: int) -> tuple[int, int, GrowingUnion]:
    union = GrowingUnion()
    current = [(p.lo, p.hi) for p in S]
    sigma = rho = None
    n = 0
    while rho is None:
        for lo, hi in current:
            union.add(lo, hi)
        n += 1
        if n > cap:
            raise StepCapExceeded(f"return time of {S!r} exceeds {cap}")
        current = _step_pieces(T, current, inverse)
        if sigma is None and any(S.intersect(IntervalSet.of(lo, hi)) for lo, hi in current):
            sigma = n
        if all(union.covers(lo, hi) for lo, hi in current):
            rho = n
    return rho, sigma, union


def return_times(T, S: IntervalSet | SemiInterval, cap: int = STEP_CAP) -> ReturnTimes:
    """Maximal (rho) and minimal (sigma) forward/backward return times of ``S``.

    ``rho+`` is the first ``n`` with ``T^n(S)`` inside the union of the earlier
    images; ``sigma+`` the first ``n`` with ``T^n(S)`` meeting ``S``.  The minus
    versions use ``T^-1``.
    """
    B = _base(T)
    if isinstance(S, SemiInterval):
        S = IntervalSet([S])
    if not S:
        raise ValueError("return times of the empty set are undefined")
    rp, sp, _ = _one_side(B, S, False, cap)
    rm, sm, _ = _one_side(B, S, True, cap)
    return ReturnTimes(rp, rm, sp, sm)


def covering_check(T, S: IntervalSet | SemiInterval, cap: int = STEP_CAP) -> bool:
    """True iff the first rho+ forward images and first rho- backward images each tile the domain."""
    B = _base(T)
    if isinstance(S, SemiInterval):
        S = IntervalSet([S])
    full = IntervalSet.of(B.left, B.right)
    for inverse in (False, True):
        _, _, union = _one_side(B, S, inverse, cap)
        if union.to_set() != full:
            return False
    return True


def gap_constant_holds(d: int, u: int, n: int, gap: QuadNum) -> bool:
    """Exact test of ``|gap| > c / n`` with ``c = 1 / (2 sqrt(d) u)``."""
    return (abs(gap) * (2 * u * n)) * QuadNum.sqrt_d(d) > 1


def orbit_gap_check(T: RingNormalizedIET, z: QuadNum, N: int) -> bool:
    """Either ``T^n(z) == z`` or ``|T^n(z) - z| > c/n`` for every ``1 <= n <= N``."""
    B = _base(T)
    if z.r != 1:
        raise NotRingElement(f"{z} is not in Z[sqrt({z.d})]")
    u = u_constant(B)
    w = z
    for n in range(1, N + 1):
        w = B(w)
        gap = w - z
        if gap and not gap_constant_holds(B.d, u, n, gap):
            return False
    return True


def orbit_witness(T, z: QuadNum, cap: int = STEP_CAP) -> tuple[int, int]:
    """Smallest ``|k|`` with ``z = T^k(gamma_i)``: returns ``(i, k)`` (``i`` 0-based).

    Forward and backward orbits of all separation points are advanced in
    lockstep, preferring ``k >= 0`` on ties.
    """
    B = _base(T)
    fwd = list(B.gammas)
    bwd = list(B.gammas)
    for i, g in enumerate(B.gammas):
        if g == z:
            return i, 0
    for k in range(1, cap + 1):
        for i in range(B.s):
            fwd[i] = B(fwd[i])
            if fwd[i] == z:
                return i, k
        for i in range(B.s):
            bwd[i] = B.inv(bwd[i])
            if bwd[i] == z:
                return i, -k
    raise StepCapExceeded(f"{z} not on a separation orbit within {cap} steps")


def _avoids(T: IET, g: QuadNum, k: int, J: SemiInterval) -> bool:
    # orbit points strictly between gamma and T^k(gamma) stay outside ]t, w[
    if k > 0:
        z = g
        for _ in range(k - 1):
            z = T(z)
            if J.contains_open(z):
                return False
        return True
    z = g
    for _ in range(-k):
        if J.contains_open(z):
            return False
        z = T.inv(z)
    return True


def endpoint_witnesses(T, J: SemiInterval, cap: int = STEP_CAP) -> list[tuple[QuadNum, int, int, bool]]:
    """For each endpoint of ``J`` other than the right end of the domain:
    ``(endpoint, gamma position, k, avoidance holds)``."""
    B = _base(T)
    out = []
    for e in (J.lo, J.hi):
        if e == B.right:
            continue
        i, k = orbit_witness(B, e, cap)
        out.append((e, i, k, _avoids(B, B.gammas[i], k, J)))
    return out


@dataclass(frozen=True)
class SurveyRow:
    word: Word
    domain: SemiInterval
    length: QuadNum
    psi: int
    pi: QuadNum
    times: ReturnTimes

    @property
    def word_text(self) -> str:
        return ".".join(self.word) if self.word else "ε"


@dataclass(frozen=True)
class Survey:
    normalized: RingNormalizedIET
    rows: tuple[SurveyRow, ...]

    def _extremes(self, values: Iterable[QuadNum]) -> tuple[QuadNum, QuadNum]:
        vals = list(values)
        return min(vals), max(vals)

    @property
    def pi_range(self) -> tuple[QuadNum, QuadNum]:
        return self._extremes(r.pi for r in self.rows)

    def ratio_range(self, name: str) -> tuple[QuadNum, QuadNum]:
        """Range of ``return_time * |J|`` for one of the four return times."""
        return self._extremes(getattr(r.times, name) * r.length for r in self.rows)


def pi_survey(T: IET, max_word_len: int = 10, cap: int = STEP_CAP) -> Survey:
    N = ring_normalize(T)
    B = N.base
    rows = []
    for dom, (word, _) in admissible_domains(B, max_word_len, cap).items():
        S = IntervalSet([dom])
        psi = psi_set(N, S)
        rows.append(SurveyRow(word, dom, dom.length, psi, dom.length * psi, return_times(N, S, cap)))
    rows.sort(key=lambda r: r.word)
    return Survey(N, tuple(rows))


SURVEY_COLUMNS = ("word", "domain", "length", "psi", "pi", "rho_plus", "rho_minus", "sigma_plus", "sigma_minus")


def survey_tsv(survey: Survey) -> str:
    lines = ["\t".join(SURVEY_COLUMNS)]
    for r in survey.rows:
        t = r.times
        lines.append("\t".join([
            r.word_text, str(r.domain), str(r.length), str(r.psi), str(r.pi),
            str(t.rho_plus), str(t.rho_minus), str(t.sigma_plus), str(t.sigma_minus),
        ]))
    return "\n".join(lines) + "\n"

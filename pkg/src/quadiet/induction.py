"""First-return maps and the right/left Rauzy inductions.

Each Rauzy step is computed twice: by the one-step combinatorial update in
:func:`rauzy_update` and by the generic first-return construction in
:func:`induce`.  :func:`rauzy_step` insists that both agree exactly.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import Connection, EmptyInterval, InternalMismatch, OutOfDomain, StepCapExceeded
from .iet import IET, STEP_CAP
from .intervalset import SemiInterval

__all__ = [
    "PSI",
    "PHI",
    "InducedResult",
    "parse_word",
    "z_domain",
    "y_domain",
    "induce",
    "rauzy_update",
    "rauzy_step",
    "apply_word",
    "enumerate_admissible",
    "admissible_domains",
]

log = logging.getLogger(__name__)

PSI = "psi"
PHI = "phi"

Word = tuple[str, ...]


def parse_word(text: str | Iterable[str]) -> Word:
    """Parse ``"psi phi psi"``, ``"psi,phi"`` or ``"psiphi"`` into a word."""
    if not isinstance(text, str):
        letters = tuple(text)
    else:
        compact = re.sub(r"[\s,.*]+", "", text.lower())
        if not re.fullmatch(r"(?:psi|phi)*", compact):
            raise ValueError(f"word {text!r} is not over {{psi, phi}}")
        letters = tuple(re.findall(r"psi|phi", compact))
    for c in letters:
        if c not in (PSI, PHI):
            raise ValueError(f"unknown letter {c!r}")
    return letters


@dataclass(frozen=True)
class InducedResult:
    transform: IET
    domain: SemiInterval
    exponents: tuple[int, ...]

    @property
    def return_exponents(self) -> dict[SemiInterval, int]:
        T = self.transform
        return {T.interval(i): n for i, n in enumerate(self.exponents)}


def z_domain(T: IET) -> SemiInterval:
    if T.s < 2:
        raise Connection("Rauzy induction needs at least two intervals")
    g, dl = T.gammas[-1], T.deltas[-1]
    c = g.compare(dl)
    if c == 0:
        raise Connection(f"gamma_s = delta_s = {g}")
    return SemiInterval(T.left, g if c > 0 else dl)


def y_domain(T: IET) -> SemiInterval:
    if T.s < 2:
        raise Connection("Rauzy induction needs at least two intervals")
    g, dl = T.gammas[1], T.deltas[1]
    c = g.compare(dl)
    if c == 0:
        raise Connection(f"gamma_2 = delta_2 = {g}")
    return SemiInterval(g if c < 0 else dl, T.right)


def _first_return_pieces(T: IET, u, v, cap: int) -> list[tuple]:
    """(origin_lo, origin_hi, shift, exponent) for the first return to [u, v[."""
    done = []
    # (origin lo, origin hi, accumulated shift)
    active = [(u, v, 0)]
    n = 0
    while active:
        n += 1
        if n > cap:
            raise StepCapExceeded(f"first return to [{u}, {v}[ exceeds {cap} steps")
        moved = []
        for a, b, t in active:
            for x, y, alpha in T.split(a + t, b + t):
                moved.append((x - t, y - t, t + alpha))
        active = []
        for a, b, t in moved:
            lo, hi = a + t, b + t
            # split the image at u and v
            cuts = [lo]
            if lo < u and u < hi:
                cuts.append(u)
            if lo < v and v < hi:
                cuts.append(v)
            cuts.append(hi)
            for x, y in zip(cuts, cuts[1:]):
                if u <= x and y <= v:
                    done.append((x - t, y - t, t, n))
                else:
                    active.append((x - t, y - t, t))
    return done


def induce(T: IET, I: SemiInterval | tuple, cap: int = STEP_CAP) -> InducedResult:
    """The transformation induced by ``T`` on ``I`` by direct first-return tracking."""
    u, v = (I.lo, I.hi) if isinstance(I, SemiInterval) else I
    if not u < v:
        raise EmptyInterval(f"[{u}, {v}[ is empty")
    if u < T.left or T.right < v:
        raise OutOfDomain(f"[{u}, {v}[ is not inside {T.domain}")
    pieces = sorted(_first_return_pieces(T, u, v, cap), key=lambda p: p[0])

    # no merging of equal-translation neighbours: every cut is an orbit hitting a
    # separation point or an endpoint of I, and the partition is part of the IET
    merged = pieces
    images = sorted(range(len(merged)), key=lambda k: merged[k][0] + merged[k][2])
    perm = [0] * len(merged)
    for j, k in enumerate(images):
        perm[k] = j
    S = IET(perm, [b - a for a, b, _, _ in merged], u, T.d)
    for k, (a, _, t, _) in enumerate(merged):
        if S.alphas[k] != t:
            raise InternalMismatch("first-return images do not tile the induced domain")
    return InducedResult(S, SemiInterval(u, v), tuple(p[3] for p in merged))


def _right_update(T: IET) -> IET:
    s = T.s
    last = s - 1
    j = T.inv_perm[last]
    g, dl = T.gammas[last], T.deltas[last]
    c = g.compare(dl)
    if c == 0:
        raise Connection(f"gamma_s = delta_s = {g}")
    perm = list(T.perm)
    lengths = list(T.lengths)
    if c < 0:
        # the last domain interval is longer: it absorbs the interval mapped last
        p = perm[last]
        for i in range(s):
            if i != last and i != j and perm[i] > p:
                perm[i] += 1
        perm[j] = p + 1
        lengths[last] = lengths[last] - lengths[j]
    else:
        # the interval mapped last is longer: the last interval's preimage is split off
        lengths[j] = lengths[j] - lengths[last]
        moved_perm, moved_len = perm.pop(), lengths.pop()
        perm.insert(j + 1, moved_perm)
        lengths.insert(j + 1, moved_len)
    return IET(perm, lengths, T.left, T.d)


def rauzy_update(T: IET, side: str) -> IET:
    """One-step combinatorial Rauzy update (``side`` is ``"right"`` or ``"left"``)."""
    if T.s < 2:
        raise Connection("Rauzy induction needs at least two intervals")
    if side == "right":
        return _right_update(T)
    if side == "left":
        R = _right_update(T.reverse())
        return R.reverse().translate(T.right - R.right)
    raise ValueError(f"unknown side {side!r}")


def rauzy_step(T: IET, side: str, cap: int = STEP_CAP) -> InducedResult:
    """``psi(T)`` (``side="right"``) or ``phi(T)`` (``side="left"``), cross-checked."""
    if side in (PSI, "right"):
        side, dom = "right", z_domain(T)
    elif side in (PHI, "left"):
        side, dom = "left", y_domain(T)
    else:
        raise ValueError(f"unknown side {side!r}")
    fast = rauzy_update(T, side)
    slow = induce(T, dom, cap)
    if fast != slow.transform:
        raise InternalMismatch(f"{side} step: update gave {fast!r}, first return gave {slow.transform!r}")
    return slow


def _compose_exponents(prev: InducedResult, step: InducedResult) -> tuple[int, ...]:
    # exponent w.r.t. the original map = sum of prev exponents along the step's return path
    S = prev.transform
    out = []
    for i, k in enumerate(step.exponents):
        z = step.transform.gammas[i]
        total = 0
        for _ in range(k):
            total += prev.exponents[S.locate(z)]
            z = S(z)
        out.append(total)
    return tuple(out)


def identity_result(T: IET) -> InducedResult:
    return InducedResult(T, T.domain, (1,) * T.s)


def apply_word(T: IET, word: Sequence[str] | str, cap: int = STEP_CAP) -> InducedResult:
    """Apply the letters of ``word`` left to right.

    The domain stays in the coordinates of ``T`` and the exponents are first
    return powers of ``T`` itself.
    """
    result = identity_result(T)
    for letter in parse_word(word):
        step = rauzy_step(result.transform, letter, cap)
        result = InducedResult(step.transform, step.domain, _compose_exponents(result, step))
    return result


def admissible_domains(
    T: IET, max_len: int, cap: int = STEP_CAP
) -> dict[SemiInterval, tuple[Word, InducedResult]]:
    """Breadth-first map from each reachable domain to its first word and induced result.

    Words are explored shortest first and, within a length, psi before phi;
    a domain reached again by a later word is not expanded twice.
    """
    found: dict[SemiInterval, tuple[Word, InducedResult]] = {T.domain: ((), identity_result(T))}
    frontier = [T.domain]
    for _ in range(max_len):
        nxt = []
        for dom in frontier:
            word, res = found[dom]
            for letter in (PSI, PHI):
                try:
                    step = rauzy_step(res.transform, letter, cap)
                except Connection as exc:
                    log.warning("skipping %s: %s", " ".join(word + (letter,)), exc)
                    continue
                if step.domain in found:
                    continue
                found[step.domain] = (
                    word + (letter,),
                    InducedResult(step.transform, step.domain, _compose_exponents(res, step)),
                )
                nxt.append(step.domain)
        frontier = nxt
    return found


def enumerate_admissible(T: IET, max_len: int, cap: int = STEP_CAP) -> set[SemiInterval]:
    return set(admissible_domains(T, max_len, cap))

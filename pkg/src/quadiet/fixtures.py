"""Reference transformations used by the examples and the test-suite."""

from __future__ import annotations

from .iet import IET
from .quadfield import QuadNum

__all__ = ["golden", "sqrt2_rotation", "sqrt3_rotation", "keane", "reversal3", "ALL_REGULAR"]


def golden_alpha() -> QuadNum:
    return (3 - QuadNum.sqrt_d(5)) / 2


def golden() -> IET:
    """Swap of ``(1 - a, a)`` with ``a = (3 - sqrt 5)/2``; its graph is a single loop."""
    a = golden_alpha()
    return IET([1, 0], [1 - a, a])


def sqrt2_rotation() -> IET:
    b = 2 - QuadNum.sqrt_d(2)
    return IET([1, 0], [b, 1 - b])


def sqrt3_rotation() -> IET:
    g = (3 - QuadNum.sqrt_d(3)) / 2
    return IET([1, 0], [g, 1 - g])


def keane() -> IET:
    """Cyclic 3-IET on ``(1 - 2a, a, a)``: a rotation in disguise, with T(gamma_2) = gamma_3."""
    a = golden_alpha()
    return IET([1, 2, 0], [1 - 2 * a, a, a])


def reversal3() -> IET:
    """Order-reversing 3-IET over Q(sqrt 2) with no short connection."""
    r = QuadNum.sqrt_d(2)
    return IET([2, 1, 0], [QuadNum.from_int(1, 2), r, (1 + r) / 3])


ALL_REGULAR = {
    "golden": golden,
    "sqrt2": sqrt2_rotation,
    "sqrt3": sqrt3_rotation,
    "reversal3": reversal3,
}

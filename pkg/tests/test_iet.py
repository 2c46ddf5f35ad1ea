from __future__ import annotations

from math import comb

import pytest
from hypothesis import assume, given, strategies as st

from quadiet.errors import NonBijectivePermutation, NonPositiveLength, OutOfDomain, StepCapExceeded
from quadiet.fixtures import golden, golden_alpha, keane
from quadiet.iet import (
    IET,
    iet_apply,
    iet_div_points,
    iet_dmn,
    iet_families,
    iet_find_connection,
    iet_inverse,
    iet_is_admissible,
    iet_neighbors,
    iet_rho_point,
    iet_separation_points,
)
from quadiet.intervalset import IntervalSet, SemiInterval
from quadiet.quadfield import QuadNum

from strategies import no_short_connection, quadratic_iets

A = golden_alpha()
S5 = QuadNum.sqrt_d(5)


def test_rotation_translations():
    T = golden()
    assert T.alphas == (A, -(1 - A))
    assert T(QuadNum.from_int(0, 5)) == A
    assert T.inv(1 - A) == S5 - 2  # T^-1(gamma_2) = 1 - 2a


def test_identity_permutation():
    T = IET([0, 1, 2], [A, A, 1 - 2 * A])
    assert all(a == 0 for a in T.alphas)
    assert iet_inverse(T) == T


def test_construction_errors():
    with pytest.raises(NonBijectivePermutation):
        IET([0, 0], [A, A])
    with pytest.raises(NonPositiveLength):
        IET([1, 0], [A, -A])
    with pytest.raises(OutOfDomain):
        golden()(QuadNum.from_int(1, 5))


def test_separation_points():
    assert iet_separation_points(golden()) == (0, 1 - A)
    assert iet_separation_points(keane()) == (0, 1 - 2 * A, 1 - A)
    assert iet_separation_points(IET([0], [QuadNum.from_int(1, 5)])) == (0,)


def test_inverse_of_rotation():
    T = golden()
    S = iet_inverse(T)
    assert S == IET([1, 0], [A, 1 - A])
    for k in range(100):
        z = QuadNum(k, 0, 100, 5)
        assert S(T(z)) == z and T(S(z)) == z


def test_connections():
    w = iet_find_connection(keane(), 1)
    assert (w.i, w.j, w.k) == (2, 3, 1)
    assert w.describe() == "T(γ₂) = γ₃"
    assert keane()(keane().gammas[1]) == keane().gammas[2]
    assert iet_find_connection(golden(), 1000) is None
    assert iet_find_connection(IET([0], [QuadNum.from_int(1, 5)]), 10) is None


def test_rho_points_on_rotation():
    T = golden()
    I = SemiInterval(QuadNum.from_int(0, 5), 1 - A)
    assert iet_rho_point(T, I, (1 - 2 * A + 1 - A) / 2, "plus") == 2
    assert iet_rho_point(T, I, (1 - 2 * A) / 2, "plus") == 1
    assert iet_rho_point(T, I, A / 2, "minus") == 0


def test_neighbors_and_div():
    T = golden()
    I = SemiInterval(QuadNum.from_int(0, 5), 1 - A)
    z = A / 2
    assert iet_neighbors(T, I, z) == frozenset({z})
    nb = iet_neighbors(T, I, 1 - A)
    assert 1 - A in nb and T.inv(1 - A) in nb
    div = set(iet_div_points(T, I))
    assert {0, 1 - 2 * A, 1 - A} <= div
    assert set(iet_div_points(T, T.domain)) == set(T.gammas)


def test_admissibility_examples():
    T = golden()
    zero = QuadNum.from_int(0, 5)
    assert iet_is_admissible(T, T.domain)
    assert not iet_is_admissible(T, SemiInterval(zero, 2 - 3 * A))
    assert 2 - 3 * A > 1 - A  # t lies right of gamma_2
    for i in range(T.s):
        assert iet_is_admissible(T, T.interval(i))
    with pytest.raises(OutOfDomain):
        iet_is_admissible(T, SemiInterval(zero, QuadNum.from_int(2, 5)))


def test_step_cap():
    # rational rotation by 1/2 never visits ]0, 1/4[ from 1/2
    T = IET([1, 0], [QuadNum(1, 0, 2, 5), QuadNum(1, 0, 2, 5)])
    I = SemiInterval(QuadNum.from_int(0, 5), QuadNum(1, 0, 4, 5))
    with pytest.raises(StepCapExceeded):
        iet_rho_point(T, I, QuadNum(1, 0, 2, 5), "plus", cap=50)


def test_dmn_examples():
    T = golden()
    assert iet_dmn(T, 1) == tuple(sorted(T.gammas))
    assert iet_dmn(T, 0) == ()
    assert iet_families(T, 1, 0, "U") == [T.interval(0), T.interval(1)]
    assert iet_families(T, 0, 0, "V") == [T.domain]


@pytest.mark.parametrize("m,n", [(0, 3), (2, 2), (3, 1), (4, 0)])
def test_family_sizes(m, n):
    T = golden()
    pts = set(iet_dmn(T, m, n)) | {T.left, T.right}
    V = iet_families(T, m, n, "V")
    U = iet_families(T, m, n, "U")
    assert len(V) == comb(len(pts), 2)
    assert set(U) <= set(V)
    assert len(iet_dmn(T, m, n)) <= T.s * (m + n)


@given(quadratic_iets(), st.integers(0, 10**6))
def test_bijectivity(T, seed):
    z = T.left + T.total_length * QuadNum(seed % 997, 0, 997, T.d)
    assert iet_apply(T, iet_apply(T, z, "fwd", 3), "inv", 3) == z
    assert T.inv(T(z)) == z


@given(quadratic_iets())
def test_images_partition_domain(T):
    images = [T.image_interval(i) for i in range(T.s)]
    total = IntervalSet(images)
    assert total == IntervalSet([T.domain])
    assert sum((J.length for J in images), QuadNum.from_int(0, T.d)) == T.total_length


@given(quadratic_iets())
def test_inverse_involution(T):
    assert iet_inverse(iet_inverse(T)) == T


@given(quadratic_iets(), st.integers(0, 4), st.integers(0, 4))
def test_dmn_identities(T, m, n):
    two_sided = set(iet_dmn(T, m, n))
    assert two_sided == set(iet_dmn(T, m)) | {T.apply(g, i) for g in T.gammas for i in range(1, n + 1)}
    shifted = {T.apply(z, n) for z in iet_dmn(T, m + n)}
    assert two_sided == shifted


@given(quadratic_iets(), st.integers(0, 10**6))
def test_translation_origin_independence(T, seed):
    t = QuadNum(seed % 13 - 6, 1, 3, T.d)
    S = T.translate(t)
    z = T.left + T.total_length * QuadNum(seed % 101, 0, 101, T.d)
    assert S(z + t) == T(z) + t


@given(quadratic_iets(sizes=(2, 3)), st.integers(0, 100))
def test_neighbors_cardinality(T, k):
    assume(no_short_connection(T))
    I = T.interval(0)
    z = T.left + T.total_length * QuadNum(k, 0, 101, T.d)
    nb = iet_neighbors(T, I, z, cap=10**4)
    rp = iet_rho_point(T, I, z, "plus", cap=10**4)
    rm = iet_rho_point(T, I, z, "minus", cap=10**4)
    assert len(nb) == rp + rm


@given(quadratic_iets(), st.integers(1, 5))
def test_inverse_separation_points(T, n):
    assert set(T.inverse().gammas) == {T(g) for g in T.gammas}
    # the one-sided family of the inverse is the n-th image of the one-sided family
    assert set(iet_dmn(T.inverse(), n)) == {T.apply(z, n) for z in iet_dmn(T, n)}

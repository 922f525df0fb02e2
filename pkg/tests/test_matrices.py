import random

import pytest

from congwit.errors import InputError
from congwit.matrices import (
    ProjPoint,
    SLMat,
    act,
    central_scalar,
    elementary,
    enumerate_sl2_order,
    from_rows,
    identity,
    lines_of_projective_space,
    mat_inv,
    mat_mul,
    minus_identity,
    reduce_mat,
    scalar_mul,
    sl_order,
    sl_order_mod,
)
from congwit.rings import ResidueRing, RingFactor, crt_split, rational_place, rational_ring

from conftest import random_sl

R5 = rational_ring(5, 1)
R25 = rational_ring(5, 2)
R7 = rational_ring(7, 1)
R35 = ResidueRing(
    (RingFactor(rational_place(5), 1, None), RingFactor(rational_place(7), 1, None))
)


def test_identity_and_unipotent_inverse():
    x = elementary(4, 0, 1, 1, R5)
    assert mat_mul(identity(4, R5), x) == x
    u = elementary(4, 0, 1, 1, R25)
    assert mat_inv(u) == from_rows([[1, -1, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]], R25)


@pytest.mark.parametrize("ring,n", [(R25, 2), (R5, 4), (R35, 2), (R7, 3)])
def test_inverse_roundtrip_random(ring, n, rng):
    ident = identity(n, ring)
    for _ in range(1000):
        x = random_sl(n, ring, rng)
        assert mat_mul(x, mat_inv(x)) == ident
        assert mat_mul(mat_inv(x), x) == ident


def test_gauss_inverse_path_for_larger_n(rng):
    ring = rational_ring(3, 2)
    ident = identity(5, ring)
    for _ in range(50):
        x = random_sl(5, ring, rng)
        assert mat_mul(x, mat_inv(x)) == ident


def test_elementary_row_law_and_rejects():
    a = elementary(4, 0, 1, 2, R5)
    b = elementary(4, 0, 1, 4, R5)
    assert mat_mul(a, b) == elementary(4, 0, 1, 6, R5)
    assert elementary(4, 0, 1, 5, R25).entries[0][1] == 5
    with pytest.raises(InputError):
        elementary(4, 2, 2, 1, R5)


def test_det_certification():
    with pytest.raises(InputError):
        from_rows([[2, 0], [0, 1]], R5)
    with pytest.raises(InputError):
        SLMat(R5, ((1, 7), (0, 1)))  # not reduced
    assert from_rows([[6, 0], [0, 6]], R5).entries == ((1, 0), (0, 1))


def test_sl_order_formula_vs_enumeration():
    assert sl_order(2, 5, 1) == 120 == enumerate_sl2_order(5)
    assert sl_order(2, 2, 2) == 48 == enumerate_sl2_order(4)
    assert sl_order(4, 5, 1) == 29_016_000_000
    for m in (2, 3, 5, 7):
        assert sl_order(2, m, 1) == m * (m * m - 1) == enumerate_sl2_order(m)
    assert sl_order_mod(2, 6) == 144 == enumerate_sl2_order(6)


def test_minus_identity():
    assert minus_identity(4, R5).entries[0][0] == 4
    assert minus_identity(2, R7) == from_rows([[6, 0], [0, 6]], R7)
    with pytest.raises(InputError):
        minus_identity(3, R7)


def test_central_scalar_examples():
    assert central_scalar(4, R5, 4) == scalar_mul(2, identity(4, R5))
    assert central_scalar(4, R7, 2) == scalar_mul(6, identity(4, R7))
    with pytest.raises(InputError):
        central_scalar(4, R7, 4)  # gcd(4, 6) = 2
    z = central_scalar(4, R25, 2)
    assert z.entries[0][0] == 24


def test_reduction_commutes_with_multiplication(rng):
    for _ in range(1000):
        x = random_sl(4, R25, rng)
        y = random_sl(4, R25, rng)
        assert reduce_mat(mat_mul(x, y), R5) == mat_mul(reduce_mat(x, R5), reduce_mat(y, R5))
    with pytest.raises(InputError):
        reduce_mat(identity(2, R5), R7)


def _crt_components(x):
    comps = []
    for factor in x.ring.factors:
        ring = ResidueRing((factor,))
        comps.append(
            SLMat(ring, tuple(tuple(v % factor.modulus for v in row) for row in x.entries))
        )
    return comps


def test_crt_compatibility_of_multiplication(rng):
    for _ in range(1000):
        x = random_sl(2, R35, rng)
        y = random_sl(2, R35, rng)
        prod = _crt_components(mat_mul(x, y))
        parts = [mat_mul(a, b) for a, b in zip(_crt_components(x), _crt_components(y))]
        assert prod == parts
    # entrywise split agrees with crt_split
    x = random_sl(2, R35, rng)
    comps = _crt_components(x)
    for i in range(2):
        for j in range(2):
            assert crt_split(x.entries[i][j], R35) == tuple(c.entries[i][j] for c in comps)


def test_projective_line_enumeration():
    lines = lines_of_projective_space(4, 5)
    assert len(lines) == 156
    assert len(set(lines)) == 156
    assert len(lines_of_projective_space(4, 7)) == 400
    assert len(lines_of_projective_space(2, 3)) == 4
    for line in lines:
        lead = next(c for c in line.coords if c != 0)
        assert lead == 1


def test_action_is_a_group_action(rng):
    lines = lines_of_projective_space(4, 5)
    ident = identity(4, R5)
    for line in lines:
        assert act(ident, line) == line
    for _ in range(200):
        g = random_sl(4, R5, rng)
        h = random_sl(4, R5, rng)
        line = lines[rng.randrange(len(lines))]
        assert act(mat_mul(g, h), line) == act(g, act(h, line))


def test_action_is_transitive_for_the_full_group():
    gens = [elementary(4, i, j, 1, R5) for i in range(4) for j in range(4) if i != j]
    start = ProjPoint(5, (1, 0, 0, 0))
    orbit = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for line in frontier:
            for g in gens:
                image = act(g, line)
                if image not in orbit:
                    orbit.add(image)
                    nxt.append(image)
        frontier = nxt
    assert len(orbit) == 156


def test_act_requires_level_one():
    with pytest.raises(InputError):
        act(identity(2, R25), ProjPoint(5, (1, 0)))

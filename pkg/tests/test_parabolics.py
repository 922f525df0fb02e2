import itertools
import random

import pytest

from congwit.errors import InputError
from congwit.matrices import (
    act,
    elementary,
    identity,
    lines_of_projective_space,
    mat_inv,
    mat_mul,
    minus_identity,
    sl_order,
)
from congwit.parabolics import (
    ParabolicSpec,
    borel,
    fixed_lines,
    graph_automorphism,
    graph_automorphism_inverse,
    longest_weyl,
    parabolic_full,
    parabolic_generators,
    parabolic_membership,
    parabolic_order,
    root_subset,
    weyl_conjugator,
)
from congwit.quotients import closure
from congwit.rings import rational_ring

from conftest import random_sl

R5 = rational_ring(5, 1)
P1 = ParabolicSpec(4, 5, root_subset(4, {2, 3}))
P2 = ParabolicSpec(4, 5, root_subset(4, {1, 2}))


def test_root_subset_symmetry():
    theta = root_subset(4, {2, 3})
    assert sorted(theta.symmetric_image().members) == [1, 2]
    for members in itertools.chain.from_iterable(
        itertools.combinations(range(1, 4), k) for k in range(4)
    ):
        theta = root_subset(4, members)
        assert theta.symmetric_image().symmetric_image() == theta
    with pytest.raises(InputError):
        root_subset(4, {0})


def test_block_sizes():
    assert root_subset(4, ()).block_sizes() == (1, 1, 1, 1)
    assert root_subset(4, {1, 2, 3}).block_sizes() == (4,)
    assert root_subset(4, {2, 3}).block_sizes() == (1, 3)
    assert root_subset(4, {1, 2}).block_sizes() == (3, 1)
    assert root_subset(4, {1, 3}).block_sizes() == (2, 2)


def test_membership_examples():
    upper = elementary(4, 0, 1, 1, R5)
    for spec in (P1, P2, borel(4, 5), parabolic_full(4, 5)):
        assert parabolic_membership(upper, spec)
    assert not parabolic_membership(elementary(4, 1, 0, 1, R5), P1)
    assert parabolic_membership(elementary(4, 1, 0, 1, R5), P2)
    assert not parabolic_membership(elementary(4, 3, 2, 1, R5), P2)
    assert parabolic_membership(elementary(4, 3, 2, 1, R5), P1)


def test_parabolic_order():
    assert parabolic_order(P1) == 186_000_000
    assert sl_order(4, 5, 1) // parabolic_order(P1) == 156
    assert parabolic_order(parabolic_full(4, 5)) == sl_order(4, 5, 1)
    for p in (5, 7):
        a = ParabolicSpec(4, p, root_subset(4, {2, 3}))
        b = ParabolicSpec(4, p, root_subset(4, {1, 2}))
        assert parabolic_order(a) == parabolic_order(b)


@pytest.mark.parametrize(
    "spec,expected",
    [
        (borel(2, 5), 20),
        (borel(2, 3), 6),
        (parabolic_full(2, 5), 120),
        (borel(3, 3), 108),
        (ParabolicSpec(3, 3, root_subset(3, {2})), 432),
        (ParabolicSpec(3, 5, root_subset(3, {1})), 12_000),
    ],
)
def test_parabolic_order_against_closure(spec, expected):
    assert parabolic_order(spec) == expected
    gens = [(g,) for g in parabolic_generators(spec)]
    ident = (identity(spec.n, rational_ring(spec.p, 1)),)
    assert len(closure(gens, ident, 50_000)) == expected


def test_borel_sl2_f5_generators_match_construction():
    gens = parabolic_generators(borel(2, 5))
    assert [g.entries for g in gens] == [((1, 1), (0, 1)), ((2, 0), (0, 3))]


def test_generators_pass_membership():
    for spec in (P1, P2, borel(4, 5)):
        for g in parabolic_generators(spec):
            assert parabolic_membership(g, spec)


def test_graph_automorphism_examples():
    g = elementary(4, 0, 1, 1, R5)
    expected = mat_inv(elementary(4, 2, 3, 1, R5))  # identity minus E at (2,3)
    assert graph_automorphism(g) == expected
    minus = minus_identity(4, R5)
    assert graph_automorphism(minus) == minus


def test_graph_automorphism_is_multiplicative(rng):
    for ring, n in ((R5, 4), (rational_ring(5, 2), 4), (rational_ring(7, 1), 2)):
        for _ in range(300):
            x = random_sl(n, ring, rng)
            y = random_sl(n, ring, rng)
            assert graph_automorphism(mat_mul(x, y)) == mat_mul(
                graph_automorphism(x), graph_automorphism(y)
            )


def test_graph_automorphism_squares_to_inner(rng):
    for ring, n in ((R5, 4), (rational_ring(7, 1), 2), (rational_ring(5, 1), 3)):
        c = weyl_conjugator(n, ring)
        c_inv = mat_inv(c)
        for _ in range(300):
            x = random_sl(n, ring, rng)
            assert graph_automorphism(graph_automorphism(x)) == mat_mul(mat_mul(c, x), c_inv)


def test_graph_automorphism_inverse_roundtrip(rng):
    for _ in range(200):
        x = random_sl(4, R5, rng)
        assert graph_automorphism_inverse(graph_automorphism(x)) == x
        assert graph_automorphism(graph_automorphism_inverse(x)) == x


def test_longest_weyl_determinant_convention():
    for n in (2, 3, 4, 5):
        w0 = longest_weyl(n, rational_ring(5, 1))  # construction validates det = 1
        assert w0.n == n


def test_graph_automorphism_swaps_parabolics():
    for p in (5, 7):
        ring = rational_ring(p, 1)
        a = ParabolicSpec(4, p, root_subset(4, {2, 3}))
        b = ParabolicSpec(4, p, root_subset(4, {1, 2}))
        for g in parabolic_generators(a, ring):
            assert parabolic_membership(graph_automorphism(g), b)
        for g in parabolic_generators(b, ring):
            assert parabolic_membership(graph_automorphism(g), a)
        bor = borel(4, p)
        for g in parabolic_generators(bor, ring):
            assert parabolic_membership(graph_automorphism(g), bor)


def test_fixed_lines_baselines():
    assert fixed_lines(P1) == 1
    assert fixed_lines(P2) == 0
    assert fixed_lines(ParabolicSpec(4, 7, root_subset(4, {2, 3}))) == 1
    assert fixed_lines(ParabolicSpec(4, 7, root_subset(4, {1, 2}))) == 0
    assert fixed_lines(borel(2, 3)) == 1
    assert fixed_lines(parabolic_full(2, 5)) == 0


def test_fixed_lines_counts_whole_group_fixers():
    # fixed-by-generators equals fixed-by-group: enumerate the Borel of
    # SL_2(F_3) and check its one counted line against every element
    spec = borel(2, 3)
    ring = rational_ring(3, 1)
    gens = [(g,) for g in parabolic_generators(spec)]
    elements = closure(gens, (identity(2, ring),), 100)
    assert len(elements) == parabolic_order(spec)
    fixed = [
        line
        for line in lines_of_projective_space(2, 3)
        if all(act(g, line) == line for (g,) in elements)
    ]
    assert len(fixed) == fixed_lines(spec) == 1


def test_fixed_lines_invariant_under_conjugation(rng):
    lines = lines_of_projective_space(4, 5)
    for spec, expected in ((P1, 1), (P2, 0)):
        gens = parabolic_generators(spec)
        for _ in range(10):
            h = random_sl(4, R5, rng)
            h_inv = mat_inv(h)
            conjugated = [mat_mul(mat_mul(h, g), h_inv) for g in gens]
            count = sum(
                1 for line in lines if all(act(g, line) == line for g in conjugated)
            )
            assert count == expected

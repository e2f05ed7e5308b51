import random

import pytest

from goodvar.chern import ChernNumberTable, cp_chern, from_table, milnor_number, product, to_table, zero
from goodvar.errors import NonIntegral, StrictModeGap
from goodvar.numbertheory import eta
from goodvar.partitions import partitions
from goodvar.ring import (
    ClassCoordinates,
    bezout,
    build_generator_system,
    candidate_pool,
    compose,
    decompose,
    find_generator,
    is_decomposable,
    monomial_chern,
)
from goodvar.varieties import BlCP, CP, H


@pytest.fixture(scope="module")
def relaxed():
    return build_generator_system(8, "relaxed")


@pytest.fixture(scope="module")
def strict():
    return build_generator_system(8, "strict")


def test_low_dimensional_generators(relaxed):
    assert relaxed.generator(1).terms == ((CP(1), 1),)
    assert relaxed.generator(1).milnor == 2 == eta(1)
    assert relaxed.generator(2).terms == ((CP(2), 1),)
    assert relaxed.generator(2).milnor == 3 == eta(2)


@pytest.mark.parametrize("mode", ["strict", "relaxed"])
@pytest.mark.parametrize("blowups", ["points", "subspaces"])
def test_generator_milnor_numbers(mode, blowups):
    gs = build_generator_system(8, mode, blowups)
    for d in range(1, 9):
        if d in gs.gaps:
            continue
        g = gs.generator(d)
        assert abs(milnor_number(g.chern)) == abs(g.milnor) == eta(d)
        if mode == "strict":
            assert all(gv.args[0] >= 4 for gv, _ in g.terms if gv.kind == "H")


def test_strict_point_pool_flags_dimension_eight():
    gs = build_generator_system(8, "strict", "points")
    assert 8 in gs.gaps
    assert candidate_pool(8, "strict", "points")[:2] == [CP(8), H(4, 5)]
    with pytest.raises(StrictModeGap):
        gs.generator(8)
    assert find_generator(8, "relaxed", "points") is not None


def test_strict_with_subspace_blowups_has_no_gaps(strict):
    assert strict.gaps == ()


def test_bezout():
    g, c = bezout([6, 9, 2])
    assert g == 1 and 6 * c[0] + 9 * c[1] + 2 * c[2] == 1
    g, c = bezout([-4])
    assert g == 4 and c == [-1]


def test_monomial_chern(relaxed):
    assert dict(to_table(monomial_chern(relaxed, (1, 1))).values) == {(2,): 4, (1, 1): 8}
    assert monomial_chern(relaxed, (2,)) == cp_chern(2)
    assert monomial_chern(relaxed, (2, 1)) == product(cp_chern(2), cp_chern(1))


def _class(c2, c11):
    return from_table(ChernNumberTable(2, {(2,): c2, (1, 1): c11}))


def test_decompose_example(relaxed):
    coords = decompose(_class(11, 25), relaxed)
    assert coords.coeffs == {(2,): 1, (1, 1): 2}


def test_decompose_non_integral(relaxed):
    with pytest.raises(NonIntegral):
        decompose(_class(11, 29), relaxed)


def test_decompose_zero(relaxed):
    assert all(c == 0 for c in decompose(zero(4), relaxed).coeffs.values())


def test_compose_examples(relaxed):
    assert compose(ClassCoordinates(3, {}), relaxed) == zero(3)
    v = compose(ClassCoordinates(2, {(2,): 5, (1, 1): -2}), relaxed)
    assert dict(to_table(v).values) == {(2,): 7, (1, 1): 29}


@pytest.mark.parametrize("mode", ["strict", "relaxed"])
def test_round_trip_and_milnor_contribution(mode):
    gs = build_generator_system(6, mode)
    rng = random.Random(3)
    for n in range(1, 7):
        for _ in range(20):
            coords = ClassCoordinates(n, {lam: rng.randint(-9, 9) for lam in partitions(n)})
            v = compose(coords, gs)
            assert decompose(v, gs) == coords
            assert milnor_number(v) == coords.coeffs[(n,)] * gs.generator(n).milnor


def test_gap_dimension_blocks_decompose():
    gs = build_generator_system(6, "strict", "points")
    assert gs.gaps == (5,)
    with pytest.raises(StrictModeGap):
        decompose(cp_chern(5), gs)
    decompose(cp_chern(4), gs)


def test_is_decomposable():
    assert is_decomposable(product(cp_chern(1), cp_chern(1)))
    assert not is_decomposable(cp_chern(2))
    assert is_decomposable(zero(3))


def test_coordinates_text_round_trip():
    c = ClassCoordinates(3, {(2, 1): 4, (1, 1, 1): -1})
    text = c.to_text()
    assert text == "dim: 3\n3: 0\n2,1: 4\n1,1,1: -1\n"
    assert ClassCoordinates.from_text(text) == c


def test_generator_report(relaxed):
    lines = relaxed.report().splitlines()
    assert lines[0] == "mode: relaxed"
    assert lines[3] == "1: CP(1)  s=2 eta=2"

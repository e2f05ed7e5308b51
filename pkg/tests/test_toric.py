import json
from fractions import Fraction

import pytest

from goodvar.chern import chern_number, cp_chern, milnor_number, to_table
from goodvar.errors import InvalidFan
from goodvar.toric import (
    Fan,
    blow_up,
    blown_up_along_subspace,
    blown_up_projective_space,
    fixed_point_weights,
    localization_sum,
    projective_space_fan,
    star_subdivide,
    toric_chern_vector,
    validate_fan,
)


def hirzebruch_fan(a):
    return Fan(2, ((1, 0), (0, 1), (-1, a), (0, -1)), ((0, 1), (1, 2), (2, 3), (3, 0)))


def corpus():
    fans = [projective_space_fan(n) for n in range(1, 6)]
    fans += [hirzebruch_fan(a) for a in range(4)]
    fans.append(blown_up_projective_space(2, 3))
    fans.append(blow_up(blow_up(projective_space_fan(3), 2), 5))
    fans.append(blown_up_along_subspace(4, 2))
    fans.append(blown_up_along_subspace(5, 3))
    return fans


def test_projective_space_fans():
    f1 = projective_space_fan(1)
    assert f1.rays == ((1,), (-1,)) and len(f1.max_cones) == 2
    f2 = projective_space_fan(2)
    assert len(f2.rays) == 3 and len(f2.max_cones) == 3
    f3 = projective_space_fan(3)
    assert len(f3.rays) == 4 and len(f3.max_cones) == 4
    assert validate_fan(f2) == [] and validate_fan(f3) == []


@pytest.mark.parametrize("fan", corpus(), ids=lambda f: f"rank{f.rank}-{len(f.max_cones)}cones")
def test_corpus_is_valid_and_euler_counts_fixed_points(fan):
    assert validate_fan(fan) == []
    v = toric_chern_vector(fan)
    assert chern_number(v, (fan.rank,)) == len(fan.max_cones)


def test_duplicate_ray_reported():
    f = Fan(1, ((1,), (1,), (-1,)), ((0,), (2,)))
    assert any("duplicate ray" in p for p in validate_fan(f))


def test_missing_cone_reported():
    f = projective_space_fan(2)
    broken = Fan(2, f.rays, f.max_cones[:-1])
    assert any("facet" in p and "one incident cone" in p for p in validate_fan(broken))


def test_non_smooth_and_non_primitive_reported():
    f = Fan(2, ((1, 0), (1, 2), (-1, -1)), ((0, 1), (1, 2), (2, 0)))
    assert any("not smooth" in p for p in validate_fan(f))
    g = Fan(1, ((2,), (-1,)), ((0,), (1,)))
    assert any("not primitive" in p for p in validate_fan(g))


def test_blow_up_plane():
    f = blow_up(projective_space_fan(2), 1)
    assert len(f.rays) == 4 and len(f.max_cones) == 4
    assert validate_fan(f) == []
    g = blown_up_projective_space(2, 3)
    assert len(g.rays) == 6 and len(g.max_cones) == 6


def test_blow_up_same_point_twice_rejected():
    f = projective_space_fan(2)
    cone = f.max_cones[0]
    g = blow_up(f, list(cone))
    with pytest.raises(InvalidFan):
        blow_up(g, list(cone))
    with pytest.raises(IndexError):
        blow_up(f, 3)


def test_fixed_point_weights():
    assert fixed_point_weights(projective_space_fan(1)) == [[(1,)], [(-1,)]]
    f2 = projective_space_fan(2)
    weights = dict(zip(f2.max_cones, fixed_point_weights(f2)))
    assert weights[(0, 1)] == [(1, 0), (0, 1)]
    # rays e2 and -e1-e2 as columns: [[0,-1],[1,-1]], inverse [[-1,1],[-1,0]]
    assert weights[(1, 2)] == [(-1, 1), (-1, 0)]


def test_weights_are_dual_bases():
    for fan in corpus():
        for cone, ws in zip(fan.max_cones, fixed_point_weights(fan)):
            for k, w in enumerate(ws):
                for l, r in enumerate(cone):
                    assert sum(a * b for a, b in zip(w, fan.rays[r])) == int(k == l)


def test_cp1_localization_by_hand():
    sums = localization_sum(fixed_point_weights(projective_space_fan(1)), (5,))
    assert sums == {(1,): Fraction(2)}


def test_cp2_localization():
    v = toric_chern_vector(projective_space_fan(2))
    assert dict(to_table(v).values) == {(2,): 3, (1, 1): 9}


@pytest.mark.parametrize("n", range(1, 6))
def test_projective_space_matches_closed_form(n):
    assert toric_chern_vector(projective_space_fan(n)) == cp_chern(n)


def test_triple_blowup_of_plane():
    v = toric_chern_vector(blown_up_projective_space(2, 3))
    assert milnor_number(v) == -6
    assert chern_number(v, (2,)) == 6


@pytest.mark.parametrize("n", range(2, 6))
def test_blow_up_shift_every_cone(n):
    base = projective_space_fan(n)
    s0 = milnor_number(toric_chern_vector(base))
    for cone in range(len(base.max_cones)):
        blown = blow_up(base, cone)
        assert milnor_number(toric_chern_vector(blown)) - s0 == -(n + (-1) ** n)
        # blowing up a fixed point created by the first blow-up
        again = blow_up(blown, len(blown.max_cones) - 1)
        assert milnor_number(toric_chern_vector(again)) - s0 == -2 * (n + (-1) ** n)


def test_three_blowups_independent_of_choice():
    from itertools import combinations

    base = projective_space_fan(3)
    values = set()
    for chosen in combinations(base.max_cones, 3):
        fan = base
        for cone in chosen:
            fan = blow_up(fan, list(cone))
        values.add(toric_chern_vector(fan))
    assert len(values) == 1


@pytest.mark.parametrize("fan", corpus(), ids=lambda f: f"rank{f.rank}-{len(f.max_cones)}cones")
def test_independent_of_generic_point(fan):
    assert toric_chern_vector(fan, seed=1) == toric_chern_vector(fan, seed=12345)


def test_non_generic_point_rejected():
    weights = fixed_point_weights(projective_space_fan(2))
    with pytest.raises(ZeroDivisionError):
        localization_sum(weights, (1, 1))


def test_invalid_fan_rejected_by_localization():
    f = projective_space_fan(2)
    with pytest.raises(InvalidFan):
        toric_chern_vector(Fan(2, f.rays, f.max_cones[:-1]))


def test_subspace_blowup():
    # codimension n equals a point blow-up
    assert toric_chern_vector(blown_up_along_subspace(4, 4)) == toric_chern_vector(blow_up(projective_space_fan(4), 0))
    assert milnor_number(toric_chern_vector(blown_up_along_subspace(5, 3))) == 9
    with pytest.raises(InvalidFan):
        star_subdivide(projective_space_fan(2), [0, 1, 2])


def test_fan_json_round_trip():
    for fan in corpus():
        text = fan.to_json()
        again = Fan.from_json(text)
        assert again == fan
        assert again.to_json() == text
    assert json.loads(projective_space_fan(1).to_json()) == {"rank": 1, "rays": [[1], [-1]], "max_cones": [[0], [1]]}


def test_blow_up_rank_one_is_identity():
    f = projective_space_fan(1)
    assert blow_up(f, 0) == f

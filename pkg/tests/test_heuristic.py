import itertools
import math

import pytest
from hypothesis import given, settings

from floatloc import (
    Allocation,
    BracketSet,
    Instance,
    RawAllocation,
    adjust,
    eliminate_and_round,
    exact_optimum,
    initial_allocation_raw,
    optimize,
    partition,
    place,
    spacing,
)
from floatloc.heuristic import allocate, min_spacing

from conftest import instances


def enumerate_best(areas, n):
    """Test-local exhaustive search over all allocations."""
    best = -math.inf
    for counts in itertools.product(range(n + 1), repeat=len(areas)):
        if sum(counts) != n:
            continue
        best = max(best, min(a / (c + 1) for a, c in zip(areas, counts) if c >= 1))
    return best


@pytest.mark.parametrize("area, count, expected", [(500, 4, 100), (250, 0, 250), (0, 3, 0)])
def test_spacing(area, count, expected):
    assert spacing(area, count) == expected


def test_initial_allocation_examples():
    raw = initial_allocation_raw(BracketSet.from_areas([250, 500, 250]), 7)
    assert raw.values == pytest.approx((1.5, 4.0, 1.5))
    assert raw.total == pytest.approx(7)
    assert initial_allocation_raw(BracketSet.from_areas([1000]), 6).values == pytest.approx((6.0,))
    assert initial_allocation_raw(BracketSet.from_areas([500, 500]), 0).values == pytest.approx((0, 0))


def test_initial_allocation_degenerate():
    with pytest.raises(ValueError, match="degenerate boundary"):
        initial_allocation_raw(BracketSet.from_areas([0.0, 0.0]), 2)


@pytest.mark.parametrize(
    "raw, expected",
    [((1.5, 4.0, 1.5), (2, 4, 2)), ((0.7, 5.3), (0, 5)), ((6.0,), (6,)), ((-0.4, 2.5), (0, 3))],
)
def test_eliminate_and_round(raw, expected):
    assert eliminate_and_round(RawAllocation.from_values(raw)).counts == expected


def test_adjust_decrement_ties_to_lowest_index():
    bs = BracketSet.from_areas([250, 500, 250])
    assert adjust(Allocation((2, 4, 2)), bs, 7).counts == (1, 4, 2)


def test_adjust_increment():
    bs = BracketSet.from_areas([100, 900])
    assert adjust(Allocation((0, 5)), bs, 6).counts == (0, 6)


def test_adjust_balanced_and_zero():
    assert adjust(Allocation((3,)), BracketSet.from_areas([10]), 3).counts == (3,)
    assert adjust(Allocation((2, 1)), BracketSet.from_areas([10, 5]), 0).counts == (0, 0)


def test_adjust_skips_zero_area_for_increment():
    bs = BracketSet.from_areas([0.0, 10.0])
    assert adjust(Allocation((0, 0)), bs, 2).counts == (0, 2)


def test_place_examples():
    bs = BracketSet.from_areas([500], start=250)
    assert place(bs, Allocation((4,))) == pytest.approx([350, 450, 550, 650])
    assert place(BracketSet.from_areas([1000]), Allocation((1,))) == [500]
    bs = partition(Instance(0, 1000, [250, 750], 7))
    assert place(bs, Allocation((1, 4, 2))) == pytest.approx(
        [125, 350, 450, 550, 650, 2500 / 3, 2750 / 3]
    )


def test_optimize_no_bumps():
    p = optimize(Instance(0, 1000, [], 6))
    assert p.positions == pytest.approx([1000 * k / 7 for k in range(1, 7)])
    assert p.objective_controllable == pytest.approx(1000 / 7)


def test_optimize_two_bumps_matches_enumeration():
    inst = Instance(0, 1000, [250, 750], 7)
    p = optimize(inst)
    assert p.allocation == (1, 4, 2)
    assert p.objective_controllable == pytest.approx(250 / 3)
    assert enumerate_best([250, 500, 250], 7) == pytest.approx(250 / 3)


def test_optimize_nothing_to_place():
    with pytest.raises(ValueError, match="nothing to place"):
        optimize(Instance(0, 1000, [500], 0))


def test_case1_shaped_instance():
    p = optimize(Instance(0, 1000, [150, 420, 810], 6))
    assert len(p.positions) == 6
    assert p.objective_controllable > 0
    assert p.objective_strict <= p.objective_controllable


@settings(max_examples=300, deadline=None)
@given(instances())
def test_allocation_identities(inst):
    bs = partition(inst)
    raw = initial_allocation_raw(bs, inst.num_floating)
    assert math.isclose(raw.total, inst.num_floating, abs_tol=1e-9)
    target = inst.total_length / (inst.num_floating + len(bs))
    for b, s in zip(bs, raw.implied_spacings(bs)):
        if b.area > 0:
            assert math.isclose(s, target, rel_tol=1e-9)


@settings(max_examples=300, deadline=None)
@given(instances())
def test_optimize_properties(inst):
    p = optimize(inst)
    bs = partition(inst)
    assert sum(p.allocation) == inst.num_floating
    assert len(p.positions) == inst.num_floating
    assert all(inst.boundary_lower < x < inst.boundary_upper for x in p.positions)
    assert math.isclose(
        p.objective_controllable, min_spacing(bs.areas, p.allocation), rel_tol=1e-9, abs_tol=1e-9
    )
    assert p.objective_strict <= p.objective_controllable
    assert p.objective_controllable <= inst.total_length / (inst.num_floating + 1) * (1 + 1e-9)
    assert min_spacing(bs.areas, p.allocation) <= exact_optimum(inst).optimum_value * (1 + 1e-12)
    if all(b.area > 0 for b, c in zip(bs, p.allocation) if c):
        assert all(a < b for a, b in zip(p.positions, p.positions[1:]))


@settings(max_examples=200, deadline=None)
@given(instances(max_bumps=4, max_floating=7))
def test_optimize_never_beats_enumeration(inst):
    areas = partition(inst).areas.tolist()
    assert min_spacing(areas, allocate(inst).counts) <= enumerate_best(areas, inst.num_floating) * (1 + 1e-12)

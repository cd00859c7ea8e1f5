"""Exhaustive grid-capacity spaces, order intervals, binarity, and
pairwise separation."""

import itertools
from fractions import Fraction

import pytest

from capgames import (
    BudgetExceeded,
    Domain,
    DomainMismatch,
    EqualCapacities,
    FiniteCapacity,
    RangeError,
    bottom_capacity,
    check_binarity,
    check_t2,
    dirac_capacity,
    enumerate_capacities,
    interval,
    interval_membership,
    join,
    meet,
    separating_halves,
    top_capacity,
)

AB = Domain(("a", "b"))
ABC = Domain(("a", "b", "c"))

F = Fraction

GRID3 = (F(0), F(1, 2), F(1))


def brute_force_count(domain: Domain, grid) -> int:
    """Independent enumeration: try every assignment of grid values to
    the proper nonempty subsets and keep the monotone ones."""
    values = sorted(Fraction(g) for g in grid)
    full = domain.full_mask
    proper = [m for m in range(1, full)]
    count = 0
    for combo in itertools.product(values, repeat=len(proper)):
        table = {0: F(0), full: F(1)}
        table.update(dict(zip(proper, combo)))
        ok = True
        for mask in range(full + 1):
            m = mask
            while m and ok:
                bit = m & -m
                if table[mask ^ bit] > table[mask]:
                    ok = False
                m ^= bit
            if not ok:
                break
        if ok:
            count += 1
    return count


class TestEnumerateCapacities:
    def test_two_point_counts_are_grid_squared(self):
        assert len(enumerate_capacities(AB, (0, 1))) == 4
        assert len(enumerate_capacities(AB, GRID3)) == 9
        assert len(enumerate_capacities(AB, (0, F(1, 4), F(1, 2), F(3, 4), 1))) == 25

    def test_one_point_domain_has_the_unique_capacity(self):
        space = enumerate_capacities(Domain(("a",)), GRID3)
        assert len(space) == 1
        assert space.capacities[0].values == (F(0), F(1))

    def test_three_point_count_matches_brute_force(self):
        space = enumerate_capacities(ABC, GRID3)
        assert len(space) == 129
        assert brute_force_count(ABC, GRID3) == 129

    def test_two_point_membership_matches_brute_force(self):
        assert brute_force_count(AB, GRID3) == 9

    def test_all_members_are_valid_and_distinct(self):
        space = enumerate_capacities(ABC, (0, 1))
        seen = {cap.values for cap in space.capacities}
        assert len(seen) == len(space)
        for cap in space.capacities:
            assert set(cap.values) <= {F(0), F(1)}

    def test_closed_under_meet_and_join(self):
        space = enumerate_capacities(AB, GRID3)
        for x, y in itertools.product(space.capacities, repeat=2):
            assert space.index_of(meet(x, y)) >= 0
            assert space.index_of(join(x, y)) >= 0

    def test_index_of_rejects_outsiders(self):
        space = enumerate_capacities(AB, (0, 1))
        outsider = FiniteCapacity(AB, [F(0), F(1, 2), F(1, 2), F(1)])
        with pytest.raises(ValueError):
            space.index_of(outsider)

    def test_grid_validation(self):
        with pytest.raises(ValueError):
            enumerate_capacities(AB, (0, F(1, 2)))
        with pytest.raises(ValueError):
            enumerate_capacities(AB, (F(1, 2), 1))
        with pytest.raises(RangeError):
            enumerate_capacities(AB, (0, 1, F(3, 2)))

    def test_budgets(self):
        with pytest.raises(BudgetExceeded):
            enumerate_capacities(Domain(("a", "b", "c", "d", "e")), (0, 1))
        with pytest.raises(BudgetExceeded):
            enumerate_capacities(
                AB, (0, F(1, 5), F(2, 5), F(3, 5), F(4, 5), 1)
            )


class TestIntervals:
    def test_corners_are_meet_and_join(self):
        x = FiniteCapacity(AB, [F(0), F(1, 2), F(0), F(1)])
        y = FiniteCapacity(AB, [F(0), F(0), F(1, 2), F(1)])
        iv = interval(x, y)
        assert iv.lower == meet(x, y)
        assert iv.upper == join(x, y)
        assert iv.lower.values == (F(0), F(0), F(0), F(1))
        assert iv.upper.values == (F(0), F(1, 2), F(1, 2), F(1))

    def test_membership_matches_pointwise_comparison(self):
        space = enumerate_capacities(AB, GRID3)
        for x, y in itertools.combinations(space.capacities, 2):
            iv = interval(x, y)
            for z in space.capacities:
                want = iv.lower <= z and z <= iv.upper
                assert interval_membership(iv, z) == want

    def test_endpoints_belong(self):
        space = enumerate_capacities(AB, GRID3)
        for x, y in itertools.combinations(space.capacities, 2):
            iv = interval(x, y)
            assert interval_membership(iv, x)
            assert interval_membership(iv, y)

    def test_bottom_top_interval_holds_everything(self):
        space = enumerate_capacities(ABC, GRID3)
        iv = interval(bottom_capacity(ABC), top_capacity(ABC))
        assert all(interval_membership(iv, z) for z in space.capacities)

    def test_dirac_interval_excludes_the_other_dirac(self):
        iv = interval(dirac_capacity(AB, "a"), dirac_capacity(AB, "a"))
        assert not interval_membership(iv, dirac_capacity(AB, "b"))

    def test_domain_mismatch(self):
        with pytest.raises(DomainMismatch):
            interval(top_capacity(AB), top_capacity(ABC))


def brute_force_binarity(space):
    """Reference triple scan over the distinct corner boxes."""
    boxes = set()
    caps = space.capacities
    for x, y in itertools.product(caps, repeat=2):
        boxes.add((meet(x, y).values, join(x, y).values))
    boxes = sorted(boxes)

    def linked(b1, b2):
        return all(max(l1, l2) <= min(h1, h2)
                   for l1, h1, l2, h2 in zip(b1[0], b1[1], b2[0], b2[1]))

    linked_pairs = 0
    triples = 0
    bad = []
    for i, j in itertools.combinations(range(len(boxes)), 2):
        if not linked(boxes[i], boxes[j]):
            continue
        linked_pairs += 1
        for k in range(j + 1, len(boxes)):
            if not (linked(boxes[i], boxes[k]) and linked(boxes[j], boxes[k])):
                continue
            triples += 1
            lo = tuple(max(a, b, c) for a, b, c in
                       zip(boxes[i][0], boxes[j][0], boxes[k][0]))
            hi = tuple(min(a, b, c) for a, b, c in
                       zip(boxes[i][1], boxes[j][1], boxes[k][1]))
            if any(l > h for l, h in zip(lo, hi)):
                bad.append((i, j, k))
    return len(boxes), linked_pairs, triples, bad


class TestBinarity:
    def test_two_point_zero_one_space(self):
        space = enumerate_capacities(AB, (0, 1))
        report = check_binarity(space)
        n_boxes, pairs, triples, bad = brute_force_binarity(space)
        assert report.passed
        assert report.interval_count == n_boxes == 9
        assert report.linked_pairs == pairs
        assert report.triples_checked == triples
        assert bad == []

    def test_two_point_three_value_space(self):
        space = enumerate_capacities(AB, GRID3)
        report = check_binarity(space)
        n_boxes, pairs, triples, bad = brute_force_binarity(space)
        assert report.passed
        assert (report.interval_count, report.linked_pairs,
                report.triples_checked) == (n_boxes, pairs, triples)
        assert (n_boxes, pairs, triples) == (36, 320, 1408)
        assert bad == []

    def test_report_shape(self):
        space = enumerate_capacities(AB, (0, 1))
        report = check_binarity(space)
        payload = report.to_dict()
        assert payload["passed"] is True
        assert payload["capacities"] == 4
        assert payload["failures"] == []
        assert payload["full_family_sets"] is None
        assert payload["seconds"] >= 0

    def test_full_family_scan(self):
        space = enumerate_capacities(AB, (0, 1))
        report = check_binarity(space, full_family=True)
        assert report.passed
        assert report.full_family_sets == 40

    def test_full_family_cap(self):
        space = enumerate_capacities(AB, GRID3)
        with pytest.raises(BudgetExceeded):
            check_binarity(space, full_family=True)

    def test_interval_budget(self):
        space = enumerate_capacities(AB, GRID3)
        with pytest.raises(BudgetExceeded):
            check_binarity(space, interval_budget=10)


class TestSeparatingHalves:
    def test_bottom_top_witness_is_the_first_singleton(self):
        up, lo = separating_halves(bottom_capacity(AB), top_capacity(AB))
        # witness {a}, midpoint 1/2
        assert up.first.values == (F(0), F(1, 2), F(0), F(1))
        assert lo.second.values == (F(0), F(1, 2), F(1), F(1))
        assert up.second == top_capacity(AB)
        assert lo.first == bottom_capacity(AB)

    def test_dirac_pair(self):
        da, db = dirac_capacity(AB, "a"), dirac_capacity(AB, "b")
        up, lo = separating_halves(da, db)
        assert interval_membership(up, da)
        assert not interval_membership(up, db)
        assert interval_membership(lo, db)
        assert not interval_membership(lo, da)

    def test_argument_order_is_irrelevant(self):
        x = dirac_capacity(AB, "a")
        y = top_capacity(AB)
        assert separating_halves(x, y) == separating_halves(y, x)

    def test_equal_inputs_rejected(self):
        with pytest.raises(EqualCapacities):
            separating_halves(top_capacity(AB), top_capacity(AB))

    def test_domain_mismatch(self):
        with pytest.raises(DomainMismatch):
            separating_halves(top_capacity(AB), top_capacity(ABC))

    def test_membership_is_the_witness_threshold_test(self):
        space = enumerate_capacities(AB, GRID3)
        for x, y in itertools.combinations(space.capacities, 2):
            up, lo = separating_halves(x, y)
            w = next(m for m in range(AB.subset_count)
                     if x.values[m] != y.values[m])
            a = (x.values[w] + y.values[w]) / 2
            for z in space.capacities:
                assert interval_membership(up, z) == (z.values[w] >= a)
                assert interval_membership(lo, z) == (z.values[w] <= a)
                assert interval_membership(up, z) or interval_membership(lo, z)

    def test_each_half_excludes_its_capacity(self):
        space = enumerate_capacities(AB, GRID3)
        for x, y in itertools.combinations(space.capacities, 2):
            up, lo = separating_halves(x, y)
            w = next(m for m in range(AB.subset_count)
                     if x.values[m] != y.values[m])
            smaller, larger = (x, y) if x.values[w] < y.values[w] else (y, x)
            assert not interval_membership(up, smaller)
            assert interval_membership(up, larger)
            assert not interval_membership(lo, larger)
            assert interval_membership(lo, smaller)


class TestCheckT2:
    def test_passes_on_two_point_spaces(self):
        for grid in ((0, 1), GRID3):
            space = enumerate_capacities(AB, grid)
            report = check_t2(space)
            n = len(space)
            assert report.passed
            assert report.pairs_checked == n * (n - 1) // 2
            assert report.capacity_count == n

    def test_passes_on_the_three_point_space(self):
        space = enumerate_capacities(ABC, GRID3)
        report = check_t2(space)
        assert report.passed
        assert report.pairs_checked == 129 * 128 // 2

    def test_report_shape(self):
        report = check_t2(enumerate_capacities(AB, (0, 1)))
        payload = report.to_dict()
        assert payload["passed"] is True
        assert payload["failures"] == []
        assert payload["pairs_checked"] == 6

"""Interval convexity diagnostics over exhaustively enumerated capacity spaces.

The convex sets here are order intervals [first, second] = every
capacity pointwise between the meet and join of two endpoints. Two
checks run over an exhaustively enumerated space of grid-valued
capacities:

* binarity: every pairwise-intersecting ("linked") triple of intervals
  has a common element inside the space. Intersections of intervals are
  boxes with corners given by coordinate-wise max of lower corners and
  min of upper corners; the witness candidate (the max of the lower
  corners) is itself monotone with grid values, hence a space element.
* pair separation: any two distinct capacities split the space into two
  intervals built from a witness subset and the midpoint of the two
  values there, each endpoint falling outside one half.

Scaling every value by twice the lcm of the grid denominators turns all
comparisons into exact integer comparisons (midpoints included), which
numpy and big-integer bitsets then batch without touching floats.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .capacity import (
    Domain,
    DomainMismatch,
    FiniteCapacity,
    RangeError,
    bottom_capacity,
    join,
    meet,
    top_capacity,
)

__all__ = [
    "BudgetExceeded",
    "EqualCapacities",
    "GridCapacitySpace",
    "enumerate_capacities",
    "CapacityInterval",
    "interval",
    "interval_membership",
    "BinarityReport",
    "check_binarity",
    "SeparationReport",
    "separating_halves",
    "check_t2",
]

MAX_GRID_POINTS = 5
MAX_DOMAIN_POINTS = 4
FULL_FAMILY_CAP = 18


class BudgetExceeded(Exception):
    """Requested scan is beyond the configured exhaustive budget."""


class EqualCapacities(Exception):
    """Separation needs two distinct capacities."""


@dataclass(frozen=True)
class GridCapacitySpace:
    """Every capacity on the domain whose values all lie in the grid."""

    domain: Domain
    grid: tuple[Fraction, ...]
    capacities: tuple[FiniteCapacity, ...]

    def __post_init__(self):
        object.__setattr__(
            self, "_pos", {cap.values: k for k, cap in enumerate(self.capacities)}
        )

    def index_of(self, cap: FiniteCapacity) -> int:
        try:
            return self._pos[cap.values]  # type: ignore[attr-defined]
        except KeyError:
            raise ValueError("capacity is not a member of this space") from None

    def __len__(self) -> int:
        return len(self.capacities)


def enumerate_capacities(domain: Domain, grid: Iterable[Fraction | int],
                         max_points: int = MAX_DOMAIN_POINTS,
                         max_grid: int = MAX_GRID_POINTS) -> GridCapacitySpace:
    """Exhaustively enumerate the grid-valued capacities on the domain.

    Subsets are filled in ascending cardinality order, so the only
    constraint live at each step is the maximum over the one-point-
    smaller subsets; every completion reaching the full set (forced to
    1) is a valid capacity, which construction re-validates.
    """
    values = sorted({Fraction(g) for g in grid})
    for g in values:
        if g < 0 or g > 1:
            raise RangeError(f"grid value {g} outside [0, 1]")
    if Fraction(0) not in values or Fraction(1) not in values:
        raise ValueError("grid must contain 0 and 1")
    if domain.size > max_points:
        raise BudgetExceeded(
            f"domain has {domain.size} points, exhaustive budget stops at {max_points}"
        )
    if len(values) > max_grid:
        raise BudgetExceeded(
            f"grid has {len(values)} values, exhaustive budget stops at {max_grid}"
        )

    full = domain.full_mask
    order = sorted((m for m in range(1, full)), key=lambda m: (bin(m).count("1"), m))
    table: dict[int, Fraction] = {0: Fraction(0), full: Fraction(1)}
    out: list[FiniteCapacity] = []

    def fill(pos: int) -> None:
        if pos == len(order):
            dense = [table[m] for m in range(full + 1)]
            out.append(FiniteCapacity(domain, dense))
            return
        mask = order[pos]
        floor = Fraction(0)
        m = mask
        while m:
            bit = m & -m
            below = table[mask ^ bit]
            if below > floor:
                floor = below
            m ^= bit
        for g in values:
            if g >= floor:
                table[mask] = g
                fill(pos + 1)
        del table[mask]

    fill(0)
    return GridCapacitySpace(domain, tuple(values), tuple(out))


@dataclass(frozen=True)
class CapacityInterval:
    """Order interval spanned by two capacities (corners are meet and join)."""

    first: FiniteCapacity
    second: FiniteCapacity
    lower: FiniteCapacity
    upper: FiniteCapacity


def interval(first: FiniteCapacity, second: FiniteCapacity) -> CapacityInterval:
    if first.domain.labels != second.domain.labels:
        raise DomainMismatch("interval endpoints need a common domain")
    return CapacityInterval(first, second, meet(first, second), join(first, second))


def interval_membership(iv: CapacityInterval, cap: FiniteCapacity) -> bool:
    """Pointwise lower <= cap <= upper over every subset."""
    return iv.lower <= cap and cap <= iv.upper


def _scale_of(values: Iterable[Fraction]) -> int:
    # Twice the lcm so that midpoints of grid values also land on integers.
    denom = 1
    for v in values:
        denom = denom * v.denominator // math.gcd(denom, v.denominator)
    return 2 * denom


def _scaled_matrix(space: GridCapacitySpace, scale: int) -> np.ndarray:
    rows = []
    for cap in space.capacities:
        rows.append([int(v * scale) for v in cap.values])
    return np.array(rows, dtype=np.int64)


def _pack_bool(bools: np.ndarray) -> int:
    return int.from_bytes(
        np.packbits(bools.astype(np.uint8), bitorder="little").tobytes(), "little"
    )


@dataclass(frozen=True)
class BinarityReport:
    capacity_count: int
    interval_count: int
    linked_pairs: int
    triples_checked: int
    failures: tuple[tuple[int, int, int], ...]
    full_family_sets: int | None
    seconds: float

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "capacities": self.capacity_count,
            "intervals": self.interval_count,
            "linked_pairs": self.linked_pairs,
            "triples_checked": self.triples_checked,
            "failures": [list(f) for f in self.failures],
            "full_family_sets": self.full_family_sets,
            "passed": self.passed,
            "seconds": round(self.seconds, 3),
        }


def check_binarity(space: GridCapacitySpace, full_family: bool = False,
                   interval_budget: int = 60000) -> BinarityReport:
    """Scan every linked interval triple for an empty common part.

    Intervals are the distinct corner boxes over all endpoint pairs.
    Pairwise linkage and triple verification run over exact scaled
    integers with per-interval bitsets: a triple {i, j, k} with i < j
    passes iff k's box meets the intersection box of i and j, and that
    box meets the space whenever its corners are ordered, because the
    coordinate-wise max of lower corners is itself a space element.
    """
    start = time.perf_counter()
    scale = _scale_of(space.grid)
    mat = _scaled_matrix(space, scale)
    n_caps, n_coords = mat.shape

    corner_set: set[tuple[tuple[int, ...], tuple[int, ...]]] = set()
    for i in range(n_caps):
        lo = np.minimum(mat, mat[i])
        hi = np.maximum(mat, mat[i])
        for j in range(i, n_caps):
            corner_set.add((tuple(lo[j]), tuple(hi[j])))
    corners = sorted(corner_set)
    m = len(corners)
    if m > interval_budget:
        raise BudgetExceeded(f"{m} distinct intervals exceed budget {interval_budget}")

    lo_mat = np.array([c[0] for c in corners], dtype=np.int64)
    hi_mat = np.array([c[1] for c in corners], dtype=np.int64)

    # Coordinates with any spread; constant ones (empty/full set) never cut.
    active = [c for c in range(n_coords)
              if not (lo_mat[:, c].min() == hi_mat[:, c].max())]
    value_set = sorted({int(v) for v in np.unique(mat)})
    at_most: list[dict[int, int]] = [dict() for _ in range(n_coords)]
    at_least: list[dict[int, int]] = [dict() for _ in range(n_coords)]
    for c in active:
        for v in value_set:
            at_most[c][v] = _pack_bool(lo_mat[:, c] <= v)
            at_least[c][v] = _pack_bool(hi_mat[:, c] >= v)

    rows: list[int] = []
    for i in range(m):
        linked_i = ((np.maximum(lo_mat, lo_mat[i]) <= np.minimum(hi_mat, hi_mat[i]))
                    .all(axis=1))
        rows.append(_pack_bool(linked_i))

    space_members = {tuple(int(v) for v in mat[i]): i for i in range(n_caps)}
    linked_pairs = 0
    triples_checked = 0
    failures: list[tuple[int, int, int]] = []
    reach_cache: dict[tuple[tuple[int, ...], tuple[int, ...]], int] = {}
    witness_checked = False

    for i in range(m):
        rest = rows[i] & (~0 << (i + 1))
        while rest:
            low = rest & -rest
            j = low.bit_length() - 1
            rest ^= low
            linked_pairs += 1
            cand = rows[i] & rows[j] & (~0 << (j + 1))
            if not cand:
                continue
            triples_checked += cand.bit_count()
            lo_ij = tuple(int(v) for v in np.maximum(lo_mat[i], lo_mat[j]))
            hi_ij = tuple(int(v) for v in np.minimum(hi_mat[i], hi_mat[j]))
            key = (lo_ij, hi_ij)
            reach = reach_cache.get(key)
            if reach is None:
                reach = -1
                for c in active:
                    reach &= at_most[c][hi_ij[c]] & at_least[c][lo_ij[c]]
                reach_cache[key] = reach
            bad = cand & ~reach
            while bad:
                lowb = bad & -bad
                k = lowb.bit_length() - 1
                bad ^= lowb
                failures.append((i, j, k))
                if len(failures) >= 16:
                    bad = 0
            if not witness_checked and cand:
                k = (cand & -cand).bit_length() - 1
                witness = tuple(int(v) for v in
                                np.maximum(np.maximum(lo_mat[i], lo_mat[j]), lo_mat[k]))
                wlo = np.array(witness, dtype=np.int64)
                whi = np.minimum(np.minimum(hi_mat[i], hi_mat[j]), hi_mat[k])
                if (wlo <= whi).all() and witness not in space_members:
                    raise AssertionError(
                        "triple witness corner left the space; closure broken"
                    )
                witness_checked = True

    full_family_sets = None
    if full_family:
        if m > FULL_FAMILY_CAP:
            raise BudgetExceeded(
                f"full-family scan capped at {FULL_FAMILY_CAP} intervals, have {m}"
            )
        full_family_sets = 0
        all_mask = (1 << m) - 1

        def grow(members: list[int], candidates: int, box_lo, box_hi) -> None:
            nonlocal full_family_sets
            rest = candidates
            while rest:
                low = rest & -rest
                k = low.bit_length() - 1
                rest ^= low
                nlo = np.maximum(box_lo, lo_mat[k])
                nhi = np.minimum(box_hi, hi_mat[k])
                nm = members + [k]
                if len(nm) >= 2:
                    full_family_sets += 1
                    if not (nlo <= nhi).all():
                        failures.append(tuple(nm[:3]))
                grow(nm, rest & rows[k], nlo, nhi)

        for i in range(m):
            grow([i], rows[i] & (all_mask << (i + 1)), lo_mat[i], hi_mat[i])

    return BinarityReport(
        capacity_count=n_caps,
        interval_count=m,
        linked_pairs=linked_pairs,
        triples_checked=triples_checked,
        failures=tuple(failures),
        full_family_sets=full_family_sets,
        seconds=time.perf_counter() - start,
    )


def separating_halves(first: FiniteCapacity, second: FiniteCapacity,
                      ) -> tuple[CapacityInterval, CapacityInterval]:
    """Two intervals covering all capacities, each excluding one input.

    The witness is the first subset (ascending bitmask order) where the
    two disagree; `a` is the midpoint of the two values there. The first
    returned half holds the capacities with value >= a on the witness
    (excluding the smaller input), the second those with value <= a
    (excluding the larger input).
    """
    if first.domain.labels != second.domain.labels:
        raise DomainMismatch("separation needs a common domain")
    if first.values == second.values:
        raise EqualCapacities("cannot separate a capacity from itself")
    domain = first.domain
    witness = next(m for m in range(domain.subset_count)
                   if first.values[m] != second.values[m])
    va, vb = first.values[witness], second.values[witness]
    a = (va + vb) / 2
    full = domain.full_mask

    upper_gate = FiniteCapacity(domain, [
        Fraction(1) if mask == full
        else (a if mask & witness == witness else Fraction(0))
        for mask in range(domain.subset_count)
    ])
    lower_gate = FiniteCapacity(domain, [
        Fraction(0) if mask == 0
        else (a if mask | witness == witness else Fraction(1))
        for mask in range(domain.subset_count)
    ])
    return (
        interval(upper_gate, top_capacity(domain)),
        interval(bottom_capacity(domain), lower_gate),
    )


@dataclass(frozen=True)
class SeparationReport:
    capacity_count: int
    pairs_checked: int
    failures: tuple[tuple[int, int, str], ...]
    seconds: float

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "capacities": self.capacity_count,
            "pairs_checked": self.pairs_checked,
            "failures": [list(f) for f in self.failures],
            "passed": self.passed,
            "seconds": round(self.seconds, 3),
        }


def check_t2(space: GridCapacitySpace) -> SeparationReport:
    """For every distinct pair, build the halves and verify the cover and
    the two exclusions against the whole space."""
    start = time.perf_counter()
    scale = _scale_of(space.grid)
    mat = _scaled_matrix(space, scale)
    n = len(space.capacities)
    pairs = 0
    failures: list[tuple[int, int, str]] = []

    def scaled_table(cap: FiniteCapacity) -> np.ndarray:
        vals = []
        for v in cap.values:
            s = v * scale
            if s.denominator != 1:
                raise AssertionError("scaled capacity value left the integers")
            vals.append(int(s))
        return np.array(vals, dtype=np.int64)

    for p in range(n):
        for q in range(p + 1, n):
            pairs += 1
            cap_p, cap_q = space.capacities[p], space.capacities[q]
            half_hi, half_lo = separating_halves(cap_p, cap_q)
            w = next(mask for mask in range(space.domain.subset_count)
                     if cap_p.values[mask] != cap_q.values[mask])
            smaller, larger = (p, q) if cap_p.values[w] < cap_q.values[w] else (q, p)

            in_hi = ((mat >= scaled_table(half_hi.lower)).all(axis=1)
                     & (mat <= scaled_table(half_hi.upper)).all(axis=1))
            in_lo = ((mat >= scaled_table(half_lo.lower)).all(axis=1)
                     & (mat <= scaled_table(half_lo.upper)).all(axis=1))
            if not bool((in_hi | in_lo).all()):
                failures.append((p, q, "halves do not cover the space"))
            if bool(in_hi[smaller]):
                failures.append((p, q, "smaller endpoint not excluded from upper half"))
            if bool(in_lo[larger]):
                failures.append((p, q, "larger endpoint not excluded from lower half"))
    return SeparationReport(
        capacity_count=n,
        pairs_checked=pairs,
        failures=tuple(failures),
        seconds=time.perf_counter() - start,
    )

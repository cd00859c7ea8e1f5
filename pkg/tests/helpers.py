"""Shared builders and independent oracles used across the test modules.

The oracles re-derive results straight from definitions through code
paths disjoint from the library internals, so agreement is evidence,
not tautology.
"""

from fractions import Fraction

from capgames import (
    CapacityBase,
    CorrectionMap,
    Domain,
    FiniteCapacity,
    GameSpec,
    PayoffFunction,
    SplitMix64,
    random_capacity,
)


def letters(count: int) -> Domain:
    return Domain(tuple(chr(ord("a") + k) for k in range(count)))


def coordination_game() -> GameSpec:
    return GameSpec.from_nested(
        [Domain(("A", "B")), Domain(("A", "B"))],
        [[[1, 0], [0, 1]], [[1, 0], [0, 1]]],
    )


def matching_pennies() -> GameSpec:
    return GameSpec.from_nested(
        [Domain(("H", "T")), Domain(("H", "T"))],
        [[[1, -1], [-1, 1]], [[-1, 1], [1, -1]]],
    )


def dominant_game() -> GameSpec:
    # strategy "a" strictly dominates for both players
    return GameSpec.from_nested(
        [Domain(("a", "b")), Domain(("a", "b"))],
        [[[3, 3], [0, 0]], [[3, 0], [3, 0]]],
    )


def one_strategy_game() -> GameSpec:
    return GameSpec.from_nested(
        [Domain(("only",)), Domain(("sole",))],
        [[[1]], [[2]]],
    )


def no_support_equilibrium_game() -> GameSpec:
    """2x2 game with no support-profile equilibrium (exhaustively found;
    best-response supports cycle on it)."""
    return GameSpec.from_nested(
        [Domain(("a", "b")), Domain(("a", "b"))],
        [[[-2, -1], [-1, -2]], [[-1, -2], [-2, 0]]],
    )


def satisfies_defining_inequality(t: Fraction, level: Fraction,
                                  corr: CorrectionMap) -> bool:
    """level >= inverse-correction(t), decided through the forward map:
    level 1 always passes, level 0 never does, otherwise compare
    correction(level) against t."""
    if level == 1:
        return True
    if level == 0:
        return False
    return corr.evaluate(level) >= t


def dumb_corrected_sugeno(func: PayoffFunction, cap: CapacityBase,
                          corr: CorrectionMap) -> Fraction:
    """Definition-first integral: collect every payoff value and every
    finite corrected level as a candidate threshold, keep the largest
    satisfying one."""
    candidates = set(func.values)
    for v in set(func.values):
        level = cap.value_mask(func.level_mask(v))
        if level != 0 and level != 1:
            candidates.add(corr.evaluate(level))
    best = None
    for t in sorted(candidates):
        level = cap.value_mask(func.level_mask(t))
        if satisfies_defining_inequality(t, level, corr):
            best = t
    assert best is not None
    return best


def dumb_tensor_value(first: FiniteCapacity, second: FiniteCapacity,
                      product_mask: int) -> Fraction:
    """Defining sup for one product subset by descending t-scan over the
    jump points of both step functions."""
    n2 = second.domain.size
    row = second.domain.full_mask
    sections = []
    for x in range(first.domain.size):
        sections.append(second.value_mask((product_mask >> (x * n2)) & row))
    candidates = sorted(set(sections) | set(first.values), reverse=True)
    for t in candidates:
        holders = sum(1 << x for x, s in enumerate(sections) if s >= t)
        if first.value_mask(holders) >= t:
            return t
    return Fraction(0)


def is_possibility(cap: CapacityBase) -> bool:
    """True when every value equals the max over member singletons."""
    dom = cap.domain
    singles = [cap.value_mask(1 << k) for k in range(dom.size)]
    for mask in range(1, dom.subset_count):
        expect = max(singles[k] for k in range(dom.size) if mask >> k & 1)
        if cap.value_mask(mask) != expect:
            return False
    return True


def seeded_capacity(seed: int, size: int, denominator: int = 8) -> FiniteCapacity:
    return random_capacity(letters(size), SplitMix64(seed), denominator)

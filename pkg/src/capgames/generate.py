"""Seeded instance generation with a fixed, documented 64-bit PRNG.

The generator is SplitMix64: state advances by the odd constant
0x9E3779B97F4A7C15 and each output is finalized with two xor-shift
multiplies (0xBF58476D1CE4E5B9 after a 30-bit shift, 0x94D049BB133111EB
after 27, final shift 31), all modulo 2^64. Bounded draws take the raw
output modulo n; the tiny modulo bias is irrelevant here because the
purpose is cross-run and cross-language reproducibility, not statistical
quality. Anyone can replay an instance stream from the seed alone.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .capacity import Domain, FiniteCapacity
from .game import GameSpec
from .sugeno import PayoffFunction

__all__ = [
    "SplitMix64",
    "DEFAULT_PAYOFF_VALUES",
    "random_capacity",
    "random_possibility_mask",
    "random_payoff_function",
    "random_game",
]

_MASK64 = (1 << 64) - 1
DEFAULT_PAYOFF_VALUES: tuple[Fraction, ...] = tuple(
    Fraction(v) for v in (-2, -1, 0, 1, 2))


class SplitMix64:
    """SplitMix64 stream; identical output for identical seeds."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        if n <= 0:
            raise ValueError("bound must be positive")
        return self.next_u64() % n

    def choice(self, seq: Sequence):
        return seq[self.below(len(seq))]


def random_capacity(domain: Domain, rng: SplitMix64,
                    denominator: int = 8) -> FiniteCapacity:
    """Monotone completion with values on the grid k/denominator.

    Subsets are filled in ascending (cardinality, bitmask) order; each
    value is drawn uniformly from the grid points between the maximum
    over the one-element-smaller subsets and 1. Boundary values fixed.
    """
    if denominator < 1:
        raise ValueError("denominator must be at least 1")
    full = domain.full_mask
    table: dict[int, Fraction] = {0: Fraction(0), full: Fraction(1)}
    order = sorted((m for m in range(1, full)),
                   key=lambda m: (bin(m).count("1"), m))
    for mask in order:
        floor = Fraction(0)
        m = mask
        while m:
            bit = m & -m
            below = table[mask ^ bit]
            if below > floor:
                floor = below
            m ^= bit
        # smallest numerator whose grid point is >= floor
        start = -(-floor.numerator * denominator // floor.denominator)
        num = start + rng.below(denominator - start + 1)
        table[mask] = Fraction(num, denominator)
    return FiniteCapacity(domain, [table[m] for m in range(full + 1)])


def random_possibility_mask(domain: Domain, rng: SplitMix64) -> int:
    """Uniform nonempty subset of the domain, as a bitmask."""
    return 1 + rng.below(domain.full_mask)


def random_payoff_function(domain: Domain, rng: SplitMix64,
                           values: Sequence[Fraction] = DEFAULT_PAYOFF_VALUES,
                           ) -> PayoffFunction:
    return PayoffFunction(domain,
                          tuple(rng.choice(values) for _ in domain.labels))


def _letters(count: int) -> tuple[str, ...]:
    return tuple(chr(ord("a") + k) for k in range(count))


def random_game(rng: SplitMix64, sizes: Sequence[int],
                values: Sequence[Fraction] = DEFAULT_PAYOFF_VALUES) -> GameSpec:
    """Random finite game with the given strategy counts, payoffs drawn
    uniformly from a fixed rational set so ties stay common."""
    domains = tuple(Domain(_letters(s)) for s in sizes)
    count = 1
    for s in sizes:
        count *= s
    payoffs = tuple(
        tuple(rng.choice(values) for _ in range(count))
        for _ in range(len(sizes))
    )
    return GameSpec(domains, payoffs)

"""Sugeno-style expectations of rational payoffs against capacities.

The corrected integral generalizes the classical Sugeno integral to
payoffs outside [0, 1]: a strictly increasing correction map carries
capacity levels in (0, 1) onto the whole real line, with 0 and 1 sent
to -inf / +inf. The integral of f against capacity mu is

    sup { t : mu(f >= t) >= inverse-correction(t) }

which on a finite domain is attained and equals the maximum over the
distinct payoff values v of min(v, correction(mu(f >= v))).

An independent oracle re-derives the value straight from the defining
inequality by scanning a t-grid, deciding each comparison with exact
rational bisection of the correction map. It shares no code with the
closed form beyond capacity evaluation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, Sequence

from .capacity import (
    CapacityBase,
    Domain,
    DomainMismatch,
    RangeError,
    _coerce_rational,
)
from .rational import NEG_INF, POS_INF, ExtendedValue

__all__ = [
    "BadResolution",
    "CorrectionMap",
    "default_correction",
    "logit_correction",
    "PayoffFunction",
    "sugeno_integral",
    "classical_sugeno",
    "sugeno_oracle",
]


class BadResolution(Exception):
    """Oracle resolution must be a positive rational."""


@dataclass(frozen=True)
class CorrectionMap:
    """Strictly increasing bijection (0,1) -> R with signed-infinity endpoints.

    `name` identifies the map in certificates and reports. The callable
    receives interior rationals only and must return an exact Fraction.
    """

    name: str
    _interior: Callable[[Fraction], Fraction]

    def evaluate(self, level: Fraction) -> ExtendedValue:
        if level < 0 or level > 1:
            raise RangeError(f"correction map argument {level} outside [0, 1]")
        if level == 0:
            return NEG_INF
        if level == 1:
            return POS_INF
        return self._interior(level)


def default_correction() -> CorrectionMap:
    """The exact-rational correction (2u - 1) / (u (1 - u)).

    Strictly increasing on (0, 1): the derivative's numerator is
    2u^2 - 2u + 1, which has no real roots and is positive.
    """
    def interior(u: Fraction) -> Fraction:
        return (2 * u - 1) / (u * (1 - u))

    return CorrectionMap("rational-default", interior)


def logit_correction(scale: Fraction | int = 1) -> CorrectionMap:
    """Float-backed scale * ln(u / (1 - u)), snapshotted to an exact Fraction.

    The float is converted exactly (binary expansion), so downstream
    comparisons stay deterministic even though the map itself is only
    float-accurate.
    """
    s = Fraction(scale)
    if s <= 0:
        raise ValueError("logit correction needs a positive scale")

    def interior(u: Fraction) -> Fraction:
        return Fraction(float(s) * math.log(u / (1 - u)))

    return CorrectionMap(f"logit-{s}", interior)


@dataclass(frozen=True)
class PayoffFunction:
    """Rational-valued function on a finite domain, stored by label index."""

    domain: Domain
    values: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.values) != self.domain.size:
            raise ValueError(
                f"need {self.domain.size} values, got {len(self.values)}"
            )
        object.__setattr__(
            self, "values",
            tuple(_coerce_rational(v, "payoff value") for v in self.values),
        )

    @classmethod
    def from_mapping(cls, domain: Domain,
                     mapping: Mapping[str, Fraction | int]) -> "PayoffFunction":
        missing = [lab for lab in domain.labels if lab not in mapping]
        if missing:
            raise ValueError(f"no payoff for labels {missing}")
        return cls(domain, tuple(Fraction(mapping[lab]) for lab in domain.labels))

    def value_of(self, label: str) -> Fraction:
        return self.values[self.domain.index_of(label)]

    @property
    def minimum(self) -> Fraction:
        return min(self.values)

    @property
    def maximum(self) -> Fraction:
        return max(self.values)

    def level_mask(self, threshold: Fraction) -> int:
        """Bitmask of the points with value >= threshold."""
        mask = 0
        for k, v in enumerate(self.values):
            if v >= threshold:
                mask |= 1 << k
        return mask

    def descending_levels(self) -> list[tuple[Fraction, int]]:
        """Distinct values in descending order, each with its level-set mask.

        The mask at a value v covers every point with payoff >= v, so the
        masks grow along the list.
        """
        order = sorted(set(self.values), reverse=True)
        out = []
        mask = 0
        for v in order:
            for k, x in enumerate(self.values):
                if x == v:
                    mask |= 1 << k
            out.append((v, mask))
        return out


def _check_domains(func: PayoffFunction, cap: CapacityBase) -> None:
    if func.domain.labels != cap.domain.labels:
        raise DomainMismatch(
            f"payoff domain {list(func.domain.labels)} differs from capacity "
            f"domain {list(cap.domain.labels)}"
        )


def sugeno_integral(func: PayoffFunction, cap: CapacityBase,
                    correction: CorrectionMap) -> Fraction:
    """Corrected Sugeno integral via the level-set closed form.

    Returns max over distinct payoff values v of min(v, correction(mu(f >= v))).
    The result always lands in [min f, max f]: the smallest value's level
    set is the whole domain, whose capacity is 1.
    """
    _check_domains(func, cap)
    best: Fraction | None = None
    for v, mask in func.descending_levels():
        level = cap.value_mask(mask)
        if level == 1:
            # Later values are strictly smaller, so their candidates
            # cannot beat v.
            return v if best is None or v > best else best
        if level == 0:
            continue
        corrected = correction.evaluate(level)
        candidate = v if corrected >= v else corrected  # min(v, corrected)
        if best is None or candidate > best:
            best = candidate
    raise AssertionError("unreachable: full-domain level set has capacity 1")


def classical_sugeno(func: PayoffFunction, cap: CapacityBase) -> Fraction:
    """Classical Sugeno integral for [0, 1]-valued functions.

    max over distinct values v of min(v, mu(f >= v)). Raises RangeError
    if any value leaves [0, 1].
    """
    _check_domains(func, cap)
    for v in func.values:
        if v < 0 or v > 1:
            raise RangeError(f"classical integral needs values in [0, 1], got {v}")
    return _classical_over_values(func.values, cap)


def _classical_over_values(values: Sequence[Fraction], cap: CapacityBase) -> Fraction:
    """Level-set loop shared with the tensor product; values already in [0, 1]."""
    order = sorted(set(values), reverse=True)
    best = Fraction(0)
    mask = 0
    for v in order:
        for k, x in enumerate(values):
            if x == v:
                mask |= 1 << k
        level = cap.value_mask(mask)
        if level == 1:
            return v if v > best else best
        candidate = v if level >= v else level  # min(v, level)
        if candidate > best:
            best = candidate
    return best


def _satisfies_defining_inequality(t: Fraction, level: Fraction,
                                   correction: CorrectionMap) -> bool:
    """Decide level >= inverse-correction(t) by exact monotone bisection.

    The bracket (lo, hi) always contains the inverse image of t. Once it
    excludes `level` the comparison is settled. The bracket can fail to
    exclude `level` only if they coincide, which the exact pre-check
    correction(level) == t catches, so the loop terminates.
    """
    if level == 1:
        return True
    if level == 0:
        return False
    if correction.evaluate(level) == t:
        return True
    lo, hi = Fraction(0), Fraction(1)
    for _ in range(2000):
        if level <= lo:
            return False
        if level >= hi:
            return True
        mid = (lo + hi) / 2
        c = correction.evaluate(mid)
        if c == t:
            return level >= mid
        if c < t:
            lo = mid
        else:
            hi = mid
    raise AssertionError("bisection failed to separate; correction map not increasing?")


def sugeno_oracle(func: PayoffFunction, cap: CapacityBase,
                  correction: CorrectionMap, resolution: Fraction,
                  scan: str = "binary") -> Fraction:
    """Grid-scan re-derivation of the corrected integral from its definition.

    Scans t over an arithmetic grid of the given resolution spanning
    [min f - 1, max f + 1], together with the exact payoff values, and
    returns the largest scanned t satisfying mu(f >= t) >= inverse-
    correction(t). Each comparison is decided exactly (see
    `_satisfies_defining_inequality`), so the answer matches the closed
    form within one resolution step.

    The satisfying set is downward closed: the level capacity is
    non-increasing in t while the inverse correction strictly increases.
    The default scan therefore binary-searches the grid; scan="linear"
    walks it top-down instead (kept for differential testing).
    """
    resolution = Fraction(resolution)
    if resolution <= 0:
        raise BadResolution(f"resolution must be positive, got {resolution}")
    if scan not in ("binary", "linear"):
        raise ValueError(f"unknown scan strategy {scan!r}")
    _check_domains(func, cap)

    low = func.minimum - 1
    high = func.maximum + 1
    steps = math.ceil((high - low) / resolution)

    def ok(t: Fraction) -> bool:
        return _satisfies_defining_inequality(
            t, cap.value_mask(func.level_mask(t)), correction
        )

    if scan == "linear":
        points = sorted(
            set(low + k * resolution for k in range(steps + 1)) | set(func.values),
            reverse=True,
        )
        for t in points:
            if ok(t):
                return t
        raise AssertionError("unreachable: the grid floor sits below min f")

    # Binary search for the largest satisfying grid index; k = 0 always
    # satisfies because the level set there is the full domain.
    lo_k, hi_k = 0, steps
    if ok(low + hi_k * resolution):
        best = low + hi_k * resolution
    else:
        while hi_k - lo_k > 1:
            mid = (lo_k + hi_k) // 2
            if ok(low + mid * resolution):
                lo_k = mid
            else:
                hi_k = mid
        best = low + lo_k * resolution
    for v in set(func.values):
        if v > best and ok(v):
            best = v
    return best

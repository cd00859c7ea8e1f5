"""Finite labeled domains and exact monotone set functions on them.

A capacity assigns a rational in [0, 1] to every subset of a finite
domain, is 0 on the empty set, 1 on the full set, and is monotone under
inclusion. Nothing here assumes additivity. Subsets are bitmasks over
the domain's label order (bit k is labels[k]), and dense value tables
are tuples indexed by mask.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

__all__ = [
    "CapacityError",
    "NormalizationError",
    "MonotonicityError",
    "RangeError",
    "UnknownLabel",
    "EmptySupport",
    "DomainMismatch",
    "WeightSumError",
    "DomainTooLarge",
    "MissingSubset",
    "DENSE_DOMAIN_CAP",
    "Domain",
    "CapacityBase",
    "FiniteCapacity",
    "top_capacity",
    "bottom_capacity",
    "dirac_capacity",
    "possibility_capacity",
    "probability_capacity",
    "join",
    "meet",
    "pushforward",
    "vanishes_outside",
]


class CapacityError(Exception):
    """Base for all capacity construction and lookup failures."""


class NormalizationError(CapacityError):
    """Empty set not mapped to 0 or full set not mapped to 1."""


class MonotonicityError(CapacityError):
    """A subset received a larger value than a superset."""

    def __init__(self, small: tuple[str, ...], large: tuple[str, ...],
                 small_value: Fraction, large_value: Fraction):
        self.small = small
        self.large = large
        self.small_value = small_value
        self.large_value = large_value
        super().__init__(
            f"monotonicity violated: value {small_value} on {set(small) or '{}'} "
            f"exceeds value {large_value} on {set(large) or '{}'}"
        )


class RangeError(CapacityError):
    """A value lies outside [0, 1] where the contract requires otherwise."""


class UnknownLabel(CapacityError):
    """A label is not part of the domain."""


class EmptySupport(CapacityError):
    """A possibility capacity needs a nonempty support."""


class DomainMismatch(CapacityError):
    """Two objects that must share a domain do not."""


class WeightSumError(CapacityError):
    """Probability weights must sum to exactly 1."""


class DomainTooLarge(CapacityError):
    """Dense tables are capped at 20 points (2**20 subsets)."""


class MissingSubset(CapacityError):
    """A value table does not cover some subset."""

    def __init__(self, labels: tuple[str, ...]):
        self.labels = labels
        super().__init__(f"no value given for subset {set(labels) or '{}'}")


DENSE_DOMAIN_CAP = 20

RationalLike = Union[Fraction, int]
SubsetLike = Union[int, Iterable[str]]


def _coerce_rational(value: RationalLike, context: str) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int) and not isinstance(value, bool):
        return Fraction(value)
    raise TypeError(f"{context}: expected Fraction or int, got {type(value).__name__}")


@dataclass(frozen=True)
class Domain:
    """Ordered finite set of distinct labels; subsets are bitmasks over it."""

    labels: tuple[str, ...]

    def __post_init__(self):
        if not self.labels:
            raise ValueError("domain needs at least one label")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("domain labels must be distinct")
        for lab in self.labels:
            if not isinstance(lab, str) or not lab:
                raise ValueError("domain labels must be nonempty strings")
            if "," in lab:
                raise ValueError(f"label {lab!r} may not contain ','")
        object.__setattr__(self, "_index", {lab: k for k, lab in enumerate(self.labels)})

    @property
    def size(self) -> int:
        return len(self.labels)

    @property
    def full_mask(self) -> int:
        return (1 << len(self.labels)) - 1

    @property
    def subset_count(self) -> int:
        return 1 << len(self.labels)

    def index_of(self, label: str) -> int:
        try:
            return self._index[label]  # type: ignore[attr-defined]
        except KeyError:
            raise UnknownLabel(f"label {label!r} not in domain {list(self.labels)}") from None

    def mask_of(self, labels: Iterable[str]) -> int:
        mask = 0
        for lab in labels:
            mask |= 1 << self.index_of(lab)
        return mask

    def labels_of(self, mask: int) -> tuple[str, ...]:
        self.check_mask(mask)
        return tuple(lab for k, lab in enumerate(self.labels) if mask >> k & 1)

    def check_mask(self, mask: int) -> None:
        if not 0 <= mask <= self.full_mask:
            raise ValueError(f"mask {mask} out of range for {self.size}-point domain")

    def as_mask(self, subset: SubsetLike) -> int:
        if isinstance(subset, int) and not isinstance(subset, bool):
            self.check_mask(subset)
            return subset
        return self.mask_of(subset)


class CapacityBase:
    """Evaluation contract shared by dense tables and lazy tensor evaluators."""

    domain: Domain

    def value_mask(self, mask: int) -> Fraction:
        raise NotImplementedError

    def value(self, subset: SubsetLike) -> Fraction:
        return self.value_mask(self.domain.as_mask(subset))

    def is_vacuous(self) -> bool:
        """True iff every proper subset gets 0 (the bottom capacity).

        Monotonicity makes the co-singleton values decisive, so this
        needs just one evaluation per point.
        """
        full = self.domain.full_mask
        return all(self.value_mask(full ^ (1 << k)) == 0
                   for k in range(self.domain.size))


class FiniteCapacity(CapacityBase):
    """Dense, validated, immutable capacity on a domain of at most 20 points."""

    __slots__ = ("domain", "values")

    def __init__(self, domain: Domain, values: Sequence[RationalLike]):
        if domain.size > DENSE_DOMAIN_CAP:
            raise DomainTooLarge(
                f"domain has {domain.size} points; dense tables stop at {DENSE_DOMAIN_CAP}"
            )
        table = tuple(_coerce_rational(v, "capacity value") for v in values)
        if len(table) != domain.subset_count:
            raise ValueError(
                f"need {domain.subset_count} values for a {domain.size}-point domain, "
                f"got {len(table)}"
            )
        for mask, v in enumerate(table):
            if v < 0 or v > 1:
                raise RangeError(
                    f"value {v} on {set(domain.labels_of(mask)) or '{}'} outside [0, 1]"
                )
        if table[0] != 0:
            raise NormalizationError(f"empty set must get 0, got {table[0]}")
        if table[domain.full_mask] != 1:
            raise NormalizationError(f"full set must get 1, got {table[domain.full_mask]}")
        # Cover pairs suffice: A <= A + {x} for every x outside A implies
        # monotonicity for all nested pairs by transitivity.
        for mask in range(domain.subset_count):
            v = table[mask]
            rest = domain.full_mask & ~mask
            while rest:
                bit = rest & -rest
                if v > table[mask | bit]:
                    raise MonotonicityError(
                        domain.labels_of(mask), domain.labels_of(mask | bit),
                        v, table[mask | bit],
                    )
                rest ^= bit
        object.__setattr__(self, "domain", domain)
        object.__setattr__(self, "values", table)

    def __setattr__(self, name, value):
        raise AttributeError("FiniteCapacity is immutable")

    def value_mask(self, mask: int) -> Fraction:
        return self.values[mask]

    @classmethod
    def from_table(cls, domain: Domain,
                   table: Mapping[frozenset, RationalLike] | Mapping[tuple, RationalLike],
                   ) -> "FiniteCapacity":
        """Build from a mapping keyed by label collections; every subset required."""
        by_mask: dict[int, Fraction] = {}
        for key, val in table.items():
            by_mask[domain.mask_of(key)] = _coerce_rational(val, "capacity value")
        values = []
        for mask in range(domain.subset_count):
            if mask not in by_mask:
                raise MissingSubset(domain.labels_of(mask))
            values.append(by_mask[mask])
        return cls(domain, values)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiniteCapacity):
            return NotImplemented
        return self.domain.labels == other.domain.labels and self.values == other.values

    def __hash__(self) -> int:
        return hash((self.domain.labels, self.values))

    def __le__(self, other: "FiniteCapacity") -> bool:
        """Pointwise order over every subset."""
        _require_same_domain(self, other)
        return all(a <= b for a, b in zip(self.values, other.values))

    def __repr__(self) -> str:
        pairs = ", ".join(
            f"{set(self.domain.labels_of(m)) or '{}'}: {v}"
            for m, v in enumerate(self.values)
        )
        return f"FiniteCapacity({pairs})"


def _require_same_domain(a: CapacityBase, b: CapacityBase) -> None:
    if a.domain.labels != b.domain.labels:
        raise DomainMismatch(
            f"domains differ: {list(a.domain.labels)} vs {list(b.domain.labels)}"
        )


def top_capacity(domain: Domain) -> FiniteCapacity:
    """1 on every nonempty subset."""
    return FiniteCapacity(
        domain, [Fraction(0)] + [Fraction(1)] * (domain.subset_count - 1)
    )


def bottom_capacity(domain: Domain) -> FiniteCapacity:
    """0 on every proper subset; the minimum of the pointwise order."""
    values = [Fraction(0)] * domain.subset_count
    values[domain.full_mask] = Fraction(1)
    return FiniteCapacity(domain, values)


def dirac_capacity(domain: Domain, label: str) -> FiniteCapacity:
    """Point mass: 1 exactly on subsets containing the label."""
    bit = 1 << domain.index_of(label)
    return FiniteCapacity(
        domain,
        [Fraction(1) if mask & bit else Fraction(0)
         for mask in range(domain.subset_count)],
    )


def possibility_capacity(domain: Domain, support: Iterable[str]) -> FiniteCapacity:
    """1 exactly on subsets meeting the support set."""
    smask = domain.mask_of(support)
    if smask == 0:
        raise EmptySupport("possibility capacity needs a nonempty support")
    return FiniteCapacity(
        domain,
        [Fraction(1) if mask & smask else Fraction(0)
         for mask in range(domain.subset_count)],
    )


def probability_capacity(domain: Domain,
                         weights: Mapping[str, RationalLike]) -> FiniteCapacity:
    """Additive capacity from point weights; weights must sum to exactly 1."""
    per_point = []
    for lab in domain.labels:
        if lab not in weights:
            raise UnknownLabel(f"no weight for label {lab!r}")
        w = _coerce_rational(weights[lab], "weight")
        if w < 0:
            raise RangeError(f"negative weight {w} for label {lab!r}")
        per_point.append(w)
    for lab in weights:
        domain.index_of(lab)
    total = sum(per_point, Fraction(0))
    if total != 1:
        raise WeightSumError(f"weights sum to {total}, need exactly 1")
    values = []
    for mask in range(domain.subset_count):
        acc = Fraction(0)
        m = mask
        while m:
            bit = m & -m
            acc += per_point[bit.bit_length() - 1]
            m ^= bit
        values.append(acc)
    return FiniteCapacity(domain, values)


def join(a: FiniteCapacity, b: FiniteCapacity) -> FiniteCapacity:
    """Pointwise maximum; the least upper bound in the capacity lattice."""
    _require_same_domain(a, b)
    return FiniteCapacity(a.domain, [max(x, y) for x, y in zip(a.values, b.values)])


def meet(a: FiniteCapacity, b: FiniteCapacity) -> FiniteCapacity:
    """Pointwise minimum; the greatest lower bound in the capacity lattice."""
    _require_same_domain(a, b)
    return FiniteCapacity(a.domain, [min(x, y) for x, y in zip(a.values, b.values)])


def pushforward(cap: FiniteCapacity, mapping: Mapping[str, str],
                codomain: Domain) -> FiniteCapacity:
    """Image capacity along a point map: value(A) = cap(preimage of A).

    The mapping must cover every point of cap's domain and land in the
    codomain. Boundary and monotonicity survive automatically but are
    re-validated on construction.
    """
    preimage_bits = []
    for k, lab in enumerate(cap.domain.labels):
        if lab not in mapping:
            raise UnknownLabel(f"map gives no image for label {lab!r}")
        target = mapping[lab]
        preimage_bits.append((1 << k, 1 << codomain.index_of(target)))
    values = []
    for mask in range(codomain.subset_count):
        pre = 0
        for src_bit, dst_bit in preimage_bits:
            if mask & dst_bit:
                pre |= src_bit
        values.append(cap.values[pre])
    return FiniteCapacity(codomain, values)


def vanishes_outside(cap: CapacityBase, subset: SubsetLike) -> bool:
    """True iff the capacity gives 0 to the complement of the subset.

    With monotonicity this pins every subset of the complement to 0, so
    the capacity is carried by the given set.
    """
    mask = cap.domain.as_mask(subset)
    return cap.value_mask(cap.domain.full_mask ^ mask) == 0

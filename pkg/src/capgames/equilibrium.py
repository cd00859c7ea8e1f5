"""Equilibrium checking and search for games with capacity beliefs.

A belief system gives every player a capacity over the joint choices of
the others. It is an equilibrium when each player's belief puts exactly
zero weight outside the box of everyone else's best responses. The
search side restricts candidates to beliefs built from support profiles:
each player's strategy set carries a possibility capacity on a nonempty
support, and player i's belief is the tensor product of the others'
possibility capacities in ascending player order. That candidate space
is finite, so the scan is exhaustive under a budget.

Supports admit a purely combinatorial test: a profile passes iff every
player's support sits inside their own best-response set against it.
Both the measure condition and the set condition are computed and
reported so their agreement stays observable.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .capacity import (
    CapacityBase,
    Domain,
    DomainMismatch,
    EmptySupport,
    FiniteCapacity,
    possibility_capacity,
)
from .convexity import BudgetExceeded, enumerate_capacities
from .game import GameSpec, best_response, opponent_domain
from .rational import format_rational
from .sugeno import CorrectionMap, default_correction
from .tensor import lazy_tensor

__all__ = [
    "DEFAULT_PROFILE_BUDGET",
    "SupportProfile",
    "BeliefSystem",
    "EquilibriumCertificate",
    "CycleReport",
    "is_equilibrium",
    "check_support_profile",
    "find_equilibria_supports",
    "iterate_best_response_supports",
    "find_equilibria_grid",
    "pure_nash",
]

DEFAULT_PROFILE_BUDGET = 1 << 24


@dataclass(frozen=True)
class SupportProfile:
    """One nonempty strategy subset per player, as bitmask plus labels."""

    masks: tuple[int, ...]
    labels: tuple[tuple[str, ...], ...]

    @classmethod
    def from_masks(cls, game: GameSpec, masks: Sequence[int]) -> "SupportProfile":
        if len(masks) != game.n_players:
            raise ValueError("one support per player required")
        labels = []
        for j, mask in enumerate(masks):
            dom = game.strategy_domains[j]
            dom.check_mask(mask)
            if mask == 0:
                raise EmptySupport(f"player {j} support is empty")
            labels.append(dom.labels_of(mask))
        return cls(tuple(int(m) for m in masks), tuple(labels))

    @classmethod
    def from_labels(cls, game: GameSpec,
                    groups: Sequence[Iterable[str]]) -> "SupportProfile":
        if len(groups) != game.n_players:
            raise ValueError("one support per player required")
        masks = [game.strategy_domains[j].as_mask(g) for j, g in enumerate(groups)]
        return cls.from_masks(game, masks)

    @classmethod
    def full(cls, game: GameSpec) -> "SupportProfile":
        return cls.from_masks(game, [d.full_mask for d in game.strategy_domains])


@dataclass(frozen=True)
class BeliefSystem:
    """One capacity per player over the flat product of the others'
    strategies."""

    beliefs: tuple[CapacityBase, ...]

    @classmethod
    def for_game(cls, game: GameSpec,
                 beliefs: Sequence[CapacityBase]) -> "BeliefSystem":
        system = cls(tuple(beliefs))
        _validate_system(game, system)
        return system


def _validate_system(game: GameSpec, system: BeliefSystem) -> None:
    if len(system.beliefs) != game.n_players:
        raise DomainMismatch("one belief per player required")
    for i, belief in enumerate(system.beliefs):
        expected = opponent_domain(game, i).flat.labels
        if belief.domain.labels != expected:
            raise DomainMismatch(
                f"player {i} belief lives on {list(belief.domain.labels)}, "
                f"opponent product is {list(expected)}"
            )


@dataclass(frozen=True)
class EquilibriumCertificate:
    """Verification record: best responses, per-player belief mass outside
    the best-response box (all exactly zero iff equilibrium), and the
    correction map used."""

    beliefs: BeliefSystem
    best_responses: tuple[tuple[str, ...], ...]
    residuals: tuple[Fraction, ...]
    correction_name: str
    degenerate_players: tuple[int, ...]
    supports: SupportProfile | None = None
    supports_within_responses: bool | None = None

    @property
    def holds(self) -> bool:
        return all(r == 0 for r in self.residuals)

    def to_dict(self) -> dict:
        out = {
            "equilibrium": self.holds,
            "correction": self.correction_name,
            "best_responses": [list(r) for r in self.best_responses],
            "residuals": [format_rational(r) for r in self.residuals],
            "degenerate_players": list(self.degenerate_players),
        }
        if self.supports is not None:
            out["supports"] = [list(s) for s in self.supports.labels]
            out["supports_within_responses"] = self.supports_within_responses
        return out


def is_equilibrium(game: GameSpec,
                   beliefs: Union[BeliefSystem, Sequence[CapacityBase]],
                   correction: CorrectionMap | None = None,
                   ) -> EquilibriumCertificate:
    """Evaluate each belief on the complement of the others' joint
    best-response box; the equilibrium flag is the conjunction of exact
    zero tests. Vacuous beliefs (zero on every proper subset) pass by
    construction and are flagged, not filtered."""
    corr = correction if correction is not None else default_correction()
    system = beliefs if isinstance(beliefs, BeliefSystem) else BeliefSystem(
        tuple(beliefs))
    _validate_system(game, system)

    responses = tuple(best_response(game, i, system.beliefs[i], corr)
                      for i in range(game.n_players))
    residuals = []
    for i in range(game.n_players):
        opp = opponent_domain(game, i)
        coord_masks = [game.strategy_domains[j].as_mask(responses[j])
                       for j in range(game.n_players) if j != i]
        box = opp.mask_of_box(coord_masks)
        residuals.append(
            system.beliefs[i].value_mask(opp.flat.full_mask & ~box))
    degenerate = tuple(i for i in range(game.n_players)
                       if system.beliefs[i].is_vacuous())
    return EquilibriumCertificate(
        beliefs=system,
        best_responses=responses,
        residuals=tuple(residuals),
        correction_name=corr.name,
        degenerate_players=degenerate,
    )


def _profile_beliefs(game: GameSpec, profile: SupportProfile) -> BeliefSystem:
    caps = [possibility_capacity(game.strategy_domains[j], profile.labels[j])
            for j in range(game.n_players)]
    beliefs = []
    for i in range(game.n_players):
        factors = [caps[j] for j in range(game.n_players) if j != i]
        beliefs.append(lazy_tensor(factors))
    return BeliefSystem(tuple(beliefs))


def check_support_profile(game: GameSpec, profile: SupportProfile,
                          correction: CorrectionMap | None = None,
                          ) -> EquilibriumCertificate:
    """Check the belief system induced by a support profile: player i
    believes the tensor product of the others' possibility capacities.
    Also reports whether each support sits inside its own best-response
    set, the combinatorial form of the same condition."""
    if len(profile.masks) != game.n_players:
        raise ValueError("profile does not match the player count")
    for j, mask in enumerate(profile.masks):
        game.strategy_domains[j].check_mask(mask)
        if mask == 0:
            raise EmptySupport(f"player {j} support is empty")

    cert = is_equilibrium(game, _profile_beliefs(game, profile), correction)
    within = all(
        profile.masks[j] & ~game.strategy_domains[j].as_mask(cert.best_responses[j])
        == 0
        for j in range(game.n_players)
    )
    return replace(cert, supports=profile, supports_within_responses=within)


def find_equilibria_supports(game: GameSpec,
                             correction: CorrectionMap | None = None,
                             budget: int = DEFAULT_PROFILE_BUDGET,
                             ) -> list[tuple[SupportProfile, EquilibriumCertificate]]:
    """Exhaustive scan over all support profiles in ascending-bitmask
    order (player 0 slowest), returning every profile that passes."""
    total = 1
    for d in game.strategy_domains:
        total *= (1 << d.size) - 1
    if total > budget:
        raise BudgetExceeded(
            f"{total} candidate profiles exceed the budget {budget}")
    hits: list[tuple[SupportProfile, EquilibriumCertificate]] = []
    for masks in itertools.product(
            *(range(1, 1 << d.size) for d in game.strategy_domains)):
        profile = SupportProfile.from_masks(game, masks)
        cert = check_support_profile(game, profile, correction)
        if cert.holds:
            hits.append((profile, cert))
    return hits


@dataclass(frozen=True)
class CycleReport:
    """Best-response support iteration that failed to stabilize.

    `trajectory` lists the visited profiles in order; `cycle_start` is
    the index the final update returned to, or None when the iteration
    budget ran out before any repeat."""

    trajectory: tuple[SupportProfile, ...]
    cycle_start: int | None

    @property
    def cycle(self) -> tuple[SupportProfile, ...]:
        if self.cycle_start is None:
            return ()
        return self.trajectory[self.cycle_start:]


def iterate_best_response_supports(game: GameSpec,
                                   correction: CorrectionMap | None = None,
                                   max_iters: int = 64,
                                   ) -> Union[SupportProfile, CycleReport]:
    """Iterate S <- best responses against the beliefs built from S,
    starting from full supports. Returns the first stable profile
    (its stability check doubles as verification) or a cycle report."""
    if max_iters < 1:
        raise ValueError("max_iters must be at least 1")
    current = SupportProfile.full(game)
    seen = {current.masks: 0}
    trajectory = [current]
    for _ in range(max_iters):
        cert = check_support_profile(game, current, correction)
        nxt = tuple(game.strategy_domains[j].as_mask(cert.best_responses[j])
                    for j in range(game.n_players))
        if nxt == current.masks:
            if not cert.holds:
                raise AssertionError("stable support profile failed verification")
            return current
        if nxt in seen:
            return CycleReport(tuple(trajectory), seen[nxt])
        current = SupportProfile.from_masks(game, nxt)
        seen[current.masks] = len(trajectory)
        trajectory.append(current)
    return CycleReport(tuple(trajectory), None)


def find_equilibria_grid(game: GameSpec, grid: Iterable[Fraction | int],
                         correction: CorrectionMap | None = None,
                         budget: int = DEFAULT_PROFILE_BUDGET,
                         ) -> list[BeliefSystem]:
    """Brute-force ground truth on tiny games: enumerate every belief
    system whose capacities take values in the grid and return the ones
    passing is_equilibrium, in enumeration order."""
    spaces = [enumerate_capacities(opponent_domain(game, i).flat, grid)
              for i in range(game.n_players)]
    total = 1
    for s in spaces:
        total *= len(s)
    if total > budget:
        raise BudgetExceeded(
            f"{total} candidate belief systems exceed the budget {budget}")
    out: list[BeliefSystem] = []
    for combo in itertools.product(*(s.capacities for s in spaces)):
        cert = is_equilibrium(game, combo, correction)
        if cert.holds:
            out.append(cert.beliefs)
    return out


def pure_nash(game: GameSpec) -> list[tuple[str, ...]]:
    """Classical exhaustive pure Nash scan by payoff comparison,
    profiles in ascending strategy-index order."""
    hits: list[tuple[str, ...]] = []
    for combo in itertools.product(*(range(d.size) for d in game.strategy_domains)):
        stable = True
        for i in range(game.n_players):
            base = game.payoff(i, combo)
            for alt in range(game.strategy_domains[i].size):
                if alt == combo[i]:
                    continue
                deviated = list(combo)
                deviated[i] = alt
                if game.payoff(i, deviated) > base:
                    stable = False
                    break
            if not stable:
                break
        if stable:
            hits.append(tuple(d.labels[k]
                              for d, k in zip(game.strategy_domains, combo)))
    return hits

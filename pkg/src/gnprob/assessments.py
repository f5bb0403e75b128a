"""Assessments, layered (full conditional) probabilities and credal sets.

An :class:`Assessment` is a finite list of conditional gambles with
assessed values, tagged as precise, lower or upper. Values are not
clamped to any range at construction: whether they satisfy the necessary
consistency conditions (probabilities in [0, 1], 0 on the empty event, 1
on sure conditional events) is a consequence of the coherence checks,
and feeding deliberately broken assessments to those checks is part of
the test surface. Use :meth:`Assessment.necessary_condition_violations`
to inspect event entries directly.

A :class:`LayeredProbability` is a stack of probability measures with
pairwise disjoint supports covering the universe. Conditioning on B uses
the first layer giving B positive mass, so zero-probability conditioning
events are handled exactly; on a finite universe these stacks realise
exactly the coherent full conditional probabilities. A
:class:`CredalSet` is a finite set of such measures; its pointwise
minimum and maximum over members provide lower and upper envelopes.
Both types expose ``lower``/``upper`` evaluators accepting events,
gambles, conditional events and conditional gambles, which is the
interface the extension and inequality modules consume.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from .algebra import (
    ConditionalEvent,
    ConditionalGamble,
    Event,
    Gamble,
    RationalLike,
    Universe,
    as_fraction,
)
from .errors import UniverseMismatchError, ValidationError

Evaluable = Union[Event, Gamble, ConditionalEvent, ConditionalGamble]

KINDS = ("precise", "lower", "upper")
CONSISTENCY_CLASSES = ("dF", "W", "convex", "1convex")

_CLASS_ALIASES = {
    "df": "dF",
    "w": "W",
    "convex": "convex",
    "c-convex": "convex",
    "cconvex": "convex",
    "1convex": "1convex",
    "1-convex": "1convex",
}


def normalize_class(name: str) -> str:
    """Canonical spelling of a consistency class name."""
    try:
        return _CLASS_ALIASES[name.strip().lower()]
    except (KeyError, AttributeError):
        raise ValidationError(
            f"unknown consistency class {name!r}; expected one of {CONSISTENCY_CLASSES}"
        ) from None


def _as_conditional_gamble(obj: Evaluable) -> ConditionalGamble:
    if isinstance(obj, ConditionalGamble):
        return obj
    if isinstance(obj, ConditionalEvent):
        return ConditionalGamble.from_event(obj)
    if isinstance(obj, Gamble):
        return ConditionalGamble(obj, obj.universe.omega)
    if isinstance(obj, Event):
        return ConditionalGamble(Gamble.indicator(obj), obj.universe.omega)
    raise ValidationError(f"cannot evaluate object of type {type(obj).__name__}")


@dataclass(frozen=True)
class Assessment:
    """Finite list of (conditional gamble, value) pairs with a class tag."""

    entries: tuple[tuple[ConditionalGamble, Fraction], ...]
    kind: str = "precise"
    consistency: Optional[str] = None

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValidationError(f"kind must be one of {KINDS}, got {self.kind!r}")
        if self.consistency is not None:
            object.__setattr__(self, "consistency", normalize_class(self.consistency))
        cleaned: list[tuple[ConditionalGamble, Fraction]] = []
        values: dict[ConditionalGamble, Fraction] = {}
        universe = None
        for gamble, value in self.entries:
            if not isinstance(gamble, ConditionalGamble):
                gamble = _as_conditional_gamble(gamble)
            value = as_fraction(value)
            if universe is None:
                universe = gamble.universe
            elif gamble.universe != universe:
                raise UniverseMismatchError("assessment entries live on different universes")
            if gamble in values:
                if values[gamble] != value:
                    raise ValidationError(
                        f"conflicting values {values[gamble]} and {value} for {gamble!r}"
                    )
                continue
            values[gamble] = value
            cleaned.append((gamble, value))
        object.__setattr__(self, "entries", tuple(cleaned))

    @property
    def universe(self) -> Optional[Universe]:
        return self.entries[0][0].universe if self.entries else None

    def __len__(self) -> int:
        return len(self.entries)

    def gambles(self) -> tuple[ConditionalGamble, ...]:
        return tuple(g for g, _ in self.entries)

    def values(self) -> tuple[Fraction, ...]:
        return tuple(v for _, v in self.entries)

    def with_entry(self, gamble: Evaluable, value: RationalLike) -> Assessment:
        entry = (_as_conditional_gamble(gamble), as_fraction(value))
        return Assessment(self.entries + (entry,), self.kind, self.consistency)

    def restricted(self, indices: Iterable[int]) -> Assessment:
        picked = tuple(self.entries[i] for i in indices)
        return Assessment(picked, self.kind, self.consistency)

    def necessary_condition_violations(self) -> list[str]:
        """Event entries breaking the necessary consistency conditions:
        a probability outside [0, 1], a nonzero value on an empty
        conditional event, or a value other than 1 on B|B."""
        problems = []
        for gamble, value in self.entries:
            on = gamble.conditioning
            payoffs = {gamble.payoff.values[i] for i in on.indices()}
            if not payoffs <= {Fraction(0), Fraction(1)}:
                continue
            if payoffs == {Fraction(0)} and value != 0:
                problems.append(f"{gamble!r}: empty conditional event valued {value}, not 0")
            elif payoffs == {Fraction(1)} and value != 1:
                problems.append(f"{gamble!r}: sure conditional event valued {value}, not 1")
            elif not 0 <= value <= 1:
                problems.append(f"{gamble!r}: event probability {value} outside [0, 1]")
        return problems


class LayeredProbability:
    """Full conditional probability as a stack of layer measures."""

    __slots__ = ("universe", "layers")

    def __init__(self, universe: Universe, layers: Sequence[Sequence[RationalLike]]):
        stacked = []
        covered = 0
        for depth, layer in enumerate(layers):
            masses = tuple(as_fraction(v) for v in layer)
            if len(masses) != universe.size:
                raise ValidationError(f"layer {depth}: expected {universe.size} masses")
            if any(m < 0 for m in masses):
                raise ValidationError(f"layer {depth}: negative mass")
            if sum(masses) != 1:
                raise ValidationError(f"layer {depth}: masses must sum to 1")
            support = 0
            for i, m in enumerate(masses):
                if m > 0:
                    support |= 1 << i
            if support & covered:
                raise ValidationError(f"layer {depth}: support overlaps an earlier layer")
            covered |= support
            stacked.append(masses)
        if not stacked:
            raise ValidationError("at least one layer is required")
        if covered != (1 << universe.size) - 1:
            raise ValidationError("layer supports must cover the whole universe")
        object.__setattr__(self, "universe", universe)
        object.__setattr__(self, "layers", tuple(stacked))

    def __setattr__(self, name, value):
        raise AttributeError("LayeredProbability is immutable")

    def support(self, depth: int) -> Event:
        mask = 0
        for i, m in enumerate(self.layers[depth]):
            if m > 0:
                mask |= 1 << i
        return Event(self.universe, mask)

    def _mass(self, depth: int, mask: int) -> Fraction:
        layer = self.layers[depth]
        return sum(
            (layer[i] for i in range(self.universe.size) if (mask >> i) & 1),
            Fraction(0),
        )

    def probability(self, ce: ConditionalEvent) -> Fraction:
        """P(A|B) from the first layer giving B positive mass."""
        if ce.universe != self.universe:
            raise UniverseMismatchError("conditional event on a different universe")
        for depth in range(len(self.layers)):
            denom = self._mass(depth, ce.conditioning.mask)
            if denom > 0:
                return self._mass(depth, ce.conditioned.mask) / denom
        raise AssertionError("layer supports cover the universe; unreachable")

    def prevision(self, cg: ConditionalGamble) -> Fraction:
        """P(X|B): expectation of X under the first layer charging B,
        renormalized on B."""
        if cg.universe != self.universe:
            raise UniverseMismatchError("conditional gamble on a different universe")
        b = cg.conditioning.mask
        for depth in range(len(self.layers)):
            denom = self._mass(depth, b)
            if denom > 0:
                layer = self.layers[depth]
                total = sum(
                    (cg.payoff.values[i] * layer[i] for i in cg.conditioning.indices()),
                    Fraction(0),
                )
                return total / denom
        raise AssertionError("layer supports cover the universe; unreachable")

    def value(self, obj: Evaluable) -> Fraction:
        if isinstance(obj, ConditionalEvent):
            return self.probability(obj)
        return self.prevision(_as_conditional_gamble(obj))

    # Evaluator protocol: a precise measure is its own envelope.
    lower = value
    upper = value

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LayeredProbability)
            and self.universe == other.universe
            and self.layers == other.layers
        )

    def __hash__(self) -> int:
        return hash((self.universe, self.layers))

    def __repr__(self) -> str:
        return f"LayeredProbability({len(self.layers)} layers on {self.universe.worlds})"


class CredalSet:
    """A nonempty finite set of layered probabilities on one universe."""

    __slots__ = ("members",)

    def __init__(self, members: Sequence[LayeredProbability]):
        members = tuple(members)
        if not members:
            raise ValidationError("a credal set needs at least one member")
        universe = members[0].universe
        for m in members:
            if m.universe != universe:
                raise UniverseMismatchError("credal set members on different universes")
        object.__setattr__(self, "members", members)

    def __setattr__(self, name, value):
        raise AttributeError("CredalSet is immutable")

    @property
    def universe(self) -> Universe:
        return self.members[0].universe

    def lower(self, obj: Evaluable) -> Fraction:
        return min(m.value(obj) for m in self.members)

    def upper(self, obj: Evaluable) -> Fraction:
        return max(m.value(obj) for m in self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __eq__(self, other) -> bool:
        return isinstance(other, CredalSet) and self.members == other.members

    def __hash__(self) -> int:
        return hash(self.members)

    def __repr__(self) -> str:
        return f"CredalSet({len(self.members)} members on {self.universe.worlds})"


# ---------------------------------------------------------------------------
# Seeded generators for the test harness


def random_layered(seed: int, universe: Universe, max_layers: int = 2) -> LayeredProbability:
    """Deterministic random full conditional probability.

    Layer supports are a random ordered set partition of the worlds;
    masses are random positive rationals normalized per layer.
    """
    if max_layers < 1:
        raise ValidationError("max_layers must be at least 1")
    rng = random.Random(seed)
    n = universe.size
    depth = rng.randint(1, min(max_layers, n))
    order = list(range(n))
    rng.shuffle(order)
    cuts = sorted(rng.sample(range(1, n), depth - 1)) if depth > 1 else []
    bounds = [0] + cuts + [n]
    layers = []
    for k in range(depth):
        chunk = order[bounds[k] : bounds[k + 1]]
        weights = {i: rng.randint(1, 9) for i in chunk}
        total = sum(weights.values())
        layers.append(
            [Fraction(weights.get(i, 0), total) for i in range(n)]
        )
    return LayeredProbability(universe, layers)


def random_credal(seed: int, universe: Universe, size: int, max_layers: int = 2) -> CredalSet:
    """Deterministic random credal set of ``size`` layered members."""
    if size < 1:
        raise ValidationError("size must be at least 1")
    rng = random.Random(seed)
    member_seeds = [rng.randrange(2**30) for _ in range(size)]
    return CredalSet([random_layered(s, universe, max_layers) for s in member_seeds])

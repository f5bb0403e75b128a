"""Closed-form extension of full conditional assessments to new events.

Given an uncertainty measure defined on every conditional event built
from a partition's field, the consistent values for an arbitrary new
conditional event C|D form a closed interval whose endpoints are the
measure's values at two derived measurable conditional events: the
GN-greatest measurable event below C|D (its inner event) and the
GN-least one above it (its outer event). Both are assembled from the
unconditional inner and outer approximations of the true part C and D
and the false part (not C) and D. Evaluating the measure at the inner
event gives the natural extension (the least-committal consistent one),
for convex measures the convex natural extension; evaluating at the
outer event gives the upper extension, the one no other consistent
extension dominates.

Measures enter as plain callables from conditional events to rationals,
because each extension needs the measure at just two derived points.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, Optional, Sequence

from .algebra import (
    ConditionalEvent,
    ConditionalGamble,
    Event,
    Partition,
    _require_same_universe,
    inner_event,
    outer_event,
)
from .assessments import Assessment, LayeredProbability
from .errors import (
    EnumerationLimitError,
    TrivialTargetError,
    UnsupportedOperationError,
    ValidationError,
)
from .gn import gn_leq_events

Evaluator = Callable[[ConditionalEvent], Fraction]

MAX_BLOCKS = 12


def _require_nontrivial(cd: ConditionalEvent) -> None:
    if cd.is_trivial:
        raise TrivialTargetError(
            "trivial conditional event: its value is forced by the necessary "
            "consistency conditions (0 for an empty conditioned part, 1 when "
            "the conditioned part equals the conditioning event)"
        )


@dataclass(frozen=True)
class ExtensionInterval:
    """Closed interval of consistent values for one target, with the two
    measurable conditional events that produce its endpoints."""

    target: ConditionalEvent
    low: Fraction
    high: Fraction
    low_witness: ConditionalEvent
    high_witness: ConditionalEvent

    def __post_init__(self) -> None:
        if self.low > self.high:
            raise ValidationError(
                f"interval endpoints out of order: {self.low} > {self.high}; "
                "the evaluator is not monotone for the GN relation"
            )


def conditional_inner(cd: ConditionalEvent, p: Partition) -> Optional[ConditionalEvent]:
    """The GN-greatest p-measurable conditional event below cd: inner
    approximation of the true part, conditioned on that plus the outer
    approximation of the false part. None when the conditioning event
    degenerates to empty (possible only for trivial cd)."""
    _require_same_universe(cd.conditioning, p)
    true_in = inner_event(cd.conditioned, p)
    false_out = outer_event(cd.false_part, p)
    conditioning = true_in | false_out
    if conditioning.is_empty:
        return None
    return ConditionalEvent(true_in, conditioning)


def conditional_outer(cd: ConditionalEvent, p: Partition) -> Optional[ConditionalEvent]:
    """The GN-least p-measurable conditional event above cd; dual of
    :func:`conditional_inner`."""
    _require_same_universe(cd.conditioning, p)
    true_out = outer_event(cd.conditioned, p)
    false_in = inner_event(cd.false_part, p)
    conditioning = true_out | false_in
    if conditioning.is_empty:
        return None
    return ConditionalEvent(true_out, conditioning)


def iter_conditional_domain(p: Partition) -> Iterator[ConditionalEvent]:
    """Every conditional event with both parts measurable for ``p``."""
    if len(p.blocks) > MAX_BLOCKS:
        raise EnumerationLimitError(
            f"{len(p.blocks)} blocks exceed the enumeration cap of {MAX_BLOCKS}"
        )
    masks = [b.mask for b in p.blocks]
    for choice in range(1, 1 << len(masks)):
        b_mask = 0
        for i, bm in enumerate(masks):
            if (choice >> i) & 1:
                b_mask |= bm
        conditioning = Event(p.universe, b_mask)
        sub = choice
        while True:
            a_mask = 0
            for i, bm in enumerate(masks):
                if (sub >> i) & 1:
                    a_mask |= bm
            yield ConditionalEvent(Event(p.universe, a_mask), conditioning)
            if sub == 0:
                break
            sub = (sub - 1) & choice


def gn_lower_set(cd: ConditionalEvent, p: Partition) -> list[ConditionalEvent]:
    """All measurable conditional events GN-below cd, by enumeration."""
    _require_nontrivial(cd)
    return [ab for ab in iter_conditional_domain(p) if gn_leq_events(ab, cd)]


def gn_upper_set(cd: ConditionalEvent, p: Partition) -> list[ConditionalEvent]:
    """All measurable conditional events GN-above cd, by enumeration."""
    _require_nontrivial(cd)
    return [ab for ab in iter_conditional_domain(p) if gn_leq_events(cd, ab)]


def extension_interval(mu: Evaluator, cd: ConditionalEvent, p: Partition) -> ExtensionInterval:
    """The closed interval of values consistent with ``mu`` for cd."""
    _require_nontrivial(cd)
    low_witness = conditional_inner(cd, p)
    high_witness = conditional_outer(cd, p)
    if low_witness is None or high_witness is None:
        raise ValidationError("degenerate target: inner or outer conditional event undefined")
    return ExtensionInterval(cd, mu(low_witness), mu(high_witness), low_witness, high_witness)


def natural_extension(
    mu: Evaluator,
    targets: Sequence[ConditionalEvent],
    p: Partition,
    side: str = "lower",
) -> list[Fraction]:
    """Least-committal consistent values at the targets.

    With a lower (or precise) evaluator use side="lower": each target is
    valued at its inner conditional event. With an upper evaluator use
    side="upper": each target is valued at its outer conditional event.
    The same formulas give the convex natural extension when the
    evaluator is convex rather than coherent.
    """
    if side not in ("lower", "upper"):
        raise ValidationError("side must be 'lower' or 'upper'")
    derive = conditional_inner if side == "lower" else conditional_outer
    results = []
    for cd in targets:
        _require_nontrivial(cd)
        witness = derive(cd, p)
        if witness is None:
            raise ValidationError("degenerate target")
        results.append(mu(witness))
    return results


def upper_extension(mu: Evaluator, cd: ConditionalEvent, p: Partition) -> Fraction:
    """The undominated consistent value for one extra conditional event:
    the lower evaluator taken at the target's outer conditional event.
    Defined for a single target only; with several new events at once an
    undominated extension is in general not unique."""
    if isinstance(cd, (list, tuple, set, frozenset)):
        raise UnsupportedOperationError(
            "the upper extension is computed for a single additional event"
        )
    _require_nontrivial(cd)
    witness = conditional_outer(cd, p)
    if witness is None:
        raise ValidationError("degenerate target")
    return mu(witness)


def df_to_imprecise(
    precise: LayeredProbability,
    targets: Sequence[ConditionalEvent],
    p: Partition,
) -> tuple[Assessment, Assessment]:
    """Bound new events through a precise full conditional probability.

    Valuing each target at its inner (outer) conditional event yields a
    lower (upper) probability assessment; the pair brackets every value
    the precise measure could coherently extend to, and each side is a
    coherent imprecise assessment in its own right.
    """
    lows = natural_extension(precise.value, targets, p, side="lower")
    highs = natural_extension(precise.value, targets, p, side="upper")
    lower_entries = tuple(
        (ConditionalGamble.from_event(cd), v) for cd, v in zip(targets, lows)
    )
    upper_entries = tuple(
        (ConditionalGamble.from_event(cd), v) for cd, v in zip(targets, highs)
    )
    return (
        Assessment(lower_entries, kind="lower", consistency="W"),
        Assessment(upper_entries, kind="upper", consistency="W"),
    )

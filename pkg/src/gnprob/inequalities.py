"""Derived inequality reports for coherent and convex measures.

Each operation packages one of the library's provable inequalities as a
:class:`BoundReport`: the two sides as exact rationals, whether the
preconditions are met, and whether the inequality holds. Reports whose
right side is an unknown quantity (the two lower-bound constructions for
a gamble conditioned outside the measurable field) carry ``holds=None``
unless a ground-truth evaluator is supplied; bounds are reported, not
asserted.

Evaluators are objects exposing ``lower``/``upper`` over events,
gambles and their conditional versions; credal sets and layered
probabilities both qualify (a precise measure is its own envelope).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Union

from .algebra import (
    ConditionalEvent,
    ConditionalGamble,
    Event,
    Gamble,
    Partition,
    inf_over,
    inner_event,
    outer_event,
    sup_over,
)
from .assessments import Assessment
from .errors import EmptyConditioningError, ValidationError
from .extension import conditional_inner
from .gn import GnVerdict, gn_leq_gambles

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class BoundReport:
    """One inequality instance: lhs <= rhs unless stated otherwise."""

    name: str
    lhs: Optional[Fraction]
    rhs: Optional[Fraction]
    holds: Optional[bool]
    applicable: bool
    context: str

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "lhs": None if self.lhs is None else str(self.lhs),
            "rhs": None if self.rhs is None else str(self.rhs),
            "holds": self.holds,
            "applicable": self.applicable,
            "context": self.context,
        }


def _not_applicable(name: str, context: str) -> BoundReport:
    return BoundReport(name, None, None, None, False, context)


def product_rule_report(
    mu, a: Event, b: Event, x: Gamble
) -> tuple[BoundReport, BoundReport, BoundReport]:
    """The weak product rule for a lower evaluator.

    Three reports: with a positive price of X given A and B the product
    of the prices bounds the price of AX given B from below; with a
    negative one the bound reverses; and the price of AX given B
    vanishes exactly when the product does.

    The zero clause is not applicable when the price of A given B is 0
    while the price of X given A and B is negative: there the bet on AX
    can be called off by every worst-case model charging A nothing, the
    product degenerates to 0, yet the price of AX given B may sit
    strictly below it. A two-member credal set on three worlds realises
    this, so no guard weaker than this one is sound. The direction from
    a vanishing price of AX given B to a vanishing product follows from
    the two inequality clauses and needs no guard.
    """
    ab = a & b
    if ab.is_empty:
        raise EmptyConditioningError("A and B must be compatible")
    context = f"A={a!r} B={b!r}"
    p_a_given_b = mu.lower(ConditionalEvent(a, b))
    p_x_given_ab = mu.lower(ConditionalGamble(x, ab))
    p_ax_given_b = mu.lower(ConditionalGamble(Gamble.indicator(a) * x, b))
    product = p_a_given_b * p_x_given_ab

    if p_x_given_ab > 0:
        positive = BoundReport(
            "product-rule-positive", product, p_ax_given_b, product <= p_ax_given_b, True, context
        )
    else:
        positive = _not_applicable("product-rule-positive", context)
    if p_x_given_ab < 0:
        negative = BoundReport(
            "product-rule-negative", p_ax_given_b, product, p_ax_given_b <= product, True, context
        )
    else:
        negative = _not_applicable("product-rule-negative", context)
    if p_a_given_b == 0 and p_x_given_ab < 0:
        zero = _not_applicable("product-rule-zero", context)
    else:
        zero = BoundReport(
            "product-rule-zero",
            p_ax_given_b,
            product,
            (p_ax_given_b == 0) == (product == 0),
            True,
            context,
        )
    return positive, negative, zero


@dataclass(frozen=True)
class MonotonicityViolation:
    """An ordered GN-related pair valued in the wrong order."""

    left_index: int
    right_index: int
    left: ConditionalGamble
    right: ConditionalGamble
    left_value: Fraction
    right_value: Fraction


def monotonicity_audit(assessment: Assessment) -> list[MonotonicityViolation]:
    """All ordered entry pairs with the left GN-below the right but valued
    strictly above it. An empty audit is necessary for convex consistency,
    hence for the coherent and precise classes as well."""
    violations = []
    entries = assessment.entries
    for i, (left, lv) in enumerate(entries):
        for j, (right, rv) in enumerate(entries):
            if i == j or lv <= rv:
                continue
            if gn_leq_gambles(left, right):
                violations.append(MonotonicityViolation(i, j, left, right, lv, rv))
    return violations


def nested_conditioning_report(
    mu, a_or_x: Union[Event, Gamble], b1: Event, b0: Event, side: str = "lower"
) -> list[BoundReport]:
    """Inequalities for an object conditioned on nested events B1 inside B0.

    For an event A: refining the conditioning can only raise the value
    when A, B0 and not-B1 are incompatible, and the value of (A and
    B1)|B0 never exceeds that of A|B1. For a gamble X nonnegative on B1:
    the price of the called-off gamble B1*X given B0 is at most the price
    of X given B1, and when the product of that price with the price of
    B1 given B0 is positive the quotient bounds the price of X given B1
    from above.
    """
    if not b1 <= b0:
        raise ValidationError("B1 must imply B0")
    if b1.is_empty:
        raise EmptyConditioningError("B1 must be nonempty")
    if side not in ("lower", "upper"):
        raise ValidationError("side must be 'lower' or 'upper'")
    evaluate = mu.lower if side == "lower" else mu.upper
    context = f"B1={b1!r} B0={b0!r}"

    if isinstance(a_or_x, Event):
        a = a_or_x
        refinement_applicable = (a & b0 & ~b1).is_empty
        if refinement_applicable:
            lhs = evaluate(ConditionalEvent(a, b0))
            rhs = evaluate(ConditionalEvent(a, b1))
            refinement = BoundReport(
                "nested-refinement", lhs, rhs, lhs <= rhs, True, context
            )
        else:
            refinement = _not_applicable("nested-refinement", context)
        lhs = evaluate(ConditionalEvent(a & b1, b0))
        rhs = evaluate(ConditionalEvent(a, b1))
        numerator = BoundReport(
            "nested-numerator", lhs, rhs, lhs <= rhs, True, context
        )
        return [refinement, numerator]

    x = a_or_x
    reports = []
    restricted = ConditionalGamble(Gamble.indicator(b1) * x, b0)
    original = ConditionalGamble(x, b1)
    if inf_over(x, b1) >= 0:
        lhs = mu.lower(restricted)
        rhs = mu.lower(original)
        reports.append(
            BoundReport("restricted-gamble-lower", lhs, rhs, lhs <= rhs, True, context)
        )
        p_b1 = mu.lower(ConditionalEvent(b1, b0))
        if rhs * p_b1 > 0:
            upper_bound = lhs / p_b1
            reports.append(
                BoundReport(
                    "restricted-gamble-upper", rhs, upper_bound, rhs <= upper_bound, True, context
                )
            )
        else:
            reports.append(_not_applicable("restricted-gamble-upper", context))
    else:
        reports.append(_not_applicable("restricted-gamble-lower", context))
        reports.append(_not_applicable("restricted-gamble-upper", context))
    return reports


def inner_event_lower_bound(
    mu,
    x: Gamble,
    b: Event,
    p: Partition,
    truth: Optional[Callable[[ConditionalGamble], Fraction]] = None,
) -> BoundReport:
    """Bound the price of X given an event B outside the measurable field.

    The bound combines the measurable approximations of B: the lower
    price of the inner event given the outer one, times the lower price
    of X given the inner event, plus the upper price of the inner
    event's complement given the outer event, times the worst value of X
    on B. Requires a nonempty inner event. When ``truth`` can price X
    given B, the report also says whether the bound holds.
    """
    if b.is_empty:
        raise EmptyConditioningError("B must be nonempty")
    context = f"B={b!r}"
    b_in = inner_event(b, p)
    b_out = outer_event(b, p)
    if b_in.is_empty:
        return _not_applicable("inner-approximation", context)
    bound = mu.lower(ConditionalEvent(b_in, b_out)) * mu.lower(ConditionalGamble(x, b_in))
    bound += mu.upper(ConditionalEvent(~b_in, b_out)) * inf_over(x, b)
    rhs = truth(ConditionalGamble(x, b)) if truth is not None else None
    holds = None if rhs is None else bound <= rhs
    return BoundReport("inner-approximation", bound, rhs, holds, True, context)


def finite_values_lower_bound(
    mu,
    x: Gamble,
    b: Event,
    p: Partition,
    truth: Optional[Callable[[ConditionalGamble], Fraction]] = None,
) -> BoundReport:
    """Bound the price of X given B through X's level sets on B.

    For X nonnegative on B, each value times the lower price of the
    inner conditional event of its level set given B adds up to a lower
    bound on the price of X given B. A level set equal to B itself (X
    constant on B) contributes at value 1, the price forced for B|B.
    """
    if b.is_empty:
        raise EmptyConditioningError("B must be nonempty")
    context = f"B={b!r}"
    if inf_over(x, b) < 0:
        return _not_applicable("level-set-bound", context)
    universe = x.universe
    bound = _ZERO
    for value in sorted(set(x.values[i] for i in b.indices())):
        if value == 0:
            continue
        level_mask = 0
        for i in b.indices():
            if x.values[i] == value:
                level_mask |= 1 << i
        level = ConditionalEvent(Event(universe, level_mask), b)
        if level.is_trivial:
            weight = _ONE
        else:
            inner = conditional_inner(level, p)
            assert inner is not None
            weight = mu.lower(inner)
        bound += value * weight
    rhs = truth(ConditionalGamble(x, b)) if truth is not None else None
    holds = None if rhs is None else bound <= rhs
    return BoundReport("level-set-bound", bound, rhs, holds, True, context)


@dataclass(frozen=True)
class SignRelationReport:
    """GN comparability of X|B1 with its called-off version on a larger B0."""

    verdict: GnVerdict
    inf_on_b1: Fraction
    sup_on_b1: Fraction
    rationale: str


def sign_relation(x: Gamble, b1: Event, b0: Event) -> SignRelationReport:
    """Classify (B1*X)|B0 against X|B1 by the sign of X on B1.

    With B0 strictly larger than B1 the called-off version is GN-below
    X|B1 exactly when X is nonnegative on B1, GN-above exactly when it
    is nonpositive, equivalent when X vanishes on B1, and incomparable
    when X takes both strict signs there. With B0 equal to B1 the two
    objects coincide. This is a specialization of the gamble relation,
    not a separate truth source.
    """
    if not b1 <= b0:
        raise ValidationError("B1 must imply B0")
    if b1.is_empty:
        raise EmptyConditioningError("B1 must be nonempty")
    low = inf_over(x, b1)
    high = sup_over(x, b1)
    if b1 == b0:
        return SignRelationReport(
            GnVerdict.EQUIVALENT, low, high, "identical conditional gambles"
        )
    if low >= 0 and high <= 0:
        return SignRelationReport(GnVerdict.EQUIVALENT, low, high, "X vanishes on B1")
    if low >= 0:
        return SignRelationReport(GnVerdict.LEQ, low, high, "X nonnegative on B1")
    if high <= 0:
        return SignRelationReport(GnVerdict.GEQ, low, high, "X nonpositive on B1")
    return SignRelationReport(
        GnVerdict.INCOMPARABLE, low, high, "X takes values of both signs on B1"
    )

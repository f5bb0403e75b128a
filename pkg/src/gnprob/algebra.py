"""Finite event algebra: universes, bitset events, partitions and gambles.

A :class:`Universe` fixes an ordered tuple of distinct world names. An
:class:`Event` is a subset of those worlds stored as an integer bitmask
(bit ``i`` set means world ``i`` belongs to the event), so Boolean
operations are single big-integer operations and equality is canonical.
A :class:`Partition` groups the universe into disjoint nonempty blocks
whose union is the sure event. A :class:`Gamble` assigns an exact
rational payoff to every world. :class:`ConditionalEvent` and
:class:`ConditionalGamble` pair an object with a nonempty conditioning
event and are stored in canonical form: the conditioned part of a
conditional event is intersected with the conditioning event, and the
payoff of a conditional gamble is zeroed outside it.

Everything here is an immutable value; all operations are pure
functions, safe to share across threads. Only exact rationals are
admitted as numbers; floats raise immediately.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Union

from .errors import EmptyConditioningError, UniverseMismatchError, ValidationError

RationalLike = Union[int, str, Fraction]


def as_fraction(value: RationalLike) -> Fraction:
    """Coerce ``value`` to an exact :class:`Fraction`; floats are refused."""
    if isinstance(value, float):
        raise ValidationError(
            f"floats are not exact: {value!r}; pass an int, a 'p/q' string or a Fraction"
        )
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise ValidationError(f"not a rational number: {value!r}") from exc


@dataclass(frozen=True)
class Universe:
    """An ordered tuple of distinct world names; the finest description in play."""

    worlds: tuple[str, ...]

    def __post_init__(self) -> None:
        worlds = tuple(self.worlds)
        object.__setattr__(self, "worlds", worlds)
        if not worlds:
            raise ValidationError("a universe needs at least one world")
        if any(not isinstance(w, str) or not w for w in worlds):
            raise ValidationError("world names must be nonempty strings")
        if len(set(worlds)) != len(worlds):
            raise ValidationError(f"world names must be distinct: {worlds}")
        object.__setattr__(self, "_positions", {w: i for i, w in enumerate(worlds)})

    @property
    def size(self) -> int:
        return len(self.worlds)

    def index(self, world: str) -> int:
        try:
            return self._positions[world]  # type: ignore[attr-defined]
        except KeyError:
            raise ValidationError(f"unknown world {world!r}") from None

    def event(self, worlds: Iterable[str]) -> Event:
        mask = 0
        for w in worlds:
            mask |= 1 << self.index(w)
        return Event(self, mask)

    def atom(self, world: str) -> Event:
        return Event(self, 1 << self.index(world))

    @property
    def omega(self) -> Event:
        return Event(self, (1 << self.size) - 1)

    @property
    def empty(self) -> Event:
        return Event(self, 0)


def _require_same_universe(left, right) -> None:
    if left.universe != right.universe:
        raise UniverseMismatchError(
            f"operands live on different universes: "
            f"{left.universe.worlds} vs {right.universe.worlds}"
        )


class Event:
    """A subset of a universe's worlds, stored as a bitmask."""

    __slots__ = ("universe", "mask")

    def __init__(self, universe: Universe, mask: int):
        mask = int(mask)
        if mask < 0 or mask >> universe.size:
            raise ValidationError(f"mask {mask:#x} does not fit a {universe.size}-world universe")
        object.__setattr__(self, "universe", universe)
        object.__setattr__(self, "mask", mask)

    def __setattr__(self, name, value):
        raise AttributeError("Event is immutable")

    # Boolean structure -------------------------------------------------

    def __and__(self, other: Event) -> Event:
        _require_same_universe(self, other)
        return Event(self.universe, self.mask & other.mask)

    def __or__(self, other: Event) -> Event:
        _require_same_universe(self, other)
        return Event(self.universe, self.mask | other.mask)

    def __sub__(self, other: Event) -> Event:
        _require_same_universe(self, other)
        return Event(self.universe, self.mask & ~other.mask)

    def __invert__(self) -> Event:
        return Event(self.universe, self.universe.omega.mask ^ self.mask)

    def complement(self) -> Event:
        return ~self

    def __le__(self, other: Event) -> bool:
        _require_same_universe(self, other)
        return self.mask & ~other.mask == 0

    def __lt__(self, other: Event) -> bool:
        return self <= other and self.mask != other.mask

    # Value semantics ----------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Event)
            and self.universe == other.universe
            and self.mask == other.mask
        )

    def __hash__(self) -> int:
        return hash((self.universe, self.mask))

    def __bool__(self) -> bool:
        return self.mask != 0

    def __len__(self) -> int:
        return self.mask.bit_count()

    @property
    def is_empty(self) -> bool:
        return self.mask == 0

    @property
    def is_omega(self) -> bool:
        return self.mask == self.universe.omega.mask

    def indices(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.universe.size) if (self.mask >> i) & 1)

    def worlds(self) -> tuple[str, ...]:
        return tuple(self.universe.worlds[i] for i in self.indices())

    def __repr__(self) -> str:
        return "{" + ",".join(self.worlds()) + "}"


@dataclass(frozen=True)
class Partition:
    """Pairwise disjoint nonempty events whose union is the sure event."""

    universe: Universe
    blocks: tuple[Event, ...]

    def __post_init__(self) -> None:
        blocks = tuple(sorted(self.blocks, key=lambda b: b.mask & -b.mask))
        object.__setattr__(self, "blocks", blocks)
        if not blocks:
            raise ValidationError("a partition needs at least one block")
        seen = 0
        for block in blocks:
            if block.universe != self.universe:
                raise UniverseMismatchError("partition block bound to a different universe")
            if block.is_empty:
                raise ValidationError("partition blocks must be nonempty")
            if seen & block.mask:
                raise ValidationError("partition blocks must be pairwise disjoint")
            seen |= block.mask
        if seen != self.universe.omega.mask:
            raise ValidationError("partition blocks must cover the whole universe")

    @classmethod
    def finest(cls, universe: Universe) -> Partition:
        return cls(universe, tuple(Event(universe, 1 << i) for i in range(universe.size)))

    @classmethod
    def trivial(cls, universe: Universe) -> Partition:
        return cls(universe, (universe.omega,))

    def __iter__(self) -> Iterator[Event]:
        return iter(self.blocks)

    def __len__(self) -> int:
        return len(self.blocks)

    def __repr__(self) -> str:
        return "Partition(" + ", ".join(repr(b) for b in self.blocks) + ")"


class Gamble:
    """An exact rational payoff for every world of a universe.

    ``values`` may be a sequence covering all worlds in order, or a
    mapping from world names to rationals; missing names default to 0.
    """

    __slots__ = ("universe", "values")

    def __init__(self, universe: Universe, values):
        if isinstance(values, Mapping):
            table = [Fraction(0)] * universe.size
            for name, v in values.items():
                table[universe.index(name)] = as_fraction(v)
        else:
            seq = [as_fraction(v) for v in values]
            if len(seq) != universe.size:
                raise ValidationError(
                    f"expected {universe.size} payoff values, got {len(seq)}"
                )
            table = seq
        object.__setattr__(self, "universe", universe)
        object.__setattr__(self, "values", tuple(table))

    def __setattr__(self, name, value):
        raise AttributeError("Gamble is immutable")

    @classmethod
    def indicator(cls, event: Event) -> Gamble:
        return cls(
            event.universe,
            [Fraction(1) if (event.mask >> i) & 1 else Fraction(0) for i in range(event.universe.size)],
        )

    @classmethod
    def constant(cls, universe: Universe, value: RationalLike) -> Gamble:
        return cls(universe, [as_fraction(value)] * universe.size)

    @classmethod
    def zero(cls, universe: Universe) -> Gamble:
        return cls.constant(universe, 0)

    def __getitem__(self, world) -> Fraction:
        if isinstance(world, str):
            world = self.universe.index(world)
        return self.values[world]

    def __add__(self, other: Gamble) -> Gamble:
        _require_same_universe(self, other)
        return Gamble(self.universe, [a + b for a, b in zip(self.values, other.values)])

    def __sub__(self, other: Gamble) -> Gamble:
        _require_same_universe(self, other)
        return Gamble(self.universe, [a - b for a, b in zip(self.values, other.values)])

    def __neg__(self) -> Gamble:
        return Gamble(self.universe, [-a for a in self.values])

    def __mul__(self, other) -> Gamble:
        if isinstance(other, Gamble):
            _require_same_universe(self, other)
            return Gamble(self.universe, [a * b for a, b in zip(self.values, other.values)])
        return Gamble(self.universe, [a * as_fraction(other) for a in self.values])

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Gamble)
            and self.universe == other.universe
            and self.values == other.values
        )

    def __hash__(self) -> int:
        return hash((self.universe, self.values))

    def __repr__(self) -> str:
        pairs = ", ".join(f"{w}:{v}" for w, v in zip(self.universe.worlds, self.values))
        return f"Gamble({pairs})"


class ConditionalEvent:
    """A pair ``A|B`` with ``B`` nonempty, stored as ``(A and B)|B``.

    Two conditional events are equal exactly when both fields agree,
    which encodes the identification of ``A|B`` with ``(A and B)|B``.
    """

    __slots__ = ("conditioned", "conditioning")

    def __init__(self, conditioned: Event, conditioning: Event):
        _require_same_universe(conditioned, conditioning)
        if conditioning.is_empty:
            raise EmptyConditioningError("conditioning event must be nonempty")
        object.__setattr__(self, "conditioned", conditioned & conditioning)
        object.__setattr__(self, "conditioning", conditioning)

    def __setattr__(self, name, value):
        raise AttributeError("ConditionalEvent is immutable")

    @property
    def universe(self) -> Universe:
        return self.conditioning.universe

    @property
    def false_part(self) -> Event:
        """Worlds where the conditional event is false: (not A) and B."""
        return self.conditioning - self.conditioned

    @property
    def is_trivial(self) -> bool:
        """True when the value is forced: empty conditioned part, or A|B = B|B."""
        return self.conditioned.is_empty or self.conditioned == self.conditioning

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ConditionalEvent)
            and self.conditioned == other.conditioned
            and self.conditioning == other.conditioning
        )

    def __hash__(self) -> int:
        return hash((self.conditioned, self.conditioning))

    def __repr__(self) -> str:
        return f"{self.conditioned!r}|{self.conditioning!r}"


class ConditionalGamble:
    """A gamble restricted to a nonempty conditioning event.

    Payoffs outside the conditioning event are irrelevant and are zeroed
    at construction, so equality of the stored fields coincides with the
    intended identification (same conditioning, same payoffs on it).
    """

    __slots__ = ("payoff", "conditioning")

    def __init__(self, payoff: Gamble, conditioning: Event):
        _require_same_universe(payoff, conditioning)
        if conditioning.is_empty:
            raise EmptyConditioningError("conditioning event must be nonempty")
        object.__setattr__(self, "payoff", payoff * Gamble.indicator(conditioning))
        object.__setattr__(self, "conditioning", conditioning)

    def __setattr__(self, name, value):
        raise AttributeError("ConditionalGamble is immutable")

    @classmethod
    def from_event(cls, ce: ConditionalEvent) -> ConditionalGamble:
        return cls(Gamble.indicator(ce.conditioned), ce.conditioning)

    @property
    def universe(self) -> Universe:
        return self.conditioning.universe

    def __neg__(self) -> ConditionalGamble:
        return ConditionalGamble(-self.payoff, self.conditioning)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ConditionalGamble)
            and self.conditioning == other.conditioning
            and self.payoff == other.payoff
        )

    def __hash__(self) -> int:
        return hash((self.payoff, self.conditioning))

    def __repr__(self) -> str:
        pairs = ", ".join(
            f"{self.universe.worlds[i]}:{self.payoff.values[i]}" for i in self.conditioning.indices()
        )
        return f"({pairs})|{self.conditioning!r}"


# ---------------------------------------------------------------------------
# Partition operations


def generated_partition(universe: Universe, events: Iterable[Event]) -> Partition:
    """The partition whose blocks are the nonempty products of the events and
    their complements. With no events this is the one-block partition."""
    events = list(events)
    for e in events:
        if e.universe != universe:
            raise UniverseMismatchError("generated_partition: event on a different universe")
    cells: dict[tuple[int, ...], int] = {}
    for i in range(universe.size):
        signature = tuple((e.mask >> i) & 1 for e in events)
        cells[signature] = cells.get(signature, 0) | (1 << i)
    return Partition(universe, tuple(Event(universe, m) for m in cells.values()))


def product_partition(p: Partition, q: Partition) -> Partition:
    """The coarsest common refinement: nonempty pairwise block intersections."""
    _require_same_universe(p, q)
    blocks = []
    for a in p.blocks:
        for b in q.blocks:
            cell = a.mask & b.mask
            if cell:
                blocks.append(Event(p.universe, cell))
    return Partition(p.universe, tuple(blocks))


def inner_event(e: Event, p: Partition) -> Event:
    """Union of the blocks of ``p`` contained in ``e``: the largest
    p-measurable event inside ``e``."""
    _require_same_universe(e, p)
    mask = 0
    for block in p.blocks:
        if block.mask & ~e.mask == 0:
            mask |= block.mask
    return Event(e.universe, mask)


def outer_event(e: Event, p: Partition) -> Event:
    """Union of the blocks of ``p`` meeting ``e``: the smallest
    p-measurable event containing ``e``."""
    _require_same_universe(e, p)
    mask = 0
    for block in p.blocks:
        if block.mask & e.mask:
            mask |= block.mask
    return Event(e.universe, mask)


def is_logically_dependent(e: Event, p: Partition) -> bool:
    """True when ``e`` is a union of blocks of ``p``."""
    return inner_event(e, p) == e


def iter_measurable_events(p: Partition, include_empty: bool = False) -> Iterator[Event]:
    """All unions of blocks of ``p``, the field generated by the partition."""
    masks = [b.mask for b in p.blocks]
    start = 0 if include_empty else 1
    for choice in range(start, 1 << len(masks)):
        m = 0
        for i, bm in enumerate(masks):
            if (choice >> i) & 1:
                m |= bm
        yield Event(p.universe, m)


# ---------------------------------------------------------------------------
# Gamble extrema


def sup_over(x: Gamble, b: Event) -> Fraction:
    """Maximum of ``x`` over the worlds of ``b`` (finite, so sup is max)."""
    _require_same_universe(x, b)
    if b.is_empty:
        raise EmptyConditioningError("sup over the empty event is undefined")
    return max(x.values[i] for i in b.indices())


def inf_over(x: Gamble, b: Event) -> Fraction:
    """Minimum of ``x`` over the worlds of ``b``."""
    _require_same_universe(x, b)
    if b.is_empty:
        raise EmptyConditioningError("inf over the empty event is undefined")
    return min(x.values[i] for i in b.indices())

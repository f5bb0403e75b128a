"""Command line interface over JSON problem files.

A problem file is a single JSON document; rationals are strings like
"3/5" (or integers) so exact values survive serialization::

    {
      "universe": ["w1", "w2", "w3"],
      "events": {"A": ["w1"], "B": ["w1", "w2"]},
      "partitions": {"P": [["w1"], ["w2", "w3"]]},
      "gambles": {"X": {"w1": "1", "w2": "2"}},
      "layered": {"pr": [{"w1": "1/2", "w2": "1/2"}, {"w3": "1"}]},
      "credal": {"M": ["pr", [{"w1": "1", "w2": "0", "w3": "0"}]]},
      "assessments": {
        "book": {"kind": "lower", "class": "W", "entries": [
          {"event": "A", "given": "B", "value": "1/2"}
        ]}
      },
      "queries": []
    }

Gamble value maps default missing worlds to 0. Credal members are
either names of layered probabilities or inline layer lists. Assessment
entries name an event or a gamble (or give one inline), an optional
conditioning event (defaults to the sure event) and a value.

Commands: check, gn, extend, audit, bounds, sample. Exit status is 0
when the queried property holds (consistent, no violations), 1 when it
fails, 2 for usage or input errors. Every command accepts
``--format json`` for structured output; identical inputs produce
byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from typing import Optional

from .algebra import (
    ConditionalEvent,
    ConditionalGamble,
    Event,
    Gamble,
    Partition,
    Universe,
    as_fraction,
)
from .assessments import (
    Assessment,
    CredalSet,
    LayeredProbability,
    normalize_class,
    random_credal,
)
from .coherence import GainSpec, check, conditioned_max
from .errors import GnprobError, ValidationError
from .extension import extension_interval, natural_extension, upper_extension
from .gn import gn_compare, gn_compare_gambles
from .inequalities import (
    BoundReport,
    inner_event_lower_bound,
    finite_values_lower_bound,
    monotonicity_audit,
    nested_conditioning_report,
    product_rule_report,
    sign_relation,
)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


# ---------------------------------------------------------------------------
# Problem files


@dataclass
class Problem:
    universe: Universe
    events: dict = field(default_factory=dict)
    partitions: dict = field(default_factory=dict)
    gambles: dict = field(default_factory=dict)
    layered: dict = field(default_factory=dict)
    credal: dict = field(default_factory=dict)
    assessments: dict = field(default_factory=dict)
    queries: list = field(default_factory=list)

    # -- construction -----------------------------------------------------

    @classmethod
    def from_dict(cls, data: dict) -> Problem:
        if not isinstance(data, dict):
            raise ValidationError("problem file: top level must be an object")
        try:
            worlds = data["universe"]
        except KeyError:
            raise ValidationError("problem file: missing 'universe'") from None
        universe = Universe(tuple(worlds))
        problem = cls(universe)

        for name, spec in data.get("events", {}).items():
            problem.events[name] = problem._event_from_spec(spec, f"events.{name}")
        for name, spec in data.get("partitions", {}).items():
            try:
                blocks = tuple(universe.event(block) for block in spec)
                problem.partitions[name] = Partition(universe, blocks)
            except GnprobError as exc:
                raise ValidationError(f"partitions.{name}: {exc}") from None
        for name, spec in data.get("gambles", {}).items():
            problem.gambles[name] = problem._gamble_from_spec(spec, f"gambles.{name}")
        for name, spec in data.get("layered", {}).items():
            problem.layered[name] = problem._layered_from_spec(spec, f"layered.{name}")
        for name, spec in data.get("credal", {}).items():
            members = []
            for i, member in enumerate(spec):
                where = f"credal.{name}[{i}]"
                if isinstance(member, str):
                    if member not in problem.layered:
                        raise ValidationError(f"{where}: unknown layered probability {member!r}")
                    members.append(problem.layered[member])
                else:
                    members.append(problem._layered_from_spec(member, where))
            try:
                problem.credal[name] = CredalSet(members)
            except GnprobError as exc:
                raise ValidationError(f"credal.{name}: {exc}") from None
        for name, spec in data.get("assessments", {}).items():
            problem.assessments[name] = problem._assessment_from_spec(
                spec, f"assessments.{name}"
            )
        problem.queries = list(data.get("queries", []))
        return problem

    def _event_from_spec(self, spec, where: str) -> Event:
        try:
            if isinstance(spec, str):
                return self.resolve_event(spec)
            return self.universe.event(spec)
        except GnprobError as exc:
            raise ValidationError(f"{where}: {exc}") from None

    def _gamble_from_spec(self, spec, where: str) -> Gamble:
        try:
            if isinstance(spec, str):
                return self.resolve_gamble(spec)
            return Gamble(self.universe, spec)
        except GnprobError as exc:
            raise ValidationError(f"{where}: {exc}") from None

    def _layered_from_spec(self, spec, where: str) -> LayeredProbability:
        try:
            layers = [
                [layer.get(w, 0) for w in self.universe.worlds] for layer in spec
            ]
            return LayeredProbability(self.universe, layers)
        except GnprobError as exc:
            raise ValidationError(f"{where}: {exc}") from None
        except AttributeError:
            raise ValidationError(f"{where}: each layer must be a world-to-mass object") from None

    def _assessment_from_spec(self, spec, where: str) -> Assessment:
        kind = spec.get("kind", "precise")
        consistency = spec.get("class")
        entries = []
        for i, entry in enumerate(spec.get("entries", [])):
            at = f"{where}.entries[{i}]"
            given = self.universe.omega
            if "given" in entry:
                given = self._event_from_spec(entry["given"], at)
            if "event" in entry:
                target = self._event_from_spec(entry["event"], at)
                gamble = ConditionalGamble(Gamble.indicator(target), given)
            elif "gamble" in entry:
                payoff = self._gamble_from_spec(entry["gamble"], at)
                gamble = ConditionalGamble(payoff, given)
            else:
                raise ValidationError(f"{at}: entry needs an 'event' or a 'gamble'")
            try:
                value = as_fraction(entry["value"])
            except KeyError:
                raise ValidationError(f"{at}: missing 'value'") from None
            entries.append((gamble, value))
        try:
            return Assessment(tuple(entries), kind=kind, consistency=consistency)
        except GnprobError as exc:
            raise ValidationError(f"{where}: {exc}") from None

    # -- lookups ------------------------------------------------------------

    def resolve_event(self, name: str) -> Event:
        if name not in self.events:
            raise ValidationError(f"unknown event {name!r}")
        return self.events[name]

    def resolve_gamble(self, name: str) -> Gamble:
        if name not in self.gambles:
            raise ValidationError(f"unknown gamble {name!r}")
        return self.gambles[name]

    def resolve_partition(self, name: Optional[str]) -> Partition:
        if name is None:
            if len(self.partitions) == 1:
                return next(iter(self.partitions.values()))
            raise ValidationError(
                "the file declares zero or several partitions; pass --partition NAME"
            )
        if name not in self.partitions:
            raise ValidationError(f"unknown partition {name!r}")
        return self.partitions[name]

    def parse_conditional_event(self, text: str) -> ConditionalEvent:
        """Parse 'A|B' (or 'A', conditioned on the sure event)."""
        left, _, right = text.partition("|")
        conditioned = self.resolve_event(left.strip())
        conditioning = self.resolve_event(right.strip()) if right else self.universe.omega
        return ConditionalEvent(conditioned, conditioning)

    def parse_conditional_gamble(self, text: str) -> ConditionalGamble:
        """Parse 'X|B' (or 'X') with X a named gamble."""
        left, _, right = text.partition("|")
        payoff = self.resolve_gamble(left.strip())
        conditioning = self.resolve_event(right.strip()) if right else self.universe.omega
        return ConditionalGamble(payoff, conditioning)

    def lower_evaluator(self, name: str, side: str = "lower"):
        """An evaluator callable plus its envelope object, by name."""
        if name in self.layered:
            obj = self.layered[name]
            return obj.value, obj
        if name in self.credal:
            obj = self.credal[name]
            return (obj.lower if side == "lower" else obj.upper), obj
        raise ValidationError(f"unknown evaluator {name!r} (not layered, not credal)")

    # -- serialization -------------------------------------------------------

    def to_dict(self) -> dict:
        def event_spec(e: Event):
            return list(e.worlds())

        def layered_spec(lp: LayeredProbability):
            out = []
            for depth in range(len(lp.layers)):
                out.append(
                    {
                        w: str(lp.layers[depth][i])
                        for i, w in enumerate(self.universe.worlds)
                        if lp.layers[depth][i] != 0
                    }
                )
            return out

        def assessment_spec(a: Assessment):
            entries = []
            for gamble, value in a.entries:
                entries.append(
                    {
                        "gamble": {
                            w: str(gamble.payoff.values[i])
                            for i, w in enumerate(self.universe.worlds)
                        },
                        "given": list(gamble.conditioning.worlds()),
                        "value": str(value),
                    }
                )
            spec = {"kind": a.kind, "entries": entries}
            if a.consistency is not None:
                spec["class"] = a.consistency
            return spec

        return {
            "universe": list(self.universe.worlds),
            "events": {n: event_spec(e) for n, e in self.events.items()},
            "partitions": {
                n: [event_spec(b) for b in p.blocks] for n, p in self.partitions.items()
            },
            "gambles": {
                n: {w: str(g.values[i]) for i, w in enumerate(self.universe.worlds)}
                for n, g in self.gambles.items()
            },
            "layered": {n: layered_spec(lp) for n, lp in self.layered.items()},
            "credal": {
                n: [layered_spec(m) for m in c.members] for n, c in self.credal.items()
            },
            "assessments": {n: assessment_spec(a) for n, a in self.assessments.items()},
            "queries": list(self.queries),
        }


def load_problem(path: str) -> Problem:
    with open(path, "r", encoding="utf-8") as handle:
        try:
            data = json.load(handle)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"{path}: invalid JSON ({exc})") from None
    return Problem.from_dict(data)


# ---------------------------------------------------------------------------
# Rendering


def _format_event(e: Event) -> str:
    return repr(e)


def _witness_dict(witness: GainSpec) -> dict:
    universe = witness.universe
    return {
        "against": witness.against,
        "conditioned_max": str(conditioned_max(witness)),
        "conditioning": list(witness.conditioning().worlds()),
        "terms": [
            {
                "stake": str(term.stake),
                "value": str(term.value),
                "given": list(term.gamble.conditioning.worlds()),
                "payoff": {
                    w: str(term.gamble.payoff.values[i])
                    for i, w in enumerate(universe.worlds)
                    if (term.gamble.conditioning.mask >> i) & 1
                },
            }
            for term in witness.terms
        ],
    }


def _print_witness(witness: GainSpec) -> None:
    print(
        f"witness: conditioned max = {conditioned_max(witness)} "
        f"on {_format_event(witness.conditioning())}"
    )
    for k, term in enumerate(witness.terms):
        role = "against" if k == witness.against else "for"
        print(f"  {role:>7} stake={term.stake} value={term.value} on {term.gamble!r}")


def _emit(args, record: dict, text_lines: list[str]) -> None:
    if args.format == "json":
        print(json.dumps(record, indent=2, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def _report_lines(reports: list[BoundReport]) -> list[str]:
    lines = []
    for r in reports:
        if not r.applicable:
            lines.append(f"{r.name}: not applicable ({r.context})")
            continue
        verdict = "holds" if r.holds else ("fails" if r.holds is not None else "reported")
        lines.append(f"{r.name}: {verdict} lhs={r.lhs} rhs={r.rhs} ({r.context})")
    return lines


# ---------------------------------------------------------------------------
# Commands


def cmd_check(args) -> int:
    problem = load_problem(args.file)
    if args.assessment not in problem.assessments:
        raise ValidationError(f"unknown assessment {args.assessment!r}")
    assessment = problem.assessments[args.assessment]
    cls = args.cls or assessment.consistency
    if cls is None:
        raise ValidationError(
            "no consistency class: pass --class or tag the assessment in the file"
        )
    verdict = check(assessment, cls)
    record = {
        "command": "check",
        "assessment": args.assessment,
        "class": normalize_class(cls),
        "consistent": verdict.consistent,
        "witness": None if verdict.witness is None else _witness_dict(verdict.witness),
        "centering_added": [repr(g) for g in verdict.centering],
    }
    if args.format == "json":
        _emit(args, record, [])
    else:
        print("consistent" if verdict.consistent else "inconsistent")
        if verdict.witness is not None:
            _print_witness(verdict.witness)
        for extra in verdict.centering:
            print(f"note: added centering entry {extra!r} valued 0")
    return EXIT_OK if verdict.consistent else EXIT_FAIL


def cmd_gn(args) -> int:
    problem = load_problem(args.file)
    if args.gambles:
        left = problem.parse_conditional_gamble(args.left)
        right = problem.parse_conditional_gamble(args.right)
        verdict = gn_compare_gambles(left, right)
    else:
        left = problem.parse_conditional_event(args.left)
        right = problem.parse_conditional_event(args.right)
        verdict = gn_compare(left, right)
    record = {
        "command": "gn",
        "left": args.left,
        "right": args.right,
        "verdict": verdict.value,
    }
    _emit(args, record, [verdict.value])
    return EXIT_OK


def cmd_extend(args) -> int:
    problem = load_problem(args.file)
    partition = problem.resolve_partition(args.partition)
    evaluate, _ = problem.lower_evaluator(args.evaluator, args.side)
    targets = [problem.parse_conditional_event(t) for t in args.target]

    if args.mode == "interval":
        if len(targets) != 1:
            raise ValidationError("interval mode takes exactly one target")
        interval = extension_interval(evaluate, targets[0], partition)
        record = {
            "command": "extend",
            "mode": "interval",
            "target": args.target[0],
            "low": str(interval.low),
            "high": str(interval.high),
            "low_witness": repr(interval.low_witness),
            "high_witness": repr(interval.high_witness),
        }
        lines = [
            f"{interval.low} {interval.high}",
            f"inner: {interval.low_witness!r}",
            f"outer: {interval.high_witness!r}",
        ]
        _emit(args, record, lines)
        return EXIT_OK

    if args.mode == "upper":
        if len(targets) != 1:
            raise ValidationError("upper mode takes exactly one target")
        value = upper_extension(evaluate, targets[0], partition)
        record = {
            "command": "extend",
            "mode": "upper",
            "target": args.target[0],
            "value": str(value),
        }
        _emit(args, record, [str(value)])
        return EXIT_OK

    values = natural_extension(evaluate, targets, partition, side=args.side)
    record = {
        "command": "extend",
        "mode": "natural",
        "side": args.side,
        "targets": list(args.target),
        "values": [str(v) for v in values],
    }
    _emit(args, record, [" ".join(str(v) for v in values)])
    return EXIT_OK


def cmd_audit(args) -> int:
    problem = load_problem(args.file)
    if args.assessment not in problem.assessments:
        raise ValidationError(f"unknown assessment {args.assessment!r}")
    violations = monotonicity_audit(problem.assessments[args.assessment])
    record = {
        "command": "audit",
        "assessment": args.assessment,
        "violations": [
            {
                "left": repr(v.left),
                "right": repr(v.right),
                "left_value": str(v.left_value),
                "right_value": str(v.right_value),
            }
            for v in violations
        ],
    }
    lines = (
        ["no violations"]
        if not violations
        else [
            f"{v.left!r} <=GN {v.right!r} but {v.left_value} > {v.right_value}"
            for v in violations
        ]
    )
    _emit(args, record, lines)
    return EXIT_OK if not violations else EXIT_FAIL


def cmd_bounds(args) -> int:
    problem = load_problem(args.file)

    def evaluator():
        _, obj = problem.lower_evaluator(args.evaluator or "")
        return obj

    def truth():
        if args.truth is None:
            return None
        if args.truth not in problem.layered:
            raise ValidationError(f"unknown layered probability {args.truth!r}")
        return problem.layered[args.truth].value

    if args.kind == "product":
        reports = list(
            product_rule_report(
                evaluator(),
                problem.resolve_event(args.event_a),
                problem.resolve_event(args.event_b),
                problem.resolve_gamble(args.gamble),
            )
        )
    elif args.kind == "nested":
        target = (
            problem.resolve_gamble(args.gamble)
            if args.gamble
            else problem.resolve_event(args.event_a)
        )
        reports = nested_conditioning_report(
            evaluator(), target, problem.resolve_event(args.b1), problem.resolve_event(args.b0)
        )
    elif args.kind == "inner":
        reports = [
            inner_event_lower_bound(
                evaluator(),
                problem.resolve_gamble(args.gamble),
                problem.resolve_event(args.event_b),
                problem.resolve_partition(args.partition),
                truth(),
            )
        ]
    elif args.kind == "levels":
        reports = [
            finite_values_lower_bound(
                evaluator(),
                problem.resolve_gamble(args.gamble),
                problem.resolve_event(args.event_b),
                problem.resolve_partition(args.partition),
                truth(),
            )
        ]
    else:  # sign
        report = sign_relation(
            problem.resolve_gamble(args.gamble),
            problem.resolve_event(args.b1),
            problem.resolve_event(args.b0),
        )
        record = {
            "command": "bounds",
            "kind": "sign",
            "verdict": report.verdict.value,
            "inf_on_b1": str(report.inf_on_b1),
            "sup_on_b1": str(report.sup_on_b1),
            "rationale": report.rationale,
        }
        _emit(args, record, [f"{report.verdict.value} ({report.rationale})"])
        return EXIT_OK

    record = {
        "command": "bounds",
        "kind": args.kind,
        "reports": [r.as_dict() for r in reports],
    }
    _emit(args, record, _report_lines(reports))
    failed = any(r.applicable and r.holds is False for r in reports)
    return EXIT_FAIL if failed else EXIT_OK


def cmd_sample(args) -> int:
    universe = Universe(tuple(f"w{i + 1}" for i in range(args.worlds)))
    credal = random_credal(args.seed, universe, args.members, args.layers)
    fragment = {
        "universe": list(universe.worlds),
        "credal": {
            "sampled": [
                [
                    {
                        w: str(member.layers[depth][i])
                        for i, w in enumerate(universe.worlds)
                        if member.layers[depth][i] != 0
                    }
                    for depth in range(len(member.layers))
                ]
                for member in credal.members
            ]
        },
    }
    print(json.dumps(fragment, indent=2, sort_keys=True))
    return EXIT_OK


# ---------------------------------------------------------------------------
# Parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gnprob",
        description=(
            "Exact reasoning with imprecise conditional probabilities: "
            "consistency checks, Goodman-Nguyen comparisons, natural and "
            "upper extensions, and inequality reports."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("check", help="decide consistency of an assessment")
    p.add_argument("file")
    p.add_argument("assessment")
    p.add_argument("--class", dest="cls", choices=("dF", "W", "convex", "1convex"))
    common(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("gn", help="compare two conditional events or gambles")
    p.add_argument("file")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--gambles", action="store_true", help="operands are gambles")
    common(p)
    p.set_defaults(func=cmd_gn)

    p = sub.add_parser("extend", help="extend an evaluator to new conditional events")
    p.add_argument("file")
    p.add_argument("evaluator", help="name of a layered probability or credal set")
    p.add_argument("target", nargs="+", help="conditional events like 'A|B'")
    p.add_argument("--mode", choices=("natural", "interval", "upper"), default="natural")
    p.add_argument("--side", choices=("lower", "upper"), default="lower")
    p.add_argument("--partition")
    common(p)
    p.set_defaults(func=cmd_extend)

    p = sub.add_parser("audit", help="list monotonicity violations in an assessment")
    p.add_argument("file")
    p.add_argument("assessment")
    common(p)
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("bounds", help="inequality reports")
    p.add_argument("file")
    p.add_argument("--kind", choices=("product", "nested", "inner", "levels", "sign"), required=True)
    p.add_argument("--evaluator")
    p.add_argument("--event-a", dest="event_a")
    p.add_argument("--event-b", dest="event_b")
    p.add_argument("--b1")
    p.add_argument("--b0")
    p.add_argument("--gamble")
    p.add_argument("--partition")
    p.add_argument("--truth", help="layered probability providing ground truth")
    common(p)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("sample", help="generate a seeded random credal set fragment")
    p.add_argument("--worlds", type=int, default=4)
    p.add_argument("--members", type=int, default=2)
    p.add_argument("--layers", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    common(p)
    p.set_defaults(func=cmd_sample)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except GnprobError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

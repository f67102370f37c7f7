"""Command-line entry point: ``setlink <subcommand> ...``.

Wherever a file is accepted, ``fixture:NAME`` loads a built-in fixture. Extra
shorthands: ``powerset:N`` for families, ``constant:C`` and ``indicator:1,2``
for set functions, ``constant:C`` and ``keyed:A`` (1 at x == A, else 2) for
linkages.

Exit codes: 0 success, 1 a checked claim failed, 2 unreadable input,
3 a hypothesis of the requested operation does not hold, 4 over capacity.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from typing import Optional

from . import duality, sweeps
from .core import GroundSet, SetFamily, family_to_json, format_set, parse_family, set_to_json
from .errors import CapacityExceeded, HypothesisFailure, ParseError, UnknownFixture
from .functions import (
    LinkageFunction,
    SetFunction,
    WeightedGraph,
    graph_to_json,
    linkage_to_json,
    parse_graph,
    parse_linkage,
    parse_set_function,
    rational,
    set_function_to_json,
)
from .generators import FIXTURE_NAMES, enumerate_set_functions, fixture, random_monotone_linkage
from .optimize import brute_force_boolean, peel
from .properties import Verdict, analyze, has_chain_property, has_heritage, is_quasiconcave

EXIT_FAILED = 1
EXIT_PARSE = 2
EXIT_HYPOTHESIS = 3
EXIT_CAPACITY = 4

# random monotone linkages drawn when exhaustive enumeration is over capacity
DEFAULT_SAMPLES = 500


def _load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc})") from None


def _fixture_of(source: str, kind: type):
    obj = fixture(source.split(":", 1)[1])
    if not isinstance(obj, kind):
        raise ParseError(f"{source} is a {type(obj).__name__}, not a {kind.__name__}")
    return obj


def load_family(source: str) -> SetFamily:
    if source.startswith("fixture:"):
        return _fixture_of(source, SetFamily)
    if source.startswith("powerset:"):
        try:
            return SetFamily.powerset(int(source.split(":", 1)[1]))
        except ValueError as exc:
            raise ParseError(f"{source}: {exc}") from None
    return parse_family(_load_json(source))


def load_function(source: str, family: SetFamily) -> SetFunction:
    if source.startswith("fixture:"):
        F = _fixture_of(source, SetFunction)
        if F.family != family:
            raise ParseError(f"{source} is defined on a different family")
        return F
    if source.startswith("constant:"):
        return SetFunction.constant(family, _rational(source.split(":", 1)[1]))
    if source.startswith("indicator:"):
        body = source.split(":", 1)[1]
        try:
            A = family.ground.subset(t for t in body.split(",") if t)
        except ValueError as exc:
            raise ParseError(f"{source}: {exc}") from None
        if A not in family or A == 0:
            raise ParseError(f"{source}: {format_set(A, family.ground)} is not a non-empty member")
        return SetFunction.indicator(family, A)
    return parse_set_function(_load_json(source), family)


def load_linkage(source: str, ground: Optional[GroundSet]) -> LinkageFunction:
    if source.startswith("fixture:"):
        pi = _fixture_of(source, LinkageFunction)
    elif source.startswith("constant:") or source.startswith("keyed:"):
        if ground is None:
            raise ParseError(f"{source} needs a family to fix the ground set")
        head, body = source.split(":", 1)
        if head == "constant":
            return LinkageFunction.constant(ground, _rational(body))
        try:
            return LinkageFunction.keyed(ground, ground.index_of(body))
        except ValueError as exc:
            raise ParseError(f"{source}: {exc}") from None
    else:
        pi = parse_linkage(_load_json(source), ground)
    if ground is not None and pi.ground.size != ground.size:
        raise ParseError(f"{source} lives on {pi.ground.size} elements, the family on {ground.size}")
    return pi


def load_graph(source: str) -> WeightedGraph:
    if source.startswith("fixture:"):
        return _fixture_of(source, WeightedGraph)
    return parse_graph(_load_json(source))


def _rational(text: str):
    try:
        return rational(text)
    except (TypeError, ValueError, ZeroDivisionError):
        raise ParseError(f"bad rational {text!r}") from None


def _emit(args, payload: dict, text: str) -> None:
    if args.text:
        print(text)
    else:
        print(json.dumps(payload, indent=2))


# analyze --------------------------------------------------------------------


def cmd_analyze(args) -> int:
    family = load_family(args.family)
    report = analyze(family)
    _emit(args, {"family": family_to_json(family), "properties": report.to_json()}, report.to_text())
    return 0


# dualize --------------------------------------------------------------------


def _function_text(F: SetFunction) -> str:
    g = F.family.ground
    lines = [f"{format_set(X, g)}: {F.values[X]}" for X in F.family.nonempty]
    if F.empty_value is not None:
        lines.append(f"{{}}: {F.empty_value}")
    return "\n".join(lines)


def _linkage_text(pi: LinkageFunction) -> str:
    g = pi.ground
    return "\n".join(
        f"pi({g.label(x)}, {format_set(X, g)}) = {v}" for (x, X), v in sorted(pi.materialize().items())
    )


def cmd_dualize(args) -> int:
    family = load_family(args.family)
    if args.emit in ("pi_F", "G_F"):
        if not args.function:
            raise ParseError(f"--emit {args.emit} needs --function")
        F = load_function(args.function, family)
        if args.emit == "pi_F":
            out = duality.derive_pi_F(F, family)
            _emit(args, linkage_to_json(out), _linkage_text(out))
        else:
            G = duality.derive_G_F(F, family)
            _emit(args, set_function_to_json(G), _function_text(G))
        return 0
    if not args.linkage:
        raise ParseError("--emit F_pi needs --linkage")
    pi = load_linkage(args.linkage, family.ground)
    F = duality.derive_F_pi(pi, family)
    _emit(args, set_function_to_json(F), _function_text(F))
    return 0


# check ----------------------------------------------------------------------


def _values(text: str) -> list:
    return [_rational(t) for t in text.split(",") if t]


def _forward_thm1(family, report, args):
    if args.function:
        F = load_function(args.function, family)
        report.add("thm1_forward", duality.check_theorem1(family, F))
        return
    vals = _values(args.values or "0,1,2")
    try:
        functions = list(enumerate_set_functions(family, vals, quasiconcave_only=True))
        mode = f"exhaustive over {len(functions)} quasi-concave functions"
    except CapacityExceeded:
        if args.samples is None:
            raise
        rng = random.Random(args.seed)
        functions = []
        for _ in range(args.samples):
            F = SetFunction(family, {X: rng.choice(vals) for X in family.nonempty})
            if is_quasiconcave(F, family):
                functions.append(F)
        mode = f"{len(functions)} quasi-concave among {args.samples} random functions"
    report.details.append(f"thm1_forward: {mode}")
    for F in functions:
        v = duality.check_theorem1(family, F)
        if not v:
            report.add("thm1_forward", Verdict("thm1_forward", False, {**v.witness, "F": repr(F)}))
            return
    report.add("thm1_forward", Verdict("thm1_forward", True))


def _check_thm1(family, report, args):
    chain = has_chain_property(family)
    report.details.append(chain.describe(family.ground))
    if chain:
        _forward_thm1(family, report, args)
        report.skip("thm1_converse", "the family has the chain property")
        return
    report.skip("thm1_forward", "the family lacks the chain property")
    F = duality.thm1_counterexample(family)
    G = duality.derive_G_F(F, family)
    A, B = duality.chain_gap(family)
    g = family.ground
    report.details.append(
        f"thm1_converse: F = indicator of {format_set(A, g)}; "
        f"G_F({format_set(B, g)}) = {G.values[B]} while F({format_set(B, g)}) = {F.values[B]}"
    )
    holds = bool(is_quasiconcave(F, family)) and G != F
    report.add("thm1_converse", Verdict("thm1_converse", True) if holds
               else Verdict("thm1_converse", False, {"A": A, "B": B}))
    if args.function:
        v = duality.check_theorem1(family, load_function(args.function, family))
        report.details.append(f"given F: {v.describe(g)}")


def _check_thm2(family, report, args):
    heritage = has_heritage(family)
    report.details.append(heritage.describe(family.ground))
    if not heritage:
        report.skip("thm2_forward", "the family lacks the heritage property")
        report.add("thm2_converse", sweeps.theorem2_converse(family))
        A, B, a = duality.heritage_gap(family)
        g = family.ground
        report.details.append(
            f"thm2_converse: pi = 1 at x == {g.label(a)}, else 2 "
            f"(A = {format_set(A, g)}, B = {format_set(B, g)})"
        )
        if args.linkage:
            given = duality.check_theorem2(family, load_linkage(args.linkage, g))
            report.details.append(f"given linkage, F_pi {given.describe(g)}")
        return
    report.skip("thm2_converse", "the family has the heritage property")
    universe = _linkages(family, args, (1, 2))
    report.details.append(f"thm2_forward: {len(universe)} monotone linkages")
    for pi in universe:
        v = duality.check_theorem2(family, pi)
        if not v:
            report.add("thm2_forward", v)
            return
    report.add("thm2_forward", Verdict("thm2_forward", True))


def _linkages(family, args, values) -> list[LinkageFunction]:
    if args.linkage:
        return [load_linkage(args.linkage, family.ground)]
    rng = random.Random(args.seed)
    n = family.ground.size
    try:
        return sweeps.linkage_universe(n, values, args.samples, rng)
    except CapacityExceeded:
        return [random_monotone_linkage(n, values, rng) for _ in range(args.samples or DEFAULT_SAMPLES)]


def _check_over_functions(family, report, args, claim, check):
    if args.function:
        functions = [load_function(args.function, family)]
    else:
        functions = list(enumerate_set_functions(family, _values(args.values or "0,1")))
        report.details.append(f"{claim}: {len(functions)} set functions")
    for F in functions:
        v = check(F, family)
        if not v:
            report.add(claim, Verdict(claim, False, {**v.witness, "F": repr(F)}))
            return
    report.add(claim, Verdict(claim, True))


def cmd_check(args) -> int:
    family = load_family(args.family)
    report = duality.DualityReport(instance=args.family, ground=family.ground)
    claim = args.claim
    if claim == "prop1":
        report.add("prop1", duality.check_proposition1(family))
    elif claim == "prop3":
        _check_over_functions(family, report, args, "prop3", duality.check_proposition3)
    elif claim == "prop4":
        duality._require_accessible(family)
        _check_over_functions(family, report, args, "prop4", duality.check_proposition4)
    elif claim == "thm1":
        duality._require_accessible(family)
        _check_thm1(family, report, args)
    elif claim == "thm2":
        duality._require_accessible(family)
        _check_thm2(family, report, args)
    elif claim == "thm3":
        universe = _linkages(family, args, (1, 2, 3))
        report.details.append(f"thm3: {len(universe)} monotone linkages")
        verdict = Verdict("thm3", True)
        for pi in universe:
            verdict = duality.check_theorem3(family, pi)
            if not verdict:
                break
        report.add("thm3", verdict)
    elif claim == "thm4":
        if args.linkage and args.linkage2:
            pi1 = load_linkage(args.linkage, family.ground)
            pi2 = load_linkage(args.linkage2, family.ground)
            report.add("thm4", duality.check_theorem4(family, pi1, pi2))
        else:
            duality._require_accessible(family)
            if not has_heritage(family):
                raise HypothesisFailure("thm4 without --linkage2 pairs pi with pi_F, which needs heritage")
            universe = _linkages(family, args, (1, 2, 3))
            report.details.append(f"thm4: meet(pi, pi_F) over {len(universe)} monotone linkages")
            verdict = Verdict("thm4", True)
            for pi in universe:
                verdict = sweeps.semilattice_null(family, pi)
                if not verdict:
                    break
            report.add("thm4", verdict)
    elif claim == "eq9":
        trials = args.samples or 100
        report.add("eq9", duality.check_cover_identity(family, trials, random.Random(args.seed)))
    _emit(args, report.to_json(), report.to_text())
    return 0 if report.holds else EXIT_FAILED


# maximize -------------------------------------------------------------------


def cmd_maximize(args) -> int:
    if args.graph:
        graph = load_graph(args.graph)
        pi = LinkageFunction(graph.vertices, args.kind, graph=graph)
    elif args.linkage:
        pi = load_linkage(args.linkage, GroundSet(args.n) if args.n else None)
    else:
        raise ParseError("maximize needs --linkage or --graph")
    trace = peel(pi)
    payload = trace.to_json()
    g = pi.ground
    best, value = trace.best
    lines = [
        f"{i}: {format_set(X, g)}  F = {v}  remove {g.label(x)}"
        for i, (X, v, x) in enumerate(zip(trace.chain, trace.values, trace.removed))
    ]
    lines.append(f"best: {format_set(best, g)} with value {value}")
    code = 0
    if args.verify:
        oracle_set, oracle_value = brute_force_boolean(pi)
        agree = oracle_value == value
        payload["verify"] = {
            "brute_force_set": set_to_json(oracle_set, g),
            "brute_force_value": str(oracle_value),
            "agrees": agree,
        }
        lines.append(f"brute force: {format_set(oracle_set, g)} with value {oracle_value} ({'agrees' if agree else 'DISAGREES'})")
        code = 0 if agree else EXIT_FAILED
    _emit(args, payload, "\n".join(lines))
    return code


# enumerate ------------------------------------------------------------------


def cmd_enumerate(args) -> int:
    filters = [f for f in (args.filters or "").split(",") if f]
    summary = sweeps.sweep(args.n, filters, args.sweep, samples=args.samples, seed=args.seed)
    payload = summary.to_json()
    text = "\n".join(f"{k}: {v}" for k, v in payload.items())
    _emit(args, payload, text)
    return 0 if summary.ok else EXIT_FAILED


# fixture --------------------------------------------------------------------


def cmd_fixture(args) -> int:
    obj = fixture(args.name)
    if isinstance(obj, SetFamily):
        payload = family_to_json(obj)
    elif isinstance(obj, SetFunction):
        payload = {"family": family_to_json(obj.family), **set_function_to_json(obj)}
    elif isinstance(obj, LinkageFunction):
        payload = linkage_to_json(obj)
    else:
        payload = graph_to_json(obj)
    print(json.dumps(payload, indent=2))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="setlink", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help):
        p = sub.add_parser(name, help=help)
        p.set_defaults(func=func)
        p.add_argument("--text", action="store_true", help="human-readable output instead of JSON")
        return p

    p = add("analyze", cmd_analyze, "structural properties of a family, with witnesses")
    p.add_argument("family")

    p = add("dualize", cmd_dualize, "derive pi_F, G_F or F_pi")
    p.add_argument("family")
    p.add_argument("--function")
    p.add_argument("--linkage")
    p.add_argument("--emit", choices=("pi_F", "G_F", "F_pi"), required=True)

    p = add("check", cmd_check, "check one claim on a family")
    p.add_argument("claim", choices=("prop1", "prop3", "prop4", "thm1", "thm2", "thm3", "thm4", "eq9"))
    p.add_argument("family")
    p.add_argument("--function")
    p.add_argument("--linkage")
    p.add_argument("--linkage2")
    p.add_argument("--values", help="value set for enumerated set functions (thm1: 0,1,2; prop3/prop4: 0,1)")
    p.add_argument("--samples", type=int, default=None,
                   help="sample size when a universe is too large (or trials for eq9)")
    p.add_argument("--seed", type=int, default=0)

    p = add("maximize", cmd_maximize, "greedy peeling maximization over all non-empty subsets")
    p.add_argument("--linkage")
    p.add_argument("--n", type=int, help="ground size for a table linkage without its own ground")
    p.add_argument("--graph")
    p.add_argument("--kind", choices=("degree", "proximity"), default="degree")
    p.add_argument("--verify", action="store_true", help="compare with exhaustive search")

    p = add("enumerate", cmd_enumerate, "enumerate small families and sweep a claim")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--filters", default="", help="comma-separated: accessible,chain,heritage,...")
    p.add_argument("--sweep", choices=sweeps.CLAIMS)
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("fixture", help="print a fixture as JSON")
    p.add_argument("name", choices=FIXTURE_NAMES)
    p.set_defaults(func=cmd_fixture)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, UnknownFixture) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except HypothesisFailure as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except CapacityExceeded as exc:
        print(f"error: CapacityExceeded: {exc}", file=sys.stderr)
        return EXIT_CAPACITY


if __name__ == "__main__":
    sys.exit(main())

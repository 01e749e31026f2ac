"""Command-line front end.

Exit status is 0 on success, 1 when a requested property does not hold
(``--expect-terminating``, a failed ``prefs --check``, a failing ``verify``
report) and 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Sequence

from . import fixtures, harness
from .dynamics import DynamicsError, DynamicsSpec, build_graph, cycle_witness, decompose_si_step, terminal_profiles, to_dot
from .equilibria import equilibrium_report, equilibrium_sets
from .game import Game, GameError, ProfileCapError, enumerate_profiles, load_game, parse_profile
from .prefs import (PreferenceError, classify, is_acyclic, is_strict_linear_order, is_strict_weak_order,
                    load_preferences, out_of_pattern)

DEFAULT_DYNAMICS = ("I,L,1P", "I,L", "I,A", "SI", "SI,A", "SI,1P")
CHECKS = ("acyclic", "swo", "slo", "pattern", "layers")

EXIT_OK, EXIT_FAILED, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _read_document(path: str) -> dict[str, Any]:
    """Load JSON from ``path``; a bare fixture name such as ``fig1.json`` falls back to the bundled copy."""
    p = Path(path)
    if path == "-":
        text = sys.stdin.read()
    elif p.exists():
        text = p.read_text(encoding="utf-8")
    elif p.stem in fixtures.GAMES + fixtures.PROFILES and len(p.parts) == 1:
        return fixtures.fixture_document(p.stem)
    else:
        raise InputError(f"no such file: {path}")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise InputError(f"{path}: expected a JSON object")
    return doc


def _game(path: str) -> Game:
    return load_game(_read_document(path))


def _name(s, long: bool) -> str:
    return s.name(long)


def _show(name: str) -> str:
    return name if name else "ε"


def _emit(args, data: Any, text: str) -> None:
    if args.json:
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        print(text, end="" if text.endswith("\n") else "\n")


def _spec(text: str) -> DynamicsSpec:
    return DynamicsSpec.parse(text)


def _cmd_analyze(args) -> int:
    g = _game(args.file)
    long = args.long_names
    profiles = enumerate_profiles(g)
    specs = [_spec(t) for t in (args.dynamics or DEFAULT_DYNAMICS)]
    dyn: dict[str, Any] = {}
    lines = [f"profiles: {len(profiles)}", "dynamics:"]
    all_terminate = True
    for spec in specs:
        graph = build_graph(g, spec, profiles)
        cycle = cycle_witness(graph)
        term = [_name(s, long) for s in terminal_profiles(graph)]
        all_terminate &= cycle is None
        dyn[spec.label()] = {"terminates": cycle is None, "terminal": term, "edges": len(graph.edges),
                             "cycle": None if cycle is None else [_name(s, long) for s in cycle]}
        verdict = "terminates" if cycle is None else "cycles"
        line = f"  {spec.label():<16} {verdict:<10} terminal: {', '.join(map(_show, term)) or '-'}"
        if cycle is not None:
            line += "   cycle: " + " -> ".join(_show(_name(s, long)) for s in cycle)
        lines.append(line)
    eq = equilibrium_sets(g, profiles)
    eq_doc = {k: [_name(s, long) for s in getattr(eq, k)] for k in ("ne", "spe", "sne")}
    lines.append("equilibria:")
    for k, names in eq_doc.items():
        lines.append(f"  {k.upper() + ':':<5} {', '.join(map(_show, names)) or '-'}")
    _emit(args, {"profiles": len(profiles), "dynamics": dyn, "equilibria": eq_doc}, "\n".join(lines))
    return EXIT_FAILED if args.expect_terminating and not all_terminate else EXIT_OK


def _cmd_graph(args) -> int:
    g = _game(args.file)
    graph = build_graph(g, _spec(args.dynamics))
    long = args.long_names
    if args.dot is not None:
        dot = to_dot(graph, long_names=long)
        if args.dot == "-":
            sys.stdout.write(dot)
        else:
            Path(args.dot).write_text(dot, encoding="utf-8")
    else:
        v = graph.vertices
        edges = []
        for a, b in sorted(graph.edges):
            players = sorted(graph.edge_labels[(a, b)].players, key=list(g.players).index)
            edges.append({"from": _name(v[a], long), "to": _name(v[b], long), "players": players})
        text = "\n".join(f"{_show(e['from'])} -> {_show(e['to'])}  [{','.join(e['players'])}]" for e in edges)
        _emit(args, {"dynamics": graph.spec.label(), "profiles": [_name(s, long) for s in v], "edges": edges},
              text or "(no edges)")
    terminated = cycle_witness(graph) is None
    return EXIT_FAILED if args.expect_terminating and not terminated else EXIT_OK


def _cmd_equilibria(args) -> int:
    g = _game(args.file)
    report = equilibrium_report(g, long_names=args.long_names)
    kinds = ("ne", "spe", "sne") if args.kind == "all" else (args.kind,)
    doc = {name: {k: entry[k] for k in kinds} | {"witnesses": {k: entry["witnesses"][k] for k in kinds}}
           for name, entry in report.items()}
    lines = []
    for name, entry in doc.items():
        for k in kinds:
            w = entry["witnesses"][k]
            verdict = "yes" if entry[k] else "no   deviation: " + json.dumps(w, sort_keys=True)
            lines.append(f"{_show(name):<12} {k.upper():<4} {verdict}")
    _emit(args, doc, "\n".join(lines))
    return EXIT_OK


def _cmd_prefs(args) -> int:
    doc = _read_document(args.file)
    prefs = dict(load_game(doc).prefs) if "tree" in doc else load_preferences(doc)
    report = classify(prefs)
    checks = CHECKS if args.check == "all" else (args.check,)
    verdicts: dict[str, Any] = {}
    lines = []
    for check in checks:
        if check in ("acyclic", "swo", "slo"):
            test = {"acyclic": is_acyclic, "swo": is_strict_weak_order, "slo": is_strict_linear_order}[check]
            per_player = {p: test(r) for p, r in prefs.items()}
            ok = all(per_player.values())
            lines.append(f"{check}: " + ", ".join(f"{p}={'yes' if v else 'no'}" for p, v in per_player.items()))
        elif check == "pattern":
            ok = out_of_pattern(prefs)
            main, sec = report["main_pattern_witness"], report["secondary_pattern_witness"]
            lines.append(f"out of pattern: {'yes' if ok else 'no'}")
            lines.append(f"  main pattern witness: {main}")
            lines.append(f"  secondary pattern witness: {sec}")
        else:
            layers = report["layers"]
            ok = layers is not None
            if not all(report["swo"].values()):
                lines.append("layers: preferences are not all strict weak orders")
            elif layers is None:
                lines.append("layers: none (cannot be layered)")
            else:
                lines.append("layers: " + " < ".join("{" + ",".join(layer) + "}" for layer in layers))
        verdicts[check] = ok
    _emit(args, {"report": report, "checks": verdicts}, "\n".join(lines))
    return EXIT_OK if all(verdicts.values()) else EXIT_FAILED


def _cmd_decompose(args) -> int:
    g = _game(args.file)
    s, t = parse_profile(g, args.source), parse_profile(g, args.target)
    chain = decompose_si_step(g, s, t)
    names = [_name(p, args.long_names) for p in chain]
    _emit(args, {"chain": names}, " -> ".join(map(_show, names)))
    return EXIT_OK


def _cmd_verify(args) -> int:
    params = harness.default_params(args.claim, seed=args.seed)
    overrides = {k: getattr(args, k) for k in ("max_depth", "max_branching", "num_players", "num_outcomes",
                                               "pref_kind", "max_profiles") if getattr(args, k) is not None}
    if overrides:
        params = harness.GenParams(**{**params.__dict__, **overrides})
    report = harness.verify(args.claim, params, args.trials)
    if args.json:
        print(harness.report_json(report))
    else:
        print(f"{report['claim']}: {report['statement']}")
        print(f"trials: {report['trials']}  passed: {report['passed']}  skipped: {report['skipped']}  "
              f"failed: {report['failed']}")
        for f in report["fixtures"]:
            print(f"fixture {f['name']}: {'ok' if f['ok'] else 'FAILED'}")
        if report["failures"]:
            first = report["failures"][0]
            print(f"first counterexample (seed {first['seed']}):")
            print(json.dumps({"game": first["game"], "counterexample": first["counterexample"]}, sort_keys=True))
    return EXIT_OK if report["ok"] else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--long-names", action="store_true", help="name profiles as node=action lists")
    common.add_argument("--json", action="store_true", help="print a JSON report")

    parser = argparse.ArgumentParser(prog="seqdyn", description="Strategy-update dynamics in sequential games.")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("analyze", parents=[common], help="termination verdicts and equilibrium sets")
    p.add_argument("file")
    p.add_argument("--dynamics", action="append", help="property tags or mixed:PLAYERS (repeatable)")
    p.add_argument("--expect-terminating", action="store_true")
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("graph", parents=[common], help="dynamics graph as an edge list or DOT")
    p.add_argument("file")
    p.add_argument("--dynamics", required=True, help="e.g. I,L,1P or mixed:2")
    p.add_argument("--dot", metavar="OUT", help="write DOT to OUT ('-' for standard output)")
    p.add_argument("--expect-terminating", action="store_true")
    p.set_defaults(func=_cmd_graph)

    p = sub.add_parser("equilibria", parents=[common], help="per-profile equilibrium verdicts with witnesses")
    p.add_argument("file")
    p.add_argument("--kind", choices=("ne", "spe", "sne", "all"), default="all")
    p.set_defaults(func=_cmd_equilibria)

    p = sub.add_parser("prefs", parents=[common], help="classify the preference profile")
    p.add_argument("file")
    p.add_argument("--check", choices=CHECKS + ("all",), default="all")
    p.set_defaults(func=_cmd_prefs)

    p = sub.add_parser("decompose", parents=[common], help="split an SI update into atomic steps")
    p.add_argument("file")
    p.add_argument("--from", dest="source", required=True)
    p.add_argument("--to", dest="target", required=True)
    p.set_defaults(func=_cmd_decompose)

    p = sub.add_parser("verify", parents=[common], help="randomized check of one claim")
    p.add_argument("--claim", required=True, choices=tuple(harness.CLAIMS))
    p.add_argument("--trials", type=int, default=500)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--pref-kind", choices=harness.PREF_KINDS)
    p.add_argument("--max-depth", type=int)
    p.add_argument("--max-branching", type=int)
    p.add_argument("--num-players", type=int)
    p.add_argument("--num-outcomes", type=int)
    p.add_argument("--max-profiles", type=int)
    p.set_defaults(func=_cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, GameError, PreferenceError, DynamicsError, harness.GenParamsError,
            ProfileCapError, OSError) as exc:
        print(f"seqdyn: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Every command reads one ``.faso`` file and writes a single document to stdout,
either as text or as JSON.  Exit status is 0 on success, 1 for bad input and 2
when a resource limit is hit.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from typing import List, Optional

from . import __version__
from .errors import CorrespondenceFailure, InputError, ResourceLimitError
from .grounder import GroundingConfig, ground_program
from .kernel import Program
from .parser import parse_program, render_program
from .preferences import rank
from .solver import SolverConfig, enumerate_answer_sets
from .translator import translate, verify_translation

SCHEMA_VERSION = "1"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        sys.exit(1)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("file", help="input .faso program")
    common.add_argument("--format", choices=("text", "json"), default="text")
    limits = common.add_argument_group("limits")
    limits.add_argument("--depth", type=int, default=GroundingConfig.depth, help="Herbrand term depth")
    limits.add_argument("--max-instances", type=int, default=GroundingConfig.max_instances,
                        help="grounding cap on rule instances")
    limits.add_argument("--max-iterations", type=int, default=SolverConfig.max_iterations,
                        help="fixpoint iteration cap")
    limits.add_argument("--max-candidates", type=int, default=SolverConfig.max_candidates,
                        help="brute-force candidate cap")

    parser = _Parser(prog="fuzzyaso", description="Fuzzy answer set optimization toolkit.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("parse", parents=[common], help="validate and echo the normalized program")
    sub.add_parser("ground", parents=[common], help="print the ground program")
    solve = sub.add_parser("solve", parents=[common], help="enumerate answer sets")
    solve.add_argument("--engine", choices=("split", "brute"), default="split")
    solve.add_argument("--max-models", type=int, default=None, help="print at most N answer sets")
    rk = sub.add_parser("rank", parents=[common], help="rank answer sets by the preference rules")
    rk.add_argument("--strategy", choices=("pareto", "maximal"), default="maximal")
    rk.add_argument("--engine", choices=("split", "brute"), default="split")
    sub.add_parser("translate", parents=[common], help="compile preferences into generator rules")
    vf = sub.add_parser("verify", parents=[common], help="check the translation against direct evaluation")
    vf.add_argument("--engine", choices=("split", "brute"), default="split")
    return parser


# -- commands ------------------------------------------------------------------------


def _answer_sets(sets) -> list:
    return [a.as_strings() for a in sets]


def _text_set(a) -> str:
    return "{" + ", ".join(f"{k}:{v}" for k, v in a.as_strings().items()) + "}"


def _cmd_parse(program: Program, args, gcfg, scfg):
    payload = {
        "generator_rules": len(program.gen),
        "preference_rules": len(program.pref),
        "program": render_program(program),
    }
    return payload, payload["program"]


def _cmd_ground(program, args, gcfg, scfg):
    ground = ground_program(program, gcfg)
    payload = {
        "generator_rules": len(ground.gen),
        "preference_rules": len(ground.pref),
        "program": render_program(ground),
    }
    return payload, payload["program"]


def _cmd_solve(program, args, gcfg, scfg):
    ground = ground_program(program, gcfg)
    report = enumerate_answer_sets(ground, args.engine, scfg)
    sets = report.answer_sets
    if args.max_models is not None:
        sets = sets[: args.max_models]
    payload = {
        "engine": args.engine,
        "count": len(report.answer_sets),
        "answer_sets": _answer_sets(sets),
    }
    lines = [f"{len(report.answer_sets)} answer set(s)"]
    lines += [f"A{i}: {_text_set(a)}" for i, a in enumerate(sets, start=1)]
    return payload, "\n".join(lines) + "\n"


def _cmd_rank(program, args, gcfg, scfg):
    ground = ground_program(program, gcfg)
    sets = enumerate_answer_sets(ground, args.engine, scfg).answer_sets
    report = rank(sets, ground.pref, args.strategy)
    payload = {
        "strategy": args.strategy,
        "answer_sets": _answer_sets(sets),
        "tiers": [[i + 1 for i in tier] for tier in report.tiers],
        "pairwise": [[o.value for o in row] for row in report.pairwise],
        "cycles_detected": report.cycles_detected,
    }
    lines = []
    for t, tier in enumerate(report.tiers, start=1):
        header = f"#{t}"
        if t == 1:
            header += " (most preferred)"
        elif t == len(report.tiers):
            header += " (least preferred)"
        lines.append(header)
        lines += [f"  A{i + 1}: {_text_set(sets[i])}" for i in tier]
    if report.cycles_detected:
        lines.append("note: preference cycle, remaining answer sets share the last tier")
    return payload, "\n".join(lines) + "\n"


def _cmd_translate(program, args, gcfg, scfg):
    ground = ground_program(program, gcfg)
    out = translate(ground)
    payload = {
        "program": render_program(out.program),
        "rule_index": {f"{rid}/{key}": str(lit) for (rid, key), lit in out.rule_index.items()},
    }
    return payload, payload["program"]


def _cmd_verify(program, args, gcfg, scfg):
    ground = ground_program(program, gcfg)
    report = verify_translation(ground, args.engine, scfg)
    payload = {
        "answer_sets": len(report.answer_sets),
        "translated_answer_sets": len(report.translated_answer_sets),
        "bijective": report.bijective,
        "checks": len(report.entries),
        "matched": report.matched,
        "entries": [
            {
                "answer_set": e.answer_set + 1,
                "rule": e.rule_id,
                "outcome": str(e.outcome),
                "translated": str(e.translated),
                "matched": e.matched,
            }
            for e in report.entries
        ],
    }
    lines = [
        f"answer sets: {len(report.answer_sets)} direct, {len(report.translated_answer_sets)} translated",
        f"sat checks matched: {report.matched}/{len(report.entries)}",
    ]
    lines += [
        f"  A{e.answer_set + 1} {e.rule_id}: expected {e.outcome}, got {e.translated}"
        for e in report.entries
        if not e.matched
    ]
    return payload, "\n".join(lines) + "\n"


COMMANDS = {
    "parse": _cmd_parse,
    "ground": _cmd_ground,
    "solve": _cmd_solve,
    "rank": _cmd_rank,
    "translate": _cmd_translate,
    "verify": _cmd_verify,
}


def run(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        with open(args.file, "rb") as fh:
            raw = fh.read()
        text = raw.decode("utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    gcfg = GroundingConfig(depth=args.depth, max_instances=args.max_instances)
    scfg = SolverConfig(max_iterations=args.max_iterations, max_candidates=args.max_candidates)
    try:
        program = parse_program(text)
        payload, rendered = COMMANDS[args.command](program, args, gcfg, scfg)
    except InputError as exc:
        print(f"{args.file}:{exc}" if getattr(exc, "span", None) else f"error: {exc}", file=sys.stderr)
        return 1
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return 2
    except CorrespondenceFailure as exc:
        print(f"translation mismatch: {exc}", file=sys.stderr)
        return 1
    if args.format == "json":
        doc = {
            "schema_version": SCHEMA_VERSION,
            "command": args.command,
            "program_digest": "sha256:" + hashlib.sha256(raw).hexdigest(),
            "payload": payload,
        }
        rendered = json.dumps(doc, indent=2) + "\n"
    sys.stdout.write(rendered)
    if args.command == "verify" and payload["matched"] != payload["checks"]:
        return 1
    return 0


def main() -> None:
    sys.exit(run())

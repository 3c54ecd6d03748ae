#!/usr/bin/env python3
"""
threshold-am: command-line entry point.

• simulate  – iterate one update rule on a model file (CSV trace, DOT frames, orbit)
• equiv     – step-wise equivalence of two rules over seeded random trials
• catalog   – the 27 threshold-update action models and their classes
• translate – automaton JSON <-> action-model JSON

Exit codes: 0 success / PASS, 1 equivalence FAIL, 2 usage or validation error.
"""
from __future__ import annotations

import argparse
import asyncio
import logging
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from functools import partial
from typing import List, Optional, Sequence

from actions.catalog import CatalogClass, catalog, e1, e2, table1
from actions.action_model import ActionModel
from belief.automaton import Automaton
from belief.translate import action_model_to_automaton, automaton_to_action_model
from dynamics.direct import Game, GameKind, TiePolicy
from dynamics.orbit import TrialResult, check_stepwise_equivalence, detect_orbit, equivalence_trial, run
from dynamics.rules import (
    ActionModelRule,
    AutomatonRule,
    BestResponseRule,
    Eq1Rule,
    Eq2Rule,
    UpdateRule,
)
from export import write_frames
from settings import SettingsManager
from storage import (
    action_model_from_data,
    action_model_to_data,
    automaton_from_data,
    automaton_to_data,
    document_kind,
    dumps,
    load_action_model,
    load_automaton,
    load_belief_change,
    load_model,
    read_json,
    write_trace_csv,
)
from threshold.errors import IndexOutOfRange, RuleSpecError, ThresholdError

logger = logging.getLogger("main")

LOG_FORMAT = "%(asctime)s  %(levelname)-8s  %(name)s | %(message)s"

EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2

_GAME_KINDS = {"coord": GameKind.COORDINATION, "anti": GameKind.ANTICOORDINATION}


# ──────────────────────────────  rule specs  ──────────────────────────────
def _payoff(text: str) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise RuleSpecError(f"payoff {text!r} is not a number") from None
    if value <= 0:
        raise RuleSpecError(f"payoff {text!r} must be positive")
    return value


def _best_response(spec: str, parts: List[str]) -> BestResponseRule:
    if len(parts) not in (5, 6) or (len(parts) == 6 and parts[5] != "seed"):
        raise RuleSpecError(f"expected br:<coord|anti>:<x>:<y>:<tie>[:seed], got {spec!r}")
    kind = _GAME_KINDS.get(parts[1])
    if kind is None:
        raise RuleSpecError(f"game kind must be coord or anti, got {parts[1]!r}")
    try:
        tie = TiePolicy(parts[4])
    except ValueError:
        choices = ", ".join(t.value for t in TiePolicy)
        raise RuleSpecError(f"tie policy must be one of {choices}, got {parts[4]!r}") from None
    return BestResponseRule(Game(kind, _payoff(parts[2]), _payoff(parts[3])), tie, len(parts) == 6)


def _action_model(spec: str, arg: str) -> ActionModel:
    if arg == "e1":
        return e1()
    if arg == "e2":
        return e2()
    if arg.startswith("file="):
        return load_action_model(arg[len("file="):])
    try:
        index = int(arg)
    except ValueError:
        raise RuleSpecError(f"unknown action model {spec!r}") from None
    if not 1 <= index <= 27:
        raise IndexOutOfRange(index)
    return table1(index)


def _automaton(spec: str, arg: str) -> Automaton:
    if arg == "belief_change":
        return load_belief_change()
    if arg.startswith("file="):
        return load_automaton(arg[len("file="):])
    raise RuleSpecError(f"expected auto:file=<path> or auto:belief_change, got {spec!r}")


def parse_rule(spec: str) -> UpdateRule:
    """Rule from its command-line spelling (eq1, eq2, br:..., am:..., auto:...)."""
    spec = spec.strip()
    if spec == "eq1":
        return Eq1Rule()
    if spec == "eq2":
        return Eq2Rule()
    head, _, arg = spec.partition(":")
    if head == "br":
        return _best_response(spec, spec.split(":"))
    if head == "am" and arg:
        return ActionModelRule(_action_model(spec, arg), name=spec)
    if head == "auto" and arg:
        return AutomatonRule(_automaton(spec, arg), name=spec)
    raise RuleSpecError(f"unknown rule {spec!r}")


# ──────────────────────────────  commands  ──────────────────────────────
def cmd_simulate(args, settings: SettingsManager) -> int:
    model = load_model(args.model)
    rule = parse_rule(args.rule)
    steps = args.steps if args.steps is not None else settings.get("steps")
    trace = run(model, rule, steps)

    if args.csv:
        with open(args.csv, "w", encoding="utf-8", newline="") as fh:
            write_trace_csv(trace, fh)
        logger.info("Wrote %s", args.csv)
    elif not args.orbit:
        write_trace_csv(trace, sys.stdout)
    if args.frames:
        write_frames(trace, args.frames)
    if args.orbit:
        cap = args.cap if args.cap is not None else settings.get("orbit_cap")
        print(detect_orbit(model, rule, cap).summary())
    return EXIT_OK


async def _run_trials(args, settings: SettingsManager, left: UpdateRule, right: UpdateRule) -> List[TrialResult]:
    """Trials run on a worker pool; results come back in trial order."""
    trials = args.trials if args.trials is not None else settings.get("trials")
    workers = args.workers if args.workers is not None else settings.get("workers")
    belief = isinstance(left, AutomatonRule) or isinstance(right, AutomatonRule)
    job = partial(
        equivalence_trial,
        base_seed=args.seed if args.seed is not None else settings.get("seed"),
        left=left,
        right=right,
        max_agents=args.agents if args.agents is not None else settings.get("max_agents"),
        steps=args.steps if args.steps is not None else settings.get("steps"),
        edge_probability=settings.get("edge_probability"),
        behavior_probability=settings.get("behavior_probability"),
        belief=belief,
    )
    loop = asyncio.get_running_loop()
    with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        futures = [loop.run_in_executor(pool, job, i) for i in range(trials)]
        return list(await asyncio.gather(*futures))


def cmd_equiv(args, settings: SettingsManager) -> int:
    left, right = parse_rule(args.left), parse_rule(args.right)

    if args.model:
        steps = args.steps if args.steps is not None else settings.get("steps")
        report = check_stepwise_equivalence(load_model(args.model), left, right, steps)
        print(report.summary())
        return EXIT_OK if report.equivalent else EXIT_FAIL

    results = asyncio.run(_run_trials(args, settings, left, right))
    failures = [r for r in results if not r.report.equivalent]
    for r in failures:
        print(f"trial {r.index}: {r.report.summary()}")
    tie_trials = sum(1 for r in results if r.report.tie_steps)
    logger.info("%d trials, %d failed, %d with ties", len(results), len(failures), tie_trials)
    if failures:
        print(f"FAIL ({len(failures)} of {len(results)} trials)")
        return EXIT_FAIL
    print(f"PASS ({len(results)} trials, {tie_trials} with ties)")
    return EXIT_OK


def cmd_catalog(args, settings: SettingsManager) -> int:
    wanted = CatalogClass(args.klass) if args.klass else None
    for entry in catalog(args.third_cell):
        if wanted is None or entry.klass is wanted:
            print(entry.row())
    return EXIT_OK


def cmd_translate(args, settings: SettingsManager) -> int:
    data = read_json(args.input)
    kind = document_kind(data)
    if args.to == "action-model":
        if kind != "automaton":
            raise RuleSpecError("--to action-model expects an automaton document")
        out = action_model_to_data(automaton_to_action_model(automaton_from_data(data)))
    else:
        if kind != "action-model":
            raise RuleSpecError("--to automaton expects an action-model document")
        out = automaton_to_data(action_model_to_automaton(action_model_from_data(data)))

    text = dumps(out)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
        logger.info("Wrote %s", args.output)
    else:
        sys.stdout.write(text)
    return EXIT_OK


# ──────────────────────────────  argparse  ──────────────────────────────
def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="threshold-am",
        description="Threshold-model diffusion via direct updates, best response and action models.",
    )
    parser.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING (default), ERROR")
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="iterate a rule on a model file")
    sim.add_argument("--model", required=True, help="model JSON")
    sim.add_argument("--rule", required=True, help="eq1 | eq2 | br:... | am:... | auto:...")
    sim.add_argument("--steps", type=int, default=None)
    sim.add_argument("--orbit", action="store_true", help="print transient=<k> period=<p>")
    sim.add_argument("--cap", type=int, default=None, help="orbit search cap")
    sim.add_argument("--csv", default=None, help="write the trace here instead of stdout")
    sim.add_argument("--frames", default=None, help="directory for one DOT file per step")
    sim.set_defaults(func=cmd_simulate)

    eq = sub.add_parser("equiv", help="step-wise equivalence of two rules")
    eq.add_argument("--left", required=True)
    eq.add_argument("--right", required=True)
    eq.add_argument("--model", default=None, help="check one model file instead of random trials")
    eq.add_argument("--trials", type=int, default=None)
    eq.add_argument("--agents", type=int, default=None, help="max agents per random model")
    eq.add_argument("--seed", type=int, default=None)
    eq.add_argument("--steps", type=int, default=None)
    eq.add_argument("--workers", type=int, default=None)
    eq.set_defaults(func=cmd_equiv)

    cat = sub.add_parser("catalog", help="list the 27 threshold-update action models")
    cat.add_argument("--class", dest="klass", choices=[c.value for c in CatalogClass], default=None)
    cat.add_argument("--third-cell", choices=["gt", "lt"], default="gt")
    cat.set_defaults(func=cmd_catalog)

    tr = sub.add_parser("translate", help="automaton <-> action-model JSON")
    tr.add_argument("--in", dest="input", required=True)
    tr.add_argument("--to", required=True, choices=["action-model", "automaton"])
    tr.add_argument("--out", dest="output", default=None)
    tr.set_defaults(func=cmd_translate)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_OK

    settings = SettingsManager()
    level = (args.log_level or settings.get("log_level")).upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), format=LOG_FORMAT)

    try:
        return args.func(args, settings)
    except ThresholdError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except Exception as exc:  # noqa: BLE001
        logger.exception("Command %s failed", args.command)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())

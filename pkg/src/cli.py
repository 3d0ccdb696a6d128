"""Command line entry point.

    poetry run aka-sim run --kem test --sessions 10 --mode mixed --seed 7 --out t.log
    poetry run aka-sim attack all --seed 0
    poetry run aka-sim bench --kem kyber,test --iters 1000
    poetry run aka-sim sizes --kem kyber,mceliece,bike,hqc
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from dotenv import load_dotenv

from src.attacks import run_scenarios
from src.config_schema import RunSettings, load_settings
from src.crypto import OsRandom, SeededRandom, get_suite, registered_suites
from src.errors import AkaError, SuiteUnavailableError, UsageError
from src.reports import build_bench_report, build_size_report
from src.session_graph import run_session
from src.session_state import SessionMode
from src.sim.transcript import write_transcripts
from src.world import provision_world

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

DEFAULT_OUT = {
    "run": Path("transcripts.jsonl"),
    "attack": Path("verdicts.jsonl"),
    "bench": Path("bench.jsonl"),
    "sizes": Path("sizes.jsonl"),
}


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="aka-sim", description="KEM-based AKA protocol simulator")
    common = _ArgumentParser(add_help=False)
    common.add_argument("--kem", help="KEM suite name, or a comma separated list for bench/sizes")
    common.add_argument("--seed", type=int)
    common.add_argument("--out", type=Path)
    common.add_argument("--config", type=Path, help="dotenv file with KEM, SESSIONS, MODE, SEED, OUT, ITERS")

    sub = parser.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", parents=[common], help="run honest sessions and write their transcripts")
    run.add_argument("--sessions", type=int)
    run.add_argument("--mode", choices=["supi", "guti", "mixed"])

    attack = sub.add_parser("attack", parents=[common], help="run attack scenarios")
    attack.add_argument("scenarios", nargs="*", default=["all"], metavar="scenario")

    bench = sub.add_parser("bench", parents=[common], help="time KeyGen/Encaps/Decaps per suite")
    bench.add_argument("--iters", type=int)

    sub.add_parser("sizes", parents=[common], help="key, ciphertext and message sizes per suite")
    return parser


def _check_suites(names: list[str]) -> None:
    known = registered_suites()
    unknown = [name for name in names if name not in known]
    if unknown or not names:
        raise UsageError(f"unknown KEM suite {', '.join(unknown) or '(none)'}; registered: {', '.join(known)}")


def _single_suite(settings: RunSettings) -> str:
    names = settings.kem_names
    _check_suites(names)
    if len(names) != 1:
        raise UsageError("this command takes a single --kem suite")
    try:
        get_suite(names[0])
    except SuiteUnavailableError as e:
        raise UsageError(str(e)) from e
    return names[0]


def _session_mode(mode: str, index: int) -> SessionMode:
    if mode == "mixed":
        # Every third session re-identifies with the SUPI, the rest ride on the GUTI
        return SessionMode.SUPI if index % 3 == 0 else SessionMode.GUTI
    return SessionMode(mode)


def cmd_run(settings: RunSettings) -> int:
    suite_name = _single_suite(settings)
    if settings.seed is None:
        world_rng, session_rng = OsRandom(), OsRandom()
    else:
        world_rng, session_rng = SeededRandom(settings.seed), SeededRandom(settings.seed + 1)
    world = provision_world(world_rng, suite_name)

    transcripts = []
    failed = 0
    for i in range(settings.sessions):
        mode = _session_mode(settings.mode, i)
        result = run_session(world, mode, rng=session_rng, label=f"s{i}")
        transcripts.append(result.transcript)
        if not result.outcome.completed:
            failed += 1
            logger.warning("session s%d (%s) aborted at %s: %s", i, mode.value, result.outcome.aborted_at, result.outcome.abort_reason)

    out = settings.out or DEFAULT_OUT["run"]
    entries = write_transcripts(out, transcripts)
    print(f"{settings.sessions - failed}/{settings.sessions} sessions completed, {entries} entries written to {out}")
    return EXIT_OK if failed == 0 else EXIT_FAILED


def cmd_attack(settings: RunSettings, scenarios: list[str]) -> int:
    suite_name = _single_suite(settings)
    verdicts = run_scenarios(scenarios, suite_name=suite_name, seed=settings.seed or 0)

    out = settings.out or DEFAULT_OUT["attack"]
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text("".join(v.to_jsonl() for v in verdicts), encoding="utf-8")

    for verdict in verdicts:
        print(f"{verdict.scenario:<16} {'holds' if verdict.holds else 'FAILS'}")
        for control in verdict.controls:
            status = "discriminates" if not control.holds else "DOES NOT DISCRIMINATE"
            print(f"  control {control.scenario:<40} {status}")
    # Controls are reported but never decide the exit status
    return EXIT_OK if all(v.holds for v in verdicts) else EXIT_FAILED


def cmd_bench(settings: RunSettings) -> int:
    _check_suites(settings.kem_names)
    report = build_bench_report(settings.kem_names, settings.iters)
    out = settings.out or DEFAULT_OUT["bench"]
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(report.to_jsonl(), encoding="utf-8")
    print(report.to_text(), end="")
    return EXIT_OK


def cmd_sizes(settings: RunSettings) -> int:
    _check_suites(settings.kem_names)
    report = build_size_report(settings.kem_names, seed=settings.seed or 0)
    out = settings.out or DEFAULT_OUT["sizes"]
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(report.to_jsonl(), encoding="utf-8")
    print(report.to_text(), end="")
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    load_dotenv()
    try:
        args = build_parser().parse_args(argv)
        flags = {key: value for key, value in vars(args).items() if key not in ("command", "config", "scenarios")}
        settings = load_settings(flags, config_file=args.config)
        logging.basicConfig(level=settings.log_level, format="%(levelname)s %(name)s: %(message)s")

        if args.command == "run":
            return cmd_run(settings)
        if args.command == "attack":
            return cmd_attack(settings, args.scenarios)
        if args.command == "bench":
            return cmd_bench(settings)
        return cmd_sizes(settings)
    except UsageError as e:
        print(f"aka-sim: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except AkaError as e:
        logger.error("%s", e)
        print(f"aka-sim: {e}", file=sys.stderr)
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())

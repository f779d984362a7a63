"""Command-line interface.

Exit codes: 0 success, 1 compile or validation error, 2 I/O, config or
provider error, 3 synthesis failed, 4 fallback interpreter failed.
stdout carries JSON only; diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import __version__
from .config import load_config
from .errors import (
    DaoForgeError,
    EvalError,
    InterpreterError,
    ParseError,
    SynthesisFailed,
)
from .evaluator import eval_program
from .parser import parse
from .registry import load_registry

log = logging.getLogger("daoforge")

EXIT_OK, EXIT_COMPILE, EXIT_IO, EXIT_SYNTH, EXIT_FALLBACK = 0, 1, 2, 3, 4


def _common(p: argparse.ArgumentParser):
    p.add_argument("--config", help="JSON config file")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--offline", dest="offline", action="store_true", default=True,
                      help="template generator, hashing embedder, fixture ABIs (default)")
    mode.add_argument("--live", dest="offline", action="store_false",
                      help="use the live generator, embedder and ABI source")
    p.add_argument("--k", type=int, help="number of retrieved samples")
    p.add_argument("--out", help="write the JSON result here instead of stdout")
    p.add_argument("-v", "--verbose", action="store_true")


def _ablation(p: argparse.ArgumentParser):
    p.add_argument("--no-extractor", action="store_true", help="drop relation labels (plain retrieval)")
    p.add_argument("--no-synthesizer", action="store_true", help="go straight to the ABI fallback")
    p.add_argument("--no-interpreter", action="store_true", help="disable the ABI fallback")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="daoforge", description="DAOLang compiler and proposal synthesis toolchain")
    ap.add_argument("--version", action="version", version=f"daoforge {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compile", help="compile a DAOLang file to payload JSON")
    p.add_argument("file")
    p.add_argument("--registry", help="registry JSON (overrides the config)")
    _common(p)

    p = sub.add_parser("retrieve", help="show the samples LCR retrieves for an utterance")
    p.add_argument("--utterance", "-u", required=True)
    _common(p)

    p = sub.add_parser("synthesize", help="utterance to DAOLang program and payload")
    p.add_argument("--utterance", "-u", required=True)
    _common(p)
    _ablation(p)

    p = sub.add_parser("validate", help="sanity-check a program, or classify a payload against a golden one")
    p.add_argument("file", nargs="?", help="DAOLang file to check")
    p.add_argument("--payload", help="generated payload JSON")
    p.add_argument("--golden", help="golden payload JSON")
    _common(p)

    p = sub.add_parser("bench", help="run the benchmark over a directory of cases")
    p.add_argument("--cases", required=True, help="directory of case JSON files")
    p.add_argument("--table", help="also write the text table to this file")
    p.add_argument("--jobs", type=int, default=1)
    _common(p)
    _ablation(p)
    return ap


def _emit(args, obj):
    text = json.dumps(obj, indent=2)
    if args.out:
        Path(args.out).write_text(text + "\n", encoding="utf-8")
    else:
        sys.stdout.write(text + "\n")


def _config(args):
    cfg = load_config(args.config)
    if getattr(args, "k", None) is not None:
        cfg = cfg.with_overrides(k=args.k)
    if not args.offline:
        cfg = cfg.with_overrides(
            generator="live" if cfg.generator == "template" else cfg.generator,
            embedding="live",
            abi_source="etherscan",
        )
    return cfg


def _pipeline(args):
    from .pipeline import Pipeline

    flags = {}
    if hasattr(args, "no_synthesizer"):
        flags = {
            "use_extractor": not args.no_extractor,
            "use_synthesizer": not args.no_synthesizer,
            "use_interpreter": not args.no_interpreter,
        }
    return Pipeline.from_config(_config(args), offline=args.offline, **flags)


def cmd_compile(args) -> int:
    cfg = _config(args)
    registry = load_registry(args.registry or cfg.check_paths().registry)
    try:
        source = Path(args.file).read_text(encoding="utf-8")
    except OSError as exc:
        raise _IOFailure(f"cannot read {args.file}: {exc}") from exc
    payload = eval_program(parse(source), registry)
    _emit(args, payload.to_obj())
    return EXIT_OK


def cmd_retrieve(args) -> int:
    from .retrieval import assign_labels, distance, matched_count

    pipe = _pipeline(args)
    labeled = pipe.extract(args.utterance)
    x_labels = assign_labels(labeled.normalized, labeled)
    vec = pipe.embedder.embed(labeled.normalized)
    lines = []
    for s in pipe.retrieve(labeled):
        lines.append(json.dumps({"id": s.id, "matched": matched_count(x_labels, s),
                                 "distance": round(float(distance(vec, s.embedding)), 6)}))
    text = "".join(line + "\n" for line in lines)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_synthesize(args) -> int:
    result = _pipeline(args).run(args.utterance)
    _emit(args, {
        "stage": result.stage,
        "program": result.program,
        "attempts": result.attempts,
        "samples": result.samples,
        "payload": result.payload.to_obj(),
    })
    return EXIT_OK


def cmd_validate(args) -> int:
    if args.payload or args.golden:
        if not (args.payload and args.golden) or args.file:
            raise _Usage("give --payload and --golden together, without a program file")
        from .pipeline import classify_equivalence, load_state_model

        cfg = _config(args).check_paths()
        gen, gold = (_read(args.payload), _read(args.golden))
        level = classify_equivalence(gen, gold, load_state_model(cfg.state_model))
        _emit(args, {"level": level.name, "passed": level.passed})
        return EXIT_OK
    if not args.file:
        raise _Usage("nothing to validate: give a program file or --payload/--golden")
    from .pipeline import sanity_check

    cfg = _config(args).check_paths()
    report = sanity_check(_read(args.file), load_registry(cfg.registry))
    for d in report.diagnostics:
        print(d, file=sys.stderr)
    _emit(args, {"ok": report.ok, "diagnostics": list(report.diagnostics)})
    return EXIT_OK if report.ok else EXIT_COMPILE


def cmd_bench(args) -> int:
    from .pipeline.bench import load_cases, run_bench

    cases = load_cases(args.cases)
    report = run_bench(cases, _pipeline(args), jobs=args.jobs)
    table = report.table()
    sys.stderr.write(table)
    if args.table:
        Path(args.table).write_text(table, encoding="utf-8")
    _emit(args, report.to_obj())
    return EXIT_OK


class _IOFailure(DaoForgeError):
    pass


class _Usage(DaoForgeError):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise _IOFailure(f"cannot read {path}: {exc}") from exc


COMMANDS = {
    "compile": cmd_compile,
    "retrieve": cmd_retrieve,
    "synthesize": cmd_synthesize,
    "validate": cmd_validate,
    "bench": cmd_bench,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except (ParseError, EvalError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_COMPILE
    except SynthesisFailed as exc:
        print(f"synthesis failed: {exc}", file=sys.stderr)
        for d in exc.diagnostics:
            print(f"  {d}", file=sys.stderr)
        return EXIT_SYNTH
    except InterpreterError as exc:
        print(f"fallback failed: {exc}", file=sys.stderr)
        return EXIT_FALLBACK
    except (DaoForgeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())

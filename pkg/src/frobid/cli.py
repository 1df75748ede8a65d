"""Command-line front end: ``frobid analyze | frob | verify | lseries``.

Exit codes: 0 success, 2 bad input, 3 math-level inconsistency,
4 resource cap exceeded.  Errors are printed to stderr as one JSON object.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

from . import perm as P
from .artin import CharacterError, CharacterTable, MissingPrime, coefficients_json, dirichlet_coefficients
from .frobenius import TableInconsistency, chebotarev_check, classify_range, cross_check
from .gamma import CorruptTable, InconsistentGroup, NoSuitableH, UnsuitableH, analyze, dumps, loads
from .poly import IntPolynomial, parse_coeffs
from .roots import DEFAULT_CEILING, PrecisionCeiling, parse_roots_file

EXIT_OK, EXIT_INPUT, EXIT_MATH, EXIT_CAP = 0, 2, 3, 4


class CliError(Exception):
    def __init__(self, code: int, kind: str, message: str):
        super().__init__(message)
        self.code = code
        self.kind = kind


@dataclass(frozen=True)
class JobConfig:
    f: Optional[IntPolynomial] = None
    generators: Tuple[P.Perm, ...] = ()
    user_roots: Optional[List[complex]] = None
    h: Optional[IntPolynomial] = None
    precision_max: int = DEFAULT_CEILING
    group_cap: int = P.DEFAULT_CAP
    symmetry: bool = False
    primes: Optional[Tuple[int, int]] = None
    workers: int = 1
    out: Optional[str] = None

    def __post_init__(self):
        if self.primes is not None and self.primes[0] > self.primes[1]:
            raise ValueError(f"prime range {self.primes[0]}..{self.primes[1]} has lo > hi")
        if self.precision_max <= 0 or self.group_cap <= 0 or self.workers <= 0:
            raise ValueError("caps and worker count must be positive")


def parse_range(text: str) -> Tuple[int, int]:
    """``"2..100000"`` -> (2, 100000)."""
    lo, sep, hi = text.partition("..")
    if not sep:
        raise ValueError(f"prime range must look like LO..HI, got {text!r}")
    return int(lo), int(hi)


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise CliError(EXIT_INPUT, "io", f"cannot read {path}: {exc.strerror}") from None


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _load_table(path: str):
    return loads(_read(path))


def _config(args) -> JobConfig:
    f = IntPolynomial(tuple(parse_coeffs(args.poly))) if getattr(args, "poly", None) else None
    gens: Tuple[P.Perm, ...] = ()
    if getattr(args, "group", None):
        if f is None:
            raise ValueError("--group needs --poly")
        gens = tuple(P.parse_generators(args.group, f.degree))
    roots = None
    if getattr(args, "roots_file", None):
        roots = parse_roots_file(_read(args.roots_file))
    h = IntPolynomial(tuple(parse_coeffs(args.h))) if getattr(args, "h", None) else None
    primes = parse_range(args.primes) if getattr(args, "primes", None) else None
    workers = getattr(args, "workers", None) or os.cpu_count() or 1
    return JobConfig(f, gens, roots, h, args.precision_max, args.group_cap,
                     getattr(args, "symmetry", False), primes, workers, args.out)


# ---------------------------------------------------------------------------
# commands

def cmd_analyze(cfg: JobConfig) -> int:
    if cfg.f is None or not cfg.generators:
        raise ValueError("analyze needs --poly and --group")
    table = analyze(cfg.f, cfg.generators, h=cfg.h, user_roots=cfg.user_roots,
                    symmetry=cfg.symmetry, ceiling=cfg.precision_max, group_cap=cfg.group_cap)
    text = dumps(table)
    if cfg.out:
        Path(cfg.out).write_text(text)
    print(f"f = {table.f}   |G| = {table.order}   h = {table.h}")
    for c in table.classes:
        deg = c.gamma.degree
        print(f"  {c.label:24s} size {c.size:<6d} cycle type {c.cycle_type}  deg Gamma {deg}")
    print("bad primes:", " ".join(str(p) for p in table.bad_primes))
    if not cfg.out:
        sys.stdout.write(text)
    return EXIT_OK


def _primes_or_fail(cfg: JobConfig) -> Tuple[int, int]:
    if cfg.primes is None:
        raise ValueError("--primes LO..HI is required")
    return cfg.primes


def cmd_frob(table_path: str, cfg: JobConfig) -> int:
    table = _load_table(table_path)
    lo, hi = _primes_or_fail(cfg)
    counts = {c.label: 0 for c in table.classes}
    bad = 0
    sink = open(cfg.out, "w") if cfg.out else sys.stdout
    try:
        for r in classify_range(table, lo, hi, cfg.workers):
            sink.write(r.to_json() + "\n")
            if r.good:
                counts[r.class_label] += 1
            else:
                bad += 1
    finally:
        if cfg.out:
            sink.close()
    summary = {"summary": {"classes": counts, "bad": bad, "range": [lo, hi]}}
    # keep stdout a clean JSONL stream when it carries the reports
    print(json.dumps(summary, sort_keys=True), file=sys.stderr if not cfg.out else sys.stdout)
    return EXIT_OK


def cmd_verify(table_path: str, cfg: JobConfig) -> int:
    table = _load_table(table_path)
    lo, hi = _primes_or_fail(cfg)
    reports = list(classify_range(table, lo, hi, cfg.workers))
    problems: List[str] = []
    for r in reports:
        problems.extend(cross_check(table, r))
    freqs = chebotarev_check(reports, table)
    out = {
        "range": [lo, hi],
        "good": sum(r.good for r in reports),
        "bad": sum(not r.good for r in reports),
        "mismatches": problems,
        "chebotarev": [{"class": c.label, "count": c.count, "expected": round(c.expected, 6),
                        "observed": round(c.observed, 6),
                        "z": None if c.z is None else round(c.z, 3)} for c in freqs],
    }
    _emit(json.dumps(out, indent=1, sort_keys=True) + "\n", cfg.out)
    return EXIT_MATH if problems else EXIT_OK


def cmd_lseries(table_path: str, char_path: str, N: int, cfg: JobConfig,
                local_path: Optional[str] = None) -> int:
    table = _load_table(table_path)
    chi = CharacterTable.loads(_read(char_path))
    local = None
    if local_path:
        local = {int(k): v for k, v in json.loads(_read(local_path)).items()}
    reports = list(classify_range(table, 2, max(N, 2), cfg.workers))
    a = dirichlet_coefficients(table, chi, reports, N, local_factors=local)
    _emit(coefficients_json(a), cfg.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing

class _Parser(argparse.ArgumentParser):
    """Usage errors become exit code 2 with the JSON error payload."""

    def error(self, message):
        raise CliError(EXIT_INPUT, "bad_input", f"{self.prog}: {message}")


def _glue_values(argv: Sequence[str]) -> List[str]:
    # "--poly -1,0,1" would read the value as an option; pass it as "--poly=-1,0,1"
    out: List[str] = []
    it = iter(argv)
    for a in it:
        if a in ("--poly", "--h"):
            nxt = next(it, None)
            out.append(a if nxt is None else f"{a}={nxt}")
        else:
            out.append(a)
    return out


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="frobid", description="Frobenius elements from class resolvents.")
    common = _Parser(add_help=False)
    common.add_argument("--precision-max", type=int, default=DEFAULT_CEILING, metavar="BITS")
    common.add_argument("--group-cap", type=int, default=P.DEFAULT_CAP, metavar="N")
    common.add_argument("--out", metavar="PATH")
    common.add_argument("--workers", type=int, metavar="N", help="default: available cores")
    common.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    a = sub.add_parser("analyze", parents=[common], help="build and save the Gamma table")
    a.add_argument("--poly", required=True, help='ascending coefficients, e.g. "1,0,-3,2,1"')
    a.add_argument("--group", required=True, help='generators, e.g. "(1,2,3,4,5);(2,5)(3,4)"')
    a.add_argument("--roots-file", help="approximate roots, one 're,im' per line, fixing the labels")
    a.add_argument("--h", help='h(x) as ascending coefficients, e.g. "0,0,1"')
    a.add_argument("--symmetry", action="store_true", help="use symmetry-reduced resolvents")

    for name, helptext in (("frob", "classify Frobenius at primes in a range"),
                           ("verify", "classify and cross-check, with Chebotarev z-scores")):
        s = sub.add_parser(name, parents=[common], help=helptext)
        s.add_argument("table")
        s.add_argument("--primes", required=True, metavar="LO..HI")

    ls = sub.add_parser("lseries", parents=[common], help="Dirichlet coefficients of an Artin L-series")
    ls.add_argument("table")
    ls.add_argument("character", help='JSON {"dimension": d, "values": {label: [re, im]}}')
    ls.add_argument("-N", type=int, required=True)
    ls.add_argument("--local-factors", help="JSON {p: [1, c1, ...]} for bad primes")
    return ap


def _classify_error(exc: BaseException) -> Tuple[int, str]:
    # order matters: several math errors subclass ValueError
    if isinstance(exc, CliError):
        return exc.code, exc.kind
    if isinstance(exc, (P.GroupTooLarge, PrecisionCeiling)):
        return EXIT_CAP, "resource_cap"
    if isinstance(exc, InconsistentGroup):
        return EXIT_MATH, "inconsistent_group"
    if isinstance(exc, (NoSuitableH, UnsuitableH)):
        return EXIT_MATH, "no_suitable_h"
    if isinstance(exc, TableInconsistency):
        return EXIT_MATH, "table_inconsistency"
    if isinstance(exc, CorruptTable):
        return EXIT_INPUT, "corrupt_table"
    if isinstance(exc, (CharacterError, MissingPrime)):
        return EXIT_INPUT, "bad_character"
    if isinstance(exc, (ValueError, KeyError, json.JSONDecodeError)):
        return EXIT_INPUT, "bad_input"
    raise exc


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = build_parser().parse_args(_glue_values(argv))
    except CliError as exc:
        print(json.dumps({"error": exc.kind, "message": str(exc), "exit_code": exc.code}), file=sys.stderr)
        return exc.code
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = _config(args)
        if args.command == "analyze":
            return cmd_analyze(cfg)
        if args.command == "frob":
            return cmd_frob(args.table, cfg)
        if args.command == "verify":
            return cmd_verify(args.table, cfg)
        return cmd_lseries(args.table, args.character, args.N, cfg, args.local_factors)
    except Exception as exc:  # noqa: BLE001 - mapped to exit codes below
        code, kind = _classify_error(exc)
        print(json.dumps({"error": kind, "message": str(exc), "exit_code": code}), file=sys.stderr)
        return code


if __name__ == "__main__":
    sys.exit(main())

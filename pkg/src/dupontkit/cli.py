"""Command line entry point: ``dupontkit verify <suite> [options]``.

Exit codes: 0 when every theorem check passes (claims may fail), 1 when a
theorem check fails, 2 for bad arguments, 3 when the report cannot be written.
"""

from __future__ import annotations

import argparse
import sys
import time
from typing import Callable, Sequence

from .collapse import verify_collapse_equality, verify_general_I
from .compat import verify_compat, verify_cubical_compat
from .complexes import DomainError
from .cube_dupont import verify_cubical
from .dupont import verify_dupont
from .report import Report
from .stellar import verify_stellar

SUITES = ("dupont", "cubical", "stellar", "compat", "cubical-compat", "collapse")

# largest supported n per suite
MAX_N = {"dupont": 3, "cubical": 3, "stellar": 4, "compat": 3, "cubical-compat": 3, "collapse": 4}


class UsageError(Exception):
    pass


def parse_face(text: str | None):
    if text is None or text == "":
        return None
    try:
        return tuple(sorted({int(x) for x in text.split(",")}))
    except ValueError:
        raise UsageError(f"--face expects a comma separated list of vertices, got {text!r}") from None


def _validate(suite: str, n: int, face, k, probes: int, degree: int) -> None:
    if not 1 <= n <= MAX_N[suite]:
        raise UsageError(f"{suite}: n must be in 1..{MAX_N[suite]}, got {n}")
    if face is not None and (not face or face[0] < 0 or face[-1] > n):
        raise UsageError(f"--face must be a nonempty subset of 0..{n}")
    if k is not None and not 1 <= k <= n:
        raise UsageError(f"--k must be in 1..{n}")
    if probes < 1:
        raise UsageError("--probes must be positive")
    if not 0 <= degree <= 6:
        raise UsageError("--degree must be in 0..6")


def _collapse(n: int, face) -> Report:
    report = verify_collapse_equality(n)
    if face is not None and face != tuple(range(n + 1)):
        general = verify_general_I(n, face)
        report.extend(general.checks)
        report.params["face"] = list(face)
    return report


def build(suite: str, n: int, face=None, k=None, probes: int = 25, degree: int = 3, seed: int = 0) -> Callable[[], Report]:
    """Validate parameters and return a thunk running the suite."""
    _validate(suite, n, face, k, probes, degree)
    if suite == "dupont":
        return lambda: verify_dupont(n, probes, degree, seed)
    if suite == "cubical":
        return lambda: verify_cubical(n, probes, degree, seed)
    if suite == "stellar":
        return lambda: verify_stellar(n, face, k)
    if suite == "compat":
        return lambda: verify_compat(n, face, probes, degree, seed)
    if suite == "cubical-compat":
        return lambda: verify_cubical_compat(n, k, probes, degree, seed)
    if suite == "collapse":
        return lambda: _collapse(n, face)
    raise UsageError(f"unknown suite {suite!r}")


def run_suite(name: str, n: int = 2, face=None, k=None, probes: int = 25, degree: int = 3, seed: int = 0,
              timing: bool = False) -> tuple[int, Report]:
    """Run one suite (or ``all``) and return ``(exit code, report)``."""
    start = time.perf_counter()
    if name == "all":
        thunks = []
        for suite in SUITES:
            sn = min(n, MAX_N[suite])
            sk = None if k is None else min(k, sn)
            sface = None if face is None or face[-1] > sn else face
            thunks.append((suite, build(suite, sn, sface, sk, probes, degree, seed)))
        report = Report("all", {"n": n, "face": None if face is None else list(face), "k": k,
                                "probes": probes, "degree": degree, "seed": seed})
        for suite, thunk in thunks:
            report.extend(thunk().checks, prefix=suite + "/")
    else:
        report = build(name, n, face, k, probes, degree, seed)()
    if timing:
        report.elapsed_ms = round((time.perf_counter() - start) * 1000)
    return (0 if report.passed else 1), report


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dupontkit", description="Exact verification of Dupont-type retractions.")
    sub = parser.add_subparsers(dest="command", required=True)
    verify = sub.add_parser("verify", help="run a verification suite")
    verify.add_argument("suite", choices=SUITES + ("all",))
    verify.add_argument("--n", type=int, default=2)
    verify.add_argument("--face", default=None, help="comma separated vertices of the subdivided face")
    verify.add_argument("--k", type=int, default=None, help="number of subdivided cube slots")
    verify.add_argument("--probes", type=int, default=25)
    verify.add_argument("--degree", type=int, default=3)
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--format", choices=("text", "json"), default="text")
    verify.add_argument("--out", default=None, help="write the report here instead of stdout")
    verify.add_argument("--timing", action="store_true", help="record elapsed_ms (breaks byte-identical output)")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = make_parser().parse_args(argv)
    try:
        face = parse_face(args.face)
        code, report = run_suite(args.suite, args.n, face, args.k, args.probes, args.degree, args.seed, args.timing)
    except (UsageError, DomainError) as exc:
        print(f"dupontkit: error: {exc}", file=sys.stderr)
        return 2
    text = report.to_json() if args.format == "json" else report.to_text()
    if args.out is None:
        sys.stdout.write(text)
        return code
    try:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        print(f"dupontkit: cannot write {args.out}: {exc}", file=sys.stderr)
        return 3
    return code


if __name__ == "__main__":
    sys.exit(main())

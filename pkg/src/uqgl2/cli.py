"""Command line front end: ``uqgl2 build | verify | sweep``.

Exit codes are 0 (everything passed), 1 (a check failed) and 2 (invalid
input).  Errors go to stderr as one JSON record ``{"error": code, "message": ...}``.
"""
from __future__ import annotations

import argparse
import itertools
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from .errors import InvalidInputError, UqError
from .reps import Branch, GaugeChoice, GaugeMode, HighestWeightRep
from .rings import RESIDUAL_TOL, QValue, root_of_unity
from .rmatrix import (build_r_closed_m2, build_r_closed_m3, build_r_series,
                      build_r_series_exact)
from .sampling import random_gauge_choice
from .serialize import dumps, loads, matrix_document, to_csv
from .verify import (CheckReport, check_colored_ybe, check_hopf_axioms, check_intertwiner,
                     check_variants, check_ybe, exact_colored_triple)

EXIT_OK, EXIT_FAIL, EXIT_INVALID = 0, 1, 2

EXACT_MAX_M = 4
EXACT_MAX_M_COLORED = 3


# --------------------------------------------------------------------------
# parsing helpers
# --------------------------------------------------------------------------

def parse_complex(text: str) -> complex:
    """``"re,im"`` or a bare real number."""
    parts = text.split(",")
    try:
        if len(parts) == 1:
            return complex(float(parts[0]))
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise InvalidInputError(f"cannot read {text!r} as a complex number (expected re,im)")


@dataclass(frozen=True)
class QSpec:
    q: QValue
    is_root: bool
    text: str


def parse_q(tokens) -> QSpec:
    """``["re,im"]``, ``["root", "k/n"]`` or ``["root k/n"]``."""
    if isinstance(tokens, str):
        tokens = [tokens]
    words = " ".join(tokens).split()
    text = " ".join(words)
    if words and words[0] == "root":
        if len(words) != 2:
            raise InvalidInputError(f"root q-spec must be 'root k/n', got {text!r}")
        try:
            frac = Fraction(words[1])
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidInputError(f"bad root exponent {words[1]!r}") from exc
        return QSpec(root_of_unity(frac.numerator, frac.denominator), True, text)
    if len(words) != 1:
        raise InvalidInputError(f"q-spec must be 're,im' or 'root k/n', got {text!r}")
    return QSpec(QValue(parse_complex(words[0])), False, text)


def parse_color(text: str) -> tuple[complex, complex]:
    """``"sigma_re,sigma_im:g_re,g_im"``; the ``g`` part defaults to 1."""
    sig, _, g = text.partition(":")
    return parse_complex(sig), parse_complex(g) if g else 1.0 + 0j


def parse_list(text: str | None) -> list[complex] | None:
    """Semicolon-separated complex numbers, e.g. ``"1,0;2,0"``."""
    if text is None:
        return None
    return [parse_complex(x) for x in text.split(";") if x.strip()]


def default_sigma(spec: QSpec) -> complex:
    """``s = 2`` at a root of unity (free weight), ``s = q`` otherwise.

    ``s = 1`` would make ``a_1 b_1`` vanish, so it is avoided as a default.
    """
    return complex(np.sqrt(2.0)) if spec.is_root else complex(np.sqrt(spec.q.value))


# --------------------------------------------------------------------------
# job configuration
# --------------------------------------------------------------------------

@dataclass
class JobConfig:
    command: str
    m: int
    q: QSpec | None
    colors: list = field(default_factory=list)
    gauge: str = "unit"
    gauge_a: list | None = None
    gauge_b: list | None = None
    mode: str = "numeric"
    method: str = "series"
    tol: float = RESIDUAL_TOL
    output: str | None = None
    fmt: str = "json"

    def gauge_choice(self, index: int) -> GaugeChoice:
        if self.gauge == "unit":
            return GaugeChoice()
        if self.gauge == "balanced":
            return GaugeChoice(GaugeMode.BALANCED)
        if self.gauge_a is None:
            raise InvalidInputError("explicit gauge needs --gauge-a")
        per = self.m - 1
        a = self.gauge_a[index * per:(index + 1) * per] if len(self.gauge_a) > per else self.gauge_a
        b = None
        if self.gauge_b is not None:
            b = self.gauge_b[index * per:(index + 1) * per] if len(self.gauge_b) > per else self.gauge_b
        return GaugeChoice.explicit(a, b)


def config_from_args(args) -> JobConfig:
    if args.m is None or args.m < 2:
        raise InvalidInputError("--m must be an integer >= 2")
    if args.q is None:
        raise InvalidInputError("--q is required")
    spec = parse_q(args.q)
    colors = [parse_color(c) for c in (args.color or [])]
    if len(colors) > 3:
        raise InvalidInputError("at most three colours")
    if not colors:
        colors = [(default_sigma(spec), 1.0 + 0j)]
    cfg = JobConfig(args.command, args.m, spec, colors, args.gauge, parse_list(args.gauge_a),
                    parse_list(args.gauge_b), args.mode, args.method, args.tol, args.output,
                    args.format)
    colored = len(colors) > 1
    if cfg.mode == "exact":
        limit = EXACT_MAX_M_COLORED if colored else EXACT_MAX_M
        if cfg.m > limit:
            raise InvalidInputError(f"exact mode is limited to m <= {limit}"
                                    + (" for coloured jobs" if colored else ""))
        if cfg.gauge != "unit":
            raise InvalidInputError("exact mode needs the unit gauge")
    return cfg


def build_reps(cfg: JobConfig) -> list[HighestWeightRep]:
    reps = [HighestWeightRep.build(cfg.m, cfg.q.q, sigma, g, cfg.gauge_choice(i))
            for i, (sigma, g) in enumerate(cfg.colors)]
    if any(r.branch is Branch.ROOT_OF_UNITY for r in reps) and not cfg.q.is_root:
        raise InvalidInputError("root-of-unity colours need a 'root k/n' q-spec")
    return reps


def build_matrix(cfg: JobConfig, reps):
    """The R-matrix of the job: ``R(c1, c2)`` for two or more colours."""
    rep1 = reps[0]
    rep2 = reps[1] if len(reps) > 1 else None
    if cfg.method == "closed":
        if rep2 is not None:
            raise InvalidInputError("closed forms exist only for a single colour")
        if cfg.m == 2:
            return build_r_closed_m2(rep1.q, rep1.s, rep1.gamma, rep1.branch)
        if cfg.m == 3:
            a, b = rep1.a, rep1.b
            return build_r_closed_m3(rep1.q, rep1.s, rep1.gamma, a[0] * b[1], a[1] * b[0])
        raise InvalidInputError("closed forms exist only for m = 2 and m = 3")
    if cfg.mode == "exact":
        return build_r_series_exact(rep1, rep2)
    return build_r_series(rep1, rep2)


# --------------------------------------------------------------------------
# checks
# --------------------------------------------------------------------------

def run_checks(matrix, reps, m: int, tol: float, builder=build_r_series) -> list[CheckReport]:
    """All checks applicable to ``matrix`` (built from ``reps``)."""
    reports = []
    if matrix.is_polynomial:
        if len(reps) == 1:
            reports.append(check_ybe(matrix, m, tol))
        elif len(reps) == 3:
            reports.append(check_colored_ybe(*exact_colored_triple(reps), m, tol))
        return reports
    if len(reps) == 1:
        rep = reps[0]
        reports.append(check_ybe(matrix, m, tol))
        reports.append(check_intertwiner(matrix, rep, rep, tol))
        reports.append(check_variants(matrix, m, rep, tol))
        reports.append(check_hopf_axioms(rep))
    else:
        reports.append(check_intertwiner(matrix, reps[0], reps[1], tol))
        if len(reps) == 3:
            c1, c2, c3 = reps
            r13 = builder(c1, c3).matrix
            r23 = builder(c2, c3).matrix
            reports.append(check_colored_ybe(matrix, r13, r23, m, tol))
            reports.append(check_intertwiner(r13, c1, c3, tol, name="intertwiner[13]"))
            reports.append(check_intertwiner(r23, c2, c3, tol, name="intertwiner[23]"))
        reports.append(check_hopf_axioms(*reps))
    return reports


def _write(text: str, output: str | None):
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _report_doc(reports) -> dict:
    return {"passed": all(r.passed for r in reports), "reports": [r.as_dict() for r in reports]}


def _jsonable(obj):
    if isinstance(obj, complex):
        return {"re": obj.real, "im": obj.imag}
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, (np.floating,)):
        return float(obj)
    raise TypeError(f"not serializable: {type(obj)}")


# --------------------------------------------------------------------------
# commands
# --------------------------------------------------------------------------

def cmd_build(args) -> int:
    cfg = config_from_args(args)
    reps = build_reps(cfg)
    result = build_matrix(cfg, reps)
    if cfg.fmt == "csv":
        text = to_csv(result.matrix)
    else:
        text = dumps(matrix_document(result.matrix, reps, cfg.m, result.variables))
    _write(text, cfg.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.input:
        try:
            text = Path(args.input).read_text()
        except OSError as exc:
            raise InvalidInputError(f"cannot read {args.input}: {exc}") from exc
        loaded = loads(text)
        reports = run_checks(loaded.matrix, loaded.reps, loaded.m, args.tol)
    else:
        cfg = config_from_args(args)
        reps = build_reps(cfg)
        matrix = build_matrix(cfg, reps).matrix
        reports = run_checks(matrix, reps, cfg.m, cfg.tol)
    for r in reports:
        print(r.line(), file=sys.stderr)
    _write(json.dumps(_report_doc(reports), indent=1, default=_jsonable), args.output)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


@dataclass(frozen=True)
class SweepPoint:
    q: str
    sigma: complex | None
    g: complex


def _sweep_row(point: SweepPoint, m: int, tol: float, random_gauges: int, seed: int) -> dict:
    row = {"q": point.q, "sigma": point.sigma, "g": point.g}
    try:
        spec = parse_q(point.q)
        sigma = default_sigma(spec) if point.sigma is None else point.sigma
        row["sigma"] = sigma
        rep = HighestWeightRep.build(m, spec.q, sigma, point.g)
        if rep.branch is Branch.ROOT_OF_UNITY and not spec.is_root:
            raise InvalidInputError("root-of-unity colours need a 'root k/n' q-spec")
        row["branch"] = rep.branch.value
        matrix = build_r_series(rep).matrix
        reports = [check_ybe(matrix, m, tol), check_intertwiner(matrix, rep, rep, tol)]
        rng = np.random.default_rng(seed)
        for _ in range(random_gauges):
            regauged = rep.with_gauge(random_gauge_choice(m, rep.q, rep.sigma, rng))
            mat = build_r_series(regauged).matrix
            reports += [check_ybe(mat, m, tol), check_intertwiner(mat, regauged, regauged, tol)]
        row["max_residual"] = max(r.residual for r in reports)
        row["passed"] = all(r.passed for r in reports)
    except UqError as exc:
        row.update(exc.as_record())
        row["passed"] = None
    return row


def sweep_points(q_specs, sigmas, gs) -> list[SweepPoint]:
    """Grid in lexicographic order over ``(q, sigma, g)``."""
    sig_axis = sigmas if sigmas else [None]
    g_axis = gs if gs else [1.0 + 0j]
    return [SweepPoint(q, s, g) for q, s, g in itertools.product(q_specs, sig_axis, g_axis)]


def cmd_sweep(args) -> int:
    if args.m is None or args.m < 2:
        raise InvalidInputError("--m must be an integer >= 2")
    q_specs = [" ".join(t) for t in (args.q or [])]
    sigmas = [parse_complex(s) for s in (args.sigma or [])]
    gs = [parse_complex(g) for g in (args.g or [])]
    points = sweep_points(q_specs, sigmas, gs)
    with ThreadPoolExecutor(max_workers=max(1, args.jobs)) as pool:
        rows = list(pool.map(lambda p: _sweep_row(p, args.m, args.tol, args.random_gauges, args.seed),
                             points))
    _write(json.dumps({"m": args.m, "rows": rows}, indent=1, default=_jsonable), args.output)
    return EXIT_FAIL if any(r["passed"] is False for r in rows) else EXIT_OK


# --------------------------------------------------------------------------
# argument parser
# --------------------------------------------------------------------------

def _add_job_args(p: argparse.ArgumentParser, sweep: bool = False):
    p.add_argument("--m", type=int, help="representation dimension")
    if sweep:
        p.add_argument("--q", nargs="+", action="append",
                       help="q-spec 're,im' or 'root k/n'; repeat for a grid axis")
        p.add_argument("--sigma", action="append", help="sigma grid value 're,im' (repeatable)")
        p.add_argument("--g", action="append", help="g grid value 're,im' (repeatable)")
        p.add_argument("--random-gauges", type=int, default=0,
                       help="also check this many random gauge splits per point")
        p.add_argument("--jobs", type=int, default=1, help="worker threads")
    else:
        p.add_argument("--q", nargs="+", help="q-spec 're,im' or 'root k/n'")
        p.add_argument("--color", action="append",
                       help="colour 'sigma_re,sigma_im:g_re,g_im' (1 to 3 times)")
        p.add_argument("--gauge", choices=["unit", "balanced", "explicit"], default="unit")
        p.add_argument("--gauge-a", help="explicit a values 're,im;re,im;...' (m-1 per colour)")
        p.add_argument("--gauge-b", help="explicit b values, same layout as --gauge-a")
        p.add_argument("--mode", choices=["numeric", "exact"], default="numeric")
        p.add_argument("--method", choices=["series", "closed"], default="series")
        p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--tol", type=float, default=RESIDUAL_TOL)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", help="output file (default stdout)")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="uqgl2",
                                     description="Coloured R-matrices of multiparameter U_q gl(2).")
    sub = parser.add_subparsers(dest="command", required=True)
    _add_job_args(sub.add_parser("build", help="build an R-matrix and export it"))
    verify = sub.add_parser("verify", help="run all applicable checks")
    _add_job_args(verify)
    verify.add_argument("--input", help="verify an exported JSON matrix instead of building one")
    _add_job_args(sub.add_parser("sweep", help="check a grid of colours and q values"), sweep=True)
    return parser


def main(argv=None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors already; keep --help at 0
        return int(exc.code or 0)
    handlers = {"build": cmd_build, "verify": cmd_verify, "sweep": cmd_sweep}
    try:
        return handlers[args.command](args)
    except UqError as exc:
        print(json.dumps(exc.as_record()), file=sys.stderr)
        return EXIT_INVALID
    except (ValueError, ZeroDivisionError, ArithmeticError) as exc:
        print(json.dumps({"error": "InvalidInput", "message": str(exc)}), file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())

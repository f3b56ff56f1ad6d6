"""``qspace`` command-line front end.

Exit codes: 0 success, 1 numeric/tolerance failure, 2 usage or parse
error, 3 semantically invalid input (statistics/dimension mismatch, bad
mode index...).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import tempfile
from typing import Sequence

import jsonschema
import numpy as np

from .fock import QSpaceError, StateVector, Statistics, canonicalize, ket_state
from .ladder import LadderString, OperatorExpr, Kind, LadderOp, apply_expr, check_car, check_ccr, default_trials
from .observables import (
    DOWN,
    UP,
    build_one_body,
    build_two_body,
    correlation_operator,
    direction_grid,
    expectation,
    sigma_n,
    sigma_z,
)
from .oracle import compare_formulations
from .products import TOL, inner

EXIT_OK, EXIT_NUMERIC, EXIT_USAGE, EXIT_SEMANTIC = 0, 1, 2, 3

_NUMBER = {"type": "number"}
_MATRIX = {"type": "array", "items": {"type": "array", "items": _NUMBER}}
_TENSOR4 = {"type": "array", "items": {"type": "array", "items": _MATRIX}}

STATE_SCHEMA = {
    "type": "object",
    "required": ["stats", "dim", "terms"],
    "properties": {
        "stats": {"enum": ["bose", "fermi"]},
        "dim": {"type": "integer", "minimum": 0},
        "terms": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["modes", "re"],
                "properties": {
                    "modes": {"type": "array", "items": {"type": "integer", "minimum": 0}},
                    "re": _NUMBER,
                    "im": _NUMBER,
                },
                "additionalProperties": False,
            },
        },
    },
    "additionalProperties": False,
}


def _coeffs(shape_schema):
    return {
        "type": "object",
        "required": ["re"],
        "properties": {"re": shape_schema, "im": shape_schema},
        "additionalProperties": False,
    }


OPERATOR_SCHEMA = {
    "type": "object",
    "required": ["stats", "dim"],
    "properties": {
        "stats": {"enum": ["bose", "fermi"]},
        "dim": {"type": "integer", "minimum": 0},
        "one_body": _coeffs(_MATRIX),
        "two_body": _coeffs(_TENSOR4),
        "correlation": {
            "type": "object",
            "required": ["a", "b"],
            "properties": {"a": _coeffs(_MATRIX), "b": _coeffs(_MATRIX)},
            "additionalProperties": False,
        },
        "strings": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["ops"],
                "properties": {
                    "re": _NUMBER,
                    "im": _NUMBER,
                    "ops": {
                        "type": "array",
                        "items": {
                            "type": "array",
                            "prefixItems": [{"enum": ["create", "annihilate"]}, {"type": "integer", "minimum": 0}],
                            "minItems": 2,
                            "maxItems": 2,
                        },
                    },
                },
                "additionalProperties": False,
            },
        },
    },
    "additionalProperties": False,
}


class UsageError(Exception):
    pass


class SemanticError(Exception):
    pass


def fmt(x: float) -> str:
    """15 significant digits, always with a decimal point or exponent."""
    x = float(x) + 0.0  # drops negative zero
    s = f"{x:.15g}"
    if not any(c in s for c in ".en"):
        s += ".0"
    return s


def _load_json(path: str, schema: dict) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None
    try:
        jsonschema.validate(data, schema)
    except jsonschema.ValidationError as exc:
        raise UsageError(f"{path}: {exc.message}") from None
    return data


def load_state(path: str) -> StateVector:
    data = _load_json(path, STATE_SCHEMA)
    dim = data["dim"]
    pairs = []
    for term in data["terms"]:
        modes = term["modes"]
        if any(m >= dim for m in modes):
            raise SemanticError(f"{path}: mode index in {modes} outside [0, {dim})")
        ket, phase = canonicalize(data["stats"], modes, dim)
        if ket is None:
            print(f"note: {path}: term {modes} doubly occupies a fermionic level; dropped", file=sys.stderr)
        elif list(ket.modes) != list(modes):
            print(f"note: {path}: modes {modes} reordered to {list(ket.modes)} (phase {phase:+d})", file=sys.stderr)
        pairs.append((modes, complex(term["re"], term.get("im", 0.0))))
    return StateVector.from_modes(data["stats"], dim, pairs)


def state_to_json(x: StateVector) -> dict:
    return {
        "stats": x.stats.value,
        "dim": x.dim,
        "terms": [
            {"modes": list(k.modes), "re": a.real + 0.0, "im": a.imag + 0.0} for k, a in x
        ],
    }


def _complex_array(part: dict, shape: tuple[int, ...], what: str) -> np.ndarray:
    try:
        re = np.asarray(part["re"], dtype=np.float64)
        im = np.asarray(part.get("im", np.zeros(re.shape)), dtype=np.float64)
    except ValueError as exc:
        raise UsageError(f"{what}: ragged array ({exc})") from None
    if re.shape != shape or im.shape != shape:
        raise SemanticError(f"{what}: expected shape {shape}, got {re.shape} / {im.shape}")
    return re + 1j * im


def load_operator(path: str) -> tuple[OperatorExpr, int]:
    data = _load_json(path, OPERATOR_SCHEMA)
    stats, d = Statistics.parse(data["stats"]), data["dim"]
    expr = OperatorExpr(stats)
    if "one_body" in data:
        expr = expr + build_one_body(_complex_array(data["one_body"], (d, d), "one_body"), stats)
    if "two_body" in data:
        expr = expr + build_two_body(_complex_array(data["two_body"], (d,) * 4, "two_body"), stats)
    if "correlation" in data:
        a = _complex_array(data["correlation"]["a"], (d, d), "correlation.a")
        b = _complex_array(data["correlation"]["b"], (d, d), "correlation.b")
        expr = expr + correlation_operator(a, b, stats)
    strings = []
    for s in data.get("strings", []):
        ops = []
        for kind, mode in s["ops"]:
            if mode >= d:
                raise SemanticError(f"{path}: mode {mode} outside [0, {d})")
            ops.append(LadderOp(Kind(kind), mode))
        strings.append(LadderString(complex(s.get("re", 1.0), s.get("im", 0.0)), ops))
    return expr + OperatorExpr(stats, strings), d


def _write_atomic(path: str | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".qspace-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _require(args, *names: str) -> None:
    for name in names:
        if getattr(args, name) is None:
            raise UsageError(f"{args.command} needs --{name.rstrip('_').replace('_', '-')}")


def _compatible(x: StateVector, y_stats: Statistics, y_dim: int, what: str) -> None:
    if x.stats is not y_stats:
        raise SemanticError(f"statistics mismatch: state is {x.stats.value}, {what} is {y_stats.value}")
    if x.dim != y_dim:
        raise SemanticError(f"dimension mismatch: state has dim {x.dim}, {what} has dim {y_dim}")


# --- commands --------------------------------------------------------------


def cmd_inner(args) -> int:
    _require(args, "in_", "in2")
    x, y = load_state(args.in_), load_state(args.in2)
    _compatible(x, y.stats, y.dim, "second state")
    z = inner(x, y)
    print(f"{fmt(z.real)} {fmt(z.imag)}")
    return EXIT_OK


def cmd_apply(args) -> int:
    _require(args, "in_", "op")
    x = load_state(args.in_)
    a, d = load_operator(args.op)
    _compatible(x, a.stats, d, "operator")
    y = apply_expr(a, x)
    _write_atomic(args.out, json.dumps(state_to_json(y), indent=2) + "\n")
    return EXIT_OK


def cmd_expect(args) -> int:
    _require(args, "in_", "op")
    x = load_state(args.in_)
    a, d = load_operator(args.op)
    _compatible(x, a.stats, d, "operator")
    z = expectation(a, x)
    print(f"{fmt(z.real)} {fmt(z.imag)}")
    return EXIT_OK


def _correlation_rows(x: StateVector, theta_steps: int, phi_steps: int):
    sz = sigma_z()
    for _, _, theta, phi in direction_grid(theta_steps, phi_steps):
        yield theta, phi, expectation(correlation_operator(sz, sigma_n(theta, phi), x.stats), x)


def _csv_text(header: Sequence[str], rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt(v) if isinstance(v, float) else v for v in row])
    return buf.getvalue()


def cmd_correlate(args) -> int:
    """Scan ``<sigma_z sigma_n>`` over the direction grid for a 2-level state."""
    _require(args, "in_")
    x = load_state(args.in_)
    if x.dim != 2:
        raise SemanticError(f"spin correlations need a dim-2 state, got dim {x.dim}")
    rows = [(t, p, c.real, c.imag) for t, p, c in _correlation_rows(x, args.theta_steps, args.phi_steps)]
    _write_atomic(args.out, _csv_text(["theta", "phi", "correlation", "imag"], rows))
    return EXIT_OK


def cmd_demo_epr(args) -> int:
    tol = 1e-10 if args.tol is None else args.tol
    pair = ket_state("fermi", 2, [UP, DOWN])
    rows, worst = [], 0.0
    for theta, phi, c in _correlation_rows(pair, args.theta_steps, args.phi_steps):
        expected = -math.cos(theta)
        err = abs(c - expected)
        worst = max(worst, err)
        rows.append((theta, phi, c.real, expected, err))
    _write_atomic(args.out, _csv_text(["theta", "phi", "correlation", "expected", "abs_err"], rows))
    ok = worst <= tol
    print(f"demo-epr: {'PASS' if ok else 'FAIL'} {len(rows)} rows, max abs_err {worst:.3g} (tol {tol:g})", file=sys.stderr)
    return EXIT_OK if ok else EXIT_NUMERIC


def run_verify(suite: str, seed: int, tol: float | None = None, trials: int = 200) -> list:
    """Run the named verification suites; returns their reports."""
    ladder_tol = TOL if tol is None else tol
    oracle_tol = 1e-10 if tol is None else tol
    reports = []
    if suite in ("ccr", "all"):
        for d in range(1, 5):
            r = check_ccr(d, default_trials("bose", d, 4), ladder_tol)
            r.name = f"ccr D={d}"
            reports.append(r)
    if suite in ("car", "all"):
        for d in range(1, 6):
            r = check_car(d, default_trials("fermi", d), ladder_tol)
            r.name = f"car D={d}"
            reports.append(r)
    if suite in ("oracle", "all"):
        reports.append(compare_formulations(seed, trials, oracle_tol))
    return reports


def cmd_verify(args) -> int:
    reports = run_verify(args.suite, args.seed, args.tol, args.trials)
    for r in reports:
        print(r.summary())
        for f in r.failures[:10]:
            print(f"  {f}")
    ok = all(r.ok for r in reports)
    print(f"verify {args.suite}: {'PASS' if ok else 'FAIL'}")
    return EXIT_OK if ok else EXIT_NUMERIC


# --- argument parsing ------------------------------------------------------


def _positive_int(s: str) -> int:
    v = int(s)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def _positive_float(s: str) -> float:
    v = float(s)
    if not v > 0:
        raise argparse.ArgumentTypeError("must be > 0")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--in", dest="in_", metavar="A.json", help="state file")
    common.add_argument("--in2", metavar="B.json", help="second state file")
    common.add_argument("--op", metavar="OP.json", help="operator file")
    common.add_argument("--out", metavar="FILE", help="output file (default stdout)")
    common.add_argument("--theta-steps", type=_positive_int, default=19)
    common.add_argument("--phi-steps", type=_positive_int, default=12)
    common.add_argument("--seed", type=int, default=42)
    common.add_argument("--tol", type=_positive_float, default=None, help="tolerance override")

    parser = argparse.ArgumentParser(prog="qspace", description="Occupation-number quantum mechanics toolkit.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")
    sub.add_parser("inner", parents=[common], help="inner product of two states").set_defaults(func=cmd_inner)
    sub.add_parser("apply", parents=[common], help="apply an operator to a state").set_defaults(func=cmd_apply)
    sub.add_parser("expect", parents=[common], help="expectation value").set_defaults(func=cmd_expect)
    sub.add_parser("correlate", parents=[common], help="sigma_z/sigma_n correlation scan (CSV)").set_defaults(
        func=cmd_correlate
    )
    sub.add_parser("demo-epr", parents=[common], help="two-fermion spin correlation table").set_defaults(
        func=cmd_demo_epr
    )
    verify = sub.add_parser("verify", parents=[common], help="run CCR/CAR/oracle verification")
    verify.add_argument("suite", choices=["ccr", "car", "oracle", "all"])
    verify.add_argument("--trials", type=_positive_int, default=200)
    verify.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"qspace: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (SemanticError, QSpaceError) as exc:
        print(f"qspace: error: {exc}", file=sys.stderr)
        return EXIT_SEMANTIC


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

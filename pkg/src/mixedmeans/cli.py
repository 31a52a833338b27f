"""Command-line front end: means tables, convexity scans and the check suite."""
from __future__ import annotations

import argparse
import ast
import csv
import io
import json
import math
import sys
from dataclasses import dataclass

import numpy as np

from . import convexity as cx
from . import geometry as geo
from . import series as ps
from . import verify as vf
from . import weights as wt
from .errors import MixedMeansError
from .geometry import Kind
from .quadrature import QuadratureParams

EXIT_OK, EXIT_CHECK_FAILED, EXIT_USAGE = 0, 1, 2

BUILTINS = {
    "paper_area_example": vf.AREA_EXAMPLE,
    "area_example": vf.AREA_EXAMPLE,
    "paper_length_example": vf.LENGTH_EXAMPLE,
    "length_example": vf.LENGTH_EXAMPLE,
    "identity": ps.monomial(0, 1, 1),
}


class UsageError(Exception):
    pass


# --- function specs ----------------------------------------------------------

def _poly_eval(node) -> np.ndarray:
    """Evaluate a polynomial expression tree in ``z`` to a coefficient array."""
    if isinstance(node, ast.Expression):
        return _poly_eval(node.body)
    if isinstance(node, ast.Constant) and isinstance(node.value, (int, float, complex)) \
            and not isinstance(node.value, bool):
        return np.array([complex(node.value)])
    if isinstance(node, ast.Name) and node.id == "z":
        return np.array([0j, 1 + 0j])
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.UAdd, ast.USub)):
        v = _poly_eval(node.operand)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp):
        a = _poly_eval(node.left)
        if isinstance(node.op, ast.Pow):
            b = _poly_eval(node.right)
            k = b[0].real if len(b) == 1 and b[0].imag == 0 else -1
            if k < 0 or k != int(k) or k > 4096:
                raise UsageError("exponents must be small nonnegative integers")
            out = np.array([1 + 0j])
            for _ in range(int(k)):
                out = np.convolve(out, a)
            return out
        b = _poly_eval(node.right)
        if isinstance(node.op, ast.Mult):
            return np.convolve(a, b)
        if isinstance(node.op, ast.Div):
            if len(b) != 1 or b[0] == 0:
                raise UsageError("can only divide by a nonzero constant")
            return a / b[0]
        if isinstance(node.op, (ast.Add, ast.Sub)):
            n = max(len(a), len(b))
            a, b = np.pad(a, (0, n - len(a))), np.pad(b, (0, n - len(b)))
            return a + b if isinstance(node.op, ast.Add) else a - b
    raise UsageError(f"unsupported expression element: {ast.dump(node)[:60]}")


def parse_function(spec: str) -> ps.PowerSeries:
    """Builtin name, ``monomial:n``, comma-separated coefficients, or a polynomial in ``z``."""
    text = spec.strip()
    if text in BUILTINS:
        return BUILTINS[text]
    if text.startswith("monomial:"):
        try:
            n = int(text.split(":", 1)[1])
            return ps.monomial(0, 1, n)
        except (ValueError, MixedMeansError) as exc:
            raise UsageError(f"bad monomial spec {spec!r}: {exc}") from None
    if "," in text or "z" not in text:
        try:
            coeffs = [complex(c.strip().replace(" ", "")) for c in text.split(",")]
        except ValueError:
            raise UsageError(f"bad coefficient list {spec!r}") from None
        return ps.construct(coeffs)
    try:
        tree = ast.parse(text.replace("^", "**"), mode="eval")
    except SyntaxError:
        raise UsageError(f"cannot parse {spec!r}") from None
    coeffs = _poly_eval(tree)
    return ps.construct(coeffs)


def length_defined(f: ps.PowerSeries) -> bool:
    """Length means are reported for monomials and for maps passing a univalence test."""
    if f.is_monomial() or f.is_constant():
        return True
    d0 = f[1] if f.order >= 1 else 0
    if d0 != 0:
        c = np.array(f.coeffs, dtype=complex)
        c[0] = 0
        g = ps.construct(c / d0)
        if vf.check_univalence(vf.Criterion.WEDGE, g).status is vf.Status.PASS:
            return True
        if vf.check_univalence(vf.Criterion.NEHARI, f).status is vf.Status.PASS:
            return True
    return False


# --- config ------------------------------------------------------------------

@dataclass(frozen=True)
class RunConfig:
    command: str
    function_spec: str = "identity"
    alpha: float = 0.0
    beta: float = 1.0
    r_min: float = 0.02
    r_max: float = 0.98
    grid_points: int = 50
    kind: str = "area"
    tol: float | None = None
    output_path: str | None = None
    format: str = "csv"

    def validate(self):
        if not (0 < self.r_min < self.r_max < 1):
            raise UsageError("need 0 < r-min < r-max < 1")
        if self.grid_points < 2:
            raise UsageError("grid must have at least 2 points")
        if not (0 <= self.beta <= 1) or math.isnan(self.beta):
            raise UsageError("beta must lie in [0, 1]")
        if not math.isfinite(self.alpha):
            raise UsageError("alpha must be finite")
        if self.tol is not None and not (self.tol > 0):
            raise UsageError("tol must be positive")
        if self.kind not in ("area", "length"):
            raise UsageError("kind must be area or length")
        if self.format not in ("csv", "structured"):
            raise UsageError("format must be csv or structured")


def _num(v) -> str:
    return "" if v is None else "%.17g" % v


def _write_csv(header, rows, footer=()):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_num(v) if not isinstance(v, str) else v for v in row])
    for line in footer:
        buf.write(line + "\n")
    return buf.getvalue()


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def _quad(cfg):
    return QuadratureParams() if cfg.tol is None else QuadratureParams(rtol=cfg.tol)


def run_means(cfg: RunConfig) -> tuple[str, int]:
    f = parse_function(cfg.function_spec)
    params = wt.WeightParams(cfg.alpha, cfg.beta)
    quad = _quad(cfg)
    with_length = length_defined(f)
    header = ["r", "phi_A", "phi_L", "mean_A", "mean_L", "err_A", "err_L"]
    rows = []
    for r in np.linspace(cfg.r_min, cfg.r_max, cfg.grid_points):
        r = float(r)
        pa = geo.mixed_ratio(Kind.AREA, f, r, cfg.beta, quad).value
        ma = wt.weighted_mean(Kind.AREA, f, params, r, quad)
        if with_length:
            pl = geo.mixed_ratio(Kind.LENGTH, f, r, cfg.beta, quad).value
            ml = wt.weighted_mean(Kind.LENGTH, f, params, r, quad)
            rows.append([r, pa, pl, ma.value, ml.value, ma.error_bound, ml.error_bound])
        else:
            rows.append([r, pa, None, ma.value, None, ma.error_bound, None])
    if cfg.format == "csv":
        return _write_csv(header, rows), EXIT_OK
    return _dump_json({"command": "means", "function": cfg.function_spec, "alpha": cfg.alpha,
                       "beta": cfg.beta, "rows": [dict(zip(header, row)) for row in rows]}), EXIT_OK


def run_scan(cfg: RunConfig) -> tuple[str, int]:
    f = parse_function(cfg.function_spec)
    if cfg.kind == "length" and not length_defined(f):
        raise UsageError("length means need a monomial or a map passing a univalence test")
    params = wt.WeightParams(cfg.alpha, cfg.beta)
    mm = wt.moment_mean(cfg.kind, f, params, order=512)
    grid = [float(r) ** 2 for r in np.linspace(cfg.r_min, cfg.r_max, cfg.grid_points)]
    tol = 1e-8 if cfg.tol is None else cfg.tol
    rep = cx.loglog_convexity_scan(mm, grid, tol)
    rows = [[x, v, str(s)] for (x, v), s in zip(rep.grid, rep.certified_signs)]
    if cfg.format == "csv":
        return _write_csv(["x", "indicator", "sign"], rows, [f"# verdict: {rep.verdict.value}"]), EXIT_OK
    return _dump_json({"command": "scan", "function": cfg.function_spec, "kind": cfg.kind,
                       "alpha": cfg.alpha, "beta": cfg.beta, "verdict": rep.verdict.value,
                       "rows": [{"x": x, "indicator": v, "sign": int(s)} for x, v, s in rows]}), EXIT_OK


def _emit_reports(reports, fmt):
    status = EXIT_OK if all(r.status is not vf.Status.FAIL for r in reports) else EXIT_CHECK_FAILED
    if fmt == "csv":
        rows = [[r.check_id, r.status.value, str(len(r.witnesses)), r.notes] for r in reports]
        return _write_csv(["check_id", "status", "witnesses", "notes"], rows), status
    return _dump_json({"reports": [r.to_dict(max_witnesses=20) for r in reports]}), status


def dispatch(cfg: RunConfig) -> tuple[str, int]:
    """Run one command; returns the emitted text and the exit status."""
    cfg.validate()
    if cfg.command == "means":
        return run_means(cfg)
    if cfg.command == "scan":
        return run_scan(cfg)
    if cfg.command == "verify":
        return _emit_reports(vf.run_suite(), cfg.format)
    if cfg.command == "examples":
        return _emit_reports(sorted(vf.reproduce_examples(), key=lambda r: r.check_id), cfg.format)
    raise UsageError(f"unknown command {cfg.command!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mixedmeans", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, *, function=True):
        if function:
            p.add_argument("--f", dest="function_spec", default="identity",
                           help="builtin name, monomial:n, coefficient list, or polynomial in z")
            p.add_argument("--alpha", type=float, default=0.0)
            p.add_argument("--beta", type=float, default=1.0)
            p.add_argument("--r-min", type=float, default=0.02)
            p.add_argument("--r-max", type=float, default=0.98)
            p.add_argument("--grid", dest="grid_points", type=int, default=50)
            p.add_argument("--tol", type=float, default=None)
        p.add_argument("--output", dest="output_path", default=None)
        p.add_argument("--format", choices=["csv", "structured"], default=None)

    common(sub.add_parser("means", help="table of ratios and weighted means"))
    scan = sub.add_parser("scan", help="log-log convexity scan of a mean")
    common(scan)
    scan.add_argument("--kind", choices=["area", "length"], default="area")
    common(sub.add_parser("verify", help="run the full check suite"), function=False)
    common(sub.add_parser("examples", help="reproduce the two worked examples"), function=False)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    opts = {k: v for k, v in vars(ns).items() if v is not None}
    if "format" not in opts:
        opts["format"] = "csv" if ns.command in ("means", "scan") else "structured"
    try:
        text, status = dispatch(RunConfig(**opts))
    except (UsageError, MixedMeansError) as exc:
        print(f"mixedmeans: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if ns.output_path:
        with open(ns.output_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())

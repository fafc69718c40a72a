"""Command line front end.

    boostgeo invariants|p1t|verify|mesh --config <path> [--out <path>]

Exit codes: 0 success / positive verdict, 1 negative verdict, 2 usage or
configuration error.
"""

from __future__ import annotations

import argparse
import io
import json
import sys
from dataclasses import dataclass, field

import numpy as np

from .algebra import BIVECTOR_LABELS
from .errors import BoostGeoError, ConfigError
from .families import FamilySpec, build_curve, make_angle_profile, verify_family, Grid
from .gauss import TOL_C, TOL_F, TOL_FIT, abd_functions, detect_pointwise_one_type, gauss_samples
from .profiles import DEFAULT_DOMAIN_MARGIN, SplineProfile
from .quadrature import DEFAULT_TOL
from .surface import coefficients, curvature_report, surface_point

INVARIANT_COLUMNS = ("s", "a", "b", "c", "d", "K", "h1", "h2", "H_norm2", "A", "B", "D", "N")
DEFAULT_T_GRID = (-1.0, 1.0, 9)
DEFAULT_S_COUNT = 9


def fmt(x):
    return format(float(x) + 0.0, ".17g")


@dataclass
class RunConfig:
    curve_spec: dict
    kind: str
    t_grid: tuple = DEFAULT_T_GRID
    s_grid: tuple | None = None
    tol_fit: float = TOL_FIT
    tol_C: float = TOL_C
    tol_f: float = TOL_F
    quad_tol: float = DEFAULT_TOL
    domain_margin: float = DEFAULT_DOMAIN_MARGIN
    epsilon: int | None = None
    expect: dict | None = None
    projection: tuple = (0, 2, 3)
    output: dict = field(default_factory=dict)

    @classmethod
    def from_dict(cls, data):
        if not isinstance(data, dict):
            raise ConfigError("config root must be a JSON object")
        keys = [k for k in ("family", "table", "profile") if k in data]
        if len(keys) != 1:
            raise ConfigError("config needs exactly one of the keys 'family', 'table', 'profile'")
        kind = keys[0]
        cfg = cls(curve_spec=data[kind], kind=kind)
        grid = data.get("grid", {})
        if not isinstance(grid, dict):
            raise ConfigError("field 'grid' must be an object")
        if "t" in grid:
            cfg.t_grid = _axis(grid["t"], "grid.t")
        if "s" in grid:
            cfg.s_grid = _axis(grid["s"], "grid.s")
        tols = data.get("tolerances", {})
        for name in ("tol_fit", "tol_C", "tol_f", "quad_tol", "domain_margin"):
            if name in tols:
                try:
                    setattr(cfg, name, float(tols[name]))
                except (TypeError, ValueError):
                    raise ConfigError(f"field 'tolerances.{name}' must be a number") from None
        if "epsilon" in data:
            if data["epsilon"] not in (1, -1):
                raise ConfigError("field 'epsilon' must be +1 or -1")
            cfg.epsilon = int(data["epsilon"])
        if "expect" in data:
            cfg.expect = data["expect"]
        mesh = data.get("mesh", {})
        if "projection" in mesh:
            proj = mesh["projection"]
            if not (isinstance(proj, list) and len(proj) == 3 and all(p in (0, 1, 2, 3) for p in proj)):
                raise ConfigError("field 'mesh.projection' must list 3 of the coordinate indices 0..3")
            cfg.projection = tuple(proj)
        cfg.output = dict(data.get("output", {}))
        return cfg

    def family_spec(self):
        if self.kind != "family":
            return None
        spec = dict(self.curve_spec)
        spec.setdefault("margin", self.domain_margin)
        spec.setdefault("quad_tol", self.quad_tol)
        return FamilySpec.from_dict(spec)

    def build_curve(self):
        if self.kind == "family":
            return build_curve(self.family_spec())
        if self.kind == "table":
            path = self.curve_spec if isinstance(self.curve_spec, str) else self.curve_spec.get("path")
            if not path:
                raise ConfigError("field 'table' must be a CSV path or an object with 'path'")
            return SplineProfile.from_csv(path)
        spec = self.curve_spec
        for name in ("alpha1", "theta"):
            if name not in spec:
                raise ConfigError(f"field 'profile.{name}' is missing")
        return make_angle_profile(spec["alpha1"], spec["theta"], tuple(spec.get("domain", (-1.0, 1.0))),
                                  tol=self.quad_tol)

    def grid(self, curve):
        t = np.linspace(*self.t_grid[:2], int(self.t_grid[2]))
        if self.s_grid is None:
            s = np.linspace(*curve.domain, DEFAULT_S_COUNT)
        else:
            s = np.linspace(*self.s_grid[:2], int(self.s_grid[2]))
        return Grid(tuple(float(x) for x in t), tuple(float(x) for x in s))

    def resolved_epsilon(self):
        if self.epsilon is not None:
            return self.epsilon
        if self.kind == "family":
            eps = self.curve_spec.get("params", {}).get("epsilon")
            return None if eps is None else int(eps)
        return None


def _axis(value, name):
    if not (isinstance(value, list) and len(value) == 3):
        raise ConfigError(f"field '{name}' must be [start, stop, count]")
    try:
        lo, hi, n = float(value[0]), float(value[1]), int(value[2])
    except (TypeError, ValueError):
        raise ConfigError(f"field '{name}' must be [start, stop, count] with numbers") from None
    if n < 2:
        raise ConfigError(f"field '{name}': count must be >= 2")
    return (lo, hi, n)


def load_config(path):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    return RunConfig.from_dict(data)


def invariant_rows(curve, svals, epsilon=None):
    """One row per s; ``N`` uses ``epsilon`` (default +1) without the trapped precondition."""
    eps = 1 if epsilon is None else epsilon
    rows = []
    for s in svals:
        co = coefficients(curve, s)
        cr = curvature_report(co)
        A, B, D = abd_functions(co)
        N = co.dd - eps * co.a * co.d**2
        rows.append((s, co.a, co.b, co.c, co.d, cr.K, cr.h1, cr.h2, cr.H_norm2, A, B, D, N))
    return rows


def render_invariants(rows):
    buf = io.StringIO()
    buf.write(",".join(INVARIANT_COLUMNS) + "\n")
    for row in rows:
        buf.write(",".join(fmt(x) for x in row) + "\n")
    return buf.getvalue()


def render_obj(curve, grid, projection=(0, 2, 3)):
    tv, sv = grid.t, grid.s
    nt = len(tv)
    out = io.StringIO()
    out.write(f"# boostgeo mesh: {curve.label}\n")
    out.write(f"# projection: x{projection[0] + 1} x{projection[1] + 1} x{projection[2] + 1}\n")
    for s in sv:
        for t in tv:
            p = surface_point(curve, t, s)
            out.write("v " + " ".join(fmt(p[k]) for k in projection) + "\n")
    for j in range(len(sv) - 1):
        for i in range(nt - 1):
            a = j * nt + i + 1
            out.write(f"f {a} {a + 1} {a + nt + 1} {a + nt}\n")
    return out.getvalue()


def p1t_payload(curve, rep):
    return {
        "curve": curve.label,
        "is_p1t": rep.is_p1t,
        "kind": rep.kind,
        "harmonic": rep.harmonic_flag,
        "residual": float(rep.residual),
        "C": {k: float(v) for k, v in zip(BIVECTOR_LABELS, rep.C)},
        "f_samples": [[float(s), float(f)] for s, f in rep.f_samples],
        "seed": rep.seed,
        "iterations": rep.iterations,
    }


def verify_payload(rep):
    def plain(x):
        if isinstance(x, (bool, str)) or x is None:
            return x
        return float(x)

    return {
        "tag": rep.tag,
        "curve": rep.label,
        "passed": rep.passed,
        "checks": [
            {"name": c.name, "expected": plain(c.expected), "observed": plain(c.observed),
             "tolerance": plain(c.tolerance), "passed": c.passed}
            for c in rep.checks
        ],
    }


def dump_json(obj):
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _write(path, text, stdout):
    if path is None:
        stdout.write(text)
    else:
        with open(path, "w", newline="\n") as fh:
            fh.write(text)


def cmd_invariants(cfg, out=None, stdout=sys.stdout):
    curve = cfg.build_curve()
    grid = cfg.grid(curve)
    text = render_invariants(invariant_rows(curve, grid.s, cfg.resolved_epsilon()))
    _write(out or cfg.output.get("csv"), text, stdout)
    return 0


def cmd_p1t(cfg, out=None, stdout=sys.stdout):
    curve = cfg.build_curve()
    grid = cfg.grid(curve)
    samples = gauss_samples(curve, grid.t, grid.s)
    rep = detect_pointwise_one_type(samples, cfg.tol_fit, cfg.tol_C, cfg.tol_f)
    if rep.harmonic_flag:
        verdict = "harmonic Gauss map"
    elif rep.is_p1t:
        verdict = f"pointwise 1-type ({rep.kind} kind)"
    else:
        verdict = "not pointwise 1-type"
    lines = [
        f"curve:    {curve.label}",
        f"verdict:  {verdict}",
        f"kind:     {rep.kind}",
        f"residual: {fmt(rep.residual)}",
        "C:        " + " ".join(f"{k}={fmt(v)}" for k, v in zip(BIVECTOR_LABELS, rep.C)),
        "f samples (s, f):",
    ]
    seen = set()
    for s, f in rep.f_samples:
        if s not in seen:
            seen.add(s)
            lines.append(f"  {fmt(s)} {fmt(f)}")
    stdout.write("\n".join(lines) + "\n")
    target = out or cfg.output.get("json")
    if target:
        _write(target, dump_json(p1t_payload(curve, rep)), stdout)
    return 0 if rep.is_p1t else 1


def cmd_verify(cfg, out=None, stdout=sys.stdout):
    curve = cfg.build_curve()
    if cfg.expect is not None:
        spec = FamilySpec.from_dict(cfg.expect)
    else:
        spec = cfg.family_spec()
        if spec is None:
            raise ConfigError("verify needs a 'family' curve or an 'expect' family spec")
    rep = verify_family(curve, spec, cfg.grid(curve), cfg.tol_fit, cfg.tol_C, cfg.tol_f)
    lines = [f"verify {curve.label} against {spec.tag}"]
    for c in rep.checks:
        mark = "PASS" if c.passed else "FAIL"
        tol = "" if c.tolerance is None else f" (tol {c.tolerance:.0e})"
        obs = fmt(c.observed) if isinstance(c.observed, float) else c.observed
        lines.append(f"  {mark} {c.name}: expected {c.expected}, observed {obs}{tol}")
    lines.append("overall: " + ("PASS" if rep.passed else "FAIL: " + ", ".join(rep.failing())))
    stdout.write("\n".join(lines) + "\n")
    target = out or cfg.output.get("json")
    if target:
        _write(target, dump_json(verify_payload(rep)), stdout)
    return 0 if rep.passed else 1


def cmd_mesh(cfg, out=None, stdout=sys.stdout):
    curve = cfg.build_curve()
    _write(out or cfg.output.get("obj"), render_obj(curve, cfg.grid(curve), cfg.projection), stdout)
    return 0


COMMANDS = {"invariants": cmd_invariants, "p1t": cmd_p1t, "verify": cmd_verify, "mesh": cmd_mesh}


def main(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = argparse.ArgumentParser(prog="boostgeo", description=__doc__.splitlines()[0])
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("--config", required=True, help="JSON run configuration")
    parser.add_argument("--out", default=None, help="output file (CSV, JSON or OBJ by command)")
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        cfg = load_config(args.config)
        return COMMANDS[args.command](cfg, args.out, stdout)
    except BoostGeoError as exc:
        stderr.write(f"boostgeo: error: {exc}\n")
        return 2
    except OSError as exc:
        stderr.write(f"boostgeo: error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())

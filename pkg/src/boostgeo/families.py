"""Generators for the classified surface families and their verifiers.

Tags:

``theorem1_constant``  flat, ``alpha1 = a1``, ``theta = a2 s + a3``
``theorem1_linear``    flat, ``alpha1 = b1 s + b2``, ``theta = b log(b1 s + b2)``
``theorem3_trapped``   marginally trapped with arbitrary ``alpha1``
``theorem4_p1t``       marginally trapped with ``alpha1^2`` quadratic
``extremal``           vanishing mean curvature
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import jets
from .algebra import bivector_inner, wedge
from .errors import ParameterError
from .expr import ExpressionError, compile_expression
from .gauss import (
    TOL_C,
    TOL_F,
    TOL_FIT,
    detect_pointwise_one_type,
    gauss_samples,
)
from .profiles import (
    DEFAULT_DOMAIN_MARGIN,
    AngleFunction,
    AngleProfile,
    integrate_profile,
    theta_from_alpha1,
    unit_speed_defect,
)
from .quadrature import DEFAULT_TOL
from .surface import coefficients, curvature_report, frame, second_fundamental_form

TAGS = ("theorem1_constant", "theorem1_linear", "theorem3_trapped", "theorem4_p1t", "extremal")
DEFAULT_DOMAIN = (-1.0, 1.0)

REQUIRED_PARAMS = {
    "theorem1_constant": ("a1", "a2", "a3"),
    "theorem1_linear": ("b1", "b2", "b3"),
    "theorem3_trapped": ("alpha1", "epsilon"),
    "theorem4_p1t": ("lambda1", "q1", "q0", "epsilon"),
    "extremal": ("a1", "a2", "zeta0"),
}


@dataclass
class FamilySpec:
    tag: str
    params: dict
    domain: tuple | None = None
    margin: float = DEFAULT_DOMAIN_MARGIN
    quad_tol: float = DEFAULT_TOL

    def __post_init__(self):
        if self.tag not in TAGS:
            raise ParameterError(f"unknown family tag {self.tag!r}; expected one of {', '.join(TAGS)}")
        missing = [k for k in REQUIRED_PARAMS[self.tag] if k not in self.params]
        if missing:
            raise ParameterError(f"family {self.tag}: missing parameter(s) {', '.join(missing)}")
        if self.domain is not None:
            self.domain = (float(self.domain[0]), float(self.domain[1]))

    @property
    def epsilon(self):
        eps = self.params.get("epsilon")
        return None if eps is None else int(eps)

    @classmethod
    def from_dict(cls, data):
        if not isinstance(data, dict) or "tag" not in data:
            raise ParameterError("family spec needs a 'tag' field")
        extra = {k: data[k] for k in ("margin", "quad_tol") if k in data}
        return cls(data["tag"], dict(data.get("params", {})), data.get("domain"), **extra)

    def to_dict(self):
        out = {"tag": self.tag, "params": dict(self.params)}
        if self.domain is not None:
            out["domain"] = list(self.domain)
        return out


def _trim(domain, zeros, margin, positive=None):
    """Largest sub-interval of ``domain`` avoiding the given zeros of alpha1, shrunk by ``margin``.

    ``positive(s)`` (optional) must hold at the midpoint of an accepted interval.
    """
    lo, hi = domain
    cuts = sorted(z for z in zeros if lo - margin < z < hi + margin)
    edges = [lo] + cuts + [hi]
    best = None
    for left, right in zip(edges[:-1], edges[1:]):
        a = left + margin if left in cuts else left
        b = right - margin if right in cuts else right
        if positive is not None and b > a and not positive(0.5 * (a + b)):
            continue
        if b > a and (best is None or b - a > best[1] - best[0]):
            best = (a, b)
    if best is None:
        raise ParameterError(f"alpha1 has no positive interval inside {domain}")
    return best


def _as_alpha1(spec):
    if callable(spec):
        return spec
    if isinstance(spec, (int, float)):
        v = float(spec)
        return lambda s: v
    try:
        return compile_expression(str(spec))
    except ExpressionError as exc:
        raise ParameterError(f"alpha1: {exc}") from None


def _check_epsilon(eps):
    if eps not in (1, -1):
        raise ParameterError(f"epsilon must be +1 or -1, got {eps!r}")
    return int(eps)


def make_angle_profile(alpha1, theta, domain=DEFAULT_DOMAIN, s0=None, tol=DEFAULT_TOL, label=None):
    """Generic profile from a radius and a closed-form angle (expressions in ``s`` or callables)."""
    fn = _as_alpha1(alpha1)
    th = _as_alpha1(theta)
    lo, hi = float(domain[0]), float(domain[1])
    anchor = min(max(0.0, lo), hi) if s0 is None else float(s0)
    if label is None:
        label = f"profile(alpha1={getattr(fn, 'source', alpha1)}, theta={getattr(th, 'source', theta)})"
    return integrate_profile(fn, AngleFunction.closed_form(th), anchor, (0.0, 0.0), (lo, hi), label=label, tol=tol)


def make_theorem1_constant(a1, a2, a3=0.0, domain=DEFAULT_DOMAIN):
    """Constant radius ``a1`` with the angle ``a2 s + a3``: a circle of radius ``1/|a2|`` in (x3, x4)."""
    a1, a2, a3 = float(a1), float(a2), float(a3)
    if not a1 > 0:
        raise ParameterError(f"a1 must be > 0, got {a1}")
    if a2 == 0:
        raise ParameterError("a2 must be non-zero")
    return AngleProfile(
        lambda s: a1,
        AngleFunction.closed_form(lambda s: a2 * s + a3),
        domain,
        label=f"theorem1_constant(a1={a1:g}, a2={a2:g}, a3={a3:g})",
        alpha3=lambda s: jets.sin(a2 * s + a3) / a2,
        alpha4=lambda s: -jets.cos(a2 * s + a3) / a2,
    )


def make_theorem1_linear(b1, b2, b3, domain=DEFAULT_DOMAIN, margin=DEFAULT_DOMAIN_MARGIN, tol=DEFAULT_TOL):
    """Linear radius ``b1 s + b2`` with ``theta = b log(b1 s + b2)``, ``b = b3 / (b1 sqrt(1 + b1^2))``."""
    b1, b2, b3 = float(b1), float(b2), float(b3)
    if b1 == 0:
        raise ParameterError("b1 must be non-zero")
    b = b3 / (b1 * math.sqrt(1.0 + b1 * b1))
    lo, hi = _trim(domain, [-b2 / b1], margin, lambda s: b1 * s + b2 > 0)
    s0 = min(max(0.0, lo), hi)
    return integrate_profile(
        lambda s: b1 * s + b2,
        AngleFunction.closed_form(lambda s: b * jets.log(b1 * s + b2)),
        s0,
        (0.0, 0.0),
        (lo, hi),
        label=f"theorem1_linear(b1={b1:g}, b2={b2:g}, b3={b3:g})",
        tol=tol,
    )


def make_theorem3_trapped(alpha1, epsilon, domain=DEFAULT_DOMAIN, s0=None, theta0=0.0, tol=DEFAULT_TOL, label=None):
    """Marginally trapped surface over an arbitrary positive radius ``alpha1``."""
    eps = _check_epsilon(epsilon)
    fn = _as_alpha1(alpha1)
    lo, hi = float(domain[0]), float(domain[1])
    anchor = min(max(0.0, lo), hi) if s0 is None else float(s0)
    theta = theta_from_alpha1(fn, eps, anchor, theta0, (lo, hi), tol)
    if label is None:
        src = getattr(fn, "source", alpha1 if isinstance(alpha1, str) else "<callable>")
        label = f"theorem3_trapped(alpha1={src}, eps={eps:+d})"
    return integrate_profile(fn, theta, anchor, (0.0, 0.0), (lo, hi), label=label, tol=tol)


def make_theorem4_p1t(lambda1, q1, q0, epsilon, domain=DEFAULT_DOMAIN, margin=DEFAULT_DOMAIN_MARGIN, tol=DEFAULT_TOL):
    """Trapped surface with ``alpha1^2 = (lambda1 - 1) s^2 + q1 s + q0``.

    This is the general solution of ``1 + alpha1'^2 + alpha1 alpha1'' = lambda1``.
    """
    lam, q1, q0 = float(lambda1), float(q1), float(q0)
    eps = _check_epsilon(epsilon)
    if not lam > 1:
        raise ParameterError(f"lambda1 must be > 1, got {lam}")
    k = lam - 1.0
    disc = q1 * q1 - 4.0 * k * q0
    zeros = [] if disc < 0 else [(-q1 - math.sqrt(disc)) / (2 * k), (-q1 + math.sqrt(disc)) / (2 * k)]
    # alpha1 ~ sqrt(distance) near a root, so trim by margin in alpha1^2
    lo, hi = _trim(domain, zeros, margin, lambda s: k * s * s + q1 * s + q0 > 0)

    def alpha1(s):
        return jets.sqrt(k * s * s + q1 * s + q0)

    return make_theorem3_trapped(
        alpha1,
        eps,
        (lo, hi),
        tol=tol,
        label=f"theorem4_p1t(lambda1={lam:g}, q1={q1:g}, q0={q0:g}, eps={eps:+d})",
    )


def make_extremal(a1, a2, zeta0, margin=DEFAULT_DOMAIN_MARGIN, domain=None):
    """Extremal profile ``(f, 0, cos(z0) sqrt(a1) atan(w/f), sin(z0) sqrt(a1) atan(w/f))``.

    Here ``w = s + a2`` and ``f = sqrt(a1 - w^2)``.
    """
    a1, a2, z0 = float(a1), float(a2), float(zeta0)
    if not a1 > 0:
        raise ParameterError(f"a1 must be > 0, got {a1}")
    ra = math.sqrt(a1)
    full = (-a2 - ra + margin, -a2 + ra - margin)
    if full[0] >= full[1]:
        raise ParameterError("margin leaves an empty extremal domain")
    if domain is not None:
        full = (max(full[0], float(domain[0])), min(full[1], float(domain[1])))
        if full[0] >= full[1]:
            raise ParameterError(f"requested domain {domain} misses the extremal interval")

    def radius(s):
        w = s + a2
        return jets.sqrt(a1 - w * w)

    def arc(s):
        return jets.atan((s + a2) / radius(s))

    return AngleProfile(
        radius,
        AngleFunction.closed_form(lambda s: z0),
        full,
        label=f"extremal(a1={a1:g}, a2={a2:g}, zeta0={z0:g})",
        alpha3=lambda s: math.cos(z0) * ra * arc(s),
        alpha4=lambda s: math.sin(z0) * ra * arc(s),
    )


def build_curve(spec):
    p = spec.params
    kw = {}
    if spec.domain is not None:
        kw["domain"] = spec.domain
    try:
        if spec.tag == "theorem1_constant":
            return make_theorem1_constant(p["a1"], p["a2"], p["a3"], **kw)
        if spec.tag == "theorem1_linear":
            return make_theorem1_linear(p["b1"], p["b2"], p["b3"], margin=spec.margin, tol=spec.quad_tol, **kw)
        if spec.tag == "theorem3_trapped":
            return make_theorem3_trapped(p["alpha1"], int(p["epsilon"]), tol=spec.quad_tol, **kw)
        if spec.tag == "theorem4_p1t":
            return make_theorem4_p1t(
                p["lambda1"], p["q1"], p["q0"], int(p["epsilon"]), margin=spec.margin, tol=spec.quad_tol, **kw
            )
        return make_extremal(p["a1"], p["a2"], p["zeta0"], margin=spec.margin, **kw)
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ParameterError):
            raise
        raise ParameterError(f"family {spec.tag}: {exc}") from None


# ---------------------------------------------------------------------------
# verification


@dataclass(frozen=True)
class Check:
    name: str
    expected: object
    observed: object
    tolerance: float | None
    passed: bool


@dataclass
class VerificationReport:
    tag: str
    label: str
    checks: list = field(default_factory=list)
    p1t: object = None

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def failing(self):
        return [c.name for c in self.checks if not c.passed]

    def add_max(self, name, values, tol, expected=0.0):
        obs = float(np.max(np.abs(np.asarray(values, dtype=float) - expected))) if len(values) else 0.0
        self.checks.append(Check(name, expected, obs, tol, bool(obs <= tol)))

    def add_equal(self, name, expected, observed):
        self.checks.append(Check(name, expected, observed, None, expected == observed))


@dataclass(frozen=True)
class Grid:
    t: tuple
    s: tuple

    @classmethod
    def uniform(cls, t_range, nt, s_range, ns):
        return cls(tuple(np.linspace(*t_range, nt)), tuple(np.linspace(*s_range, ns)))


def default_grid(curve, nt=9, ns=9, t_range=(-1.0, 1.0)):
    return Grid.uniform(t_range, nt, curve.domain, ns)


def theorem1_predictions(co, fr):
    """Converse formulas: ``f = -a b' - a^2 d^2 + d^2 - b^2`` and the matching ``C``."""
    f = -co.a * co.db - co.a**2 * co.d**2 + co.d**2 - co.b**2
    if f == 0.0:
        return f, None
    C = (co.a * co.db + co.a**2 * co.d**2) / f * wedge(fr.e1, fr.e2) + (co.db + co.a * co.d**2) / f * wedge(
        fr.e2, fr.e3
    )
    return f, C


def verify_family(curve, spec, grid=None, tol_fit=TOL_FIT, tol_C=TOL_C, tol_f=TOL_F):
    """Run every check the family's theorem predicts; failures become report entries."""
    if grid is None:
        grid = default_grid(curve)
    rep = VerificationReport(spec.tag, curve.label)
    eps = spec.epsilon
    svals = [float(s) for s in grid.s]

    rep.add_max("unit_speed", [unit_speed_defect(curve, s) for s in svals], 1e-9)
    cos = [coefficients(curve, s) for s in svals]
    crs = [curvature_report(c, second_fundamental_form(c)) for c in cos]
    gram_err = []
    target = np.diag([1.0, 1.0, -1.0, 1.0])
    for s in svals:
        for t in grid.t:
            gram_err.append(np.max(np.abs(frame(curve, float(t), s).gram() - target)))
    rep.add_max("frame_orthonormal", gram_err, 1e-10)
    rep.add_max("normal_curvature_zero", [cr.RD for cr in crs], 1e-12)
    rep.add_max("gauss_curvature_consistent", [cr.K - cr.K_det for cr in crs], 1e-12)

    samples = gauss_samples(curve, grid.t, svals, epsilon=eps)
    rep.add_max("laplacian_no_e13_e14_e34", [_off_components(smp) for smp in samples], 1e-10)
    p1t = detect_pointwise_one_type(samples, tol_fit, tol_C, tol_f)
    rep.p1t = p1t
    fit = p1t.f

    if spec.tag.startswith("theorem1"):
        rep.add_max("flat", [cr.K for cr in crs], 1e-12)
        rep.add_max("D_zero", [smp.D for smp in samples], 1e-8)
        preds = [theorem1_predictions(smp.coefficients, smp.frame) for smp in samples]
        f_pred = np.array([p[0] for p in preds])
        if np.max(np.abs(f_pred)) <= tol_fit:
            rep.add_equal("harmonic", True, p1t.harmonic_flag)
            rep.add_equal("pointwise_1_type", False, p1t.is_p1t)
        else:
            rep.add_equal("pointwise_1_type", True, p1t.is_p1t)
            C_pred = np.array([p[1] for p in preds])
            kind = "first" if np.max(np.abs(C_pred)) <= tol_C else "second"
            rep.add_equal("kind", kind, p1t.kind)
            rep.add_max("f_match", fit - f_pred, 1e-6)
            rep.add_max("C_match", (C_pred - p1t.C).ravel(), 1e-6)
            rep.add_max("C_constant", np.std(C_pred, axis=0), 1e-6)
    elif spec.tag in ("theorem3_trapped", "theorem4_p1t"):
        rep.add_max("null_mean_curvature", [cr.H_norm2 for cr in crs], 1e-8)
        rep.add_max("trapped_relation", [(c.b + c.c) + eps * c.d for c in cos], 1e-8)
        classes = sorted({cr.causal_class for cr in crs})
        rep.checks.append(
            Check("H_null_or_zero", "null", ",".join(classes), None, set(classes) <= {"null", "zero"})
        )
        if spec.tag == "theorem4_p1t":
            rep.add_max("N_zero", [smp.N for smp in samples], 1e-8)
            rep.add_equal("pointwise_1_type", True, p1t.is_p1t)
            rep.add_equal("kind", "first", p1t.kind)
            rep.add_max("f_equals_2bc", fit - np.array([2 * smp.coefficients.b * smp.coefficients.c for smp in samples]), 1e-6)
    elif spec.tag == "extremal":
        rep.add_max("mean_curvature_zero", [max(abs(cr.h1), abs(cr.h2)) for cr in crs], 1e-8)
        rep.add_equal("pointwise_1_type", True, p1t.is_p1t)
        rep.add_equal("kind", "first", p1t.kind)
        signed = np.array([-(smp.coefficients.b**2 + smp.coefficients.c**2) for smp in samples])
        rep.add_max("f_equals_signed_norm_h", fit - signed, 1e-6)
    return rep


def _off_components(smp):
    """Largest frame component of the Laplacian on e1^e3, e1^e4, e3^e4, relative to its size."""
    fr = smp.frame
    lap = smp.laplacian_closed
    off = max(
        abs(bivector_inner(lap, wedge(fr.e1, fr.e3))),
        abs(bivector_inner(lap, wedge(fr.e1, fr.e4))),
        abs(bivector_inner(lap, wedge(fr.e3, fr.e4))),
    )
    return off / max(1.0, float(np.max(np.abs(lap))))

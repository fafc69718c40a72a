"""Gauss map ``G = e1 ^ e2``, its Laplacian, and the pointwise 1-type detector.

The detector fits ``Laplacian(G) = f (G + C)`` over a sample set, with one
``f`` per sample and one constant bivector ``C`` shared by all samples.
``f`` is eliminated in closed form for a trial ``C`` (variable projection)
and the remaining six-dimensional problem is solved by Gauss-Newton.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import wedge
from .errors import DomainError, PreconditionError, SamplingError
from .surface import Coefficients, Frame, coefficients, frame

TOL_FIT = 1e-6
TOL_C = 1e-8
TOL_F = 1e-10
TRAPPED_TOL = 1e-8
MAX_ITER = 100
GRAD_TOL = 1e-12


@dataclass(frozen=True)
class GaussSample:
    t: float
    s: float
    G: np.ndarray
    laplacian_closed: np.ndarray
    laplacian_numeric: np.ndarray | None
    A: float
    B: float
    D: float
    N: float | None
    frame: Frame
    coefficients: Coefficients


@dataclass
class P1TReport:
    is_p1t: bool
    kind: str
    f_samples: list
    C: np.ndarray
    residual: float
    harmonic_flag: bool
    iterations: int = 0
    seed: str = ""
    residual_at_zero: float = float("nan")
    details: dict = field(default_factory=dict)

    @property
    def f(self):
        return np.array([f for _, f in self.f_samples])


def gauss_map(fr):
    return wedge(fr.e1, fr.e2)


def abd_functions(co):
    """``(A, B, D)`` with ``A = d^2 - b^2 - c^2``, ``B = b' + c' + a d^2``, ``D = d' + a d (b + c)``."""
    if not co.has_derivatives:
        raise PreconditionError("abd_functions needs the s-derivatives b', c', d'")
    A = co.d**2 - co.b**2 - co.c**2
    B = co.db + co.dc + co.a * co.d**2
    D = co.dd + co.a * co.d * (co.b + co.c)
    return A, B, D


def laplacian_gauss_closed(co, fr):
    A, B, D = abd_functions(co)
    return A * wedge(fr.e1, fr.e2) + B * wedge(fr.e2, fr.e3) + D * wedge(fr.e2, fr.e4)


def laplacian_gauss_numeric(curve, t, s, h=1e-3):
    """Chart Laplacian ``-G_ss - G_tt / alpha1^2 - (alpha1'/alpha1) G_s`` by central differences.

    The induced metric is ``ds^2 + alpha1^2 dt^2``; the operator is applied to
    each Plücker coordinate of ``G``.
    """
    lo, hi = curve.domain
    if s - h < lo or s + h > hi:
        raise DomainError(f"stencil [{s - h}, {s + h}] leaves curve domain [{lo}, {hi}]")

    def G(tt, ss):
        return gauss_map(frame(curve, tt, ss))

    g0 = G(t, s)
    gsp, gsm = G(t, s + h), G(t, s - h)
    gtp, gtm = G(t + h, s), G(t - h, s)
    g_ss = (gsp - 2.0 * g0 + gsm) / (h * h)
    g_tt = (gtp - 2.0 * g0 + gtm) / (h * h)
    g_s = (gsp - gsm) / (2.0 * h)
    d = curve.derivatives(s, 1, values=False)
    r, dr = d[0, 0], d[1, 0]
    return -g_ss - g_tt / (r * r) - (dr / r) * g_s


def marginally_trapped_N(co, epsilon, tol=TRAPPED_TOL):
    """``N = d' - eps a d^2`` on a surface with ``-(b + c) = eps d``."""
    defect = (co.b + co.c) + epsilon * co.d
    if abs(defect) > tol:
        raise PreconditionError(
            f"surface is not marginally trapped for eps={epsilon:+d} at s={co.s}: "
            f"|(b + c) + eps d| = {abs(defect):.3g} > {tol:.3g}"
        )
    if co.dd is None:
        raise PreconditionError("marginally_trapped_N needs d'")
    return co.dd - epsilon * co.a * co.d**2


def gauss_samples(curve, t_values, s_values, numeric=False, h=1e-3, epsilon=None):
    """Sample the Gauss map on the tensor grid ``t_values x s_values`` (s-major)."""
    out = []
    for s in s_values:
        co = coefficients(curve, float(s))
        A, B, D = abd_functions(co)
        N = None
        if epsilon is not None:
            N = co.dd - epsilon * co.a * co.d**2
        for t in t_values:
            fr = frame(curve, float(t), float(s))
            lap = A * wedge(fr.e1, fr.e2) + B * wedge(fr.e2, fr.e3) + D * wedge(fr.e2, fr.e4)
            num = laplacian_gauss_numeric(curve, float(t), float(s), h) if numeric else None
            out.append(GaussSample(float(t), float(s), gauss_map(fr), lap, num, A, B, D, N, fr, co))
    return out


def _project(X, Y, C):
    V = X + C
    vv = np.einsum("ij,ij->i", V, V)
    f = np.einsum("ij,ij->i", Y, V) / np.where(vv > 0.0, vv, 1.0)
    f = np.where(vv > 0.0, f, 0.0)
    R = Y - f[:, None] * V
    return f, R, V, vv


def _jacobian(f, R, V, vv):
    n = len(f)
    eye = np.eye(6)
    W = (R - f[:, None] * V) / np.where(vv > 0.0, vv, 1.0)[:, None]
    J = -f[:, None, None] * eye[None] - V[:, :, None] * W[:, None, :]
    return J.reshape(6 * n, 6)


def _gauss_newton(X, Y, C0, max_iter=MAX_ITER, gtol=GRAD_TOL):
    C = np.array(C0, dtype=float)
    f, R, V, vv = _project(X, Y, C)
    cost = 0.5 * np.sum(R * R)
    it = 0
    for it in range(1, max_iter + 1):
        J = _jacobian(f, R, V, vv)
        r = R.ravel()
        g = J.T @ r
        if np.max(np.abs(g)) <= gtol:
            break
        step = np.linalg.lstsq(J, -r, rcond=None)[0]
        lam = 1.0
        improved = False
        while lam > 1e-10:
            Cn = C + lam * step
            fn, Rn, Vn, vvn = _project(X, Y, Cn)
            cn = 0.5 * np.sum(Rn * Rn)
            if cn < cost:
                improved = True
                break
            lam *= 0.5
        if not improved:
            break
        rel = (cost - cn) / max(cost, 1e-300)
        C, f, R, V, vv, cost = Cn, fn, Rn, Vn, vvn, cn
        if rel < 1e-15 or cost == 0.0:
            break
    return C, f, R, it


def _frame_seed(samples):
    """Seed from the frame-component relations: f = A - aB, then C from A, B, D."""
    seeds = []
    for smp in samples:
        a = smp.coefficients.a
        f0 = smp.A - a * smp.B
        if abs(f0) < 1e-12:
            f0 = smp.A
        if abs(f0) < 1e-12:
            continue
        fr = smp.frame
        seeds.append(
            (smp.A - f0) / f0 * wedge(fr.e1, fr.e2)
            + smp.B / f0 * wedge(fr.e2, fr.e3)
            + smp.D / f0 * wedge(fr.e2, fr.e4)
        )
    if not seeds:
        return np.zeros(6)
    return np.median(np.array(seeds), axis=0)


def detect_pointwise_one_type(samples, tol_fit=TOL_FIT, tol_C=TOL_C, tol_f=TOL_F, use="closed"):
    """Decide whether ``Laplacian(G) = f (G + C)`` holds on the sample set.

    ``use`` selects the closed-form or the finite-difference Laplacian.
    The residual is ``max_k ||r_k||_inf / max_k ||Laplacian(G)_k||_inf``.
    """
    if len(samples) < 8:
        raise SamplingError(f"need at least 8 samples, got {len(samples)}")
    if len({smp.s for smp in samples}) < 2 or len({smp.t for smp in samples}) < 2:
        raise SamplingError("samples must span at least 2 distinct s and 2 distinct t values")
    X = np.array([smp.G for smp in samples])
    if use == "closed":
        Y = np.array([smp.laplacian_closed for smp in samples])
    elif use == "numeric":
        if any(smp.laplacian_numeric is None for smp in samples):
            raise PreconditionError("samples carry no numeric Laplacian")
        Y = np.array([smp.laplacian_numeric for smp in samples])
    else:
        raise ValueError(f"unknown Laplacian source {use!r}")
    if np.linalg.matrix_rank(X, tol=1e-10) < 2:
        raise SamplingError("Gauss map samples are rank deficient; C is not identifiable")

    s_list = [smp.s for smp in samples]
    scale = float(np.max(np.abs(Y)))
    if scale <= tol_fit:
        return P1TReport(
            is_p1t=False,
            kind="none",
            f_samples=[(s, 0.0) for s in s_list],
            C=np.zeros(6),
            residual=scale,
            harmonic_flag=True,
            seed="harmonic",
        )

    f0, R0, _, _ = _project(X, Y, np.zeros(6))
    res0 = float(np.max(np.abs(R0))) / scale
    if res0 <= tol_fit:
        C, f, res, iters, seed = np.zeros(6), f0, res0, 0, "zero"
    else:
        best = None
        for name, C_init in (("zero", np.zeros(6)), ("frame", _frame_seed(samples))):
            C_fit, f_fit, R_fit, iters = _gauss_newton(X, Y, C_init)
            res_fit = float(np.max(np.abs(R_fit))) / scale
            if best is None or res_fit < best[2]:
                best = (C_fit, f_fit, res_fit, iters, name)
        C, f, res, iters, seed = best

    ok = res <= tol_fit and float(np.min(np.abs(f))) >= tol_f
    if ok:
        kind = "first" if float(np.max(np.abs(C))) <= tol_C else "second"
    else:
        kind = "none"
    return P1TReport(
        is_p1t=bool(ok),
        kind=kind,
        f_samples=[(s, float(v)) for s, v in zip(s_list, f)],
        C=np.asarray(C, dtype=float),
        residual=res,
        harmonic_flag=False,
        iterations=iters,
        seed=seed,
        residual_at_zero=res0,
    )

"""Pointwise geometry of the boost-invariant surface

    phi(t, s) = (alpha1(s) cosh t, alpha1(s) sinh t, alpha3(s), alpha4(s)).

Frame signs are ``eps = (+1, +1, -1, +1)``: ``e1, e2`` span the tangent plane,
``e3`` is the timelike normal and ``e4`` the spacelike one.  Everything except
the frame itself is independent of ``t``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import jets
from .algebra import causal_character, minkowski_inner
from .errors import SingularityError

FRAME_SIGNS = np.array([1.0, 1.0, -1.0, 1.0])
CAUSAL_TOL = 1e-10

# (i, k) pairs of the covariant derivative table: entry is D_{e_k} e_i.
COVARIANT_ORDER = ((1, 1), (1, 2), (2, 1), (2, 2), (3, 1), (3, 2), (4, 1), (4, 2))
CONNECTION_ORDER = ((1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4))


@dataclass(frozen=True)
class Frame:
    e1: np.ndarray
    e2: np.ndarray
    e3: np.ndarray
    e4: np.ndarray
    t: float
    s: float

    @property
    def vectors(self):
        return np.array([self.e1, self.e2, self.e3, self.e4])

    def gram(self):
        E = self.vectors
        return minkowski_inner(E[:, None, :], E[None, :, :])


@dataclass(frozen=True)
class Coefficients:
    s: float
    a: float
    b: float
    c: float
    d: float
    da: Optional[float] = None
    db: Optional[float] = None
    dc: Optional[float] = None
    dd: Optional[float] = None

    @property
    def has_derivatives(self):
        return None not in (self.da, self.db, self.dc, self.dd)


@dataclass(frozen=True)
class SecondFundamentalForm:
    h11_3: float
    h12_3: float
    h22_3: float
    h11_4: float
    h12_4: float
    h22_4: float

    def tensor(self):
        """Array ``h[r, i, j]`` with ``r = 0, 1`` for ``e3, e4``."""
        return np.array(
            [
                [[self.h11_3, self.h12_3], [self.h12_3, self.h22_3]],
                [[self.h11_4, self.h12_4], [self.h12_4, self.h22_4]],
            ]
        )


@dataclass(frozen=True)
class CurvatureReport:
    K: float
    K_det: float
    h1: float
    h2: float
    H_norm2: float
    RD: float
    causal_class: str

    @property
    def H_components(self):
        return (self.h1, self.h2)


def surface_point(curve, t, s):
    v = curve.jet(s).value
    return np.array([v[0] * np.cosh(t), v[0] * np.sinh(t), v[1], v[2]])


def frame(curve, t, s):
    """Adapted orthonormal frame at ``phi(t, s)``; needs only first derivatives."""
    d1 = curve.derivatives(s, 1, values=False)[1]
    p1, p3, p4 = d1
    q = 1.0 + p1 * p1
    r = np.sqrt(q)
    ch, sh = np.cosh(t), np.sinh(t)
    e1 = np.array([p1 * ch, p1 * sh, p3, p4])
    e2 = np.array([sh, ch, 0.0, 0.0])
    e3 = np.array([q * ch, q * sh, p1 * p3, p1 * p4]) / r
    e4 = np.array([0.0, 0.0, -p4, p3]) / r
    return Frame(e1, e2, e3, e4, float(t), float(s))


def _coefficient_jets(curve, s, order):
    a1, a3, a4 = curve.jets(s, order + 2, values=False)
    r0 = a1.value
    if not r0 > 0.0:
        raise SingularityError(f"alpha1({s}) = {r0} <= 0: b = sqrt(1 + alpha1'^2)/alpha1 is singular")
    d1 = [x.deriv() for x in (a1, a3, a4)]
    d2 = [x.deriv() for x in d1]
    a0 = a1.truncate(order)
    p1, p3, p4 = (x.truncate(order) for x in d1)
    q1, q3, q4 = (x.truncate(order) for x in d2)
    r = jets.sqrt(1.0 + p1 * p1)
    return p1 / r, r / a0, q1 / r, (-q3 * p4 + q4 * p3) / r


def _scalar_coefficients(curve, s):
    curve.check_domain(s)
    return tuple(j.value for j in _coefficient_jets(curve, s, 0))


def coefficients(curve, s, derivatives=True, method="jet", step=1e-5):
    """The functions a, b, c, d at ``s``, optionally with their s-derivatives.

    ``method="jet"`` propagates exact Taylor jets; ``method="central"`` uses
    central differences of the closed forms with the given step.
    """
    curve.check_domain(s)
    if not derivatives:
        return Coefficients(float(s), *_scalar_coefficients(curve, s))
    if method == "jet":
        js = _coefficient_jets(curve, s, 1)
        vals = [j.c[0] for j in js]
        ders = [j.c[1] for j in js]
    elif method == "central":
        vals = _scalar_coefficients(curve, s)
        hi = np.array(_scalar_coefficients(curve, s + step))
        lo = np.array(_scalar_coefficients(curve, s - step))
        ders = (hi - lo) / (2.0 * step)
    else:
        raise ValueError(f"unknown derivative method {method!r}")
    return Coefficients(float(s), *map(float, vals), *map(float, ders))


def second_fundamental_form(co):
    return SecondFundamentalForm(-co.c, 0.0, -co.b, co.d, 0.0, 0.0)


def covariant_derivative_table(co, fr):
    """Ambient derivatives ``D_{e_k} e_i`` in the order of :data:`COVARIANT_ORDER`."""
    a, b, c, d = co.a, co.b, co.c, co.d
    e1, e2, e3, e4 = fr.e1, fr.e2, fr.e3, fr.e4
    zero = np.zeros(4)
    return [
        c * e3 + d * e4,
        a * b * e2,
        zero,
        -a * b * e1 + b * e3,
        c * e1 + a * d * e4,
        b * e2,
        -d * e1 + a * d * e3,
        zero,
    ]


def connection_forms(co):
    """Connection forms as rows ``(coef on omega1, coef on omega2)``, order :data:`CONNECTION_ORDER`.

    Here ``omega1 = ds`` and ``omega2 = alpha1 dt``.
    """
    a, b, c, d = co.a, co.b, co.c, co.d
    return np.array(
        [
            [0.0, a * b],
            [-c, 0.0],
            [d, 0.0],
            [0.0, -b],
            [0.0, 0.0],
            [a * d, 0.0],
        ]
    )


def normal_curvature(sff, j=0, k=1, r=0, s=1):
    """``R^D(e_j, e_k; e_r, e_s)`` from the shape tensor; tangent indices are 0-based."""
    h = sff.tensor()
    return sum(FRAME_SIGNS[i] * (h[r, i, k] * h[s, i, j] - h[r, i, j] * h[s, i, k]) for i in range(2))


def gaussian_curvature_det(sff):
    h = sff.tensor()
    eps = FRAME_SIGNS[2:]
    return float(sum(eps[r] * (h[r, 0, 0] * h[r, 1, 1] - h[r, 0, 1] * h[r, 1, 0]) for r in range(2)))


def curvature_report(co, sff=None, tol=CAUSAL_TOL):
    if sff is None:
        sff = second_fundamental_form(co)
    h1 = -(co.b + co.c)
    h2 = co.d
    hn2 = 0.25 * (h2 * h2 - h1 * h1)
    if abs(h1) <= tol and abs(h2) <= tol:
        cls = "zero"
    elif abs(hn2) <= tol:
        cls = "null"
    else:
        cls = "timelike" if hn2 < 0 else "spacelike"
    return CurvatureReport(
        K=-co.b * co.c,
        K_det=gaussian_curvature_det(sff),
        h1=h1,
        h2=h2,
        H_norm2=hn2,
        RD=float(normal_curvature(sff)),
        causal_class=cls,
    )


def mean_curvature_vector(co, fr):
    """``H = (1/2)(-h1 e3 + h2 e4)`` in ambient coordinates."""
    return 0.5 * ((co.b + co.c) * fr.e3 + co.d * fr.e4)


def mean_curvature_class(co, fr, tol=CAUSAL_TOL):
    return causal_character(mean_curvature_vector(co, fr), tol)

"""Profile curves ``s -> (alpha1(s), 0, alpha3(s), alpha4(s))`` of boost-invariant surfaces.

Two representations are provided:

* :class:`AngleProfile` -- the rotation radius ``alpha1`` is a jet-aware
  callable and the remaining components follow from an angle function,
  ``alpha3' = sqrt(1 + alpha1'^2) cos(theta)``, ``alpha4' = sqrt(1 + alpha1'^2) sin(theta)``.
  Derivatives of every order are exact; only the values of ``alpha3``,
  ``alpha4`` (and of ``theta`` when it is itself an integral) use quadrature.
* :class:`SplineProfile` -- a sampled table reconstructed with interpolating splines.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from math import factorial

import numpy as np
from scipy.interpolate import make_interp_spline

from . import jets
from .errors import DomainError, PreconditionError, SingularityError
from .jets import Jet
from .quadrature import DEFAULT_TOL, AntiderivativeTable

SINGULARITY_CHECK_POINTS = 401
DEFAULT_DOMAIN_MARGIN = 1e-3
SPLINE_DEGREE = 5


@dataclass(frozen=True)
class Jet2:
    """Value, first and second derivative of ``(alpha1, alpha3, alpha4)`` at ``s``."""

    s: float
    value: np.ndarray
    d1: np.ndarray
    d2: np.ndarray


class AngleFunction:
    """Angle ``theta(s)`` with exact derivative jets.

    Build it with :meth:`closed_form` (a jet-aware callable) or
    :meth:`quadrature` (a rate ``theta'`` integrated from ``(s0, theta0)``).
    """

    def __init__(self, provenance, theta=None, rate=None, table=None):
        self.provenance = provenance
        self._theta = theta
        self._rate = rate
        self._table = table

    @classmethod
    def closed_form(cls, theta):
        return cls("closed-form", theta=theta)

    @classmethod
    def quadrature(cls, rate, s0, theta0, domain, tol=DEFAULT_TOL):
        """``rate(s, order)`` must return the Jet of ``theta'`` at ``s`` of the given order."""
        table = AntiderivativeTable(lambda x: rate(x, 0).value, s0, theta0, domain, tol)
        return cls("quadrature", rate=rate, table=table)

    def jet(self, s, order, value=True):
        if self._theta is not None:
            out = self._theta(Jet.variable(s, order))
            return out if isinstance(out, Jet) else Jet.constant(float(out), order)
        v = self._table(s) if value else 0.0
        if order == 0:
            return Jet([v])
        return self._rate(s, order - 1).integral(v)

    def __call__(self, s):
        if self._theta is not None:
            return jets.value(self._theta(float(s)))
        return self._table(s)

    def derivative(self, s):
        return self.jet(s, 1, value=False).c[1]


class ProfileCurve:
    """Base class: a twice (or more) differentiable profile on ``[s_min, s_max]``."""

    def __init__(self, domain, label=""):
        lo, hi = float(domain[0]), float(domain[1])
        if not lo < hi:
            raise DomainError(f"empty domain [{lo}, {hi}]")
        self.domain = (lo, hi)
        self.label = label

    def check_domain(self, s):
        lo, hi = self.domain
        if s < lo:
            raise DomainError(f"s={s!r} below s_min={lo!r} of curve {self.label!r}")
        if s > hi:
            raise DomainError(f"s={s!r} above s_max={hi!r} of curve {self.label!r}")

    def jets(self, s, order, values=True):
        """Jets ``(alpha1, alpha3, alpha4)`` of the given order at ``s``.

        With ``values=False`` the constant terms of ``alpha3`` and ``alpha4`` are
        left at zero, which skips quadrature when only derivatives are needed.
        """
        raise NotImplementedError

    def derivatives(self, s, order=2, values=True):
        """Array of shape ``(order + 1, 3)``: row ``k`` is the k-th derivative."""
        self.check_domain(s)
        return np.stack([j.derivatives() for j in self.jets(s, order, values)], axis=1)

    def jet(self, s):
        d = self.derivatives(s, 2)
        return Jet2(float(s), d[0], d[1], d[2])

    def alpha1(self, s):
        return float(self.jets(s, 0, values=False)[0].c[0])

    def check_radius(self, n=SINGULARITY_CHECK_POINTS):
        lo, hi = self.domain
        for s in np.linspace(lo, hi, n):
            r = self.alpha1(s)
            if not r > 0.0:
                raise SingularityError(f"alpha1({s:.6g}) = {r:.6g} <= 0 on curve {self.label!r}")


def jet(curve, s):
    return curve.jet(s)


def unit_speed_defect(curve, s):
    """``-alpha1'^2 + alpha3'^2 + alpha4'^2 - 1``; zero for a unit-speed spacelike profile."""
    d1 = curve.derivatives(s, 1, values=False)[1]
    return -d1[0] ** 2 + d1[1] ** 2 + d1[2] ** 2 - 1.0


class AngleProfile(ProfileCurve):
    """Profile generated by ``alpha1`` and an angle function.

    ``alpha3`` / ``alpha4`` may be given in closed form (jet-aware callables);
    otherwise they are antiderivatives anchored at ``s0`` with values ``p0``.
    """

    def __init__(self, alpha1, theta, domain, label="", alpha3=None, alpha4=None,
                 s0=None, p0=(0.0, 0.0), tol=DEFAULT_TOL):
        super().__init__(domain, label)
        self.alpha1_fn = alpha1
        self.theta = theta
        self._closed = (alpha3, alpha4)
        self.check_radius()
        self.s0 = self.domain[0] if s0 is None else float(s0)
        self.p0 = (float(p0[0]), float(p0[1]))
        self.tol = tol
        self._table = None
        if alpha3 is None or alpha4 is None:
            self._table = AntiderivativeTable(self._speed_dirs, self.s0, self.p0, self.domain, tol)

    def _speed_dirs(self, s):
        a1p = jets.taylor_derivatives(self.alpha1_fn, s, 1)[1]
        r = np.sqrt(1.0 + a1p * a1p)
        th = self.theta(s)
        return (r * np.cos(th), r * np.sin(th))

    def _alpha1_jet(self, s, order):
        out = self.alpha1_fn(Jet.variable(s, order))
        return out if isinstance(out, Jet) else Jet.constant(float(out), order)

    def jets(self, s, order, values=True):
        a1 = self._alpha1_jet(s, order)
        if order == 0:
            if not values:
                return a1, Jet([0.0]), Jet([0.0])
            return a1, Jet([self._value(s, 0)]), Jet([self._value(s, 1)])
        th = self.theta.jet(s, order - 1, value=True)
        da1 = a1.deriv()
        r = jets.sqrt(1.0 + da1 * da1)
        c, sn = jets.cos(th), jets.sin(th)
        v3 = self._value(s, 0) if values else 0.0
        v4 = self._value(s, 1) if values else 0.0
        return a1, (r * c).integral(v3), (r * sn).integral(v4)

    def _value(self, s, k):
        closed = self._closed[k]
        if closed is not None:
            return jets.value(closed(float(s)))
        return float(self._table(s)[k])


class SplineProfile(ProfileCurve):
    """Profile reconstructed from a sampled table by interpolating splines.

    The default degree 5 keeps the third derivative continuous, which the
    s-derivatives of the coefficients (and so the Laplacian) need.
    """

    def __init__(self, s, alpha1, alpha3, alpha4, label="table", unit_speed_tol=1e-6, degree=SPLINE_DEGREE):
        s = np.asarray(s, dtype=float)
        if s.ndim != 1 or len(s) < degree + 1:
            raise PreconditionError(f"table needs at least {degree + 1} rows")
        if np.any(np.diff(s) <= 0):
            raise PreconditionError("table s column must be strictly increasing")
        super().__init__((s[0], s[-1]), label)
        self.degree = degree
        self.splines = [make_interp_spline(s, np.asarray(col, dtype=float), k=degree) for col in (alpha1, alpha3, alpha4)]
        self.check_radius()
        worst = max(abs(unit_speed_defect(self, x)) for x in s)
        if worst > unit_speed_tol:
            raise PreconditionError(
                f"table is not unit speed: max |defect| = {worst:.3g} > {unit_speed_tol:.3g}"
            )

    def jets(self, s, order, values=True):
        out = []
        for spl in self.splines:
            c = np.zeros(order + 1)
            for k in range(min(order, self.degree) + 1):
                c[k] = spl(s, nu=k) / factorial(k)
            out.append(Jet(c))
        return tuple(out)

    @classmethod
    def from_csv(cls, path, **kwargs):
        with open(path, newline="") as fh:
            reader = csv.DictReader(fh)
            fields = reader.fieldnames or []
            missing = [k for k in ("s", "alpha1", "alpha3", "alpha4") if k not in fields]
            if missing:
                raise PreconditionError(f"{path}: missing CSV columns {missing}")
            rows = []
            for line, r in enumerate(reader, start=2):
                try:
                    rows.append(tuple(float(r[k]) for k in ("s", "alpha1", "alpha3", "alpha4")))
                except (TypeError, ValueError):
                    raise PreconditionError(f"{path}:{line}: non-numeric table entry") from None
        cols = np.array(rows).T
        kwargs.setdefault("label", str(path))
        return cls(*cols, **kwargs)


def trapped_theta_rate(alpha1, epsilon):
    """Rate ``theta'`` making the surface marginally trapped.

    From ``-(b + c) = eps d`` with ``d = sqrt(1 + alpha1'^2) theta'``:
    ``theta' = -eps (1 + alpha1'^2 + alpha1 alpha1'') / (alpha1 (1 + alpha1'^2))``.
    """
    eps = float(epsilon)

    def rate(s, order):
        a = alpha1(Jet.variable(s, order + 2))
        if not isinstance(a, Jet):
            a = Jet.constant(float(a), order + 2)
        a1 = a.deriv()
        a2 = a1.deriv()
        a0 = a.truncate(order)
        a1 = a1.truncate(order)
        q = 1.0 + a1 * a1
        return -eps * (q + a0 * a2) / (a0 * q)

    return rate


def theta_from_alpha1(alpha1, epsilon, s0, theta0, domain, tol=DEFAULT_TOL):
    """Angle function of the marginally trapped surface with rotation radius ``alpha1``."""
    if epsilon not in (1, -1):
        raise PreconditionError(f"epsilon must be +1 or -1, got {epsilon!r}")
    lo, hi = domain
    for s in np.linspace(lo, hi, SINGULARITY_CHECK_POINTS):
        r = jets.value(alpha1(float(s)))
        if not r > 0.0:
            raise SingularityError(f"alpha1({s:.6g}) = {r:.6g} <= 0")
    return AngleFunction.quadrature(trapped_theta_rate(alpha1, epsilon), s0, theta0, domain, tol)


def integrate_profile(alpha1, theta, s0, p0=(0.0, 0.0), domain=None, label="", tol=DEFAULT_TOL):
    """Build ``alpha3, alpha4`` by quadrature of ``sqrt(1 + alpha1'^2) (cos, sin)(theta)``."""
    if domain is None:
        raise PreconditionError("integrate_profile needs an explicit domain")
    return AngleProfile(alpha1, theta, domain, label=label, s0=s0, p0=p0, tol=tol)

"""Antiderivative tables by adaptive piecewise Clenshaw-Curtis quadrature.

``F(s) = y0 + integral_{s0}^{s} g``.  The domain is cut into panels; on each
panel ``g`` is interpolated at Chebyshev points and the panel is bisected
until the trailing coefficients fall below tolerance.  The interpolant is
integrated exactly, so ``F`` can be evaluated anywhere at the cost of a
polynomial evaluation and is itself smooth in ``s``.  Vector-valued
integrands are handled column-wise on shared panels.
"""

from __future__ import annotations

import bisect

import numpy as np
from numpy.polynomial import chebyshev as cheb

from .errors import DomainError, IntegrationError

DEFAULT_TOL = 1e-10
PANEL_WIDTH = 0.1
DEGREE = 24
MIN_WIDTH = 1e-7


class _Panel:
    __slots__ = ("a", "b", "coef")

    def __init__(self, a, b, coef):
        self.a, self.b, self.coef = a, b, coef

    def integral_to(self, x):
        u = (2.0 * x - self.a - self.b) / (self.b - self.a)
        return cheb.chebval(u, self.coef)


def _fit(g, a, b, deg):
    u = cheb.chebpts1(deg + 1)
    x = 0.5 * (a + b) + 0.5 * (b - a) * u
    y = np.array([np.atleast_1d(np.asarray(g(xi), dtype=float)) for xi in x])
    return cheb.chebfit(u, y, deg)


def _panels(g, a, b, tol, deg):
    """Bisect ``[a, b]`` until the Chebyshev tail of ``g`` is below tolerance."""
    out = []
    stack = [(a, b)]
    while stack:
        lo, hi = stack.pop()
        c = _fit(g, lo, hi, deg)
        scale = max(1.0, float(np.max(np.abs(c))))
        tail = float(np.max(np.abs(c[-3:])))
        if tail <= 1e-3 * tol + 1e-15 * scale:
            # antiderivative in u, rescaled to s, zero at the panel's left end
            ic = cheb.chebint(c, m=1, lbnd=-1.0, k=0, scl=0.5 * (hi - lo), axis=0)
            out.append(_Panel(lo, hi, ic))
            continue
        if hi - lo < MIN_WIDTH:
            raise IntegrationError(
                f"quadrature did not converge on [{lo:.10g}, {hi:.10g}] (tail {tail:.3g})",
                interval=(lo, hi),
                abserr=tail * (hi - lo),
            )
        mid = 0.5 * (lo + hi)
        stack.append((mid, hi))
        stack.append((lo, mid))
    out.sort(key=lambda p: p.a)
    return out


class AntiderivativeTable:
    """Antiderivative of ``integrand`` on ``domain`` with ``F(s0) = y0``."""

    def __init__(self, integrand, s0, y0, domain, tol=DEFAULT_TOL, deg=DEGREE):
        lo, hi = float(domain[0]), float(domain[1])
        if not lo <= s0 <= hi:
            raise DomainError(f"anchor s0={s0} outside [{lo}, {hi}]")
        self.domain = (lo, hi)
        self.s0 = float(s0)
        self.scalar = np.ndim(y0) == 0
        y0 = np.atleast_1d(np.asarray(y0, dtype=float))
        self.tol = tol
        cuts = []
        for a, b in ((lo, self.s0), (self.s0, hi)):
            if b > a:
                n = max(1, int(np.ceil((b - a) / PANEL_WIDTH)))
                edges = np.linspace(a, b, n + 1)
                cuts.extend(zip(edges[:-1], edges[1:]))
        panels = []
        for a, b in cuts:
            panels.extend(_panels(integrand, a, b, tol, deg))
        self.panels = panels
        self.left = [p.a for p in panels]
        # cumulative values at left panel ends, anchored at s0
        base = np.zeros((len(panels), len(y0)))
        acc = np.zeros(len(y0))
        for k, p in enumerate(panels):
            base[k] = acc
            acc = acc + p.integral_to(p.b)
        k0 = bisect.bisect_right(self.left, self.s0) - 1
        k0 = max(0, min(k0, len(panels) - 1))
        offset = y0 - (base[k0] + panels[k0].integral_to(self.s0))
        self.base = base + offset

    def __call__(self, s):
        s = float(s)
        lo, hi = self.domain
        if s < lo or s > hi:
            raise DomainError(f"s={s} outside quadrature domain [{lo}, {hi}]")
        k = bisect.bisect_right(self.left, s) - 1
        k = max(0, min(k, len(self.panels) - 1))
        v = self.base[k] + self.panels[k].integral_to(s)
        return float(v[0]) if self.scalar else v

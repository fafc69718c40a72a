"""Truncated Taylor arithmetic (forward-mode jets of arbitrary order).

A :class:`Jet` holds normalized Taylor coefficients ``c[k] = f^(k)(s0) / k!``.
Profile functions written with the helpers in this module (``sin``, ``sqrt``...)
accept either floats or jets, so one definition serves both plain evaluation
and exact derivative propagation.
"""

from __future__ import annotations

import math
from math import factorial

import numpy as np


class Jet:
    __slots__ = ("c",)
    __array_ufunc__ = None

    def __init__(self, coeffs):
        self.c = np.asarray(coeffs, dtype=float)

    @classmethod
    def variable(cls, x0, order):
        c = np.zeros(order + 1)
        c[0] = x0
        if order >= 1:
            c[1] = 1.0
        return cls(c)

    @classmethod
    def constant(cls, x0, order):
        c = np.zeros(order + 1)
        c[0] = x0
        return cls(c)

    @property
    def order(self):
        return len(self.c) - 1

    @property
    def value(self):
        return float(self.c[0])

    def derivatives(self):
        """Return ``[f, f', f'', ...]`` (unnormalized)."""
        return np.array([self.c[k] * factorial(k) for k in range(len(self.c))])

    def deriv(self):
        """Jet of the derivative, one order lower."""
        k = np.arange(1, len(self.c))
        return Jet(self.c[1:] * k)

    def integral(self, c0):
        """Jet of the antiderivative with value ``c0``, one order higher."""
        k = np.arange(1, len(self.c) + 1)
        return Jet(np.concatenate(([c0], self.c / k)))

    def truncate(self, order):
        return Jet(self.c[: order + 1])

    def _coerce(self, other):
        if isinstance(other, Jet):
            n = min(self.order, other.order)
            return self.c[: n + 1], other.c[: n + 1]
        return self.c, float(other)

    def __add__(self, other):
        a, b = self._coerce(other)
        if np.ndim(b) == 0:
            out = a.copy()
            out[0] += b
            return Jet(out)
        return Jet(a + b)

    __radd__ = __add__

    def __neg__(self):
        return Jet(-self.c)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        a, b = self._coerce(other)
        if np.ndim(b) == 0:
            return Jet(a * b)
        n = len(a)
        return Jet(np.convolve(a, b)[:n])

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, Jet):
            return Jet(self.c / float(other))
        u, v = self._coerce(other)
        if v[0] == 0.0:
            raise ZeroDivisionError("jet division by a jet with zero value")
        y = np.zeros(len(u))
        for k in range(len(u)):
            y[k] = (u[k] - np.dot(v[1 : k + 1], y[k - 1 :: -1][:k])) / v[0]
        return Jet(y)

    def __rtruediv__(self, other):
        return Jet.constant(float(other), self.order) / self

    def __pow__(self, r):
        if isinstance(r, Jet):
            return exp(log(self) * r)
        r = float(r)
        if r == int(r) and r >= 0:
            out = Jet.constant(1.0, self.order)
            for _ in range(int(r)):
                out = out * self
            return out
        x = self.c
        if x[0] <= 0.0:
            raise ValueError("non-integer power of a jet with non-positive value")
        y = np.zeros(len(x))
        y[0] = x[0] ** r
        for k in range(1, len(x)):
            j = np.arange(1, k + 1)
            y[k] = np.sum(((r + 1.0) * j - k) * x[j] * y[k - j]) / (k * x[0])
        return Jet(y)

    def __rpow__(self, base):
        return exp(self * math.log(float(base)))

    def __float__(self):
        return self.value

    def __repr__(self):
        return f"Jet({np.array2string(self.c, precision=6)})"


def _integrate_from_derivative(x, y0, dy):
    """Jet of ``y`` given its value ``y0`` and the jet ``dy`` of ``dy/dx`` composed with x.

    Uses ``y' = g(x) x'``; ``dy`` must be the jet of ``g(x)``.
    """
    prod = dy * x.deriv()
    return prod.integral(y0)


def exp(x):
    if not isinstance(x, Jet):
        return math.exp(x)
    y = np.zeros(len(x.c))
    y[0] = math.exp(x.c[0])
    for k in range(1, len(x.c)):
        j = np.arange(1, k + 1)
        y[k] = np.sum(j * x.c[j] * y[k - j]) / k
    return Jet(y)


def log(x):
    if not isinstance(x, Jet):
        return math.log(x)
    if x.c[0] <= 0.0:
        raise ValueError("log of a jet with non-positive value")
    if x.order == 0:
        return Jet([math.log(x.c[0])])
    return _integrate_from_derivative(x, math.log(x.c[0]), 1.0 / x.truncate(x.order - 1))


def _sincos(x, hyperbolic=False):
    sgn = 1.0 if hyperbolic else -1.0
    n = len(x.c)
    s = np.zeros(n)
    c = np.zeros(n)
    if hyperbolic:
        s[0], c[0] = math.sinh(x.c[0]), math.cosh(x.c[0])
    else:
        s[0], c[0] = math.sin(x.c[0]), math.cos(x.c[0])
    for k in range(1, n):
        j = np.arange(1, k + 1)
        s[k] = np.sum(j * x.c[j] * c[k - j]) / k
        c[k] = sgn * np.sum(j * x.c[j] * s[k - j]) / k
    return Jet(s), Jet(c)


def sin(x):
    return _sincos(x)[0] if isinstance(x, Jet) else math.sin(x)


def cos(x):
    return _sincos(x)[1] if isinstance(x, Jet) else math.cos(x)


def sinh(x):
    return _sincos(x, True)[0] if isinstance(x, Jet) else math.sinh(x)


def cosh(x):
    return _sincos(x, True)[1] if isinstance(x, Jet) else math.cosh(x)


def tan(x):
    return sin(x) / cos(x)


def sqrt(x):
    if not isinstance(x, Jet):
        return math.sqrt(x)
    return x**0.5


def atan(x):
    if not isinstance(x, Jet):
        return math.atan(x)
    if x.order == 0:
        return Jet([math.atan(x.c[0])])
    xl = x.truncate(x.order - 1)
    return _integrate_from_derivative(x, math.atan(x.c[0]), 1.0 / (1.0 + xl * xl))


def asin(x):
    if not isinstance(x, Jet):
        return math.asin(x)
    if x.order == 0:
        return Jet([math.asin(x.c[0])])
    xl = x.truncate(x.order - 1)
    return _integrate_from_derivative(x, math.asin(x.c[0]), (1.0 - xl * xl) ** -0.5)


def value(x):
    return x.value if isinstance(x, Jet) else float(x)


def taylor_derivatives(func, s, order):
    """Derivatives ``[f(s), f'(s), ..., f^(order)(s)]`` of a jet-aware callable."""
    out = func(Jet.variable(s, order))
    if not isinstance(out, Jet):
        out = Jet.constant(float(out), order)
    d = out.derivatives()
    if len(d) < order + 1:
        d = np.concatenate((d, np.zeros(order + 1 - len(d))))
    return d

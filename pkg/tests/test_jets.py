import math

import mpmath
import numpy as np
import pytest

from boostgeo import jets
from boostgeo.expr import ExpressionError, compile_expression
from boostgeo.jets import Jet, taylor_derivatives

# references take the math module to use, so mpmath can differentiate them
CASES = [
    ("sqrt(1 + s*s)", lambda s, m: m.sqrt(1 + s * s)),
    ("atan(s / sqrt(4 - s*s))", lambda s, m: m.atan(s / m.sqrt(4 - s * s))),
    ("2*sin(s) / (1 + s**2)", lambda s, m: 2 * m.sin(s) / (1 + s**2)),
    ("log(s) * exp(s)", lambda s, m: m.log(s) * m.exp(s)),
    ("s**-1.5 + cosh(s) - sinh(s)", lambda s, m: s**-1.5 + m.cosh(s) - m.sinh(s)),
    ("1 + 0.3*sin(s)", lambda s, m: 1 + 0.3 * m.sin(s)),
    ("asin(s/2) + tan(s)", lambda s, m: m.asin(s / 2) + m.tan(s)),
]


def reference_derivatives(ref, s, order):
    """Derivatives by high-precision numerical differentiation."""
    with mpmath.workdps(40):
        return [float(mpmath.diff(lambda x: ref(x, mpmath), mpmath.mpf(s), k)) for k in range(order + 1)]


@pytest.mark.parametrize("text, ref", CASES)
@pytest.mark.parametrize("s", [0.4, 0.7, 1.3])
def test_jet_derivatives_match_finite_differences(text, ref, s):
    d = taylor_derivatives(compile_expression(text), s, 3)
    assert d[0] == pytest.approx(ref(s, math), rel=1e-14)
    np.testing.assert_allclose(d, reference_derivatives(ref, s, 3), rtol=1e-12, atol=1e-12)


def test_polynomial_jet_is_exact():
    d = taylor_derivatives(lambda s: 3 * s**3 - 2 * s + 5, 2.0, 4)
    np.testing.assert_allclose(d, [25, 34, 36, 18, 0], atol=1e-12)


def test_division_and_integral_roundtrip():
    x = Jet.variable(0.5, 5)
    y = jets.exp(x) / (1 + x * x)
    z = (y * (1 + x * x)).derivatives()
    np.testing.assert_allclose(z, [math.exp(0.5)] * 6, rtol=1e-13)
    w = y.deriv().integral(y.value)
    np.testing.assert_allclose(w.c, y.c, rtol=1e-14)


def test_numpy_scalars_defer_to_jets():
    x = Jet.variable(1.0, 2)
    out = np.float64(2.0) * x + np.float64(1.0)
    assert isinstance(out, Jet)
    np.testing.assert_allclose(out.derivatives(), [3, 2, 0])


def test_float_path_matches_math():
    f = compile_expression("sqrt(4 - s*s) + pi*e")
    assert f(1.0) == pytest.approx(math.sqrt(3) + math.pi * math.e)


@pytest.mark.parametrize("bad", ["__import__('os')", "s.real", "foo(s)", "x + 1", "sin(s, s)", "lambda: 1", "1 +"])
def test_expression_whitelist(bad):
    with pytest.raises(ExpressionError):
        compile_expression(bad)

from types import SimpleNamespace

import numpy as np
import pytest

from boostgeo.errors import DomainError, PreconditionError, SamplingError
from boostgeo.families import make_angle_profile
from boostgeo.gauss import (
    GaussSample,
    abd_functions,
    detect_pointwise_one_type,
    gauss_samples,
    laplacian_gauss_closed,
    laplacian_gauss_numeric,
    marginally_trapped_N,
)
from boostgeo.surface import coefficients, frame

from conftest import FAMILY_SPECS, family_curve

NAMES = sorted(FAMILY_SPECS)


@pytest.mark.parametrize("name", NAMES)
def test_closed_laplacian_matches_chart_discretization(name):
    curve = family_curve(name)
    lo, hi = curve.domain
    for t, s in ((0.0, 0.5 * (lo + hi)), (0.9, lo + 0.3 * (hi - lo)), (-1.4, lo + 0.7 * (hi - lo))):
        co = coefficients(curve, s)
        closed = laplacian_gauss_closed(co, frame(curve, t, s))
        num = laplacian_gauss_numeric(curve, t, s, h=1e-3)
        assert np.max(np.abs(num - closed)) <= 1e-4 * np.max(np.abs(closed))


def test_numeric_stencil_must_fit_domain():
    curve = family_curve("theorem1_constant")
    with pytest.raises(DomainError):
        laplacian_gauss_numeric(curve, 0.0, curve.domain[1], h=1e-3)


def test_abd_needs_derivatives():
    co = coefficients(family_curve("theorem1_constant"), 0.0, derivatives=False)
    with pytest.raises(PreconditionError):
        abd_functions(co)


def test_constant_family_abd():
    A, B, D = abd_functions(coefficients(family_curve("theorem1_constant"), 0.3))
    assert (A, B, D) == pytest.approx((3.0, 0.0, 0.0), abs=1e-12)


def test_marginally_trapped_N():
    for s in np.linspace(-0.9, 0.9, 7):
        assert marginally_trapped_N(coefficients(family_curve("theorem4_p1t"), s), 1) == pytest.approx(0.0, abs=1e-12)
    assert abs(marginally_trapped_N(coefficients(family_curve("theorem3_trapped"), 0.5), 1)) > 1e-3
    with pytest.raises(PreconditionError, match="not marginally trapped"):
        marginally_trapped_N(coefficients(family_curve("theorem1_constant"), 0.0), 1)


def test_sampling_errors():
    curve = family_curve("theorem1_constant")
    with pytest.raises(SamplingError, match="at least 8"):
        detect_pointwise_one_type(gauss_samples(curve, [0.0, 1.0], [0.0, 0.5]))
    with pytest.raises(SamplingError, match="distinct"):
        detect_pointwise_one_type(gauss_samples(curve, np.linspace(-1, 1, 9), [0.0]))


def _synthetic(X, Y, svals, tvals):
    return [
        GaussSample(t, s, x, y, None, 0.0, 0.0, 0.0, None, None, SimpleNamespace(a=0.0))
        for x, y, s, t in zip(X, Y, svals, tvals)
    ]


def test_detector_recovers_planted_solution():
    rng = np.random.default_rng(4)
    n = 30
    X = rng.normal(size=(n, 6))
    C = rng.normal(size=6) * 0.3
    f = rng.uniform(1.0, 3.0, n)
    Y = f[:, None] * (X + C)
    samples = _synthetic(X, Y, np.arange(n) % 5, np.arange(n) // 5)
    # A = 0 on every sample, so the frame seed degenerates to C = 0
    rep = detect_pointwise_one_type(samples)
    assert rep.is_p1t and rep.kind == "second"
    np.testing.assert_allclose(rep.C, C, atol=1e-9)
    np.testing.assert_allclose(rep.f, f, rtol=1e-9)


def test_detector_on_numeric_laplacian():
    curve = family_curve("theorem1_constant")
    samples = gauss_samples(curve, np.linspace(-1, 1, 3), np.linspace(-0.5, 0.5, 3), numeric=True)
    rep = detect_pointwise_one_type(samples, tol_fit=1e-4, use="numeric")
    assert rep.is_p1t and rep.kind == "first"
    np.testing.assert_allclose(rep.f, 3.0, rtol=1e-5)
    with pytest.raises(PreconditionError):
        detect_pointwise_one_type(gauss_samples(curve, [-1, 0, 1], [-0.5, 0, 0.5]), use="numeric")


def test_generic_profile_is_rejected():
    curve = make_angle_profile("1 + 0.3*sin(s)", "s", domain=(-1, 1))
    rep = detect_pointwise_one_type(gauss_samples(curve, np.linspace(-1, 1, 9), np.linspace(-1, 1, 9)))
    assert not rep.is_p1t and rep.kind == "none"
    assert rep.residual > 1e-2

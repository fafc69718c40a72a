import numpy as np
import pytest

from boostgeo.families import FamilySpec, build_curve

FAMILY_SPECS = {
    "theorem1_constant": FamilySpec("theorem1_constant", {"a1": 1, "a2": 2, "a3": 0}),
    "theorem1_linear": FamilySpec("theorem1_linear", {"b1": 1, "b2": 1, "b3": 2}, domain=(-0.5, 1.5)),
    "theorem3_trapped": FamilySpec("theorem3_trapped", {"alpha1": "1 + 0.3*sin(s)", "epsilon": 1}),
    "theorem4_p1t": FamilySpec("theorem4_p1t", {"lambda1": 2, "q1": 0, "q0": 1, "epsilon": 1}),
    "extremal": FamilySpec("extremal", {"a1": 4, "a2": 0, "zeta0": 0}),
}

_CACHE = {}


def family_curve(name):
    if name not in _CACHE:
        _CACHE[name] = build_curve(FAMILY_SPECS[name])
    return _CACHE[name]


def fuzz_points(curve, n=50, seed=0, t_range=(-2.0, 2.0), inner=0.8):
    """Random (t, s) with s in the central ``inner`` fraction of the domain."""
    rng = np.random.default_rng(seed)
    lo, hi = curve.domain
    mid, half = 0.5 * (lo + hi), 0.5 * inner * (hi - lo)
    ts = rng.uniform(*t_range, n)
    ss = rng.uniform(mid - half, mid + half, n)
    return list(zip(ts.tolist(), ss.tolist()))


@pytest.fixture(params=sorted(FAMILY_SPECS))
def family(request):
    return request.param, family_curve(request.param), FAMILY_SPECS[request.param]


@pytest.fixture
def constant_curve():
    return family_curve("theorem1_constant")


@pytest.fixture
def linear_curve():
    return family_curve("theorem1_linear")


@pytest.fixture
def theorem4_curve():
    return family_curve("theorem4_p1t")


@pytest.fixture
def extremal_curve():
    return family_curve("extremal")


@pytest.fixture
def trapped_generic_curve():
    return family_curve("theorem3_trapped")

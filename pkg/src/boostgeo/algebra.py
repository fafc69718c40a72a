"""Indefinite linear algebra of Minkowski 4-space and its second exterior power.

Vectors are plain ``numpy`` arrays of shape ``(4,)`` with ``x[0]`` the timelike
coordinate; the metric is ``diag(-1, 1, 1, 1)``.  Bivectors are arrays of shape
``(6,)`` holding Plücker coordinates on the lexicographic basis
``E1^E2, E1^E3, E1^E4, E2^E3, E2^E4, E3^E4``.
"""

from __future__ import annotations

import numpy as np

SIGNATURE = np.array([-1.0, 1.0, 1.0, 1.0])
ETA = np.diag(SIGNATURE)

BIVECTOR_PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
BIVECTOR_LABELS = ("p12", "p13", "p14", "p23", "p24", "p34")
# <Ei^Ej, Ei^Ej> = eps_i * eps_j
BIVECTOR_SIGNATURE = np.array([SIGNATURE[i] * SIGNATURE[j] for i, j in BIVECTOR_PAIRS])

_I = np.array([i for i, _ in BIVECTOR_PAIRS])
_J = np.array([j for _, j in BIVECTOR_PAIRS])


def vec4(x1, x2, x3, x4):
    return np.array([x1, x2, x3, x4], dtype=float)


def minkowski_inner(u, v):
    """Return <u, v> = -u1 v1 + u2 v2 + u3 v3 + u4 v4.

    Broadcasts over leading axes.
    """
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    return np.sum(SIGNATURE * u * v, axis=-1)


def minkowski_norm2(v):
    return minkowski_inner(v, v)


def causal_character(v, tol=1e-10):
    """Classify a vector as ``"zero"``, ``"null"``, ``"timelike"`` or ``"spacelike"``."""
    v = np.asarray(v, dtype=float)
    if np.max(np.abs(v)) <= tol:
        return "zero"
    q = minkowski_norm2(v)
    if abs(q) <= tol:
        return "null"
    return "timelike" if q < 0 else "spacelike"


def wedge(u, v):
    """Exterior product of two vectors: ``p_ij = u_i v_j - u_j v_i`` for ``i < j``."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    return u[..., _I] * v[..., _J] - u[..., _J] * v[..., _I]


def bivector_inner(P, Q):
    """Induced inner product on bivectors, ``sum eps_i eps_j p_ij q_ij``.

    For decomposable arguments this is the Gram determinant
    ``det [[<u,w>, <u,z>], [<v,w>, <v,z>]]`` of ``P = u^v`` and ``Q = w^z``.
    """
    P = np.asarray(P, dtype=float)
    Q = np.asarray(Q, dtype=float)
    return np.sum(BIVECTOR_SIGNATURE * P * Q, axis=-1)


def gram_determinant(u, v, w, z):
    """``det(<u_l, w_k>)`` for the pairs ``(u, v)`` and ``(w, z)``."""
    return minkowski_inner(u, w) * minkowski_inner(v, z) - minkowski_inner(u, z) * minkowski_inner(v, w)


def boost_matrix(t):
    """Hyperbolic rotation in the (x1, x2) plane by rapidity ``t``."""
    ch, sh = np.cosh(t), np.sinh(t)
    return np.array(
        [
            [ch, sh, 0.0, 0.0],
            [sh, ch, 0.0, 0.0],
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
        ]
    )


def frame_components(P, basis):
    """Coefficients of ``P`` on an orthonormal bivector basis.

    ``basis`` is a sequence of six decomposable unit bivectors ``e_i ^ e_j``;
    each coefficient is ``<P, B> / <B, B>``.
    """
    basis = np.asarray(basis, dtype=float)
    return np.array([bivector_inner(P, B) / bivector_inner(B, B) for B in basis])

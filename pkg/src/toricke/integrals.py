"""Closed-form exponential moments over a triangulated polytope.

For a simplex with vertices ``v_0..v_n`` and nodes ``z_i = a . v_i``,

    int_simplex exp(a . x) dx = n! vol(simplex) * exp[z_0, ..., z_n],

where ``exp[...]`` is the divided difference of ``exp``. Derivatives in
``a`` are divided differences with repeated nodes, all evaluated with the
Opitz bidiagonal-matrix trick.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from .polytope import FanoPolytope, bounding_box

EXP_LIMIT = 700.0
_EPS = np.finfo(float).eps


class ExponentRangeError(OverflowError):
    """An exponent ``a . v`` at some vertex exceeds the float-safe range."""


@dataclass(frozen=True)
class ExpMoments:
    value: float
    gradient: np.ndarray
    hessian: np.ndarray
    est_rel_error: float


def divided_difference_exp(nodes) -> float:
    """Divided difference of ``exp`` on (possibly repeated) nodes.

    Top-right entry of ``expm`` of the bidiagonal matrix with the nodes on
    the diagonal and ones above it. Nodes are shifted by their mean first,
    which only rescales the result by ``exp(mean)``.
    """
    z = np.asarray(nodes, dtype=float)
    if z.size == 1:
        return math.exp(z[0])
    shift = z.mean()
    m = np.diag(z - shift) + np.diag(np.ones(z.size - 1), 1)
    return float(expm(m)[0, -1]) * math.exp(shift)


def _simplex_data(P: FanoPolytope):
    """Per simplex: float vertex array and the ``n! vol`` weight."""
    fact = math.factorial(P.dim)
    out = []
    for s in P.triangulation:
        out.append((np.array([[float(c) for c in v] for v in s.vertices]), float(fact * s.volume)))
    return out


def _nodes(P: FanoPolytope, a) -> tuple[np.ndarray, list]:
    a = np.asarray(a, dtype=float)
    if a.shape != (P.dim,):
        raise ValueError(f"vector of shape {a.shape} for a {P.dim}-dimensional polytope")
    if not np.all(np.isfinite(a)):
        raise ValueError("vector has non-finite entries")
    data = _simplex_data(P)
    for verts, _ in data:
        z = verts @ a
        if np.max(np.abs(z)) > EXP_LIMIT:
            raise ExponentRangeError(
                f"|a.v| = {np.max(np.abs(z)):.3g} exceeds {EXP_LIMIT}; rescale a"
            )
    return a, data


def integral_exp(P: FanoPolytope, a) -> float:
    """``F(a) = int_P exp(a . x) dx``."""
    a, data = _nodes(P, a)
    return float(sum(w * divided_difference_exp(v @ a) for v, w in data))


def exp_moments(P: FanoPolytope, a) -> ExpMoments:
    """``F(a)``, its gradient ``int x e^{a.x}`` and Hessian ``int x x^T e^{a.x}``."""
    a, data = _nodes(P, a)
    n = P.dim
    value = 0.0
    grad = np.zeros(n)
    hess = np.zeros((n, n))
    for verts, w in data:
        z = verts @ a
        k = len(z)
        value += w * divided_difference_exp(z)
        # d/dz_j exp[z] = exp[z, z_j]
        d1 = np.array([divided_difference_exp(np.append(z, z[j])) for j in range(k)])
        # d2/dz_j dz_l exp[z] = exp[z, z_j, z_l] (times 2 when j == l)
        d2 = np.empty((k, k))
        for j in range(k):
            for l in range(j, k):
                dd = divided_difference_exp(np.append(z, (z[j], z[l])))
                d2[j, l] = d2[l, j] = dd * (2.0 if j == l else 1.0)
        grad += w * (verts.T @ d1)
        hess += w * (verts.T @ d2 @ verts)
    hess = 0.5 * (hess + hess.T)
    # every term is positive, so the sum adds no cancellation error
    est = float(16 * len(data) * _EPS)
    return ExpMoments(value, grad, hess, est)


def mc_integral_exp(P: FanoPolytope, a, samples: int, seed: int | None = None,
                    chunk: int = 200_000) -> tuple[float, float]:
    """Rejection-sampling estimate of ``F(a)`` over the vertex bounding box.

    Returns ``(estimate, standard_error)``; deterministic for a given seed.
    """
    est, err = mc_exp_moments(P, a, samples, seed, chunk=chunk, order=0)
    return est[0], err[0]


def mc_exp_moments(P: FanoPolytope, a, samples: int, seed: int | None = None,
                   chunk: int = 200_000, order: int = 1):
    """Monte Carlo estimates of ``F`` and (``order >= 1``) the gradient moments.

    Returns two flat arrays ``(estimates, stderrs)`` holding ``F`` followed by
    the ``n`` components of ``int x e^{a.x} dx``.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    a = np.asarray(a, dtype=float)
    lo, hi = (np.array([float(c) for c in b]) for b in bounding_box(P))
    box = float(np.prod(hi - lo))
    U = P.normals_array().astype(float)
    rng = np.random.default_rng(seed)
    nq = 1 + (P.dim if order >= 1 else 0)
    s1 = np.zeros(nq)
    s2 = np.zeros(nq)
    done = 0
    while done < samples:
        m = min(chunk, samples - done)
        x = lo + (hi - lo) * rng.random((m, P.dim))
        inside = np.all(x @ U.T + 1.0 >= 0.0, axis=1)
        f = np.where(inside, np.exp(x @ a), 0.0)
        q = f[:, None] if order == 0 else np.column_stack([f, f[:, None] * x])
        s1 += q.sum(axis=0)
        s2 += (q * q).sum(axis=0)
        done += m
    mean = s1 / samples
    var = np.maximum(s2 / samples - mean**2, 0.0)
    stderr = box * np.sqrt(var / max(samples - 1, 1))
    return box * mean, stderr

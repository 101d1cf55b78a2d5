"""Lattice-point counts and torus weights on dilates ``kP``.

The degree-``k`` sections of the anticanonical ring correspond to
``kP ∩ Z^n``, and a toric field ``c`` acts on the section ``m`` with weight
``c . m``. This module tabulates

* ``dim R_k = #(kP ∩ Z^n)``,
* ``w_k = sum of c . m`` over those points,
* ``w'_k = w_k - w_{k-1} - mu_max dim R_{k-1}``, the weight on the quotient
  by the top-weight degree-one section,

and fits their large-``k`` behaviour against the polytope integrals.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce

import numpy as np

from .polytope import FanoPolytope, barycenter, bounding_box, dot, volume

MAX_AXIS_POINTS = 10_000
MAX_DIM = 4


def _rational_vector(c, dim: int) -> tuple[Fraction, ...]:
    if len(c) != dim:
        raise ValueError(f"vector of length {len(c)} for a {dim}-dimensional polytope")
    out = []
    for x in c:
        if isinstance(x, float):
            raise TypeError("weights need a rational vector; pass ints, Fractions or strings")
        out.append(Fraction(x))
    return tuple(out)


def _axes(P: FanoPolytope, k: int) -> list[np.ndarray]:
    if P.dim > MAX_DIM:
        raise ValueError(f"lattice enumeration supports dim <= {MAX_DIM}")
    lo, hi = bounding_box(P)
    axes = []
    for a, b in zip(lo, hi):
        start, stop = math.floor(k * a), math.ceil(k * b)
        if stop - start + 1 > MAX_AXIS_POINTS:
            raise ValueError(f"k={k} needs more than {MAX_AXIS_POINTS} points per axis")
        axes.append(np.arange(start, stop + 1, dtype=np.int64))
    return axes


def lattice_points(P: FanoPolytope, k: int) -> np.ndarray:
    """Integer points of ``kP`` as an ``(N, n)`` array."""
    if k < 0:
        raise ValueError("k must be >= 0")
    axes = _axes(P, k)
    U = P.normals_array()
    chunks = []
    # scan the box one leading-coordinate slab at a time
    for x0 in axes[0]:
        grids = np.meshgrid(*([np.array([x0])] + axes[1:]), indexing="ij")
        pts = np.stack([g.ravel() for g in grids], axis=1)
        keep = np.all(pts @ U.T + k >= 0, axis=1)
        chunks.append(pts[keep])
    return np.concatenate(chunks) if chunks else np.empty((0, P.dim), dtype=np.int64)


def _count_and_sum(P: FanoPolytope, k: int) -> tuple[int, tuple[int, ...]]:
    pts = lattice_points(P, k)
    return len(pts), tuple(int(s) for s in pts.sum(axis=0, dtype=np.int64))


def lattice_count(P: FanoPolytope, k: int) -> int:
    return len(lattice_points(P, k))


def weight_sum(P: FanoPolytope, c, k: int) -> Fraction:
    """Exact ``sum_{m in kP ∩ Z^n} c . m``."""
    c = _rational_vector(c, P.dim)
    _, s = _count_and_sum(P, k)
    return dot(c, s)


def mu_max(P: FanoPolytope, c) -> Fraction:
    """Largest weight ``c . m`` over the lattice points of ``P`` itself."""
    c = _rational_vector(c, P.dim)
    return max(dot(c, tuple(int(x) for x in m)) for m in lattice_points(P, 1))


@dataclass(frozen=True)
class WeightSeries:
    k_max: int
    c: tuple[Fraction, ...]
    dims: tuple[int, ...]
    weights: tuple[Fraction, ...]
    mu_max: Fraction
    boundary_weights: tuple[Fraction | None, ...]

    def w_prime(self, k: int) -> Fraction:
        if k < 1:
            raise ValueError("w'_k is defined for k >= 1")
        return self.boundary_weights[k]


def boundary_weight_series(P: FanoPolytope, c, k_max: int) -> WeightSeries:
    if k_max < 2:
        raise ValueError("k_max must be >= 2")
    c = _rational_vector(c, P.dim)
    dims, weights = [], []
    for k in range(k_max + 1):
        n_k, s_k = _count_and_sum(P, k)
        dims.append(n_k)
        weights.append(dot(c, s_k))
    mu = mu_max(P, c)
    bw: list[Fraction | None] = [None]
    for k in range(1, k_max + 1):
        bw.append(weights[k] - weights[k - 1] - mu * dims[k - 1])
    return WeightSeries(k_max, c, tuple(dims), tuple(weights), mu, tuple(bw))


@dataclass(frozen=True)
class FitReport:
    """Least-squares leading coefficient vs. an exact target."""

    leading: float
    subleading: float
    target: Fraction
    rel_gap: float
    k_range: tuple[int, int]
    degree: int

    @property
    def gap(self) -> float:
        return abs(self.leading - float(self.target))


def _fit(ks, values, degree: int, target: Fraction) -> FitReport:
    ks = np.asarray(ks, dtype=float)
    y = np.array([float(v) for v in values])
    A = np.column_stack([ks**degree, ks ** (degree - 1)])
    # scale columns so the normal equations stay well conditioned
    scale = np.abs(A).max(axis=0)
    coef = np.linalg.lstsq(A / scale, y, rcond=None)[0] / scale
    lead, sub = float(coef[0]), float(coef[1])
    if not np.any(y):
        lead, sub = 0.0, 0.0
    t = float(target)
    gap = abs(lead - t)
    rel = gap / abs(t) if t != 0 else gap
    return FitReport(lead, sub, target, rel, (int(ks[0]), int(ks[-1])), degree)


def _upper_half(k_max: int) -> list[int]:
    return list(range(max(1, k_max // 2), k_max + 1))


def first_moment(P: FanoPolytope, c) -> Fraction:
    """Exact ``int_P c . x dx = Vol(P) c . P_C``."""
    return volume(P) * dot(c, barycenter(P))


def inttheta_target(P: FanoPolytope, c, mu: Fraction | None = None) -> Fraction:
    """Limit of ``w'_k / k^n``: ``(n+1) int_P c.x dx - mu_max Vol(P)``."""
    c = _rational_vector(c, P.dim)
    mu = mu_max(P, c) if mu is None else mu
    return (P.dim + 1) * first_moment(P, c) - mu * volume(P)


def verify_inttheta_asymptotics(P: FanoPolytope, c, k_max: int,
                                series: WeightSeries | None = None) -> FitReport:
    """Fit ``w'_k = A k^n + B k^{n-1}`` on ``[k_max/2, k_max]`` against the target."""
    if k_max < 10:
        warnings.warn(f"k_max={k_max} is too small for a meaningful asymptotic fit",
                      stacklevel=2)
    series = series or boundary_weight_series(P, c, max(k_max, 2))
    ks = _upper_half(k_max)
    target = inttheta_target(P, series.c, series.mu_max)
    return _fit(ks, [series.boundary_weights[k] for k in ks], P.dim, target)


@dataclass(frozen=True)
class RiemannRochReport:
    dims: FitReport
    weights: FitReport | None


def verify_rr_asymptotics(P: FanoPolytope, k_max: int, c=None,
                          series: WeightSeries | None = None) -> RiemannRochReport:
    """Leading coefficients of ``dim R_k`` (target ``Vol P``) and ``w_k`` (target ``int_P c.x``)."""
    if k_max < 10:
        warnings.warn(f"k_max={k_max} is too small for a meaningful asymptotic fit",
                      stacklevel=2)
    zero = tuple(0 for _ in range(P.dim))
    series = series or boundary_weight_series(P, zero if c is None else c, max(k_max, 2))
    ks = _upper_half(k_max)
    dims = _fit(ks, [series.dims[k] for k in ks], P.dim, volume(P))
    weights = None
    if c is not None:
        weights = _fit(ks, [series.weights[k] for k in ks], P.dim + 1,
                       first_moment(P, series.c))
    return RiemannRochReport(dims, weights)


def interpolate_counts(values: list[int], k: int) -> Fraction:
    """Evaluate at ``k`` the polynomial through ``(i, values[i])``, ``i = 0..len-1``."""
    total = Fraction(0)
    pts = range(len(values))
    for i, v in zip(pts, values):
        num = reduce(lambda acc, j: acc * (k - j), (j for j in pts if j != i), Fraction(1))
        den = reduce(lambda acc, j: acc * (i - j), (j for j in pts if j != i), 1)
        total += v * num / den
    return total


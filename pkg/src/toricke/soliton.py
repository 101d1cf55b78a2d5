"""Soliton vector field and modified Futaki invariants of a toric Fano.

The soliton vector is the minimizer of ``F(a) = int_P exp(a . x) dx``; at the
minimizer ``int_P x exp(a . x) dx = 0``, i.e. every toric modified Futaki
invariant vanishes.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational

import numpy as np
from scipy.linalg import LinAlgError, cho_factor, cho_solve

from .integrals import exp_moments
from .polytope import FanoPolytope, Vector, barycenter, dot, volume

log = logging.getLogger(__name__)

MAX_ITER = 200
ARMIJO_SLOPE = 1e-4
BACKTRACK = 0.5
COND_LIMIT = 1e12


@dataclass(frozen=True)
class SolitonResult:
    a_star: np.ndarray
    grad_norm: float
    iterations: int
    hessian_condition: float
    converged: bool = True
    gradient_fallback: bool = False
    decrements: tuple[float, ...] = field(default=(), repr=False)


class SolitonConvergenceError(RuntimeError):
    def __init__(self, message: str, best: SolitonResult):
        super().__init__(message)
        self.best = best


def solve_soliton(P: FanoPolytope, tol: float = 1e-10, max_iter: int = MAX_ITER) -> SolitonResult:
    """Damped Newton for ``min_a F(a)`` started at ``a = 0``.

    Stops when ``|grad F| / F <= tol``. The Newton decrement reported in
    ``decrements`` is the scale-free ``sqrt(g^T H^{-1} g / F)``.
    """
    a = np.zeros(P.dim)
    m = exp_moments(P, a)
    decrements: list[float] = []
    fallback = False
    cond = float(np.linalg.cond(m.hessian))
    for it in range(max_iter + 1):
        rel = float(np.linalg.norm(m.gradient) / m.value)
        if rel <= tol:
            return SolitonResult(a, rel, it, cond, True, fallback, tuple(decrements))
        if it == max_iter:
            break
        g, H = m.gradient, m.hessian
        cond = float(np.linalg.cond(H))
        try:
            if cond > COND_LIMIT:
                raise LinAlgError("ill-conditioned Hessian")
            step = -cho_solve(cho_factor(H), g)
        except LinAlgError:
            fallback = True
            step = -g / np.linalg.norm(H, 2)
        slope = float(g @ step)
        decrements.append(float(np.sqrt(max(-slope, 0.0) / m.value)))
        alpha = 1.0
        while True:
            trial = a + alpha * step
            mt = exp_moments(P, trial)
            if mt.value <= m.value + ARMIJO_SLOPE * alpha * slope:
                break
            alpha *= BACKTRACK
            if alpha < 1e-16:
                # no decrease representable in floating point: a is as good as it gets
                best = SolitonResult(a, rel, it, cond, False, fallback, tuple(decrements))
                raise SolitonConvergenceError(
                    f"line search stalled at |grad F|/F = {rel:.3g} (tol {tol:g})", best
                )
        log.debug("iter %d alpha %g decrement %g rel %g", it, alpha, decrements[-1], rel)
        a, m = trial, mt
    best = SolitonResult(a, rel, max_iter, cond, False, fallback, tuple(decrements))
    raise SolitonConvergenceError(
        f"no convergence after {max_iter} iterations, |grad F|/F = {rel:.3g}", best
    )


def _is_zero(a) -> bool:
    return all(x == 0 for x in a)


def modified_futaki(P: FanoPolytope, a, c):
    """Toric modified Futaki invariant ``c . int_P x e^{a.x} dx / Vol(P)``.

    At ``a = 0`` with rational ``c`` the value is the exact rational
    ``c . P_C``.
    """
    if len(c) != P.dim:
        raise ValueError(f"vector of length {len(c)} for a {P.dim}-dimensional polytope")
    if _is_zero(a) and all(isinstance(x, Rational) for x in c):
        return dot(c, barycenter(P))
    m = exp_moments(P, a)
    return float(np.dot(np.asarray(c, dtype=float), m.gradient) / float(volume(P)))


def is_kahler_einstein(P: FanoPolytope) -> tuple[bool, Vector]:
    """KE iff the barycenter is exactly the origin; returns the barycenter too."""
    bc = barycenter(P)
    return all(x == 0 for x in bc), bc


def futaki_basis_values(P: FanoPolytope) -> tuple[Fraction, ...]:
    """``Fut_0(M, e_i) = (P_C)_i`` for each standard basis field."""
    return tuple(barycenter(P))

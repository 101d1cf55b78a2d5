from fractions import Fraction as F

import numpy as np
import pytest
from scipy.integrate import dblquad
from scipy.optimize import bisect

from toricke import catalog
from toricke.integrals import exp_moments
from toricke.polytope import apply_lattice_map
from toricke.soliton import (SolitonConvergenceError, is_kahler_einstein, modified_futaki,
                             solve_soliton)


def blp2_first_moment_on_diagonal(s):
    """``int_{BlP2} x_1 exp(s (x_1 + x_2))`` by adaptive quadrature over the region."""
    val, _ = dblquad(lambda y, x: x * np.exp(s * (x + y)), -1, 2,
                     lambda x: max(-1.0, -1.0 - x), lambda x: 1.0 - x,
                     epsabs=1e-13, epsrel=1e-13)
    return val


def test_blp2_soliton_matches_bisection(blp2):
    res = solve_soliton(blp2, tol=1e-10)
    assert res.grad_norm <= 1e-10
    s_star = bisect(blp2_first_moment_on_diagonal, -2.0, 0.0, xtol=1e-12)
    assert s_star < 0
    np.testing.assert_allclose(res.a_star, [s_star, s_star], atol=1e-9)


@pytest.mark.parametrize("name", ["P2", "P1xP1", "Bl3P2", "P1", "P3", "P1xP1xP1"])
def test_symmetric_polytopes_have_zero_soliton(name):
    res = solve_soliton(catalog.get(name))
    assert np.all(np.abs(res.a_star) <= 1e-12)
    assert res.iterations == 0


@pytest.mark.parametrize("name", catalog.catalog_names())
def test_futaki_vanishes_at_soliton(name):
    P = catalog.get(name)
    tol = 1e-10
    res = solve_soliton(P, tol)
    for i in range(P.dim):
        e = [0] * P.dim
        e[i] = 1
        assert abs(modified_futaki(P, res.a_star, e)) <= 10 * tol


@pytest.mark.parametrize("name", catalog.catalog_names())
def test_newton_decrement_non_increasing(name):
    res = solve_soliton(catalog.get(name))
    d = res.decrements
    assert all(b <= a for a, b in zip(d[1:], d[2:]))


def test_deterministic(blp2):
    r1 = solve_soliton(blp2)
    r2 = solve_soliton(blp2)
    assert r1.a_star.tobytes() == r2.a_star.tobytes()
    assert r1.decrements == r2.decrements


def test_equivariance_swap(blp2):
    # F_{sigma P}(a) = F_P(sigma^T a), so a*(sigma P) = sigma^{-T} a*(P)
    sigma = np.array([[0, 1], [1, 0]])
    Q = apply_lattice_map(blp2, sigma)
    a = solve_soliton(blp2).a_star
    b = solve_soliton(Q).a_star
    np.testing.assert_allclose(b, np.linalg.inv(sigma).T @ a, atol=1e-12)
    assert a[0] == pytest.approx(a[1], abs=1e-12)


def test_equivariance_shear(blp2):
    sigma = np.array([[1, 1], [0, 1]])
    Q = apply_lattice_map(blp2, sigma)
    a = solve_soliton(blp2).a_star
    b = solve_soliton(Q).a_star
    np.testing.assert_allclose(b, np.linalg.inv(sigma).T @ a, atol=1e-9)


def test_non_convergence_reports_best_iterate(blp2):
    with pytest.raises(SolitonConvergenceError) as info:
        solve_soliton(blp2, tol=1e-10, max_iter=1)
    best = info.value.best
    assert not best.converged
    assert best.grad_norm > 1e-10
    assert np.all(np.isfinite(best.a_star))


# ---------------------------------------------------------------------------
# modified Futaki invariant


def test_modified_futaki_examples(p2, blp2):
    assert modified_futaki(p2, [0, 0], [3, -7]) == 0
    assert modified_futaki(blp2, [0, 0], [1, 1]) == F(1, 6)
    assert modified_futaki(blp2, [0.0, 0.0], [1.0, 1.0]) == pytest.approx(1 / 6, rel=1e-14)


def test_modified_futaki_linear_in_c(blp2):
    a = [0.3, -0.2]
    c1, c2 = np.array([1.0, 2.0]), np.array([-0.5, 0.7])
    lhs = modified_futaki(blp2, a, 2 * c1 - 3 * c2)
    rhs = 2 * modified_futaki(blp2, a, c1) - 3 * modified_futaki(blp2, a, c2)
    assert lhs == pytest.approx(rhs, rel=1e-13)


def test_modified_futaki_is_normalized_first_moment(blp2):
    a = np.array([0.4, 0.1])
    m = exp_moments(blp2, a)
    assert modified_futaki(blp2, a, [1.0, 0.0]) == pytest.approx(m.gradient[0] / 4, rel=1e-14)


# ---------------------------------------------------------------------------
# KE decision


@pytest.mark.parametrize("name, ke", [("P2", True), ("BlP2", False), ("P1xP1", True),
                                      ("Bl2P2", False), ("Bl3P2", True), ("BlP3", False)])
def test_is_kahler_einstein(name, ke):
    result, bc = is_kahler_einstein(catalog.get(name))
    assert result is ke
    assert all(x == 0 for x in bc) is ke


def test_ke_certificate(blp2):
    assert is_kahler_einstein(blp2) == (False, (F(1, 12), F(1, 12)))

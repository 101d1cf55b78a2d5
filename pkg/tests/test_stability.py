from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from toricke import catalog
from toricke.polytope import FanoPolytope, apply_lattice_map, barycenter, dot, support_max
from toricke.soliton import modified_futaki
from toricke.stability import (claim_inequality_check, claim_margin, critical_functional_value,
                               destabilizer, greatest_ricci_lower_bound, twisted_futaki)


def ray_exit_oracle(P):
    """Independent ray trace: largest s with -s P_C in P, found by bisection in exact rationals."""
    bc = barycenter(P)
    lo, hi = F(0), F(1)
    while P.contains(tuple(-hi * x for x in bc)):
        hi *= 2
    for _ in range(200):
        mid = (lo + hi) / 2
        if P.contains(tuple(-mid * x for x in bc)):
            lo = mid
        else:
            hi = mid
    return lo


def test_blp2_report(blp2):
    rep = greatest_ricci_lower_bound(blp2)
    assert rep.R == F(6, 7)
    assert blp2.facets[rep.critical_facet] == (1, 1)
    assert rep.Q == (F(-1, 2), F(-1, 2))
    assert rep.destabilizer == (-1, -1)
    assert blp2.facet_value(rep.critical_facet, rep.Q) == 0
    assert critical_functional_value(rep) == F(7, 6)


@pytest.mark.parametrize("name", ["P2", "P1xP1", "Bl3P2", "P3", "P1"])
def test_ke_report(name):
    rep = greatest_ricci_lower_bound(catalog.get(name))
    assert rep.R == 1
    assert rep.critical_facet is None and rep.destabilizer is None and rep.Q is None
    assert rep.is_kahler_einstein


@pytest.mark.parametrize("name", ["BlP2", "Bl2P2", "BlP3"])
def test_R_matches_ray_trace_and_distance_ratio(name):
    P = catalog.get(name)
    rep = greatest_ricci_lower_bound(P)
    s = ray_exit_oracle(P)
    s_exact = rep.R / (1 - rep.R)
    assert abs(s - s_exact) < F(1, 10**50)
    # R = |QO| / |QP_C| as Euclidean lengths
    Q = np.array([float(x) for x in rep.Q])
    pc = np.array([float(x) for x in rep.barycenter])
    assert np.linalg.norm(Q) / np.linalg.norm(Q - pc) == pytest.approx(float(rep.R), rel=1e-14)
    # Q lies on the critical facet and on the ray
    assert P.facet_value(rep.critical_facet, rep.Q) == 0
    assert P.contains(rep.Q)


@pytest.mark.parametrize("name", catalog.catalog_names())
def test_critical_functional_at_least_one(name):
    rep = greatest_ricci_lower_bound(catalog.get(name))
    assert critical_functional_value(rep) >= 1
    assert 0 < rep.R <= 1


def test_tie_reports_lowest_index():
    # reflexive triangle (a singular weighted projective plane) whose barycenter ray
    # leaves through the vertex (1, -1)
    P = FanoPolytope(2, [[-2, -1], [0, 1], [1, 0]])
    rep = greatest_ricci_lower_bound(P)
    assert rep.tied_facets == (0, 1)
    assert rep.critical_facet == 0
    assert rep.Q == (1, -1)
    assert rep.R == F(3, 4)
    for j in rep.tied_facets:
        c = tuple(-x for x in P.facets[j])
        assert twisted_futaki(P, F(4, 5), c) < 0


# ---------------------------------------------------------------------------
# twisted Futaki


def test_twisted_futaki_blp2_line(blp2):
    c = (-1, -1)
    for t in [F(0), F(1, 3), F(6, 7), F(9, 10), F(1)]:
        assert twisted_futaki(blp2, t, c) == 1 - F(7, 6) * t
    assert twisted_futaki(blp2, F(6, 7), c) == 0
    assert twisted_futaki(blp2, 1, c) == F(-1, 6)
    assert twisted_futaki(blp2, 0.9, c) == pytest.approx(-1 / 20, abs=1e-15)


@given(st.fractions(0, 1), st.lists(st.integers(-9, 9), min_size=2, max_size=2))
def test_twisted_futaki_p2(t, c):
    P = catalog.get("P2")
    val = twisted_futaki(P, t, c)
    assert val == (1 - t) * support_max(P, c)
    if any(c) and t < 1:
        assert val > 0


@pytest.mark.parametrize("name", catalog.catalog_names())
def test_twisted_futaki_zero_vector(name):
    P = catalog.get(name)
    assert twisted_futaki(P, F(1, 2), (0,) * P.dim) == 0


@given(st.sampled_from(["BlP2", "Bl2P2", "BlP3"]), st.fractions(0, 1),
       st.lists(st.fractions(-5, 5, max_denominator=7), min_size=3, max_size=3))
def test_twisted_decomposition_and_t1_limit(name, t, c):
    P = catalog.get(name)
    c = tuple(c[: P.dim])
    bc = barycenter(P)
    assert twisted_futaki(P, t, c) == t * dot(c, bc) + (1 - t) * support_max(P, c)
    assert twisted_futaki(P, 1, c) == modified_futaki(P, (0,) * P.dim, c)


# ---------------------------------------------------------------------------
# destabilizer


def test_destabilizer_examples(blp2, p2):
    assert destabilizer(blp2, 0.9) == (-1, -1)
    assert twisted_futaki(blp2, F(9, 10), destabilizer(blp2, F(9, 10))) == F(-1, 20)
    assert destabilizer(blp2, F(1, 2)) is None
    assert destabilizer(blp2, F(6, 7)) is None
    for t in [F(0), F(1, 2), F(1)]:
        assert destabilizer(p2, t) is None


@pytest.mark.parametrize("name", ["BlP2", "Bl2P2", "BlP3"])
def test_destabilizer_negative_above_threshold(name):
    P = catalog.get(name)
    rep = greatest_ricci_lower_bound(P)
    for eps in [F(1, 10**6), F(1, 1000), F(1, 20)]:
        t = rep.R + eps
        if t > 1:
            continue
        c = destabilizer(P, t, rep)
        assert support_max(P, c) == 1
        assert twisted_futaki(P, t, c) == 1 - t / rep.R < 0


# ---------------------------------------------------------------------------
# claim inequality


def test_claim_examples(blp2, p2):
    assert claim_margin(blp2, (-1, -1)) == 0
    assert claim_inequality_check(blp2, (-1, -1))
    assert claim_margin(p2, (1, 0)) == 0
    assert claim_inequality_check(p2, (1, 0))


def test_claim_rejects_zero(blp2):
    with pytest.raises(ValueError):
        claim_margin(blp2, (0, 0))


@given(st.sampled_from(catalog.catalog_names()),
       st.lists(st.integers(-20, 20), min_size=3, max_size=3))
def test_claim_holds_for_rational_directions(name, c):
    P = catalog.get(name)
    c = tuple(c[: P.dim])
    if not any(c):
        return
    assert claim_margin(P, c) >= 0


@pytest.mark.parametrize("name", catalog.catalog_names())
def test_claim_is_scale_invariant(name):
    P = catalog.get(name)
    c = tuple(range(1, P.dim + 1))
    assert claim_margin(P, c) == claim_margin(P, tuple(7 * x for x in c))


# ---------------------------------------------------------------------------
# invariance


@pytest.mark.parametrize("name, sigma", [("BlP2", [[0, 1], [1, 0]]), ("BlP2", [[1, 1], [0, 1]]),
                                         ("Bl2P2", [[2, 1], [1, 1]]),
                                         ("BlP3", [[0, 1, 0], [0, 0, 1], [1, 0, 0]])])
def test_R_invariant_under_lattice_maps(name, sigma):
    P = catalog.get(name)
    assert greatest_ricci_lower_bound(apply_lattice_map(P, sigma)).R == greatest_ricci_lower_bound(P).R


def test_known_values():
    assert greatest_ricci_lower_bound(catalog.get("Bl2P2")).R == F(21, 25)
    assert greatest_ricci_lower_bound(catalog.get("BlP3")).R == F(14, 17)

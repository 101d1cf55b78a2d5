"""Kähler-Einstein and soliton invariants of toric Fano manifolds from their polytopes."""

from .integrals import ExpMoments, ExponentRangeError, exp_moments, integral_exp, mc_integral_exp
from .lattice import (boundary_weight_series, lattice_count, verify_inttheta_asymptotics,
                      verify_rr_asymptotics, weight_sum)
from .polytope import (FanoPolytope, PolytopeError, barycenter, enumerate_vertices,
                       parse_polytope, support_max, triangulate, volume)
from .soliton import (SolitonConvergenceError, SolitonResult, is_kahler_einstein,
                      modified_futaki, solve_soliton)
from .stability import (StabilityReport, claim_inequality_check, destabilizer,
                        greatest_ricci_lower_bound, twisted_futaki)

__all__ = [
    "ExpMoments", "ExponentRangeError", "FanoPolytope", "PolytopeError", "SolitonConvergenceError",
    "SolitonResult", "StabilityReport", "barycenter", "boundary_weight_series",
    "claim_inequality_check", "destabilizer", "enumerate_vertices", "exp_moments",
    "greatest_ricci_lower_bound", "integral_exp", "is_kahler_einstein", "lattice_count",
    "mc_integral_exp", "modified_futaki", "parse_polytope", "solve_soliton", "support_max",
    "triangulate", "twisted_futaki", "verify_inttheta_asymptotics", "verify_rr_asymptotics",
    "volume", "weight_sum",
]

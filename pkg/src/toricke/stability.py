"""Greatest Ricci lower bound ``R(M)`` and twisted Futaki invariants.

``R(M) = |QO| / |QP_C|`` where ``Q`` is the point where the ray ``-s P_C``
leaves ``P``. If ``l`` is the facet functional vanishing at ``Q`` then
``R(M) = 1 / l(P_C)``, and ``c = -u`` for that facet is a destabilizing
toric vector field for every ``t > R(M)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from .polytope import FanoPolytope, Vector, barycenter, dot, support_max


@dataclass(frozen=True)
class StabilityReport:
    R: Fraction
    barycenter: Vector
    critical_facet: int | None = None
    destabilizer: tuple[int, ...] | None = None
    Q: Vector | None = None
    tied_facets: tuple[int, ...] = ()

    @property
    def is_kahler_einstein(self) -> bool:
        return self.critical_facet is None


def greatest_ricci_lower_bound(P: FanoPolytope) -> StabilityReport:
    bc = barycenter(P)
    if all(x == 0 for x in bc):
        return StabilityReport(Fraction(1), bc)
    # exit parameter of -s P_C through facet j: u_j . (-s P_C) + 1 = 0
    exits = {}
    for j, u in enumerate(P.facets):
        up = dot(u, bc)
        if up > 0:
            exits[j] = 1 / up
    s = min(exits.values())
    tied = tuple(j for j, sj in exits.items() if sj == s)
    j = tied[0]
    Q = tuple(-s * x for x in bc)
    return StabilityReport(
        R=s / (1 + s),
        barycenter=bc,
        critical_facet=j,
        destabilizer=tuple(-x for x in P.facets[j]),
        Q=Q,
        tied_facets=tied,
    )


def _exact(x):
    return x if isinstance(x, Rational) else float(x)


def twisted_futaki(P: FanoPolytope, t, c):
    """``t c . P_C + (1 - t) max_P c . x``.

    Exact when ``t`` and ``c`` are rational; floats otherwise.
    """
    if len(c) != P.dim:
        raise ValueError(f"vector of length {len(c)} for a {P.dim}-dimensional polytope")
    t = _exact(t)
    c = tuple(_exact(x) for x in c)
    bc = barycenter(P)
    if not (isinstance(t, Rational) and all(isinstance(x, Rational) for x in c)):
        c = tuple(float(x) for x in c)
        bc = tuple(float(x) for x in bc)
    return t * dot(c, bc) + (1 - t) * support_max(P, c)


def destabilizer(P: FanoPolytope, t, report: StabilityReport | None = None):
    """Toric field with negative twisted Futaki at ``t``, or ``None`` if ``t <= R``."""
    report = report or greatest_ricci_lower_bound(P)
    if t <= report.R:
        return None
    return report.destabilizer


def claim_margin(P: FanoPolytope, c, report: StabilityReport | None = None):
    """``c . P_C / max_P c.x - (1 - l(P_C))`` for the critical facet functional ``l``.

    Nonnegative for every nonzero ``c``; zero along ``c = -u``.
    """
    report = report or greatest_ricci_lower_bound(P)
    c = tuple(_exact(x) for x in c)
    h = support_max(P, c)
    if h == 0:
        raise ValueError("c must be nonzero (max_P c.x vanishes)")
    bc = report.barycenter
    if not all(isinstance(x, Rational) for x in c):
        bc = tuple(float(x) for x in bc)
    # l(P_C) = 1 / R
    return dot(c, bc) / h - (1 - 1 / report.R)


def claim_inequality_check(P: FanoPolytope, c, report: StabilityReport | None = None,
                           atol: float = 1e-12) -> bool:
    margin = claim_margin(P, c, report)
    if isinstance(margin, Rational):
        return margin >= 0
    return margin >= -atol


def critical_functional_value(report: StabilityReport) -> Fraction:
    """``l(P_C)`` for the critical facet (1 in the KE case)."""
    return 1 / report.R

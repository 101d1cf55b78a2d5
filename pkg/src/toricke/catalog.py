"""Built-in toric Fano polytopes.

Facet normals are the rays of the fan of the toric manifold, so each entry
is the anticanonical polytope ``{x : <x, ray> >= -1}``.
"""

from __future__ import annotations

from .polytope import FanoPolytope, PolytopeError

CATALOG: dict[str, dict] = {
    "P1": {"dim": 1, "facets": [[1], [-1]]},
    "P2": {"dim": 2, "facets": [[1, 0], [0, 1], [-1, -1]]},
    "P1xP1": {"dim": 2, "facets": [[1, 0], [0, 1], [-1, 0], [0, -1]]},
    "BlP2": {"dim": 2, "facets": [[1, 0], [0, 1], [-1, -1], [1, 1]]},
    "Bl2P2": {"dim": 2, "facets": [[1, 0], [0, 1], [-1, -1], [1, 1], [-1, 0]]},
    "Bl3P2": {"dim": 2, "facets": [[1, 0], [0, 1], [-1, -1], [1, 1], [-1, 0], [0, -1]]},
    "P3": {"dim": 3, "facets": [[1, 0, 0], [0, 1, 0], [0, 0, 1], [-1, -1, -1]]},
    "P1xP1xP1": {
        "dim": 3,
        "facets": [[1, 0, 0], [-1, 0, 0], [0, 1, 0], [0, -1, 0], [0, 0, 1], [0, 0, -1]],
    },
    "P1xP2": {
        "dim": 3,
        "facets": [[1, 0, 0], [-1, 0, 0], [0, 1, 0], [0, 0, 1], [0, -1, -1]],
    },
    # blow-up of P3 at a torus-fixed point: star subdivision at e1+e2+e3
    "BlP3": {
        "dim": 3,
        "facets": [[1, 0, 0], [0, 1, 0], [0, 0, 1], [-1, -1, -1], [1, 1, 1]],
    },
}

DESCRIPTIONS = {
    "P1": "projective line",
    "P2": "projective plane",
    "P1xP1": "product of two projective lines",
    "BlP2": "blow-up of P2 at one point",
    "Bl2P2": "blow-up of P2 at two points",
    "Bl3P2": "blow-up of P2 at three points (hexagon)",
    "P3": "projective 3-space",
    "P1xP1xP1": "product of three projective lines",
    "P1xP2": "product of P1 and P2",
    "BlP3": "blow-up of P3 at one point",
}


def catalog_names() -> list[str]:
    return list(CATALOG)


def catalog_document(name: str) -> dict:
    try:
        doc = CATALOG[name]
    except KeyError:
        raise PolytopeError(
            f"unknown catalog polytope {name!r}; known: {', '.join(CATALOG)}"
        ) from None
    return {"name": name, "dim": doc["dim"], "facets": [list(u) for u in doc["facets"]]}


def get(name: str) -> FanoPolytope:
    doc = catalog_document(name)
    return FanoPolytope(doc["dim"], doc["facets"], name)


def all_polytopes() -> list[FanoPolytope]:
    return [get(name) for name in CATALOG]

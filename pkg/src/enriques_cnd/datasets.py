"""Embedded curve configurations for ten well-studied Enriques surfaces.

Each dataset records the dual graph of a finite set of smooth rational
curves (edge weight = intersection number, 1 or 2) together with ten
rational curve-coordinate vectors forming a basis of Num(S):

* ``d16``    — the Enriques surface of type D_{1,6} (Hutchinson-Goepel),
               12 curves arranged in a ring of four-cycles.
* ``mlp1``   — 12 curves: four hub curves in a ring, each carrying two
               spoke curves shared with the next hub.
* ``mlp2``   — 12 curves: two double-star components (two hubs over four
               shared tips) linked by two tangent (weight-2) edges.
* ``kondo1`` .. ``kondo7`` — the seven Enriques surfaces with finite
               automorphism group (types I-VII); the curve set is the full
               (finite) set of smooth rational curves on each surface.

Curve indices follow the standard numbering for each surface (identity
relabeling).  Every dataset ships a ``sum_of_curves`` divisor (the sum of
all curves) as a convenient input for Phi evaluation.
"""

from __future__ import annotations

from .errors import InternalInvariantError, ValidationError
from .surface_model import SurfaceData, parse_document


# ---------------------------------------------------------------------------
# Construction helpers (1-based edge lists -> matrix rows)
# ---------------------------------------------------------------------------

def _matrix(n: int, edges1, edges2=()) -> list[list[int]]:
    m = [[-2 if i == j else 0 for j in range(n)] for i in range(n)]
    for weight, edges in ((1, edges1), (2, edges2)):
        for a, b in edges:
            i, j = a - 1, b - 1
            if i == j or m[i][j] != 0:
                raise InternalInvariantError(
                    f"dataset edge ({a},{b}) duplicated or degenerate"
                )
            m[i][j] = m[j][i] = weight
    return m


def _row(n: int, coeffs: dict) -> list:
    """Basis row from a {1-based curve index: rational literal} mapping."""
    out = [0] * n
    for idx, value in coeffs.items():
        out[idx - 1] = value
    return out


def _unit(n: int, idx: int) -> list:
    return _row(n, {idx: 1})


def _half(n: int, indices) -> list:
    return _row(n, {i: "1/2" for i in indices})


# ---------------------------------------------------------------------------
# Raw dataset documents
# ---------------------------------------------------------------------------

def _d16() -> dict:
    n = 12
    edges1 = [
        (1, 11), (1, 12), (1, 3), (1, 4),
        (2, 11), (2, 12), (2, 3), (2, 4),
        (3, 5), (3, 6), (4, 5), (4, 6),
        (5, 7), (5, 8), (6, 7), (6, 8),
        (7, 9), (7, 10), (8, 9), (8, 10),
        (9, 11), (9, 12), (10, 11), (10, 12),
    ]
    basis = [
        _unit(n, 1), _unit(n, 2), _unit(n, 3), _unit(n, 5), _unit(n, 7), _unit(n, 9),
        _half(n, (1, 3, 5, 7, 9, 11)),
        _half(n, (1, 2, 3, 4)),
        _half(n, (3, 4, 5, 6)),
        _half(n, (5, 6, 7, 8)),
    ]
    return {
        "name": "d16",
        "intersection_matrix": _matrix(n, edges1),
        "num_basis": basis,
        "divisors": {"sum_of_curves": [1] * n},
    }


def _mlp1() -> dict:
    n = 12
    edges1 = [
        (1, 2), (1, 3), (1, 11), (1, 12),
        (4, 2), (4, 3), (4, 5), (4, 6),
        (7, 5), (7, 6), (7, 8), (7, 9),
        (10, 8), (10, 9), (10, 11), (10, 12),
    ]
    basis = [
        _unit(n, 1), _unit(n, 2), _unit(n, 3), _unit(n, 4), _unit(n, 5),
        _unit(n, 7), _unit(n, 9),
        _half(n, (2, 3, 5, 6)),
        _half(n, (2, 3, 11, 12)),
        _half(n, (1, 2, 4, 5, 7, 8, 10, 11)),
    ]
    return {
        "name": "mlp1",
        "intersection_matrix": _matrix(n, edges1),
        "num_basis": basis,
        "divisors": {"sum_of_curves": [1] * n},
    }


def _mlp2() -> dict:
    n = 12
    edges1 = [
        (1, 2), (1, 3), (1, 4), (1, 5),
        (6, 2), (6, 3), (6, 4), (6, 5),
        (7, 8), (7, 9), (7, 10), (7, 11),
        (12, 8), (12, 9), (12, 10), (12, 11),
    ]
    edges2 = [(1, 12), (6, 7)]
    basis = [
        _unit(n, 1), _unit(n, 2), _unit(n, 3), _unit(n, 4), _unit(n, 7), _unit(n, 8),
        _half(n, (2, 3, 4, 5)),
        _half(n, (1, 2, 3, 6)),
        _half(n, (7, 8, 9, 12)),
        _row(n, {1: "1/2", 2: "3/4", 3: "1/4", 4: "1/4", 5: "3/4", 8: "1/2", 10: "1/2"}),
    ]
    return {
        "name": "mlp2",
        "intersection_matrix": _matrix(n, edges1, edges2),
        "num_basis": basis,
        "divisors": {"sum_of_curves": [1] * n},
    }


def _kondo1() -> dict:
    n = 12
    edges1 = [
        (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (8, 1),
        (1, 9), (5, 12),
    ]
    edges2 = [(9, 10), (10, 11), (11, 12)]
    basis = [
        _unit(n, 1), _unit(n, 2), _unit(n, 3), _unit(n, 4), _unit(n, 5),
        _unit(n, 6), _unit(n, 7),
        _row(n, {1: 1, 2: "1/2", 4: "1/2", 5: 1, 6: 1, 7: 1, 8: 1, 9: "1/2", 12: "1/2"}),
        _row(n, {1: 1, 2: 1, 3: 1, 4: 1, 5: 1, 6: "1/2", 8: "1/2", 9: "1/2", 12: "1/2"}),
        _row(n, {1: 2, 2: "3/2", 3: 1, 4: "1/2", 6: "1/2", 7: 1, 8: "3/2", 9: 1}),
    ]
    return {
        "name": "kondo1",
        "intersection_matrix": _matrix(n, edges1, edges2),
        "num_basis": basis,
        "divisors": {"sum_of_curves": [1] * n},
    }


def _kondo2() -> dict:
    n = 12
    edges1 = [
        (1, 2), (2, 3), (3, 4), (4, 1),
        (3, 5), (5, 6), (6, 7), (7, 8), (8, 5),
        (7, 9), (9, 10), (10, 11), (11, 12), (12, 9),
        (11, 1),
    ]
    basis = [
        _unit(n, 1), _unit(n, 2), _unit(n, 3), _unit(n, 4), _unit(n, 5),
        _unit(n, 7), _unit(n, 9), _unit(n, 10),
        _row(n, {2: "1/2", 3: 1, 4: "1/2", 5: 1, 6: "1/2", 8: "1/2"}),
        _half(n, (1, 2, 3, 5, 6, 7, 9, 10, 11)),
    ]
    return {
        "name": "kondo2",
        "intersection_matrix": _matrix(n, edges1),
        "num_basis": basis,
        "divisors": {"sum_of_curves": [1] * n},
    }


def _kondo3() -> dict:
    n = 20
    edges1 = [
        (10, 7), (7, 8), (8, 1), (1, 10),
        (1, 9), (1, 2), (9, 3), (2, 3),
        (7, 6), (7, 12), (6, 5), (5, 12),
        (11, 5), (5, 4), (4, 3), (3, 11),
    ]
    edges2 = [
        (10, 14), (10, 17), (8, 18), (8, 13), (13, 17), (14, 18),
        (14, 11), (11, 13), (17, 4), (4, 18),
        (15, 12), (15, 2), (19, 15), (19, 6), (19, 9),
        (20, 16), (16, 12), (16, 9), (20, 6), (20, 2),
    ] + [(a, b) for a in (15, 16, 19, 20) for b in (13, 14, 17, 18)]
    basis = [
        _unit(n, 1), _unit(n, 2), _unit(n, 3), _unit(n, 5), _unit(n, 6),
        _unit(n, 9), _unit(n, 11),
        _half(n, (2, 4, 9, 11)),
        _half(n, (2, 8, 9, 10)),
        _half(n, (1, 2, 3, 5, 7, 8, 11, 12)),
    ]
    return {
        "name": "kondo3",
        "intersection_matrix": _matrix(n, edges1, edges2),
        "num_basis": basis,
        "divisors": {"sum_of_curves": [1] * n},
    }


def _kondo4() -> dict:
    n = 20
    edges1 = [
        (2, 15), (4, 16), (2, 16), (15, 4),
        (4, 3), (3, 2), (2, 1), (1, 4),
        (1, 14), (14, 3), (3, 13), (13, 1),
        (13, 20), (20, 14), (14, 19), (19, 13),
        (19, 16), (16, 20), (20, 15), (15, 19),
        (10, 17), (17, 9), (9, 18), (10, 18),
        (9, 8), (8, 10), (10, 6), (6, 9),
        (6, 7), (7, 8), (8, 5), (5, 6),
        (5, 12), (12, 7), (7, 11), (11, 5),
        (11, 18), (18, 12), (12, 17), (17, 11),
    ]
    edges2 = [
        (2, 10), (4, 9), (15, 5), (16, 7), (19, 17),
        (18, 20), (13, 6), (8, 14), (1, 11), (12, 3),
    ]
    basis = [
        _unit(n, 1), _unit(n, 2), _unit(n, 3), _unit(n, 5), _unit(n, 6),
        _unit(n, 9), _unit(n, 11), _unit(n, 13), _unit(n, 19),
        _half(n, (3, 4, 13, 16, 19)),
    ]
    return {
        "name": "kondo4",
        "intersection_matrix": _matrix(n, edges1, edges2),
        "num_basis": basis,
        "divisors": {"sum_of_curves": [1] * n},
    }


def _kondo5() -> dict:
    n = 20
    edges1 = [
        (1, 2), (2, 3), (3, 9), (9, 8), (8, 7), (7, 5), (5, 6), (6, 1),
        (1, 10), (10, 8), (3, 4), (4, 5),
        (17, 16), (16, 14), (14, 19), (19, 17),
        (16, 15), (15, 14), (17, 15), (15, 19),
        (17, 18), (18, 14), (18, 19), (18, 16),
    ]
    edges2 = [
        (6, 17), (16, 2), (14, 9), (19, 7), (18, 4), (15, 10),
        (18, 15), (16, 19), (17, 14),
        (1, 12), (12, 19), (12, 14),
        (20, 5), (12, 18), (20, 14), (20, 16), (20, 15),
        (11, 8), (11, 18), (11, 16), (11, 17),
        (3, 13), (13, 19), (13, 17), (13, 15),
        (12, 13), (13, 11), (11, 20), (20, 12), (12, 11), (20, 13),
    ]
    basis = [
        _unit(n, 1), _unit(n, 2), _unit(n, 3), _unit(n, 4), _unit(n, 5),
        _unit(n, 7), _unit(n, 9), _unit(n, 17),
        _row(n, {1: 1, 2: "1/2", 4: 1, 5: 2, 6: "3/2", 7: "3/2", 8: 1, 9: "1/2"}),
        _row(n, {1: "1/2", 3: "1/2", 4: 1, 5: "3/2", 6: 1, 7: 1, 8: "1/2"}),
    ]
    return {
        "name": "kondo5",
        "intersection_matrix": _matrix(n, edges1, edges2),
        "num_basis": basis,
        "divisors": {"sum_of_curves": [1] * n},
    }


def _kondo6() -> dict:
    n = 20
    edges1 = [
        (1, 10), (10, 8), (8, 7), (7, 2), (2, 1),
        (6, 5), (5, 4), (4, 3), (3, 9), (9, 6),
        (6, 1), (5, 7), (4, 10), (3, 2), (9, 8),
        (19, 18), (18, 15), (15, 13), (13, 17), (17, 19),
        (16, 19), (19, 12), (12, 13), (13, 11), (11, 18),
        (18, 20), (20, 17), (17, 14), (14, 15), (15, 16),
        (16, 12), (12, 11), (11, 20), (20, 14), (14, 16),
        (16, 17), (16, 13), (12, 15), (12, 18), (11, 19),
        (11, 17), (20, 13), (20, 15), (14, 19), (14, 18),
    ]
    edges2 = [
        (19, 6), (13, 5), (18, 4), (17, 3), (15, 9),
        (10, 16), (12, 2), (11, 8), (20, 1), (14, 7),
    ]
    basis = [
        _unit(n, 1), _unit(n, 2), _unit(n, 3), _unit(n, 4), _unit(n, 5),
        _unit(n, 7), _unit(n, 11), _unit(n, 12), _unit(n, 14), _unit(n, 17),
    ]
    return {
        "name": "kondo6",
        "intersection_matrix": _matrix(n, edges1, edges2),
        "num_basis": basis,
        "divisors": {"sum_of_curves": [1] * n},
    }


def _kondo7() -> dict:
    n = 20
    edges1 = [
        (1, 2), (1, 9), (1, 15), (1, 14),
        (2, 14), (2, 10), (2, 3),
        (3, 13), (3, 4), (3, 10),
        (4, 15), (4, 5), (4, 13),
        (5, 11), (5, 15), (5, 6),
        (6, 7), (6, 14), (6, 11),
        (7, 8), (7, 13), (7, 14),
        (8, 9), (8, 12), (8, 13),
        (9, 12), (9, 15),
        (10, 11), (10, 12), (11, 12),
    ]
    edges2 = [
        (16, 11), (16, 1), (16, 13),
        (20, 8), (20, 2), (20, 5),
        (19, 9), (19, 6), (19, 3),
        (18, 15), (18, 10), (18, 7),
        (17, 4), (17, 14), (17, 12),
    ] + [(a, b) for i, a in enumerate((16, 17, 18, 19, 20))
         for b in (16, 17, 18, 19, 20)[i + 1:]]
    basis = [
        _unit(n, 1), _unit(n, 2), _unit(n, 3), _unit(n, 4), _unit(n, 5),
        _unit(n, 6), _unit(n, 7), _unit(n, 9), _unit(n, 11),
        _half(n, (1, 2, 3, 4, 15)),
    ]
    return {
        "name": "kondo7",
        "intersection_matrix": _matrix(n, edges1, edges2),
        "num_basis": basis,
        "divisors": {"sum_of_curves": [1] * n},
    }


_BUILDERS = {
    "d16": _d16,
    "mlp1": _mlp1,
    "mlp2": _mlp2,
    "kondo1": _kondo1,
    "kondo2": _kondo2,
    "kondo3": _kondo3,
    "kondo4": _kondo4,
    "kondo5": _kondo5,
    "kondo6": _kondo6,
    "kondo7": _kondo7,
}

_DESCRIPTIONS = {
    "d16": "D_{1,6} Enriques surface: 12 curves in a ring of four-cycles",
    "mlp1": "12 curves: four hubs in a ring, two spokes between consecutive hubs",
    "mlp2": "12 curves: two double-star components linked by two tangent edges",
    "kondo1": "Enriques surface with finite automorphism group, type I (12 curves)",
    "kondo2": "Enriques surface with finite automorphism group, type II (12 curves)",
    "kondo3": "Enriques surface with finite automorphism group, type III (20 curves)",
    "kondo4": "Enriques surface with finite automorphism group, type IV (20 curves)",
    "kondo5": "Enriques surface with finite automorphism group, type V (20 curves)",
    "kondo6": "Enriques surface with finite automorphism group, type VI (20 curves)",
    "kondo7": "Enriques surface with finite automorphism group, type VII (20 curves)",
}


def dataset_ids() -> tuple[str, ...]:
    """Identifiers of the embedded datasets, in canonical order."""
    return tuple(_BUILDERS)


def dataset_description(name: str) -> str:
    if name not in _DESCRIPTIONS:
        raise ValidationError(f"unknown dataset: {name!r}")
    return _DESCRIPTIONS[name]


def dataset_document(name: str) -> dict:
    """The raw JSON-style document of an embedded dataset."""
    if name not in _BUILDERS:
        raise ValidationError(f"unknown dataset: {name!r}")
    return _BUILDERS[name]()


def load_dataset(name: str) -> SurfaceData:
    """Load and fully validate an embedded dataset."""
    return parse_document(dataset_document(name))

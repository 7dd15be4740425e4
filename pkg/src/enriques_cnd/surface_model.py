"""Curve configurations on an Enriques surface and rational bases of Num(S).

The input to every computation is a finite set of smooth rational curves
R1..Rn with their intersection matrix (diagonal -2, off-diagonal entries 0,
1 or 2) together with ten rational vectors in curve coordinates that form a
basis of the numerical lattice Num(S) — an even unimodular lattice of rank
10.  This module validates and wraps that data, and reads/writes the JSON
document format used by the command line.

Curve-coordinate vectors live in the free lattice on the curves, which maps
onto Num(S) with a kernel equal to the radical of the intersection matrix;
two coordinate vectors represent the same numerical class exactly when their
difference is annihilated by the matrix (see ``same_numerical_class``).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence, Union

from .errors import ValidationError
from .exact_lattice import (
    Vector,
    as_vector,
    format_rational,
    gram,
    is_integral,
    matrix_apply,
    pairing,
    parse_rational,
    rational_det,
)


# ---------------------------------------------------------------------------
# Curve configurations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CurveConfiguration:
    """A set of (-2)-curves with its integer intersection matrix."""

    labels: tuple[str, ...]
    matrix: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return len(self.labels)

    def index_of(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise ValidationError(f"unknown curve label: {label!r}") from None

    def neighbors(self, i: int, weight: int) -> tuple[int, ...]:
        """Indices j with R_i . R_j equal to the given positive weight."""
        return tuple(j for j, w in enumerate(self.matrix[i]) if j != i and w == weight)


def load_configuration(matrix_rows: Sequence[Sequence[int]],
                       labels: Optional[Sequence[str]] = None) -> CurveConfiguration:
    """Validate an intersection matrix and wrap it as a configuration.

    Requirements: square and symmetric, every diagonal entry -2 (smooth
    rational curves), off-diagonal entries in {0, 1, 2}.
    """
    n = len(matrix_rows)
    rows = []
    for i, raw_row in enumerate(matrix_rows):
        if len(raw_row) != n:
            raise ValidationError(
                f"matrix row {i + 1} has length {len(raw_row)}, expected {n}"
            )
        row = []
        for j, entry in enumerate(raw_row):
            if isinstance(entry, bool) or not isinstance(entry, int):
                raise ValidationError(f"matrix entry at ({i + 1},{j + 1}) is not an integer")
            row.append(entry)
        rows.append(row)
    for i in range(n):
        if rows[i][i] != -2:
            raise ValidationError(f"matrix diagonal at ({i + 1},{i + 1}) must be -2")
        for j in range(n):
            if i != j:
                if rows[i][j] != rows[j][i]:
                    raise ValidationError(f"matrix not symmetric at ({i + 1},{j + 1})")
                if rows[i][j] not in (0, 1, 2):
                    raise ValidationError(
                        f"matrix entry at ({i + 1},{j + 1}) must be 0, 1 or 2"
                    )
    if labels is None:
        labels = tuple(f"R{i + 1}" for i in range(n))
    else:
        labels = tuple(str(label) for label in labels)
        if len(labels) != n:
            raise ValidationError(
                f"{len(labels)} labels given for a matrix of size {n}"
            )
        if len(set(labels)) != n:
            raise ValidationError("curve labels must be distinct")
    return CurveConfiguration(labels=labels, matrix=tuple(tuple(r) for r in rows))


def class_of(multiplicities: Union[Sequence, Mapping[str, int]],
             config: CurveConfiguration) -> Vector:
    """Curve-coordinate vector sum m_i R_i from a list or a label->m map."""
    if isinstance(multiplicities, Mapping):
        vec = [Fraction(0)] * config.size
        for label, mult in multiplicities.items():
            vec[config.index_of(label)] += parse_rational(mult)
        return tuple(vec)
    entries = as_vector(multiplicities)
    if len(entries) != config.size:
        raise ValidationError(
            f"multiplicity vector length {len(entries)} does not match "
            f"{config.size} curves"
        )
    return entries


def same_numerical_class(x: Sequence[Fraction], y: Sequence[Fraction],
                         config: CurveConfiguration) -> bool:
    """Equality in Num(S): difference lies in the radical of the matrix."""
    diff = tuple(Fraction(a) - Fraction(b) for a, b in zip(x, y))
    return all(v == 0 for v in matrix_apply(config.matrix, diff))


# ---------------------------------------------------------------------------
# Rational bases of Num(S)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NumBasis:
    """Ten curve-coordinate vectors forming a basis of Num(S)."""

    config: CurveConfiguration
    vectors: tuple[Vector, ...]

    def pair_with_basis(self, vector: Sequence[Fraction]) -> Vector:
        """Pairings of a curve-coordinate vector against all basis vectors."""
        return tuple(pairing(vector, b, self.config.matrix) for b in self.vectors)


def load_basis(config: CurveConfiguration,
               rows: Sequence[Sequence]) -> NumBasis:
    """Validate ten rational vectors as a basis of Num(S).

    The Gram matrix of the vectors must be integral, even on the diagonal,
    and of determinant +-1 (an even unimodular lattice of rank 10).
    """
    vectors = tuple(as_vector(row) for row in rows)
    if len(vectors) != 10:
        raise ValidationError(f"basis must have 10 vectors, got {len(vectors)}")
    for i, vec in enumerate(vectors):
        if len(vec) != config.size:
            raise ValidationError(
                f"basis vector {i + 1} has length {len(vec)}, expected {config.size}"
            )
    g = gram(vectors, config.matrix)
    for i in range(10):
        for j in range(10):
            if g[i][j].denominator != 1:
                raise ValidationError(f"basis Gram not integral at ({i + 1},{j + 1})")
    for i in range(10):
        if int(g[i][i]) % 2 != 0:
            raise ValidationError("basis Gram not even")
    if abs(rational_det(g)) != 1:
        raise ValidationError("basis does not span a unimodular lattice")
    return NumBasis(config=config, vectors=vectors)


# ---------------------------------------------------------------------------
# Divisors
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Divisor:
    """A named curve-coordinate vector used for Phi evaluation."""

    name: str
    vector: Vector


# ---------------------------------------------------------------------------
# JSON documents
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SurfaceData:
    """A full input document: configuration, basis and optional divisors."""

    name: str
    configuration: CurveConfiguration
    basis: NumBasis
    divisors: tuple[Divisor, ...] = field(default_factory=tuple)

    def divisor(self, name: str) -> Divisor:
        for d in self.divisors:
            if d.name == name:
                return d
        raise ValidationError(f"unknown divisor: {name!r}")


def parse_document(source: Union[str, Mapping]) -> SurfaceData:
    """Parse an input document from JSON text or an already-decoded mapping.

    Schema::

        {
          "name": "...",                      # optional
          "curves": ["R1", ...],              # optional, defaults to R1..Rn
          "intersection_matrix": [[-2, ...]],
          "num_basis": [[...], ... 10 rows],  # entries int or "p/q"
          "divisors": {"name": [...], ...}    # optional
        }
    """
    if isinstance(source, str):
        try:
            raw = json.loads(source)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"invalid JSON document: {exc}") from None
    else:
        raw = source
    if not isinstance(raw, Mapping):
        raise ValidationError("input document must be a JSON object")
    if "intersection_matrix" not in raw:
        raise ValidationError("input document is missing 'intersection_matrix'")
    if "num_basis" not in raw:
        raise ValidationError("input document is missing 'num_basis'")
    labels = raw.get("curves")
    config = load_configuration(raw["intersection_matrix"], labels)
    basis = load_basis(config, raw["num_basis"])
    divisors = []
    for name, entries in dict(raw.get("divisors", {})).items():
        vec = as_vector(entries)
        if len(vec) != config.size:
            raise ValidationError(
                f"divisor {name!r} has length {len(vec)}, expected {config.size}"
            )
        divisors.append(Divisor(name=str(name), vector=vec))
    return SurfaceData(
        name=str(raw.get("name", "surface")),
        configuration=config,
        basis=basis,
        divisors=tuple(divisors),
    )


def serialize_document(data: SurfaceData) -> dict:
    """Inverse of parse_document: a JSON-ready dict with exact rationals."""
    doc: dict = {
        "name": data.name,
        "curves": list(data.configuration.labels),
        "intersection_matrix": [list(row) for row in data.configuration.matrix],
        "num_basis": [[format_rational(x) for x in vec] for vec in data.basis.vectors],
    }
    if data.divisors:
        doc["divisors"] = {
            d.name: [format_rational(x) for x in d.vector] for d in data.divisors
        }
    return doc


def format_class(vector: Sequence[Fraction],
                 config: CurveConfiguration) -> str:
    """Human-readable form of a curve-coordinate vector, e.g. "R1 + 1/2 R3"."""
    terms = []
    for coeff, label in zip(vector, config.labels):
        coeff = Fraction(coeff)
        if coeff == 0:
            continue
        if coeff == 1:
            terms.append(f"+ {label}")
        elif coeff == -1:
            terms.append(f"- {label}")
        elif coeff > 0:
            terms.append(f"+ {format_rational(coeff)} {label}")
        else:
            terms.append(f"- {format_rational(-coeff)} {label}")
    if not terms:
        return "0"
    first = terms[0]
    first = first[2:] if first.startswith("+ ") else "-" + first[2:]
    return " ".join([first] + terms[1:])

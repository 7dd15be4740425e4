"""Exact lattice arithmetic over the rationals.

Everything in this package computes with ``int`` and ``fractions.Fraction``;
floating point is never used.  This module provides the shared primitives:

* rational literal parsing/formatting ("p/q" strings, plain integers),
* bilinear pairings and Gram matrices with respect to an integer
  intersection matrix,
* exact Gaussian elimination (determinant, inverse, linear solve),
* Smith normal form over the integers with transformation matrices,
* discriminant groups L*/L of a nondegenerate integer Gram matrix and
  enumeration of their nonzero isotropic classes.

Vectors are plain tuples of ``Fraction``; matrices are tuples of row tuples.
The Smith normal form is hand-rolled because the transformation matrices
(left/right unimodular factors) are required to produce generator lifts, and
the matrices involved are tiny (rank <= 20).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import prod
from typing import Iterable, NamedTuple, Optional, Sequence

from .errors import InternalInvariantError, ValidationError

Rational = Fraction
Vector = tuple[Fraction, ...]

_RATIONAL_RE = re.compile(r"^-?[0-9]+(/[1-9][0-9]*)?$")


# ---------------------------------------------------------------------------
# Rational literals
# ---------------------------------------------------------------------------

def parse_rational(value) -> Fraction:
    """Parse an exact rational from an int or a "p/q" string.

    Accepted forms: Python ints, and strings matching
    ``-?[0-9]+(/[1-9][0-9]*)?``.  Floats are rejected to keep the arithmetic
    exact end to end.
    """
    if isinstance(value, bool):
        raise ValidationError(f"invalid rational literal: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        if not _RATIONAL_RE.match(value):
            raise ValidationError(f"invalid rational literal: {value!r}")
        if "/" in value:
            num, den = value.split("/")
            return Fraction(int(num), int(den))
        return Fraction(int(value))
    raise ValidationError(f"invalid rational literal: {value!r}")


def format_rational(value: Fraction):
    """Render a rational for JSON output: int when integral, else "p/q"."""
    value = Fraction(value)
    if value.denominator == 1:
        return int(value)
    return f"{value.numerator}/{value.denominator}"


def as_vector(entries: Iterable) -> Vector:
    return tuple(parse_rational(e) for e in entries)


def is_integral(vector: Sequence[Fraction]) -> bool:
    return all(Fraction(x).denominator == 1 for x in vector)


# ---------------------------------------------------------------------------
# Pairings and Gram matrices
# ---------------------------------------------------------------------------

def matrix_apply(matrix: Sequence[Sequence[int]], vector: Sequence[Fraction]) -> Vector:
    """Return matrix . vector exactly."""
    n = len(matrix)
    if len(vector) != n:
        raise ValidationError(
            f"vector length {len(vector)} does not match matrix size {n}"
        )
    return tuple(
        sum((Fraction(row[j]) * vector[j] for j in range(n)), Fraction(0))
        for row in matrix
    )


def pairing(x: Sequence[Fraction], y: Sequence[Fraction],
            matrix: Sequence[Sequence[int]]) -> Fraction:
    """Bilinear pairing x^T . matrix . y, exact."""
    n = len(matrix)
    if len(x) != n or len(y) != n:
        raise ValidationError(
            f"vector length ({len(x)}, {len(y)}) does not match matrix size {n}"
        )
    total = Fraction(0)
    for i, xi in enumerate(x):
        if xi == 0:
            continue
        row = matrix[i]
        acc = Fraction(0)
        for j, yj in enumerate(y):
            if yj != 0 and row[j] != 0:
                acc += Fraction(row[j]) * yj
        total += Fraction(xi) * acc
    return total


def gram(vectors: Sequence[Sequence[Fraction]],
         matrix: Sequence[Sequence[int]]) -> tuple[tuple[Fraction, ...], ...]:
    """Gram matrix of the given vectors with respect to the pairing."""
    images = [matrix_apply(matrix, v) for v in vectors]
    out = []
    for v in vectors:
        row = []
        for img in images:
            row.append(sum((Fraction(a) * b for a, b in zip(v, img)), Fraction(0)))
        out.append(tuple(row))
    return tuple(out)


def add_vectors(*vectors: Sequence[Fraction]) -> Vector:
    n = len(vectors[0])
    return tuple(sum((Fraction(v[i]) for v in vectors), Fraction(0)) for i in range(n))


def scale_vector(scalar, vector: Sequence[Fraction]) -> Vector:
    s = Fraction(scalar)
    return tuple(s * Fraction(x) for x in vector)


def sub_vectors(x: Sequence[Fraction], y: Sequence[Fraction]) -> Vector:
    return tuple(Fraction(a) - Fraction(b) for a, b in zip(x, y))


def zero_vector(n: int) -> Vector:
    return (Fraction(0),) * n


# ---------------------------------------------------------------------------
# Exact Gaussian elimination
# ---------------------------------------------------------------------------

def rational_det(rows: Sequence[Sequence]) -> Fraction:
    """Determinant by fraction-exact Gaussian elimination."""
    n = len(rows)
    a = [[Fraction(x) for x in row] for row in rows]
    if any(len(row) != n for row in a):
        raise ValidationError("determinant requires a square matrix")
    det = Fraction(1)
    for col in range(n):
        pivot_row = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot_row is None:
            return Fraction(0)
        if pivot_row != col:
            a[col], a[pivot_row] = a[pivot_row], a[col]
            det = -det
        pivot = a[col][col]
        det *= pivot
        for r in range(col + 1, n):
            if a[r][col] != 0:
                factor = a[r][col] / pivot
                a[r] = [x - factor * y for x, y in zip(a[r], a[col])]
    return det


def rational_solve(rows: Sequence[Sequence], rhs: Sequence) -> Optional[Vector]:
    """Solve rows . x = rhs exactly; None if the system is inconsistent.

    The matrix may be rectangular; when the solution is underdetermined the
    free variables are set to zero (callers here only use it on full-rank
    square systems and on membership tests where any solution suffices).
    """
    m = len(rows)
    n = len(rows[0]) if m else 0
    a = [[Fraction(x) for x in row] + [Fraction(rhs[i])] for i, row in enumerate(rows)]
    pivots: list[tuple[int, int]] = []
    row = 0
    for col in range(n):
        pivot_row = next((r for r in range(row, m) if a[r][col] != 0), None)
        if pivot_row is None:
            continue
        a[row], a[pivot_row] = a[pivot_row], a[row]
        pivot = a[row][col]
        a[row] = [x / pivot for x in a[row]]
        for r in range(m):
            if r != row and a[r][col] != 0:
                factor = a[r][col]
                a[r] = [x - factor * y for x, y in zip(a[r], a[row])]
        pivots.append((row, col))
        row += 1
        if row == m:
            break
    for r in range(row, m):
        if a[r][n] != 0:
            return None
    solution = [Fraction(0)] * n
    for r, c in pivots:
        solution[c] = a[r][n]
    return tuple(solution)


def rational_inverse(rows: Sequence[Sequence]) -> tuple[tuple[Fraction, ...], ...]:
    """Exact inverse of a square nonsingular matrix."""
    n = len(rows)
    a = [[Fraction(x) for x in row] for row in rows]
    inv = [[Fraction(1) if i == j else Fraction(0) for j in range(n)] for i in range(n)]
    for col in range(n):
        pivot_row = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot_row is None:
            raise ValidationError("matrix is singular")
        a[col], a[pivot_row] = a[pivot_row], a[col]
        inv[col], inv[pivot_row] = inv[pivot_row], inv[col]
        pivot = a[col][col]
        a[col] = [x / pivot for x in a[col]]
        inv[col] = [x / pivot for x in inv[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                factor = a[r][col]
                a[r] = [x - factor * y for x, y in zip(a[r], a[col])]
                inv[r] = [x - factor * y for x, y in zip(inv[r], inv[col])]
    return tuple(tuple(row) for row in inv)


def rational_nullspace(rows: Sequence[Sequence]) -> tuple[Vector, ...]:
    """Basis of the right kernel of a matrix, by exact elimination."""
    m = len(rows)
    n = len(rows[0]) if m else 0
    a = [[Fraction(x) for x in row] for row in rows]
    pivots: list[int] = []
    row = 0
    for col in range(n):
        pivot_row = next((r for r in range(row, m) if a[r][col] != 0), None)
        if pivot_row is None:
            continue
        a[row], a[pivot_row] = a[pivot_row], a[row]
        pivot = a[row][col]
        a[row] = [x / pivot for x in a[row]]
        for r in range(m):
            if r != row and a[r][col] != 0:
                factor = a[r][col]
                a[r] = [x - factor * y for x, y in zip(a[r], a[row])]
        pivots.append(col)
        row += 1
        if row == m:
            break
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        vec = [Fraction(0)] * n
        vec[f] = Fraction(1)
        for r, c in enumerate(pivots):
            vec[c] = -a[r][f]
        basis.append(tuple(vec))
    return tuple(basis)


def integer_combination(vectors: Sequence[Sequence[Fraction]],
                        target: Sequence[Fraction]) -> Optional[tuple[int, ...]]:
    """Express target as an integer combination of the given vectors.

    Returns the coefficient tuple, or None when target is not in the
    integer span.  The vectors must be linearly independent.
    """
    if not vectors:
        return None
    columns = [[Fraction(v[i]) for v in vectors] for i in range(len(vectors[0]))]
    solution = rational_solve(columns, target)
    if solution is None:
        return None
    if not is_integral(solution):
        return None
    return tuple(int(x) for x in solution)


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------

class SmithNormalForm(NamedTuple):
    """U . A . V = D with U, V unimodular and D diagonal, d1 | d2 | ..."""

    left: tuple[tuple[int, ...], ...]
    diagonal: tuple[tuple[int, ...], ...]
    right: tuple[tuple[int, ...], ...]


def _identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def smith_normal_form(matrix: Sequence[Sequence[int]]) -> SmithNormalForm:
    """Smith normal form over the integers with transformation matrices.

    Classic pivot-and-reduce: repeatedly move a minimal nonzero entry to the
    pivot position, clear its row and column, and enforce divisibility of
    later entries.  Row operations accumulate into ``left``, column
    operations into ``right``.
    """
    a = [[int(x) for x in row] for row in matrix]
    k = len(a)
    n = len(a[0]) if k else 0
    if any(len(row) != n for row in a):
        raise ValidationError("smith normal form requires a rectangular matrix")
    u = _identity(k)
    v = _identity(n)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, mult):
        a[dst] = [x + mult * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + mult * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, mult):
        for row in a:
            row[dst] += mult * row[src]
        for row in v:
            row[dst] += mult * row[src]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    t = 0
    while t < min(k, n):
        # Locate a nonzero entry of minimal absolute value in the block.
        pivot = None
        best = None
        for i in range(t, k):
            for j in range(t, n):
                x = a[i][j]
                if x != 0 and (best is None or abs(x) < best):
                    best = abs(x)
                    pivot = (i, j)
        if pivot is None:
            break
        if pivot[0] != t:
            swap_rows(t, pivot[0])
        if pivot[1] != t:
            swap_cols(t, pivot[1])
        # Clear row and column t; remainders become new (smaller) pivots.
        dirty = True
        while dirty:
            dirty = False
            for i in range(t + 1, k):
                if a[i][t] != 0:
                    q = a[i][t] // a[t][t]
                    add_row(t, i, -q)
                    if a[i][t] != 0:
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, n):
                if a[t][j] != 0:
                    q = a[t][j] // a[t][t]
                    add_col(t, j, -q)
                    if a[t][j] != 0:
                        swap_cols(t, j)
                        dirty = True
        # Enforce d_t | every later entry.
        d = a[t][t]
        offender = None
        for i in range(t + 1, k):
            for j in range(t + 1, n):
                if a[i][j] % d != 0:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            add_row(offender, t, 1)
            continue  # redo position t; gcd strictly divides the old pivot
        if d < 0:
            negate_row(t)
        t += 1

    result = SmithNormalForm(
        left=tuple(tuple(row) for row in u),
        diagonal=tuple(tuple(row) for row in a),
        right=tuple(tuple(row) for row in v),
    )
    _check_snf(matrix, result)
    return result


def _check_snf(matrix, snf: SmithNormalForm) -> None:
    """Internal guard: verify U A V = D, diagonal shape and divisibility."""
    k = len(snf.left)
    n = len(snf.right)
    ua = [
        [sum(snf.left[i][r] * matrix[r][j] for r in range(k)) for j in range(n)]
        for i in range(k)
    ]
    uav = [
        [sum(ua[i][r] * snf.right[r][j] for r in range(n)) for j in range(n)]
        for i in range(k)
    ]
    for i in range(k):
        for j in range(n):
            if uav[i][j] != snf.diagonal[i][j]:
                raise InternalInvariantError("smith normal form reconstruction failed")
            if i != j and snf.diagonal[i][j] != 0:
                raise InternalInvariantError("smith normal form is not diagonal")
    diag = [snf.diagonal[i][i] for i in range(min(k, n))]
    for d1, d2 in zip(diag, diag[1:]):
        if d1 == 0 and d2 != 0:
            raise InternalInvariantError("smith normal form zero ordering violated")
        if d1 != 0 and d2 % d1 != 0:
            raise InternalInvariantError("smith normal form divisibility violated")


# ---------------------------------------------------------------------------
# Discriminant groups
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DiscriminantGroup:
    """The finite group L*/L of a nondegenerate integer Gram matrix.

    ``invariant_factors`` are the elementary divisors > 1; ``generator_lifts``
    are representatives in L* of the corresponding cyclic generators,
    expressed in coordinates with respect to the generating set of L (the
    basis in which ``gram`` is written).
    """

    gram: tuple[tuple[int, ...], ...]
    invariant_factors: tuple[int, ...]
    generator_lifts: tuple[Vector, ...]

    @property
    def order(self) -> int:
        return prod(self.invariant_factors) if self.invariant_factors else 1


def discriminant_group(gram_matrix: Sequence[Sequence[int]]) -> DiscriminantGroup:
    """Discriminant group of a symmetric nonsingular integer Gram matrix.

    Computed from the Smith normal form U B V = D: the group is the direct
    sum of Z/d_i over the invariant factors d_i > 1, and the i-th generator
    lifts to (1/d_i) . (column i of V) since B^-1 U^-1 = V D^-1.
    """
    for row in gram_matrix:
        for x in row:
            if Fraction(x).denominator != 1:
                raise ValidationError("gram matrix entries must be integers")
    b = [[int(x) for x in row] for row in gram_matrix]
    n = len(b)
    if any(len(row) != n for row in b):
        raise ValidationError("gram matrix must be square")
    for i in range(n):
        for j in range(i + 1, n):
            if b[i][j] != b[j][i]:
                raise ValidationError(f"gram matrix not symmetric at ({i + 1},{j + 1})")
    if rational_det(b) == 0:
        raise ValidationError("degenerate form")
    snf = smith_normal_form(b)
    factors = []
    lifts = []
    for i in range(n):
        d = snf.diagonal[i][i]
        if d > 1:
            factors.append(d)
            lift = tuple(Fraction(snf.right[j][i], d) for j in range(n))
            lifts.append(lift)
    group = DiscriminantGroup(
        gram=tuple(tuple(row) for row in b),
        invariant_factors=tuple(factors),
        generator_lifts=tuple(lifts),
    )
    # Internal guard: each lift must pair integrally with L, i.e. B.lift is
    # an integer vector (membership in the dual lattice).
    for lift in group.generator_lifts:
        if not is_integral(matrix_apply(group.gram, lift)):
            raise InternalInvariantError("generator lift is not in the dual lattice")
    return group


def reduce_class(vector: Sequence[Fraction]) -> Vector:
    """Canonical representative of a class in L*/L: all coordinates in [0,1)."""
    return tuple(Fraction(x) - (Fraction(x).numerator // Fraction(x).denominator)
                 for x in vector)


ISOTROPIC_CAP = 10 ** 6


def enumerate_isotropic_classes(group: DiscriminantGroup,
                                cap: int = ISOTROPIC_CAP) -> tuple[Vector, ...]:
    """All nonzero classes x of L*/L with q(x) = x^T B x in 2Z.

    Representatives are reduced to [0,1) coordinates along the generating
    set.  Requires an even Gram matrix so that q is well defined modulo 2Z,
    and a group of order at most ``cap``.
    """
    if group.order > cap:
        raise ValidationError("discriminant group too large")
    for i, row in enumerate(group.gram):
        if row[i] % 2 != 0:
            raise ValidationError("form not even")
    found = []
    for exponents in product(*(range(d) for d in group.invariant_factors)):
        if not any(exponents):
            continue
        vec = zero_vector(len(group.gram))
        for e, lift in zip(exponents, group.generator_lifts):
            if e:
                vec = add_vectors(vec, scale_vector(e, lift))
        vec = reduce_class(vec)
        q = pairing(vec, vec, group.gram)
        if q.denominator == 1 and q.numerator % 2 == 0:
            found.append(vec)
    return tuple(found)

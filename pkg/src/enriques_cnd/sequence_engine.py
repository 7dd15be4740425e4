"""Isotropic sequences, cnd, saturation, canonical extensions, Fano reports.

An isotropic sequence is a set of half-fiber classes pairing pairwise to 1
(order is irrelevant; sequences are kept sorted by fibration index).  These
are exactly the cliques of the compatibility graph on the fibrations, and
are enumerated by a canonical depth-first search (candidates ascending by
index, so sequences appear in lexicographic order).  A sequence is saturated
when no further fibration is compatible with all of its members; cnd is the
largest length that occurs, and every maximum-length sequence is saturated.

A sequence of length k < 10 extends canonically to length 10 by attaching
chains of configuration curves to its members: a chain R_1, ..., R_j hanging
off a base class f contributes the degenerate classes f + R_1 + ... + R_t
for t = 1..j.  The within-chain pairings are automatically correct; the
search only has to enforce the cross conditions (each chain curve pairs 0
with every other base and with every curve of other chains, the first chain
curve pairs 1 with its base, later ones pair 0 with it and form a simple
chain).  The resulting 10 classes determine a Fano polarization
Delta = (1/3) * sum of classes with Delta^2 = 10 and Delta . f = 3; the
chains record the rational double points (one A_j per chain of length j) of
the contracted model and the contracted curves.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import InternalInvariantError, ValidationError
from .exact_lattice import (
    Vector,
    add_vectors,
    matrix_apply,
    pairing,
    scale_vector,
)
from .fiber_classify import HalfFiberSet, type_label_key
from .surface_model import CurveConfiguration, NumBasis


# ---------------------------------------------------------------------------
# Sequences
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IsotropicSequence:
    """A pairwise-compatible set of fibrations, by ascending index."""

    indices: tuple[int, ...]
    saturated: bool

    def __len__(self) -> int:
        return len(self.indices)

    def classes(self, hf: HalfFiberSet) -> tuple[Vector, ...]:
        return tuple(hf.fibrations[i].half_fiber_class for i in self.indices)

    def type_multiset(self, hf: HalfFiberSet) -> tuple[str, ...]:
        labels = [hf.fibrations[i].type_label for i in self.indices]
        return tuple(sorted(labels, key=type_label_key))


@dataclass(frozen=True)
class SaturationRow:
    """One census row: all saturated sequences of a given length and type."""

    length: int
    types: tuple[str, ...]
    count: int


@dataclass(frozen=True)
class SaturationReport:
    sequences: tuple[IsotropicSequence, ...]
    census: tuple[SaturationRow, ...]

    @property
    def max_length(self) -> int:
        return max((len(s) for s in self.sequences), default=0)


def _neighbor_masks(hf: HalfFiberSet) -> list[int]:
    n = hf.size
    masks = [0] * n
    for i in range(n):
        m = 0
        row = hf.pair_table[i]
        for j in range(n):
            if j != i and row[j] == 1:
                m |= 1 << j
        masks[i] = m
    return masks


def _explore(hf: HalfFiberSet, use_caps: bool,
             collect_all: bool, collect_saturated: bool):
    """Canonical clique DFS.

    Returns (max_length, all_sequences, saturated_sequences); the sequence
    lists are populated only when requested.  With ``use_caps`` the search
    skips candidates whose fibration type already occurs as often as the
    per-type cap allows; the caps are maxima of within-type compatible sets,
    so this pruning can never remove a valid sequence and the results are
    identical with or without it.
    """
    n = hf.size
    neighbors = _neighbor_masks(hf)
    type_labels = [fib.type_label for fib in hf.fibrations]
    type_names = sorted(set(type_labels))
    type_index = {label: t for t, label in enumerate(type_names)}
    member_type = [type_index[label] for label in type_labels]
    caps = [hf.per_type_cap.get(label, n) for label in type_names]
    type_counts = [0] * len(type_names)

    all_sequences: list[IsotropicSequence] = []
    saturated_sequences: list[IsotropicSequence] = []
    max_length = 0
    members: list[int] = []

    def visit(candidates: int, common: int) -> None:
        nonlocal max_length
        length = len(members)
        if length > max_length:
            max_length = length
        is_saturated = common == 0
        if collect_all:
            all_sequences.append(
                IsotropicSequence(indices=tuple(members), saturated=is_saturated)
            )
        if collect_saturated and is_saturated:
            saturated_sequences.append(
                IsotropicSequence(indices=tuple(members), saturated=True)
            )
        m = candidates
        while m:
            v = (m & -m).bit_length() - 1
            m &= m - 1
            t = member_type[v]
            if use_caps and type_counts[t] >= caps[t]:
                continue
            members.append(v)
            type_counts[t] += 1
            above = -(1 << (v + 1))
            visit(candidates & neighbors[v] & above, common & neighbors[v])
            type_counts[t] -= 1
            members.pop()

    full = (1 << n) - 1
    for v in range(n):
        t = member_type[v]
        if use_caps and caps[t] < 1:
            continue
        members.append(v)
        type_counts[t] += 1
        visit(full & neighbors[v] & -(1 << (v + 1)), neighbors[v])
        type_counts[t] -= 1
        members.pop()
    return max_length, all_sequences, saturated_sequences


def enumerate_sequences(hf: HalfFiberSet,
                        use_caps: bool = False) -> tuple[IsotropicSequence, ...]:
    """Every nonempty isotropic sequence, in lexicographic index order."""
    _, all_sequences, _ = _explore(hf, use_caps, True, False)
    return tuple(all_sequences)


def cnd(hf: HalfFiberSet, use_caps: bool = False) -> int:
    """Largest length of an isotropic sequence (0 for an empty census)."""
    if hf.size == 0:
        warnings.warn("no supported half-fibers; cnd is 0", stacklevel=2)
        return 0
    max_length, _, _ = _explore(hf, use_caps, False, False)
    return max_length


def saturated(hf: HalfFiberSet, use_caps: bool = False) -> SaturationReport:
    """All saturated sequences with a census by (length, type multiset)."""
    _, _, sequences = _explore(hf, use_caps, False, True)
    counts: dict[tuple[int, tuple[str, ...]], int] = {}
    for seq in sequences:
        key = (len(seq), seq.type_multiset(hf))
        counts[key] = counts.get(key, 0) + 1
    rows = [
        SaturationRow(length=length, types=types, count=count)
        for (length, types), count in counts.items()
    ]
    rows.sort(key=lambda r: (-r.length, [type_label_key(t) for t in r.types]))
    return SaturationReport(sequences=tuple(sequences), census=tuple(rows))


def maximal_sequences(hf: HalfFiberSet,
                      report: Optional[SaturationReport] = None
                      ) -> tuple[IsotropicSequence, ...]:
    """The cnd-length sequences (every maximum clique is saturated)."""
    if report is None:
        report = saturated(hf)
    top = report.max_length
    return tuple(s for s in report.sequences if len(s) == top)


# ---------------------------------------------------------------------------
# Canonical extension to length 10
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CanonicalExtension:
    """A length-10 extension of a base sequence by curve chains.

    ``chains[i]`` lists the configuration curves chained onto base class i;
    ``classes`` holds all 10 classes, each base followed by its degenerate
    members (base + chain prefix), bases in input order.
    """

    base: tuple[Vector, ...]
    chains: tuple[tuple[int, ...], ...]
    classes: tuple[Vector, ...]


def extend_to_canonical(sequence: Sequence[Sequence[Fraction]],
                        config: CurveConfiguration,
                        basis: NumBasis) -> tuple[CanonicalExtension, ...]:
    """All canonical extensions of an isotropic sequence to length 10.

    The input is a list of half-fiber class vectors in curve coordinates
    (pairwise pairing 1, each isotropic and integral against the basis).  A
    length-10 input returns the single trivial extension with empty chains.
    """
    base = tuple(tuple(Fraction(x) for x in vec) for vec in sequence)
    k = len(base)
    if k == 0:
        raise ValidationError("cannot extend an empty sequence")
    if k > 10:
        raise ValidationError(f"sequence of length {k} exceeds the maximum 10")
    matrix = config.matrix
    for i, vec in enumerate(base):
        if len(vec) != config.size:
            raise ValidationError(
                f"class {i + 1} has length {len(vec)}, expected {config.size}"
            )
        if pairing(vec, vec, matrix) != 0:
            raise ValidationError(f"class {i + 1} is not isotropic")
        if any(p.denominator != 1 for p in basis.pair_with_basis(vec)):
            raise ValidationError(f"class {i + 1} is not integral against the basis")
    for i in range(k):
        for j in range(i + 1, k):
            p = pairing(base[i], base[j], matrix)
            if p != 1:
                raise ValidationError(
                    f"classes {i + 1} and {j + 1} pair to {p}, expected 1"
                )

    n = config.size
    # pair_base[c][i] = R_c . f_i  (integer since f_i is in Num(S)).
    images = [matrix_apply(matrix, f) for f in base]
    pair_base = [[int(images[i][c]) for i in range(k)] for c in range(n)]

    budget = 10 - k
    chains: list[list[int]] = [[] for _ in range(k)]
    used: set[int] = set()
    results: list[CanonicalExtension] = []
    seen: set[frozenset] = set()

    def admissible(curve: int, i: int) -> bool:
        row = pair_base[curve]
        for j in range(k):
            if j != i and row[j] != 0:
                return False
        chain = chains[i]
        if not chain:
            if row[i] != 1:
                return False
        else:
            if row[i] != 0:
                return False
            mrow = matrix[curve]
            if mrow[chain[-1]] != 1:
                return False
            for earlier in chain[:-1]:
                if mrow[earlier] != 0:
                    return False
        mrow = matrix[curve]
        for j in range(i):
            for other in chains[j]:
                if mrow[other] != 0:
                    return False
        return True

    def record() -> None:
        classes: list[Vector] = []
        for i, f in enumerate(base):
            classes.append(f)
            prefix = f
            for curve in chains[i]:
                step = [Fraction(0)] * n
                step[curve] = Fraction(1)
                prefix = add_vectors(prefix, tuple(step))
                classes.append(prefix)
        key = frozenset(classes)
        if key in seen:
            return
        seen.add(key)
        results.append(CanonicalExtension(
            base=base,
            chains=tuple(tuple(chain) for chain in chains),
            classes=tuple(classes),
        ))

    def visit_base(i: int, remaining: int) -> None:
        if i == k:
            if remaining == 0:
                record()
            return
        grow_chain(i, remaining)

    def grow_chain(i: int, remaining: int) -> None:
        visit_base(i + 1, remaining)          # close the chain as it stands
        if remaining == 0:
            return
        for curve in range(n):
            if curve in used:
                continue
            if admissible(curve, i):
                chains[i].append(curve)
                used.add(curve)
                grow_chain(i, remaining - 1)
                used.remove(curve)
                chains[i].pop()

    visit_base(0, budget)
    return tuple(results)


# ---------------------------------------------------------------------------
# Fano polarizations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FanoReport:
    """Delta = (1/3) sum of the 10 classes, with degeneration data."""

    delta: Vector
    delta_self: int                  # Delta^2, always 10
    degrees: tuple[int, ...]         # Delta . f over the 10 classes, all 3
    singularities: tuple[str, ...]   # one A_j per chain of length j >= 1
    contracted: tuple[str, ...]      # labels of the chained (contracted) curves


def fano_report(extension: CanonicalExtension, basis: NumBasis) -> FanoReport:
    """Fano polarization attached to a length-10 canonical extension."""
    if len(extension.classes) != 10:
        raise ValidationError(
            f"Fano report requires 10 classes, got {len(extension.classes)}"
        )
    config = basis.config
    matrix = config.matrix
    delta = scale_vector(Fraction(1, 3), add_vectors(*extension.classes))
    self_pairing = pairing(delta, delta, matrix)
    if self_pairing != 10:
        raise InternalInvariantError(
            f"Fano class has self-intersection {self_pairing}, expected 10"
        )
    degrees = []
    for vec in extension.classes:
        p = pairing(delta, vec, matrix)
        if p != 3:
            raise InternalInvariantError(
                f"Fano class pairs to {p} with a member class, expected 3"
            )
        degrees.append(int(p))
    if any(p.denominator != 1 for p in basis.pair_with_basis(delta)):
        raise InternalInvariantError("Fano class is not integral against the basis")
    singularities = tuple(
        f"A{len(chain)}"
        for chain in sorted(extension.chains, key=len)
        if chain
    )
    contracted_curves = sorted({c for chain in extension.chains for c in chain})
    contracted = tuple(config.labels[c] for c in contracted_curves)
    return FanoReport(
        delta=delta,
        delta_self=int(self_pairing),
        degrees=tuple(degrees),
        singularities=singularities,
        contracted=contracted,
    )

"""Fiber vs half-fiber classification and grouping into elliptic fibrations.

A template subset C supports an elliptic fibration: its class is either a
whole fiber (when C/2 still pairs integrally with all of Num(S), i.e. the
class is 2-divisible) or a half-fiber.  The half-fiber class attached to C
is C/2 in the first case and C itself in the second.  Parity is decided
exactly, by pairing C/2 against the ten basis vectors of Num(S).

D- and E-type subsets are always whole fibers: their diagram has a vertex of
multiplicity >= 2, which forces 2-divisibility of the class.  A half-fiber
verdict for such a subset therefore signals an inconsistent basis or a
mistranscribed intersection matrix, and is raised as a hard input error.

Two subsets belong to the same fibration exactly when their half-fiber
classes are equal in Num(S); since the classes are nef and isotropic this is
equivalent to their pairing being zero, which is the criterion used to group
them (the mod-radical equality is asserted as an internal guard).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .dynkin_search import (
    EllipticSubset,
    FIBER_KIND,
    HALF_FIBER_KIND,
    find_elliptic_subsets,
)
from .errors import InternalInvariantError, ValidationError
from .exact_lattice import Vector, pairing, scale_vector
from .surface_model import CurveConfiguration, Divisor, NumBasis, same_numerical_class


# ---------------------------------------------------------------------------
# Classification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EllipticConfiguration:
    """A template subset together with its fiber/half-fiber verdict."""

    subset: EllipticSubset
    kind: str                    # FIBER_KIND or HALF_FIBER_KIND
    half_fiber_class: Vector     # class/2 for fibers, class for half-fibers

    @property
    def type_term(self) -> str:
        """E.g. "A3F" or "D5HF": template name plus verdict."""
        return f"{self.subset.template}{self.kind}"


def classify(subset: EllipticSubset, basis: NumBasis) -> EllipticConfiguration:
    """Decide fiber vs half-fiber by integrality of (C/2) . Num(S)."""
    half = scale_vector(Fraction(1, 2), subset.class_vector)
    integral = all(p.denominator == 1 for p in basis.pair_with_basis(half))
    if integral:
        return EllipticConfiguration(
            subset=subset, kind=FIBER_KIND, half_fiber_class=half
        )
    if subset.template[0] in ("D", "E"):
        curves = ", ".join(
            basis.config.labels[c] for c in sorted(subset.curve_set)
        )
        raise ValidationError(
            f"{subset.template} configuration on ({curves}) classified as a "
            f"half-fiber, but D- and E-type configurations always have "
            f"2-divisible classes; the basis or the intersection matrix is "
            f"inconsistent"
        )
    return EllipticConfiguration(
        subset=subset, kind=HALF_FIBER_KIND,
        half_fiber_class=tuple(Fraction(x) for x in subset.class_vector),
    )


# ---------------------------------------------------------------------------
# Fibrations and the half-fiber set
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Fibration:
    """One elliptic fibration: a half-fiber class and its member subsets."""

    half_fiber_class: Vector
    members: tuple[EllipticConfiguration, ...]
    type_label: str


_KIND_ORDER = {FIBER_KIND: 0, HALF_FIBER_KIND: 1}


def _term_key(template: str, kind: str) -> tuple:
    return (template[0], int(template[1:]), _KIND_ORDER[kind])


def make_type_label(members: Sequence[EllipticConfiguration]) -> str:
    """Canonical label, e.g. "2 A1HF + 1 D6F": counted terms sorted by
    letter, rank, then fiber before half-fiber."""
    counts: dict[tuple, int] = {}
    names: dict[tuple, str] = {}
    for member in members:
        key = _term_key(member.subset.template, member.kind)
        counts[key] = counts.get(key, 0) + 1
        names[key] = member.type_term
    terms = [f"{counts[key]} {names[key]}" for key in sorted(counts)]
    return " + ".join(terms)


def type_label_key(label: str) -> tuple:
    """Sort key for canonical ordering of type labels."""
    key = []
    for term in label.split(" + "):
        count_str, name = term.split(" ")
        kind = HALF_FIBER_KIND if name.endswith(HALF_FIBER_KIND) else FIBER_KIND
        template = name[: -len(kind)]
        key.append((template[0], int(template[1:]), _KIND_ORDER[kind], int(count_str)))
    return (len(key), tuple(key))


@dataclass(frozen=True)
class HalfFiberSet:
    """All elliptic fibrations of a configuration, with pairing tables."""

    config: CurveConfiguration
    basis: NumBasis
    fibrations: tuple[Fibration, ...]
    pair_table: tuple[tuple[int, ...], ...]     # integer pairings of classes
    per_type_cap: dict[str, int] = field(default_factory=dict, compare=False)

    @property
    def size(self) -> int:
        return len(self.fibrations)

    def compatible(self, i: int, j: int) -> bool:
        return self.pair_table[i][j] == 1

    def census(self) -> list[tuple[str, int]]:
        """(type label, fibration count) rows in canonical label order."""
        counts: dict[str, int] = {}
        for fib in self.fibrations:
            counts[fib.type_label] = counts.get(fib.type_label, 0) + 1
        return sorted(counts.items(), key=lambda kv: type_label_key(kv[0]))


def build_half_fiber_set(configs: Sequence[EllipticConfiguration],
                         basis: NumBasis) -> HalfFiberSet:
    """Group classified subsets into fibrations and tabulate pairings.

    Grouping criterion: zero pairing of half-fiber classes.  Guards: a class
    pairing zero against two existing groups, or pairing zero without being
    equal modulo the radical of the intersection matrix, would violate
    well-definedness and raises an internal error.
    """
    config = basis.config
    matrix = config.matrix
    groups: list[list[EllipticConfiguration]] = []
    for cfg in configs:
        h = cfg.half_fiber_class
        hits = []
        for idx, group in enumerate(groups):
            if pairing(h, group[0].half_fiber_class, matrix) == 0:
                hits.append(idx)
        if len(hits) > 1:
            raise InternalInvariantError(
                "half-fiber grouping is not transitive: one class pairs to "
                "zero against two distinct fibrations"
            )
        if hits:
            group = groups[hits[0]]
            if not same_numerical_class(h, group[0].half_fiber_class, config):
                raise InternalInvariantError(
                    "half-fiber classes pair to zero but differ in Num(S)"
                )
            group.append(cfg)
        else:
            groups.append([cfg])

    fibrations = []
    for group in groups:
        fibrations.append(Fibration(
            half_fiber_class=group[0].half_fiber_class,
            members=tuple(group),
            type_label=make_type_label(group),
        ))
    fibrations.sort(key=lambda f: (type_label_key(f.type_label),
                                   tuple(sorted(f.members[0].subset.curve_set))))
    fibrations = tuple(fibrations)

    table = []
    for fi in fibrations:
        row = []
        for fj in fibrations:
            p = pairing(fi.half_fiber_class, fj.half_fiber_class, matrix)
            if p.denominator != 1:
                raise InternalInvariantError(
                    "half-fiber classes have a non-integral pairing"
                )
            row.append(int(p))
        table.append(tuple(row))

    hf = HalfFiberSet(
        config=config,
        basis=basis,
        fibrations=fibrations,
        pair_table=tuple(table),
    )
    hf.per_type_cap.update(_type_caps(hf))
    return hf


def _type_caps(hf: HalfFiberSet) -> dict[str, int]:
    """Largest pairwise-compatible subset within each fibration type.

    Any isotropic sequence restricted to one type is a compatible subset of
    that type, so these maxima are valid pruning caps for the sequence
    search (they can never exclude a valid sequence).
    """
    by_type: dict[str, list[int]] = {}
    for idx, fib in enumerate(hf.fibrations):
        by_type.setdefault(fib.type_label, []).append(idx)
    caps = {}
    for label, indices in by_type.items():
        caps[label] = _max_clique_size(indices, hf)
    return caps


def _max_clique_size(indices: list[int], hf: HalfFiberSet) -> int:
    best = 0

    def grow(chosen: list[int], candidates: list[int]) -> None:
        nonlocal best
        if len(chosen) > best:
            best = len(chosen)
        if len(chosen) + len(candidates) <= best:
            return
        for pos, v in enumerate(candidates):
            rest = [u for u in candidates[pos + 1:] if hf.compatible(u, v)]
            grow(chosen + [v], rest)

    grow([], indices)
    return best


def half_fiber_set_for(basis: NumBasis,
                       threads: Optional[int] = None) -> HalfFiberSet:
    """Full pipeline: search templates, classify, group into fibrations."""
    subsets = find_elliptic_subsets(basis.config, threads=threads)
    classified = [classify(s, basis) for s in subsets]
    return build_half_fiber_set(classified, basis)


# ---------------------------------------------------------------------------
# Phi invariant
# ---------------------------------------------------------------------------

def phi_invariant(divisor: Divisor | Sequence[Fraction],
                  hf: HalfFiberSet) -> Fraction:
    """Phi(D) = min over half-fiber classes of D . class."""
    if not hf.fibrations:
        raise ValidationError("no supported half-fibers")
    vector = divisor.vector if isinstance(divisor, Divisor) else tuple(divisor)
    return min(
        pairing(vector, fib.half_fiber_class, hf.config.matrix)
        for fib in hf.fibrations
    )

"""Affine Dynkin templates and the subgraph search over a configuration.

The sixteen diagrams that can occur as dual graphs of (multiples of) fibers
of an elliptic fibration on an Enriques surface with only (-2)-curves are
the affine diagrams A~1..A~8, D~4..D~8, E~6, E~7, E~8 (rank <= 9 because the
curve lattice embeds into a rank-10 space with a 1-dimensional radical per
fiber).  A~1 is the single pair of curves meeting with multiplicity two;
every other diagram uses only simple intersections.

Each template carries the Kodaira fiber multiplicities: the unique positive
primitive integer null vector of its intersection matrix.  They are computed
here from the kernel (and checked to be positive) rather than hard-coded.

``find_elliptic_subsets`` enumerates every curve subset of a configuration
whose induced weighted graph is isomorphic to a template, by growing
connected partial matches from each anchor curve; results are deduplicated
by vertex set and returned in canonical order (template order, then
lexicographic curve set).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from .errors import InternalInvariantError
from .exact_lattice import Vector, rational_nullspace
from .surface_model import CurveConfiguration

FIBER_KIND = "F"
HALF_FIBER_KIND = "HF"


# ---------------------------------------------------------------------------
# Templates
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DynkinTemplate:
    """One affine diagram: weighted adjacency plus fiber multiplicities."""

    name: str                                 # "A1".."A8", "D4".."D8", "E6".."E8"
    matrix: tuple[tuple[int, ...], ...]       # -2 diagonal, weights 0/1/2
    multiplicities: tuple[int, ...]           # positive primitive null vector

    @property
    def size(self) -> int:
        return len(self.matrix)

    @property
    def letter(self) -> str:
        return self.name[0]

    @property
    def rank(self) -> int:
        return int(self.name[1:])


def _template_matrix(size: int, edges: Iterable[tuple[int, int, int]]):
    m = [[-2 if i == j else 0 for j in range(size)] for i in range(size)]
    for i, j, w in edges:
        m[i][j] = m[j][i] = w
    return tuple(tuple(row) for row in m)


def _make_template(name: str, size: int, edges) -> DynkinTemplate:
    matrix = _template_matrix(size, edges)
    kernel = rational_nullspace(matrix)
    if len(kernel) != 1:
        raise InternalInvariantError(f"template {name} does not have a 1-dim radical")
    vec = kernel[0]
    scale = 1
    for x in vec:
        scale = scale * x.denominator // _gcd(scale, x.denominator)
    mult = [int(x * scale) for x in vec]
    if all(m < 0 for m in mult):
        mult = [-m for m in mult]
    g = 0
    for m in mult:
        g = _gcd(g, m)
    mult = [m // g for m in mult]
    if any(m <= 0 for m in mult):
        raise InternalInvariantError(f"template {name} has a non-positive multiplicity")
    return DynkinTemplate(name=name, matrix=matrix, multiplicities=tuple(mult))


def _gcd(a: int, b: int) -> int:
    a, b = abs(a), abs(b)
    while b:
        a, b = b, a % b
    return a


def _affine_a(n: int):
    size = n + 1
    if n == 1:
        edges = [(0, 1, 2)]
    else:
        edges = [(i, (i + 1) % size, 1) for i in range(size)]
    return _make_template(f"A{n}", size, edges)


def _affine_d(n: int):
    # Chain of n-3 central nodes with two leaves at each end.
    size = n + 1
    chain = n - 3
    edges = [(i, i + 1, 1) for i in range(chain - 1)]
    edges += [(0, chain, 1), (0, chain + 1, 1)]
    edges += [(chain - 1, chain + 2, 1), (chain - 1, chain + 3, 1)]
    return _make_template(f"D{n}", size, edges)


def _affine_e(n: int):
    if n == 6:
        # Central node with three arms of length 2.
        edges = [(0, 1, 1), (1, 2, 1), (0, 3, 1), (3, 4, 1), (0, 5, 1), (5, 6, 1)]
    elif n == 7:
        # Chain of 7 with a branch at the middle node.
        edges = [(i, i + 1, 1) for i in range(6)] + [(3, 7, 1)]
    else:
        # Chain of 8 with a branch at the third node.
        edges = [(i, i + 1, 1) for i in range(7)] + [(2, 8, 1)]
    return _make_template(f"E{n}", n + 1, edges)


@lru_cache(maxsize=1)
def catalog() -> tuple[DynkinTemplate, ...]:
    """The sixteen affine templates in canonical order."""
    templates = [_affine_a(n) for n in range(1, 9)]
    templates += [_affine_d(n) for n in range(4, 9)]
    templates += [_affine_e(n) for n in (6, 7, 8)]
    return tuple(templates)


# ---------------------------------------------------------------------------
# Elliptic subsets
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EllipticSubset:
    """A curve subset isomorphic to a template, with its divisor class.

    ``curves`` is ordered to match the template nodes, so the i-th curve
    carries multiplicity ``template.multiplicities[i]``; ``class_vector`` is
    the curve-coordinate vector of the corresponding fiber divisor.
    """

    template: str
    curves: tuple[int, ...]
    class_vector: Vector

    @property
    def curve_set(self) -> frozenset[int]:
        return frozenset(self.curves)


@dataclass(frozen=True)
class _SearchPlan:
    """Precomputed matching order for one template.

    Nodes are visited in an order where each node after the first touches an
    earlier one; ``anchor_edges[t]`` is (s, w): node t meets node order[s]
    with weight w > 0, used to draw candidates from adjacency lists.
    """

    template: DynkinTemplate
    order: tuple[int, ...]
    anchor_edges: tuple[tuple[int, int], ...]          # per position >= 1
    checks: tuple[tuple[tuple[int, int], ...], ...]    # (earlier pos, weight)
    degree1: tuple[int, ...]                           # per position
    degree2: tuple[int, ...]


@lru_cache(maxsize=None)
def _plan(template: DynkinTemplate) -> _SearchPlan:
    size = template.size
    order = [0]
    placed = {0}
    anchor_edges = []
    while len(order) < size:
        nxt = None
        for node in range(size):
            if node in placed:
                continue
            for pos, prev in enumerate(order):
                w = template.matrix[node][prev]
                if w > 0:
                    nxt = (node, pos, w)
                    break
            if nxt:
                break
        if nxt is None:
            raise InternalInvariantError(f"template {template.name} is disconnected")
        node, pos, w = nxt
        order.append(node)
        placed.add(node)
        anchor_edges.append((pos, w))
    checks = []
    for t, node in enumerate(order):
        row = []
        for s in range(t):
            row.append((s, template.matrix[node][order[s]]))
        checks.append(tuple(row))
    deg1 = []
    deg2 = []
    for node in order:
        row = template.matrix[node]
        deg1.append(sum(1 for j, w in enumerate(row) if j != node and w == 1))
        deg2.append(sum(1 for j, w in enumerate(row) if j != node and w == 2))
    return _SearchPlan(
        template=template,
        order=tuple(order),
        anchor_edges=tuple(anchor_edges),
        checks=tuple(checks),
        degree1=tuple(deg1),
        degree2=tuple(deg2),
    )


def _search_one_template(config: CurveConfiguration,
                         template: DynkinTemplate) -> list[EllipticSubset]:
    """All subsets matching one template, sorted by curve set."""
    n = config.size
    plan = _plan(template)
    size = template.size
    if size > n:
        return []
    matrix = config.matrix
    nbr1 = [config.neighbors(i, 1) for i in range(n)]
    nbr2 = [config.neighbors(i, 2) for i in range(n)]
    cdeg1 = [len(x) for x in nbr1]
    cdeg2 = [len(x) for x in nbr2]

    found: dict[frozenset[int], tuple[int, ...]] = {}
    assigned: list[int] = []
    used = set()

    def admissible(curve: int, pos: int) -> bool:
        if curve in used:
            return False
        if cdeg1[curve] < plan.degree1[pos] or cdeg2[curve] < plan.degree2[pos]:
            return False
        row = matrix[curve]
        for s, w in plan.checks[pos]:
            if row[assigned[s]] != w:
                return False
        return True

    def extend(pos: int) -> None:
        if pos == size:
            key = frozenset(assigned)
            ordered = tuple(assigned)
            if key in found:
                _check_equivalent(found[key], ordered, template)
            else:
                found[key] = ordered
            return
        anchor_pos, weight = plan.anchor_edges[pos - 1]
        candidates = nbr1 if weight == 1 else nbr2
        for curve in candidates[assigned[anchor_pos]]:
            if admissible(curve, pos):
                assigned.append(curve)
                used.add(curve)
                extend(pos + 1)
                assigned.pop()
                used.remove(curve)

    for seed in range(n):
        if admissible(seed, 0):
            assigned.append(seed)
            used.add(seed)
            extend(1)
            assigned.pop()
            used.remove(seed)

    mult = template.multiplicities
    order = plan.order
    subsets = []
    for key in sorted(found, key=lambda s: tuple(sorted(s))):
        ordered = found[key]
        # Rearrange curves into template-node order (position t of the plan
        # hosts template node order[t]).
        curves = [0] * size
        for t, curve in enumerate(ordered):
            curves[order[t]] = curve
        mvec = [Fraction(0)] * n
        for node, curve in enumerate(curves):
            mvec[curve] += mult[node]
        subsets.append(EllipticSubset(
            template=template.name,
            curves=tuple(curves),
            class_vector=tuple(mvec),
        ))
    return subsets


def _check_equivalent(first: tuple[int, ...], second: tuple[int, ...],
                      template: DynkinTemplate) -> None:
    """Two matches on the same vertex set must induce the same class."""
    # Multiplicity patterns of affine diagrams are invariant under diagram
    # automorphisms, so any two bijections onto the same curves agree on the
    # divisor class.  Guard against a template where that would fail.
    plan = _plan(template)
    mult = template.multiplicities

    def class_of(match):
        out: dict[int, int] = {}
        for t, curve in enumerate(match):
            out[curve] = out.get(curve, 0) + mult[plan.order[t]]
        return out

    if class_of(first) != class_of(second):
        raise InternalInvariantError(
            f"ambiguous multiplicities for a {template.name} subset"
        )


def find_elliptic_subsets(config: CurveConfiguration,
                          threads: Optional[int] = None) -> tuple[EllipticSubset, ...]:
    """Every elliptic-template subset of the configuration, canonical order.

    ``threads``: number of worker processes for the per-template searches
    (None or 1 = serial).  The merge order is fixed (template order, then
    lexicographic curve set), so the result is identical for any value.
    """
    templates = catalog()
    if threads is not None and threads > 1:
        results = _parallel_search(config, threads)
    else:
        results = [_search_one_template(config, t) for t in templates]
    out: list[EllipticSubset] = []
    for template_results in results:
        out.extend(template_results)
    return tuple(out)


def _parallel_worker(args) -> list[tuple]:
    matrix, labels, index = args
    config = CurveConfiguration(labels=labels, matrix=matrix)
    template = catalog()[index]
    return [
        (s.template, s.curves, tuple(str(x) for x in s.class_vector))
        for s in _search_one_template(config, template)
    ]


def _parallel_search(config: CurveConfiguration, threads: int):
    from concurrent.futures import ProcessPoolExecutor

    jobs = [(config.matrix, config.labels, i) for i in range(len(catalog()))]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        raw = list(pool.map(_parallel_worker, jobs))
    results = []
    for template_rows in raw:
        results.append([
            EllipticSubset(
                template=name,
                curves=curves,
                class_vector=tuple(Fraction(x) for x in cls),
            )
            for name, curves, cls in template_rows
        ])
    return results

"""Hamiltonian tour enumeration, polytope dimension, and facet testing.

Tours exist only when the two classes have equal size n; enumeration is
exhaustive and capped (default n <= 6, 43200 tours on K_{6,6}).  Each
undirected tour is produced exactly once in canonical form: it starts at
class-1 vertex 0 and runs toward the smaller-indexed of that vertex's two
tour neighbours, which kills both rotations and reflection.

Dimension work is affine: the polytope dimension is the rank of the
difference vectors between tour incidence vectors, computed by exact
integer elimination (rows are gcd-reduced to keep entries small).  An
inequality's tight face gets the same treatment over the tours that meet
it with equality.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import gcd
from typing import Iterable, Iterator, Sequence

from . import _kernels
from .constraints import LinearInequality, evaluate
from .errors import EnumerationCapError, NoToursError
from .graph import (
    CLASS1,
    CLASS2,
    BipartiteInstance,
    Edge,
    FractionalPoint,
    VertexId,
)

log = logging.getLogger(__name__)

DEFAULT_TOUR_CAP = 6


@dataclass(frozen=True)
class Tour:
    """Cyclic alternating vertex sequence plus its edge set."""

    vertices: tuple[VertexId, ...]
    edges: frozenset[Edge]

    def as_point(self, instance: BipartiteInstance) -> FractionalPoint:
        return FractionalPoint.from_unit_edges(instance, self.edges)


class FacetVerdict(Enum):
    FACET = "facet"
    SUPPORTING_NON_FACET = "supporting_non_facet"
    NOT_SUPPORTING = "not_supporting"
    NOT_VALID = "not_valid"


@dataclass(frozen=True)
class FacetReport:
    polytope_dim: int
    tight_tour_count: int
    tight_face_dim: int
    verdict: FacetVerdict

    def as_dict(self) -> dict:
        return {
            "polytope_dim": self.polytope_dim,
            "tight_tour_count": self.tight_tour_count,
            "tight_face_dim": self.tight_face_dim,
            "verdict": self.verdict.value,
        }


def enumerate_tours(
    instance: BipartiteInstance, cap: int = DEFAULT_TOUR_CAP
) -> Iterator[Tour]:
    """Every Hamiltonian tour of the instance, canonical form, once each."""
    if not instance.tours_possible:
        log.info(
            "no tours: class sizes differ (%d vs %d)", instance.n1, instance.n2
        )
        return
    n = instance.n1
    if n > cap:
        raise EnumerationCapError("tour enumeration", n, cap)
    adj12 = [0] * n
    adj21 = [0] * n
    for e in instance.edges:
        adj12[e.u.index] |= 1 << e.v.index
        adj21[e.v.index] |= 1 << e.u.index
    for seq in _kernels.hamiltonian_cycles(n, adj12, adj21):
        vertices = tuple(
            VertexId(CLASS1 if k % 2 == 0 else CLASS2, idx)
            for k, idx in enumerate(seq)
        )
        edges = frozenset(
            Edge(vertices[k], vertices[(k + 1) % len(vertices)])
            for k in range(len(vertices))
        )
        yield Tour(vertices, edges)


def _reduce_row(row: list[int]) -> list[int]:
    g = 0
    for v in row:
        g = gcd(g, v)
    if g > 1:
        row = [v // g for v in row]
    return row


class _IntEchelon:
    """Incremental integer row echelon; exact rank over the rationals."""

    def __init__(self, width: int):
        self.width = width
        self.pivots: list[tuple[int, list[int]]] = []  # (pivot col, row)

    def add(self, row: Sequence[int]) -> bool:
        work = list(row)
        for col, base in self.pivots:
            if work[col]:
                factor_base = work[col]
                factor_work = base[col]
                work = [
                    factor_work * w - factor_base * b for w, b in zip(work, base)
                ]
                work = _reduce_row(work)
        for col, v in enumerate(work):
            if v:
                self.pivots.append((col, _reduce_row(work)))
                self.pivots.sort(key=lambda item: item[0])
                return True
        return False

    @property
    def rank(self) -> int:
        return len(self.pivots)


def _edge_order(instance: BipartiteInstance) -> list[Edge]:
    return sorted(instance.edges)


def _incidence_row(tour: Tour, edge_index: dict[Edge, int]) -> list[int]:
    row = [0] * len(edge_index)
    for e in tour.edges:
        row[edge_index[e]] = 1
    return row


def _affine_rank(instance: BipartiteInstance, tours: Iterable[Tour]) -> int:
    edges = _edge_order(instance)
    edge_index = {e: k for k, e in enumerate(edges)}
    echelon = _IntEchelon(len(edges))
    base: list[int] | None = None
    for tour in tours:
        row = _incidence_row(tour, edge_index)
        if base is None:
            base = row
            continue
        echelon.add([a - b for a, b in zip(row, base)])
    if base is None:
        raise NoToursError("instance has no Hamiltonian tour")
    return echelon.rank


def polytope_dimension(
    instance: BipartiteInstance, cap: int = DEFAULT_TOUR_CAP
) -> int:
    """Affine dimension of the convex hull of the tour incidence vectors."""
    return _affine_rank(instance, enumerate_tours(instance, cap))


def facet_test(
    instance: BipartiteInstance,
    ineq: LinearInequality,
    cap: int = DEFAULT_TOUR_CAP,
    polytope_dim: int | None = None,
) -> FacetReport:
    """Validity on all tours, tight-face dimension, and the verdict.

    `polytope_dim` can be supplied to amortize the full-rank computation
    across many inequalities of the same instance.
    """
    tours = list(enumerate_tours(instance, cap))
    if not tours:
        raise NoToursError("instance has no Hamiltonian tour")
    if polytope_dim is None:
        polytope_dim = _affine_rank(instance, tours)

    tight: list[Tour] = []
    valid = True
    for tour in tours:
        value, ok = evaluate(ineq, tour.as_point(instance))
        if not ok:
            valid = False
            break
        if value == ineq.rhs:
            tight.append(tour)

    if not valid:
        return FacetReport(polytope_dim, 0, -1, FacetVerdict.NOT_VALID)
    if not tight:
        return FacetReport(polytope_dim, 0, -1, FacetVerdict.NOT_SUPPORTING)
    tight_dim = _affine_rank(instance, tight)
    verdict = (
        FacetVerdict.FACET
        if tight_dim == polytope_dim - 1
        else FacetVerdict.SUPPORTING_NON_FACET
    )
    return FacetReport(polytope_dim, len(tight), tight_dim, verdict)


def expected_tour_count(n: int) -> int:
    """n! (n-1)! / 2 undirected tours on the complete K_{n,n} (n >= 2)."""
    from math import factorial

    if n < 2:
        return 0
    return factorial(n) * factorial(n - 1) // 2

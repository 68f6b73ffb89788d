"""Bipartite instances, edge identity, and exact-rational edge weightings.

Every vertex belongs to one of two classes; an edge always joins class 1
to class 2 and is stored in that order, so ``Edge(u, v) == Edge(v, u)``.
Instances carry string labels for I/O while all combinatorial work runs
on dense ``(cls, index)`` pairs.

A weighting (`FractionalPoint`) is a candidate point of the relaxation:
a sparse map from existing edges to rationals, absent edges fixed to 0.
Weights are normally in [0, 1] but the constructor does not enforce it;
bound violations are the feasibility checker's job to report.

All types are immutable after construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, Mapping

from .errors import UnknownEdgeError, UnknownVertexError

CLASS1 = 1
CLASS2 = 2


@dataclass(frozen=True, order=True)
class VertexId:
    cls: int
    index: int

    def __post_init__(self):
        if self.cls not in (CLASS1, CLASS2):
            raise ValueError(f"vertex class must be 1 or 2, got {self.cls}")
        if self.index < 0:
            raise ValueError(f"vertex index must be nonnegative, got {self.index}")


@dataclass(frozen=True, order=True)
class Edge:
    """Unordered bipartite edge; `u` is the class-1 endpoint after normalization."""

    u: VertexId
    v: VertexId

    def __post_init__(self):
        u, v = self.u, self.v
        if u.cls == CLASS2 and v.cls == CLASS1:
            object.__setattr__(self, "u", v)
            object.__setattr__(self, "v", u)
        elif u.cls == v.cls:
            raise ValueError(f"edge endpoints must lie in opposite classes: {u}, {v}")

    def endpoints(self) -> tuple[VertexId, VertexId]:
        return (self.u, self.v)

    def touches(self, vertex: VertexId) -> bool:
        return self.u == vertex or self.v == vertex


@dataclass(frozen=True)
class BipartiteInstance:
    """Vertex bipartition plus the set of edges present between the classes.

    Equal class sizes are not required; `tours_possible` reports whether a
    Hamiltonian tour can exist at all.  Edges absent from `edges` are not
    forbidden variables, they are variables fixed to weight 0.
    """

    class1_labels: tuple[str, ...]
    class2_labels: tuple[str, ...]
    edges: frozenset[Edge]

    def __post_init__(self):
        object.__setattr__(self, "class1_labels", tuple(self.class1_labels))
        object.__setattr__(self, "class2_labels", tuple(self.class2_labels))
        object.__setattr__(self, "edges", frozenset(self.edges))
        labels = list(self.class1_labels) + list(self.class2_labels)
        if len(set(labels)) != len(labels):
            raise ValueError("vertex labels must be unique across both classes")
        for e in self.edges:
            if e.u.index >= self.n1 or e.v.index >= self.n2:
                raise ValueError(f"edge {e} references a vertex outside the instance")

    @property
    def n1(self) -> int:
        return len(self.class1_labels)

    @property
    def n2(self) -> int:
        return len(self.class2_labels)

    @property
    def num_vertices(self) -> int:
        return self.n1 + self.n2

    @property
    def tours_possible(self) -> bool:
        return self.n1 == self.n2

    @classmethod
    def complete(cls, n1: int, n2: int | None = None) -> "BipartiteInstance":
        """K_{n1,n2} with labels u0.. / v0.. (n2 defaults to n1)."""
        if n2 is None:
            n2 = n1
        edges = frozenset(
            Edge(VertexId(CLASS1, i), VertexId(CLASS2, j))
            for i in range(n1)
            for j in range(n2)
        )
        return cls(
            tuple(f"u{i}" for i in range(n1)),
            tuple(f"v{j}" for j in range(n2)),
            edges,
        )

    def vertices(self) -> Iterator[VertexId]:
        """All vertices, class 1 first, ascending index within each class."""
        for i in range(self.n1):
            yield VertexId(CLASS1, i)
        for j in range(self.n2):
            yield VertexId(CLASS2, j)

    def contains(self, vertex: VertexId) -> bool:
        size = self.n1 if vertex.cls == CLASS1 else self.n2
        return 0 <= vertex.index < size

    def require_vertex(self, vertex: VertexId) -> None:
        if not self.contains(vertex):
            raise UnknownVertexError(f"vertex {vertex} is not in the instance")

    def label(self, vertex: VertexId) -> str:
        self.require_vertex(vertex)
        table = self.class1_labels if vertex.cls == CLASS1 else self.class2_labels
        return table[vertex.index]

    def vertex(self, label: str) -> VertexId:
        v = self._label_table.get(label)
        if v is None:
            raise UnknownVertexError(f"unknown vertex label {label!r}")
        return v

    @cached_property
    def _label_table(self) -> dict[str, VertexId]:
        table = {lab: VertexId(CLASS1, i) for i, lab in enumerate(self.class1_labels)}
        table.update(
            (lab, VertexId(CLASS2, j)) for j, lab in enumerate(self.class2_labels)
        )
        return table

    @cached_property
    def _incidence(self) -> dict[VertexId, tuple[Edge, ...]]:
        table: dict[VertexId, list[Edge]] = {v: [] for v in self.vertices()}
        for e in sorted(self.edges):
            table[e.u].append(e)
            table[e.v].append(e)
        return {v: tuple(es) for v, es in table.items()}

    def incident(self, vertex: VertexId) -> tuple[Edge, ...]:
        self.require_vertex(vertex)
        return self._incidence[vertex]

    def has_edge(self, a: VertexId, b: VertexId) -> bool:
        if a.cls == b.cls:
            return False
        return Edge(a, b) in self.edges

    def global_index(self, vertex: VertexId) -> int:
        """Dense index over all vertices: class 1 block then class 2 block."""
        self.require_vertex(vertex)
        return vertex.index if vertex.cls == CLASS1 else self.n1 + vertex.index

    def vertex_at(self, global_index: int) -> VertexId:
        if 0 <= global_index < self.n1:
            return VertexId(CLASS1, global_index)
        if self.n1 <= global_index < self.num_vertices:
            return VertexId(CLASS2, global_index - self.n1)
        raise UnknownVertexError(f"global index {global_index} out of range")

    def labels_of(self, vertices: Iterable[VertexId]) -> tuple[str, ...]:
        return tuple(self.label(v) for v in sorted(vertices))


class FractionalPoint:
    """Sparse edge -> rational weighting over an instance's edges."""

    __slots__ = ("instance", "_weights")

    def __init__(self, instance: BipartiteInstance, weights: Mapping[Edge, object]):
        self.instance = instance
        store: dict[Edge, Fraction] = {}
        for e, w in weights.items():
            if e not in instance.edges:
                raise UnknownEdgeError(f"edge {e} is not in the instance")
            store[e] = Fraction(w)
        self._weights = store

    @classmethod
    def from_unit_edges(
        cls, instance: BipartiteInstance, edges: Iterable[Edge]
    ) -> "FractionalPoint":
        return cls(instance, {e: Fraction(1) for e in edges})

    def weight(self, edge: Edge) -> Fraction:
        return self._weights.get(edge, Fraction(0))

    def items(self) -> Iterator[tuple[Edge, Fraction]]:
        return iter(sorted(self._weights.items()))

    def support(self) -> frozenset[Edge]:
        return frozenset(e for e, w in self._weights.items() if w != 0)

    def __len__(self) -> int:
        return len(self._weights)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FractionalPoint):
            return NotImplemented
        return self.instance == other.instance and dict(
            (e, w) for e, w in self._weights.items()
        ) == dict((e, w) for e, w in other._weights.items())

    def __repr__(self) -> str:
        return f"FractionalPoint({len(self._weights)} weighted edges)"

    def replace(self, edge: Edge, weight) -> "FractionalPoint":
        """A copy with one weight changed (points themselves are immutable)."""
        new = dict(self._weights)
        new[edge] = Fraction(weight)
        return FractionalPoint(self.instance, new)


def degree(point: FractionalPoint, vertex: VertexId) -> Fraction:
    """Sum of the weights of the edges incident with `vertex`."""
    point.instance.require_vertex(vertex)
    return sum(
        (point.weight(e) for e in point.instance.incident(vertex)),
        Fraction(0),
    )


def set_weight(point: FractionalPoint, vertices: Iterable[VertexId]) -> Fraction:
    """Total weight of the edges with both endpoints in `vertices`."""
    vset = frozenset(vertices)
    for v in vset:
        point.instance.require_vertex(v)
    total = Fraction(0)
    for e, w in point.items():
        if e.u in vset and e.v in vset:
            total += w
    return total

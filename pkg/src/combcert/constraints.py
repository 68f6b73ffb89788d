"""Relaxation constraint families and exact feasibility checking.

Three families describe the relaxation polytope of an instance:

  degree      sum of edge weights at each vertex <= 2 (or == 2 in tour form)
  subtour     x(S) <= |S| - 1 for every vertex subset with 3 <= |S| <= N - 1
  bounds      0 <= x_e <= 1 per edge

All proofs in this package use the <= form of the degree constraints; the
== form exists for tour validation.  Size-2 subsets are excluded from the
subtour family on purpose: the x <= 1 bound already covers them, and the
feasibility checker relies on the bounds for that case.

Subtour enumeration is exhaustive by design (desk scale) and refuses to
run above a configurable vertex cap.  The subset sweep itself is delegated
to `combcert._kernels`.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Iterator, Literal, Mapping

from . import _kernels
from .errors import EnumerationCapError
from .graph import BipartiteInstance, Edge, FractionalPoint, VertexId, degree
from .rational import common_denominator

DEFAULT_ENUMERATION_CAP = 24

DegreeMode = Literal["le", "eq"]


class ConstraintKind(Enum):
    DEGREE_LE2 = "degree_le2"
    DEGREE_EQ2 = "degree_eq2"
    SUBTOUR_ELIM = "subtour"
    UPPER_BOUND = "upper_bound"
    LOWER_BOUND = "lower_bound"
    COMB = "comb"
    AGGREGATE = "aggregate"


@dataclass(frozen=True, eq=True)
class LinearInequality:
    """Sparse row ``coeffs . x (<=|==) rhs`` over an instance's edges.

    The relation is <= for every kind except DEGREE_EQ2 (equality); lower
    bounds are stored negated (-x_e <= 0) so the relation never flips.
    """

    coeffs: Mapping[Edge, Fraction]
    rhs: Fraction
    kind: ConstraintKind
    provenance: str

    def __post_init__(self):
        object.__setattr__(
            self, "coeffs", {e: Fraction(c) for e, c in self.coeffs.items() if c != 0}
        )
        object.__setattr__(self, "rhs", Fraction(self.rhs))

    @property
    def is_equality(self) -> bool:
        return self.kind is ConstraintKind.DEGREE_EQ2

    def value_on(self, point: FractionalPoint) -> Fraction:
        return sum(
            (c * point.weight(e) for e, c in self.coeffs.items()), Fraction(0)
        )

    def __repr__(self) -> str:
        rel = "==" if self.is_equality else "<="
        return f"LinearInequality({self.provenance}: {len(self.coeffs)} terms {rel} {self.rhs})"


@dataclass(frozen=True)
class FeasibilityReport:
    feasible: bool
    violations: tuple[tuple[LinearInequality, Fraction], ...]


def evaluate(
    ineq: LinearInequality, point: FractionalPoint
) -> tuple[Fraction, bool]:
    """Value of the row at the point, and whether the relation holds."""
    value = ineq.value_on(point)
    satisfied = value == ineq.rhs if ineq.is_equality else value <= ineq.rhs
    return value, satisfied


def degree_constraint(
    instance: BipartiteInstance, vertex: VertexId, mode: DegreeMode = "le"
) -> LinearInequality:
    kind = ConstraintKind.DEGREE_LE2 if mode == "le" else ConstraintKind.DEGREE_EQ2
    return LinearInequality(
        {e: Fraction(1) for e in instance.incident(vertex)},
        Fraction(2),
        kind,
        f"degree({instance.label(vertex)})",
    )


def gen_degree(
    instance: BipartiteInstance, mode: DegreeMode = "le"
) -> list[LinearInequality]:
    """One degree row per vertex, in class-1-then-class-2 order."""
    if mode not in ("le", "eq"):
        raise ValueError(f"mode must be 'le' or 'eq', got {mode!r}")
    return [degree_constraint(instance, v, mode) for v in instance.vertices()]


def _set_provenance(instance: BipartiteInstance, subset: frozenset[VertexId]) -> str:
    return "sec{" + ",".join(instance.labels_of(subset)) + "}"


def sec_constraint(
    instance: BipartiteInstance, subset: Iterable[VertexId]
) -> LinearInequality:
    """x(S) <= |S| - 1 on an explicit set (no size policing here).

    Sizes outside the 3..N-1 window are legal to build by hand; only the
    generated family respects the window.
    """
    vset = frozenset(subset)
    for v in vset:
        instance.require_vertex(v)
    coeffs = {
        e: Fraction(1) for e in instance.edges if e.u in vset and e.v in vset
    }
    return LinearInequality(
        coeffs,
        Fraction(len(vset) - 1),
        ConstraintKind.SUBTOUR_ELIM,
        _set_provenance(instance, vset),
    )


def upper_bound(instance: BipartiteInstance, edge: Edge) -> LinearInequality:
    label = f"{instance.label(edge.u)}-{instance.label(edge.v)}"
    return LinearInequality(
        {edge: Fraction(1)}, Fraction(1), ConstraintKind.UPPER_BOUND, f"ub({label})"
    )


def lower_bound(instance: BipartiteInstance, edge: Edge) -> LinearInequality:
    label = f"{instance.label(edge.u)}-{instance.label(edge.v)}"
    return LinearInequality(
        {edge: Fraction(-1)}, Fraction(0), ConstraintKind.LOWER_BOUND, f"lb({label})"
    )


def _sec_size_range(
    instance: BipartiteInstance, size_bounds: tuple[int, int] | None
) -> tuple[int, int]:
    n = instance.num_vertices
    if size_bounds is None:
        # Empty window on instances too small to have any subtour row.
        return 3, n - 1
    lo, hi = size_bounds
    if lo < 1 or hi > n - 1 or lo > hi:
        raise ValueError(
            f"subtour size range [{lo}, {hi}] invalid for {n} vertices"
        )
    return lo, hi


def gen_secs(
    instance: BipartiteInstance,
    size_bounds: tuple[int, int] | None = None,
    cap: int = DEFAULT_ENUMERATION_CAP,
) -> Iterator[LinearInequality]:
    """Stream every subtour row in the size window, smallest sets first."""
    n = instance.num_vertices
    if n > cap:
        raise EnumerationCapError("subtour enumeration", n, cap)
    lo, hi = _sec_size_range(instance, size_bounds)
    order = list(instance.vertices())
    for size in range(lo, hi + 1):
        for combo in combinations(order, size):
            yield sec_constraint(instance, combo)


def check_point(
    instance: BipartiteInstance,
    point: FractionalPoint,
    mode: DegreeMode = "le",
    size_bounds: tuple[int, int] | None = None,
    cap: int = DEFAULT_ENUMERATION_CAP,
) -> FeasibilityReport:
    """Evaluate every degree row, every subtour row in range, and the bounds.

    Arithmetic is exact; the subset sweep runs on integer-scaled weights via
    the kernel backend and only the violated subsets are materialized.
    """
    if point.instance != instance:
        raise ValueError("point does not belong to this instance")
    n = instance.num_vertices
    if n > cap:
        raise EnumerationCapError("subtour enumeration", n, cap)
    lo, hi = _sec_size_range(instance, size_bounds)

    violations: list[tuple[LinearInequality, Fraction]] = []

    for row in gen_degree(instance, mode):
        value, ok = evaluate(row, point)
        if not ok:
            violations.append((row, value))

    for e, w in point.items():
        if w > 1:
            violations.append((upper_bound(instance, e), w))
        if w < 0:
            violations.append((lower_bound(instance, e), -w))

    weighted = [(e, w) for e, w in point.items() if w != 0]
    denom = common_denominator(w for _, w in weighted)
    masks = [
        (1 << instance.global_index(e.u)) | (1 << instance.global_index(e.v))
        for e, _ in weighted
    ]
    scaled = [int(w * denom) for _, w in weighted]
    for mask, value in _kernels.sec_violations(n, masks, scaled, denom, lo, hi):
        subset = frozenset(
            instance.vertex_at(i) for i in range(n) if mask & (1 << i)
        )
        violations.append((sec_constraint(instance, subset), Fraction(value, denom)))

    violations.sort(key=lambda item: item[0].provenance)
    return FeasibilityReport(feasible=not violations, violations=tuple(violations))

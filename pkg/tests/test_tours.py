import random
from fractions import Fraction

import pytest

from combcert import (
    BipartiteInstance,
    Edge,
    EnumerationCapError,
    LinearInequality,
    NoToursError,
    comb_inequality,
    enumerate_tours,
    expected_tour_count,
    facet_test,
    polytope_dimension,
    sec_constraint,
)
from combcert.constraints import ConstraintKind
from combcert.search import sample_comb
from combcert.certificates import BUILDERS, verify
from combcert.tours import FacetVerdict, _affine_rank
from oracles import fraction_rank, is_hamiltonian_cycle


@pytest.mark.parametrize("n,count", [(2, 1), (3, 6), (4, 72)])
def test_tour_counts(n, count):
    instance = BipartiteInstance.complete(n)
    tours = list(enumerate_tours(instance))
    assert len(tours) == count == expected_tour_count(n)


def test_tours_are_distinct_and_valid(k44):
    tours = list(enumerate_tours(k44))
    assert len({t.edges for t in tours}) == len(tours)
    for t in tours:
        assert is_hamiltonian_cycle(k44, t)
        assert len(t.edges) == k44.num_vertices


def test_unequal_classes_yield_no_tours():
    instance = BipartiteInstance.complete(3, 2)
    assert list(enumerate_tours(instance)) == []
    with pytest.raises(NoToursError):
        polytope_dimension(instance)


def test_tour_cap():
    with pytest.raises(EnumerationCapError):
        list(enumerate_tours(BipartiteInstance.complete(7)))


def test_sparse_instance_tours():
    # An 8-cycle as the whole instance: exactly one tour.
    n = 4
    edges = set()
    for i in range(n):
        edges.add(Edge_(1, i, 2, i))
        edges.add(Edge_(1, (i + 1) % n, 2, i))
    instance = BipartiteInstance(
        tuple(f"u{i}" for i in range(n)),
        tuple(f"v{i}" for i in range(n)),
        frozenset(edges),
    )
    tours = list(enumerate_tours(instance))
    assert len(tours) == 1
    assert tours[0].edges == frozenset(edges)


def Edge_(c1, i1, c2, i2):
    from combcert import VertexId

    return Edge(VertexId(c1, i1), VertexId(c2, i2))


def test_dimension_small_instances(k33, k44):
    assert polytope_dimension(BipartiteInstance.complete(2)) == 0
    assert polytope_dimension(k33) == 4
    # 2n degree equalities have rank 2n - 1 on a connected bipartite graph,
    # so the dimension can be at most n^2 - (2n - 1) = 9; it is exactly 9.
    assert polytope_dimension(k44) == 9


def test_dimension_matches_fraction_gauss_oracle(k33):
    tours = list(enumerate_tours(k33))
    edges = sorted(k33.edges)
    index = {e: k for k, e in enumerate(edges)}
    base = [0] * len(edges)
    for e in tours[0].edges:
        base[index[e]] = 1
    rows = []
    for t in tours[1:]:
        row = [0] * len(edges)
        for e in t.edges:
            row[index[e]] = 1
        rows.append([a - b for a, b in zip(row, base)])
    assert fraction_rank(rows) == polytope_dimension(k33) == 4


def test_facet_verdicts_for_subtour_row(k33):
    row = sec_constraint(
        k33, {k33.vertex("u0"), k33.vertex("u1"), k33.vertex("v0")}
    )
    report = facet_test(k33, row)
    assert report.verdict in (
        FacetVerdict.FACET,
        FacetVerdict.SUPPORTING_NON_FACET,
    )
    assert report.polytope_dim == 4
    assert report.tight_tour_count > 0
    # Cross-check the tight face dimension against the naive rank oracle.
    tights = [
        t
        for t in enumerate_tours(k33)
        if row.value_on(t.as_point(k33)) == row.rhs
    ]
    assert report.tight_tour_count == len(tights)
    assert report.tight_face_dim == _affine_rank(k33, tights)


def test_facet_trivial_inequality_not_supporting(k33):
    trivial = LinearInequality({}, Fraction(1), ConstraintKind.AGGREGATE, "0<=1")
    report = facet_test(k33, trivial)
    assert report.verdict is FacetVerdict.NOT_SUPPORTING
    assert report.tight_tour_count == 0


def test_facet_invalid_inequality(k33):
    e = sorted(k33.edges)[0]
    impossible = LinearInequality(
        {e: Fraction(1)}, Fraction(-1), ConstraintKind.AGGREGATE, "x<=-1"
    )
    assert facet_test(k33, impossible).verdict is FacetVerdict.NOT_VALID


def test_certified_combs_never_facet_on_k44(k44):
    rng = random.Random(616)
    dim = polytope_dimension(k44)
    for k in range(15):
        family = ("l1", "l2", "l3", "t1", "t2")[k % 5]
        comb = sample_comb(rng, k44, family)
        cert = BUILDERS[family.upper()](k44, comb)
        assert verify(k44, cert).dominates
        report = facet_test(
            k44, comb_inequality(k44, comb), polytope_dim=dim
        )
        assert report.verdict is not FacetVerdict.FACET
        assert report.tight_tour_count == 0 or report.tight_face_dim < dim - 1

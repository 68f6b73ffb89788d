"""Aggregation certificates: sums of degree/subtour rows dominating a comb row.

A certificate is a multiset of valid relaxation rows, each with implicit
coefficient 1, such that (a) summed coefficients cover the comb row's
coefficient on every edge and (b) the summed right-hand sides do not
exceed the comb row's right-hand side.  Any point with nonnegative
weights satisfying every member then satisfies the comb row, so a
verified certificate proves the comb row is implied by the relaxation.

Members come in two shapes:

  degree   a vertex's degree row restricted to an explicit edge subset
           (valid because weights are nonnegative), right-hand side 2
  sec      x(S) <= |S| - 1 on an explicit vertex set; size-2 sets reduce
           to the x <= 1 bound and singletons degenerate to 0 <= 0, both
           still valid rows of the relaxation

All five builders instantiate one member recipe, parameterized by a class
orientation, on the intersection pattern of the comb.  For a tooth listed
before position p (it meets H^1):

  * each vertex a in H^1 n T_i contributes its degree row restricted to
    a -> T_i and a -> H^2 \\ T_i;
  * each vertex b in H^2 n T_i contributes its degree row restricted to
    b -> T_i only (hand edges leaving the tooth are deliberately dropped;
    the H^1 side already covers them);
  * the set T_i \\ H contributes its subtour row.

A tooth listed after position p contributes the subtour row of the whole
tooth.  Each toothless H^1 vertex contributes its degree row restricted
to the hand.  Edges inside H^1 n T_i x H^2 n T_i end up covered twice,
matching their coefficient 2 in the comb row.

The builders differ only in the hypotheses they insist on and in how the
orientation is chosen; hypothesis checking itself is `combs.classify`'s
job.  Builders refuse (raise) rather than fall back when hypotheses fail.
For the single-intersection and one-class-per-tooth families the recipe
is attempted in both orientations and a counting argument guarantees one
of them dominates: both slacks are integers and their sum equals
sum(s_i) + sum_{i>p} r_i - 1 >= -1, so they cannot both be negative.
`parity_audit` exposes exactly that arithmetic for testing.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping

from .combs import (
    Comb,
    IntersectionPattern,
    classify,
    comb_inequality,
    extract_pattern,
    hand_classes,
    require_valid,
)
from .constraints import ConstraintKind, LinearInequality
from .errors import CertificateInvariantError, HypothesisNotMetError
from .graph import BipartiteInstance, Edge, VertexId


@dataclass(frozen=True)
class CertificateMember:
    """One valid row of the relaxation, identified structurally.

    kind "degree": `vertex` plus the explicit `support` (a subset of its
    incident edges).  kind "sec": `vertex_set`; the support is derived
    from the instance and never trusted from the builder.
    """

    kind: str
    vertex: VertexId | None = None
    vertex_set: frozenset[VertexId] = frozenset()
    support: frozenset[Edge] = frozenset()
    note: str = ""


@dataclass(frozen=True)
class Certificate:
    builder: str
    comb: Comb
    members: tuple[CertificateMember, ...]
    orientation: int


@dataclass(frozen=True)
class CertificateReport:
    dominates: bool
    slack: Fraction
    edge_surplus: Mapping[Edge, Fraction]
    problems: tuple[str, ...]


def _degree_member(
    instance: BipartiteInstance,
    vertex: VertexId,
    partners,
    note: str,
) -> CertificateMember:
    support = frozenset(
        Edge(vertex, u)
        for u in partners
        if u.cls != vertex.cls and Edge(vertex, u) in instance.edges
    )
    return CertificateMember(
        kind="degree", vertex=vertex, support=support, note=note
    )


def _sec_member(
    instance: BipartiteInstance, vertex_set, note: str
) -> CertificateMember:
    vset = frozenset(vertex_set)
    support = frozenset(
        e for e in instance.edges if e.u in vset and e.v in vset
    )
    return CertificateMember(
        kind="sec", vertex_set=vset, support=support, note=note
    )


def member_rhs(member: CertificateMember) -> Fraction:
    if member.kind == "degree":
        return Fraction(2)
    return Fraction(len(member.vertex_set) - 1)


def member_inequality(
    instance: BipartiteInstance, member: CertificateMember
) -> LinearInequality:
    if member.kind == "degree":
        label = instance.label(member.vertex)
        return LinearInequality(
            {e: Fraction(1) for e in member.support},
            Fraction(2),
            ConstraintKind.DEGREE_LE2,
            f"deg[{label}] {member.note}".strip(),
        )
    coeffs = {
        e: Fraction(1)
        for e in instance.edges
        if e.u in member.vertex_set and e.v in member.vertex_set
    }
    labels = ",".join(instance.labels_of(member.vertex_set))
    return LinearInequality(
        coeffs,
        Fraction(len(member.vertex_set) - 1),
        ConstraintKind.SUBTOUR_ELIM,
        f"sec{{{labels}}} {member.note}".strip(),
    )


def aggregation_members(
    instance: BipartiteInstance, comb: Comb, pattern: IntersectionPattern
) -> tuple[tuple[CertificateMember, ...], Fraction]:
    """The member recipe for one orientation, plus its aggregate rhs."""
    h1, h2 = hand_classes(comb, pattern.orientation)
    toothed = comb.toothed()
    members: list[CertificateMember] = []
    for pos, ti in enumerate(pattern.tooth_order):
        tooth = comb.teeth[ti]
        if pos < pattern.p:
            for a in sorted(tooth & h1):
                members.append(
                    _degree_member(
                        instance,
                        a,
                        tooth | (h2 - tooth),
                        f"tooth {ti + 1} hand side",
                    )
                )
            for b in sorted(tooth & h2):
                members.append(
                    _degree_member(instance, b, tooth, f"tooth {ti + 1} crossing")
                )
            members.append(
                _sec_member(instance, tooth - comb.hand, f"tooth {ti + 1} interior")
            )
        else:
            members.append(_sec_member(instance, tooth, f"tooth {ti + 1}"))
    for a in sorted(h1 - toothed):
        members.append(_degree_member(instance, a, h2, "toothless"))
    agg_rhs = sum((member_rhs(m) for m in members), Fraction(0))
    return tuple(members), agg_rhs


def _patterns(instance, comb) -> tuple[IntersectionPattern, IntersectionPattern]:
    return (
        extract_pattern(instance, comb),
        extract_pattern(instance, comb, swap_classes=True),
    )


def _target_rhs(instance, comb) -> Fraction:
    return comb_inequality(instance, comb).rhs


def build_l1(instance: BipartiteInstance, comb: Comb) -> Certificate:
    """Certificate for combs with one hand vertex per tooth, none toothless.

    Uses the orientation putting the minority class first; with t odd the
    two tooth counts always differ, and the majority-side subtour rows
    leave enough room for the aggregate rhs to stay under the target.
    """
    flags = classify(instance, comb)
    if not flags.single_all_toothed:
        raise HypothesisNotMetError(
            "needs |hand n tooth| = 1 for every tooth and no toothless hand vertex"
        )
    for pat in _patterns(instance, comb):
        if pat.p < pat.q:
            members, _ = aggregation_members(instance, comb, pat)
            return Certificate("L1", comb, members, pat.orientation)
    raise CertificateInvariantError("no orientation with p < q; t must be even?")


def build_l2(instance: BipartiteInstance, comb: Comb) -> Certificate:
    """Certificate for single-intersection combs, toothless vertices allowed.

    Tries the classes as given; if the aggregate rhs overshoots the target,
    the swapped orientation is guaranteed to work (integer slacks summing
    to -1 cannot both be negative).
    """
    flags = classify(instance, comb)
    if not flags.single:
        raise HypothesisNotMetError("needs |hand n tooth| = 1 for every tooth")
    target = _target_rhs(instance, comb)
    fallback = None
    for pat in _patterns(instance, comb):
        members, agg = aggregation_members(instance, comb, pat)
        if agg <= target:
            return Certificate("L2", comb, members, pat.orientation)
        fallback = (members, agg)
    raise CertificateInvariantError(
        f"both orientations overshoot the target rhs {target} (last {fallback[1]})"
    )


def build_l3(instance: BipartiteInstance, comb: Comb) -> Certificate:
    """Certificate for fully-toothed combs whose teeth meet one class in a
    minority of positions (p < q after sorting)."""
    flags = classify(instance, comb)
    if not flags.sorted_minority:
        raise HypothesisNotMetError(
            "needs every hand vertex toothed and p < q in some orientation"
        )
    best = None
    for pat in _patterns(instance, comb):
        if pat.w == 0 and pat.y == 0 and pat.p < pat.q:
            members, agg = aggregation_members(instance, comb, pat)
            if best is None or agg < best[1]:
                best = (members, agg, pat.orientation)
    if best is None:
        raise CertificateInvariantError("classified sorted_minority but no orientation fits")
    return Certificate("L3", comb, best[0], best[2])


def build_t1(instance: BipartiteInstance, comb: Comb) -> Certificate:
    """Certificate for combs passing the toothless-vertex counting condition
    w <= y + (q-(p+1))/2 + sum_{i>p} r_i in some orientation."""
    flags = classify(instance, comb)
    if not flags.counted_slack:
        raise HypothesisNotMetError(
            "toothless-vertex condition fails in both orientations"
        )
    best = None
    for pat in _patterns(instance, comb):
        if pat.condition_holds():
            members, agg = aggregation_members(instance, comb, pat)
            if best is None or agg < best[1]:
                best = (members, agg, pat.orientation)
    if best is None:
        raise CertificateInvariantError("classified counted_slack but no orientation fits")
    return Certificate("T1", comb, best[0], best[2])


def build_t2(instance: BipartiteInstance, comb: Comb) -> Certificate:
    """Certificate for combs whose every tooth meets the hand in one class.

    Runs the recipe in both orientations; the counting identity
    slack_1 + slack_2 = sum(s) + sum(r) - 1 >= -1 over integer slacks
    guarantees at least one orientation dominates.
    """
    flags = classify(instance, comb)
    if not flags.one_class_per_tooth:
        raise HypothesisNotMetError(
            "needs every tooth to meet the hand inside a single class"
        )
    target = _target_rhs(instance, comb)
    best = None
    for pat in _patterns(instance, comb):
        members, agg = aggregation_members(instance, comb, pat)
        if agg <= target and (best is None or agg < best[1]):
            best = (members, agg, pat.orientation)
    if best is None:
        raise CertificateInvariantError("neither orientation dominates; parity broken")
    return Certificate("T2", comb, best[0], best[2])


BUILDERS: dict[str, Callable[[BipartiteInstance, Comb], Certificate]] = {
    "L1": build_l1,
    "L2": build_l2,
    "L3": build_l3,
    "T1": build_t1,
    "T2": build_t2,
}


def _validate_member(
    instance: BipartiteInstance, idx: int, member: CertificateMember
) -> list[str]:
    problems = []
    if member.kind == "degree":
        if member.vertex is None or not instance.contains(member.vertex):
            problems.append(f"member {idx}: degree member without a valid vertex")
            return problems
        incident = set(instance.incident(member.vertex))
        for e in sorted(member.support):
            if e not in instance.edges:
                problems.append(f"member {idx}: support edge {e} not in the instance")
            elif e not in incident:
                problems.append(
                    f"member {idx}: support edge {e} not incident to "
                    f"{instance.label(member.vertex)}"
                )
    elif member.kind == "sec":
        if not member.vertex_set:
            problems.append(f"member {idx}: empty vertex set")
        for v in sorted(member.vertex_set):
            if not instance.contains(v):
                problems.append(f"member {idx}: unknown vertex {v}")
    else:
        problems.append(f"member {idx}: unknown member kind {member.kind!r}")
    return problems


def verify(instance: BipartiteInstance, certificate: Certificate) -> CertificateReport:
    """Recompute everything from scratch and check domination.

    Nothing builder-side is trusted: member rows are re-derived from their
    structural identity, the per-edge sums and aggregate rhs are recomputed,
    and the target comb row is rebuilt from the comb.
    """
    require_valid(instance, certificate.comb)
    target = comb_inequality(instance, certificate.comb)

    problems: list[str] = []
    agg_coeffs: dict[Edge, Fraction] = {}
    agg_rhs = Fraction(0)
    for idx, member in enumerate(certificate.members):
        member_problems = _validate_member(instance, idx, member)
        problems.extend(member_problems)
        if member_problems:
            continue
        row = member_inequality(instance, member)
        agg_rhs += row.rhs
        for e, c in row.coeffs.items():
            agg_coeffs[e] = agg_coeffs.get(e, Fraction(0)) + c

    surplus: dict[Edge, Fraction] = {}
    for e in sorted(set(agg_coeffs) | set(target.coeffs)):
        surplus[e] = agg_coeffs.get(e, Fraction(0)) - target.coeffs.get(
            e, Fraction(0)
        )
    slack = target.rhs - agg_rhs

    for e, gap in surplus.items():
        if gap < 0:
            problems.append(
                f"edge {instance.label(e.u)}-{instance.label(e.v)} under-covered: "
                f"aggregate {agg_coeffs.get(e, 0)} < target {target.coeffs[e]}"
            )
    if slack < 0:
        problems.append(f"aggregate rhs exceeds target rhs by {-slack}")

    dominates = not problems
    return CertificateReport(
        dominates=dominates,
        slack=slack,
        edge_surplus=surplus,
        problems=tuple(problems),
    )


@dataclass(frozen=True)
class ParityAudit:
    """Both orientations' aggregate rhs values for a one-class-per-tooth comb.

    Mechanizes the orientation-switching argument: written with everything
    doubled, both comparison sides are even, so each `doubled_margin`
    (= 2 * slack) is an even integer; and the exact identity

        slack_1 + slack_2 == sum(s_i) + sum_{i>p} r_i - 1

    forces at least one slack to be >= 0.
    """

    target_rhs: Fraction
    aggregate_rhs: tuple[Fraction, Fraction]
    slack: tuple[Fraction, Fraction]
    doubled_margins: tuple[Fraction, Fraction]
    slack_sum_expected: Fraction


def parity_audit(instance: BipartiteInstance, comb: Comb) -> ParityAudit:
    flags = classify(instance, comb)
    if not flags.one_class_per_tooth:
        raise HypothesisNotMetError("parity audit needs one-class-per-tooth combs")
    target = _target_rhs(instance, comb)
    pats = _patterns(instance, comb)
    aggs = tuple(
        aggregation_members(instance, comb, pat)[1] for pat in pats
    )
    slacks = tuple(target - agg for agg in aggs)
    expected = Fraction(sum(pats[0].s) + pats[0].trailing_r_sum() - 1)
    return ParityAudit(
        target_rhs=target,
        aggregate_rhs=aggs,
        slack=slacks,
        doubled_margins=tuple(2 * s for s in slacks),
        slack_sum_expected=expected,
    )

import random
from fractions import Fraction

import pytest

from combcert import (
    BipartiteInstance,
    Comb,
    InvalidCombError,
    classify,
    comb_inequality,
    comb_value,
    extract_pattern,
    validate_comb,
)
from combcert.search import FAMILIES, sample_comb
from oracles import naive_comb_lhs


def _labels(instance, *names):
    return frozenset(instance.vertex(x) for x in names)


def test_table1_comb_valid(table1):
    instance, _, comb = table1
    assert validate_comb(instance, comb) == []


def test_even_tooth_count_rejected(table1):
    instance, _, comb = table1
    bad = Comb(comb.hand, comb.teeth[:2])
    problems = validate_comb(instance, bad)
    assert any("odd" in p for p in problems)


def test_overlapping_teeth_rejected(table1):
    instance, _, comb = table1
    g = instance.vertex("g")
    bad = Comb(comb.hand, (comb.teeth[0] | {g}, comb.teeth[1], comb.teeth[2]))
    problems = validate_comb(instance, bad)
    assert any("not disjoint" in p for p in problems)


def test_tooth_missing_hand_rejected(table2):
    instance, _, comb = table2
    # Dropping e from the hand leaves tooth 3 = {h, e} hanging free.
    bad = Comb(comb.hand - _labels(instance, "e"), comb.teeth)
    problems = validate_comb(instance, bad)
    assert any("does not meet the hand" in p for p in problems)
    with pytest.raises(InvalidCombError):
        comb_inequality(instance, bad)


def test_tooth_inside_hand_rejected(table1):
    instance, _, comb = table1
    swallowed = Comb(comb.hand | comb.teeth[0], comb.teeth)
    problems = validate_comb(instance, swallowed)
    assert any("outside the hand" in p for p in problems)


def test_comb_rhs_table1(table1):
    instance, _, comb = table1
    assert comb_inequality(instance, comb).rhs == 4 + (2 + 4 + 2) - 5 == 7


def test_comb_rhs_table2(table2):
    instance, _, comb = table2
    assert comb_inequality(instance, comb).rhs == 5 + (4 + 2 + 2) - 5 == 8


def test_comb_rhs_integral_for_odd_t():
    assert (3 * 3 + 1) // 2 == 5
    assert (3 * 3 + 1) % 2 == 0


def test_comb_coefficients_in_one_two(table1, table2):
    for instance, _, comb in (table1, table2):
        row = comb_inequality(instance, comb)
        assert set(row.coeffs.values()) <= {1, 2}
        for e, c in row.coeffs.items():
            if c == 2:
                inside = [
                    tooth
                    for tooth in comb.teeth
                    if e.u in tooth and e.v in tooth
                ]
                assert len(inside) == 1
                assert e.u in comb.hand and e.v in comb.hand


def test_comb_value_matches_coefficient_route(table1, table2):
    for instance, point, comb in (table1, table2):
        assert comb_value(point, comb) == naive_comb_lhs(point, comb)


def test_pattern_table2(table2):
    instance, _, comb = table2
    pat = extract_pattern(instance, comb)
    assert (pat.p, pat.q) == (1, 2)
    assert pat.s == (0,)
    assert pat.r == (1, 0, 0)
    assert (pat.w, pat.y) == (1, 0)
    assert pat.hand_size() == len(comb.hand) == 5


def test_pattern_table1(table1):
    instance, _, comb = table1
    pat = extract_pattern(instance, comb)
    assert (pat.p, pat.q) == (2, 1)
    assert (pat.w, pat.y) == (0, 0)
    pat2 = extract_pattern(instance, comb, swap_classes=True)
    assert (pat2.p, pat2.q) == (2, 1)  # one tooth meets both classes


def test_pattern_single_intersections_zero_counts(k44):
    comb = Comb(
        frozenset(
            {k44.vertex("u0"), k44.vertex("v0"), k44.vertex("v1")}
        ),
        (
            _labels(k44, "u0", "v2"),
            _labels(k44, "v0", "u1"),
            _labels(k44, "v1", "u2"),
        ),
    )
    pat = extract_pattern(k44, comb)
    assert pat.s == (0,) * pat.p
    assert all(r == 0 for r in pat.r)


def test_classify_table2_condition_fails_both(table2):
    instance, _, comb = table2
    flags = classify(instance, comb)
    assert [c.holds for c in flags.conditions] == [False, False]
    assert flags.conditions[0].w == 1
    assert flags.conditions[0].bound == 0
    assert flags.builder_names() == ()


def test_classify_table1_nothing_applies(table1):
    instance, _, comb = table1
    assert classify(instance, comb).builder_names() == ()


def test_classify_single_all_toothed_subsumption(k44):
    comb = Comb(
        _labels(k44, "u0", "v0", "v1"),
        (
            _labels(k44, "u0", "v2"),
            _labels(k44, "v0", "u1"),
            _labels(k44, "v1", "u2"),
        ),
    )
    flags = classify(k44, comb)
    assert flags.single_all_toothed and flags.single


def _pattern_pairs(pat):
    """Original tooth index -> (|H^1 n T|, |H^2 n T|) as the pattern sees it."""
    pairs = {}
    for pos, orig in enumerate(pat.tooth_order):
        if pos < pat.p:
            pairs[orig] = (1 + pat.s[pos], pat.r[pos])
        else:
            pairs[orig] = (0, 1 + pat.r[pos])
    return pairs


def test_swap_equivariance_and_hand_identity():
    rng = random.Random(31)
    for n in (4, 5):
        instance = BipartiteInstance.complete(n)
        for k in range(40):
            family = FAMILIES[k % len(FAMILIES)]
            comb = sample_comb(rng, instance, family)
            pat1 = extract_pattern(instance, comb)
            pat2 = extract_pattern(instance, comb, swap_classes=True)
            assert (pat1.w, pat1.y) == (pat2.y, pat2.w)
            assert (pat1.toothed1, pat1.toothed2) == (pat2.toothed2, pat2.toothed1)
            assert pat1.hand_size() == len(comb.hand) == pat2.hand_size()
            pairs1 = _pattern_pairs(pat1)
            pairs2 = _pattern_pairs(pat2)
            for orig in range(comb.t):
                h1, h2 = pairs1[orig]
                assert pairs2[orig] == (h2, h1)
            if classify(instance, comb).one_class_per_tooth:
                # With single-class teeth the counts and vector roles swap.
                assert (pat1.p, pat1.q) == (pat2.q, pat2.p)
                assert sorted(pat1.s) == sorted(pat2.r[pat2.p:])
                assert sorted(pat2.s) == sorted(pat1.r[pat1.p:])


def test_hypothesis_hierarchy_on_random_combs():
    rng = random.Random(57)
    for n in (4, 5, 6):
        instance = BipartiteInstance.complete(n)
        for k in range(60):
            family = FAMILIES[k % len(FAMILIES)]
            comb = sample_comb(rng, instance, family)
            flags = classify(instance, comb)
            if flags.single_all_toothed:
                assert flags.single
                assert flags.sorted_minority
            if flags.single:
                assert flags.one_class_per_tooth
            if flags.sorted_minority:
                assert flags.counted_slack
            if flags.one_class_per_tooth:
                assert flags.counted_slack

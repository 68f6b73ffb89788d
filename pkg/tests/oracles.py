"""Independent brute-force oracles the tests check the package against.

Everything here is deliberately naive and shares no code path with the
implementation: subset scans use Python sets, ranks use Fraction-based
Gaussian elimination, and LP optima come from enumerating candidate
vertices of the constraint system.
"""

from __future__ import annotations

import itertools
from fractions import Fraction


def naive_sec_violations(instance, point, lo, hi):
    """(subset, value) for every violated subtour bound, via set arithmetic."""
    out = []
    weights = list(point.items())
    for size in range(lo, hi + 1):
        for combo in itertools.combinations(list(instance.vertices()), size):
            sset = set(combo)
            value = sum(
                (w for e, w in weights if e.u in sset and e.v in sset), Fraction(0)
            )
            if value > size - 1:
                out.append((frozenset(sset), value))
    return out


def subset_count(n, lo, hi):
    """Number of subsets of an n-set with sizes in [lo, hi], by enumeration."""
    return sum(1 for size in range(lo, hi + 1) for _ in itertools.combinations(range(n), size))


def naive_comb_lhs(point, comb):
    """x(H) + sum x(T_i) recomputed from per-edge coefficient counting."""
    total = Fraction(0)
    for e, w in point.items():
        coeff = 0
        if e.u in comb.hand and e.v in comb.hand:
            coeff += 1
        for tooth in comb.teeth:
            if e.u in tooth and e.v in tooth:
                coeff += 1
        total += coeff * w
    return total


def is_hamiltonian_cycle(instance, tour):
    """Alternation, full coverage, adjacency, and closure, checked directly."""
    seq = tour.vertices
    if len(seq) != instance.num_vertices or len(set(seq)) != len(seq):
        return False
    for k, v in enumerate(seq):
        expected_cls = 1 if k % 2 == 0 else 2
        if v.cls != expected_cls:
            return False
    for k in range(len(seq)):
        a, b = seq[k], seq[(k + 1) % len(seq)]
        if not instance.has_edge(a, b):
            return False
    return True


def fraction_rank(rows):
    """Rank over the rationals by plain Gaussian elimination."""
    matrix = [[Fraction(v) for v in row] for row in rows]
    rank = 0
    cols = len(matrix[0]) if matrix else 0
    pivot_row = 0
    for col in range(cols):
        pivot = None
        for i in range(pivot_row, len(matrix)):
            if matrix[i][col] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        matrix[pivot_row], matrix[pivot] = matrix[pivot], matrix[pivot_row]
        pr = matrix[pivot_row]
        inv = Fraction(1) / pr[col]
        matrix[pivot_row] = [v * inv for v in pr]
        for i in range(len(matrix)):
            if i != pivot_row and matrix[i][col] != 0:
                f = matrix[i][col]
                matrix[i] = [a - f * b for a, b in zip(matrix[i], matrix[pivot_row])]
        pivot_row += 1
        rank += 1
    return rank


def _solve_square(rows, rhs):
    n = len(rhs)
    m = [list(r) + [b] for r, b in zip(rows, rhs)]
    for col in range(n):
        pivot = None
        for i in range(col, n):
            if m[i][col] != 0:
                pivot = i
                break
        if pivot is None:
            return None
        m[col], m[pivot] = m[pivot], m[col]
        pv = m[col][col]
        m[col] = [v / pv for v in m[col]]
        for i in range(n):
            if i != col and m[i][col] != 0:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[col])]
    return [m[i][n] for i in range(n)]


def vertex_enumeration_max(n_vars, constraints, objective):
    """Max of objective over {0 <= x <= 1, constraints}; None if infeasible.

    `constraints` are (coeff_vector, rhs, is_equality) triples.  Candidate
    vertices come from every choice of n_vars constraints (including box
    rows) solved as equalities; each candidate is kept only if it
    satisfies everything.
    """
    rows = list(constraints)
    for j in range(n_vars):
        unit = [Fraction(0)] * n_vars
        unit[j] = Fraction(1)
        rows.append((unit, Fraction(1), False))
        neg = [Fraction(0)] * n_vars
        neg[j] = Fraction(-1)
        rows.append((neg, Fraction(0), False))
    best = None
    for combo in itertools.combinations(range(len(rows)), n_vars):
        x = _solve_square([rows[i][0] for i in combo], [rows[i][1] for i in combo])
        if x is None:
            continue
        feasible = True
        for vec, rhs, is_eq in rows:
            value = sum((v * xi for v, xi in zip(vec, x)), Fraction(0))
            if (is_eq and value != rhs) or (not is_eq and value > rhs):
                feasible = False
                break
        if feasible:
            value = sum((c * xi for c, xi in zip(objective, x)), Fraction(0))
            if best is None or value > best:
                best = value
    return best

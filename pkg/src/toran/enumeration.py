"""Exhaustive listings: torsion points, small connected subgroups, and a
brute-force oracle for the minimal coset through a point.

Subgroups of codimension r in E^N are listed through r x N coefficient
matrices whose surrogate degree, the product over rows of the summed entry
norms, stays within a budget X.  Matrices are identified with the connected
subgroup they cut out, so the canonical label is the Hermite form of the
saturation; listing all matrices within X and filtering on the label's own
surrogate makes the output exactly the set of canonical labels within X.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt

from .mordell_weil import PointInEN
from .orders import EUCLIDEAN_DISCS, OrderElement
from .subgroups import (
    BudgetExceededError,
    SubgroupMatrix,
    TorsionPoint,
    _rank,
    degree_surrogate,
    hnf,
    kernel_lattice_at_level,
    saturate,
)

_ZERO_SKIP = object()


def _mobius(n: int) -> int:
    if n < 1:
        raise ValueError("mobius needs a positive integer")
    out = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            out = -out
        p += 1
    if n > 1:
        out = -out
    return out


def _divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def count_torsion_points(n_ambient: int, level: int, exact_order: bool = False) -> int:
    """Points of E^N killed by level, or of exact order level."""
    if n_ambient < 1 or level < 1:
        raise ValueError("need N >= 1 and level >= 1")
    if not exact_order:
        return level ** (2 * n_ambient)
    return sum(_mobius(level // d) * d ** (2 * n_ambient) for d in _divisors(level))


def enumerate_torsion(
    disc: int,
    n_ambient: int,
    level: int,
    exact_order: bool = False,
    budget: int = 200_000,
) -> list[TorsionPoint]:
    """All torsion points at the given level, in lexicographic coordinate
    order; with exact_order only the points of that exact order."""
    total = count_torsion_points(n_ambient, level, exact_order=False)
    if total > budget:
        raise BudgetExceededError(
            f"{total} torsion points at level {level} exceed budget {budget}"
        )
    coords_1d = [
        OrderElement(disc, a, b) for a in range(level) for b in range(level)
    ]
    points = []
    stack = [()]
    for _ in range(n_ambient):
        stack = [tup + (c,) for tup in stack for c in coords_1d]
    for tup in stack:
        p = TorsionPoint(disc, level, tup)
        if exact_order and p.order() != level:
            continue
        points.append(p)
    expected = count_torsion_points(n_ambient, level, exact_order)
    assert len(points) == expected
    return points


def surrogate_degree(m: SubgroupMatrix) -> int:
    """Product over rows of the summed coordinate norms."""
    out = 1
    for row in m.rows:
        out *= sum(e.norm() for e in row)
    return out


def _elements_norm_le(disc: int, cap: int) -> list[OrderElement]:
    out = []
    b_bound = isqrt(4 * cap // (-disc)) + 1
    for b in range(-b_bound, b_bound + 1):
        a_bound = isqrt(cap) + abs(b) + 1
        for a in range(-a_bound, a_bound + 1):
            e = OrderElement(disc, a, b)
            if e.norm() <= cap:
                out.append(e)
    out.sort(key=lambda e: (e.norm(), e.a, e.b))
    return out


def _rows_within(disc: int, n_ambient: int, cap: int) -> list[tuple]:
    """Nonzero rows of length N with summed norms <= cap, with the sum."""
    elems = _elements_norm_le(disc, cap)
    rows = []

    def rec(prefix, used):
        if len(prefix) == n_ambient:
            if used > 0:
                rows.append((used, tuple(prefix)))
            return
        for e in elems:
            ne = e.norm()
            if used + ne > cap:
                continue
            prefix.append(e)
            rec(prefix, used + ne)
            prefix.pop()

    rec([], 0)
    rows.sort(key=lambda t: (t[0], tuple((e.a, e.b) for e in t[1])))
    return rows


_SUBGROUP_CACHE: dict = {}


def enumerate_subgroups(
    disc: int,
    n_ambient: int,
    dim: int,
    x_budget: int,
    budget: int = 2_000_000,
    witness_level: int | None = None,
) -> tuple[SubgroupMatrix, ...]:
    """Connected subgroups of the given dimension whose canonical matrix has
    surrogate degree at most x_budget, sorted by (surrogate, minors, entries).

    With witness_level set, pairwise distinctness of the listed subgroups is
    re-verified on their kernel lattices at that level.
    """
    if disc not in EUCLIDEAN_DISCS:
        raise ValueError(f"unsupported discriminant {disc}")
    if not 0 <= dim <= n_ambient:
        raise ValueError(f"need 0 <= dim <= N, got dim={dim}, N={n_ambient}")
    if x_budget < 1:
        raise ValueError("need a positive surrogate budget")
    key = (disc, n_ambient, dim, x_budget)
    if key in _SUBGROUP_CACHE:
        result = _SUBGROUP_CACHE[key]
    else:
        result = _enumerate_uncached(disc, n_ambient, dim, x_budget, budget)
        _SUBGROUP_CACHE[key] = result
    if witness_level is not None:
        lattices = {kernel_lattice_at_level(m, witness_level) for m in result}
        assert len(lattices) == len(result)
    return result


def _enumerate_uncached(disc, n_ambient, dim, x_budget, budget):
    r = n_ambient - dim
    if r == 0:
        return (SubgroupMatrix(disc, n_ambient, []),)
    rows = _rows_within(disc, n_ambient, x_budget)
    seen: dict = {}
    examined = 0

    def rec(start, chosen, prod):
        nonlocal examined
        if len(chosen) == r:
            examined += 1
            if examined > budget:
                raise BudgetExceededError(
                    f"examined more than {budget} candidate matrices"
                )
            mat = SubgroupMatrix(
                disc, n_ambient, [t[1] for t in chosen], check_rank=False
            )
            if _rank([list(row) for row in mat.rows], disc) < r:
                return
            canon = saturate(mat)
            if canon.r != r or surrogate_degree(canon) > x_budget:
                return
            seen.setdefault(canon.rows, canon)
            return
        for i in range(start, len(rows)):
            s, _ = rows[i]
            if prod * s > x_budget:
                break
            rec(i, chosen + [rows[i]], prod * s)

    rec(0, [], 1)

    def sort_key(m):
        surr = degree_surrogate(m)
        flat = tuple((e.a, e.b) for row in m.rows for e in row)
        return (surrogate_degree(m), surr.minor_sum, flat)

    return tuple(sorted(seen.values(), key=sort_key))


def _row_kills(row, coeff_rows) -> bool:
    if not coeff_rows or not coeff_rows[0]:
        return True
    for k in range(len(coeff_rows[0])):
        acc = None
        for j, e in enumerate(row):
            term = e * coeff_rows[j][k]
            acc = term if acc is None else acc + term
        if not acc.is_zero():
            return False
    return True


def _dedup_unit_rows(rows, disc):
    """One representative per unit-scaling class of rows."""
    from .orders import canonicalizing_unit

    seen = {}
    for s, row in rows:
        lead = next(e for e in row if not e.is_zero())
        u = canonicalizing_unit(lead)
        key = tuple((x.a, x.b) for x in ((u * e) for e in row))
        seen.setdefault(key, (s, row))
    return sorted(seen.values(), key=lambda t: (t[0], tuple((e.a, e.b) for e in t[1])))


def brute_force_minimal_coset(
    point: PointInEN, x_budget: int = 16, budget: int = 2_000_000
):
    """Smallest-dimension connected subgroup within the surrogate budget
    whose coset through the point contains it, found without the one-shot
    kernel computation: every candidate row within the budget is tested
    against the coefficient matrix, and maximal independent sets of killing
    rows are assembled by direct search.  Ties are broken by minor sums,
    then by entries.  Returns (matrix, torsion part, dimension)."""
    disc = point.spec.disc
    n_ambient = point.N
    coeff = point.coefficient_rows()
    all_rows = _rows_for(disc, n_ambient, x_budget)
    killing = [t for t in all_rows if _row_kills(t[1], coeff)]
    killing = _dedup_unit_rows(killing, disc)
    kill_rank = _rank([list(row) for _, row in killing], disc) if killing else 0

    examined = 0
    for r in range(kill_rank, 0, -1):
        candidates: list[SubgroupMatrix] = []
        # all maximal independent subsets span the same saturation, so the
        # top level is decided by its first leaf
        leaf_cap = 1 if r == kill_rank else None

        class _Done(Exception):
            pass

        def rec(start, chosen, prod):
            nonlocal examined
            if len(chosen) == r:
                examined += 1
                if examined > budget:
                    raise BudgetExceededError(
                        f"examined more than {budget} candidate matrices"
                    )
                mat = SubgroupMatrix(disc, n_ambient, chosen, check_rank=False)
                canon = saturate(mat)
                if canon.r == r and surrogate_degree(canon) <= x_budget:
                    candidates.append(canon)
                if leaf_cap is not None and examined >= leaf_cap:
                    raise _Done
                return
            for i in range(start, len(killing)):
                s, row = killing[i]
                if prod * s > x_budget:
                    break
                if _rank([list(c) for c in chosen] + [list(row)], disc) != len(chosen) + 1:
                    continue
                rec(i + 1, chosen + [row], prod * s)

        try:
            rec(0, [], 1)
        except _Done:
            pass
        if candidates:
            best = min(
                candidates,
                key=lambda m: (
                    degree_surrogate(m).minor_sum,
                    tuple((e.a, e.b) for row in m.rows for e in row),
                ),
            )
            return best, point.torsion_point(), n_ambient - r
    empty = SubgroupMatrix(disc, n_ambient, [])
    return empty, point.torsion_point(), n_ambient


_ROWS_CACHE: dict = {}


def _rows_for(disc: int, n_ambient: int, cap: int) -> list[tuple]:
    key = (disc, n_ambient, cap)
    if key not in _ROWS_CACHE:
        _ROWS_CACHE[key] = _rows_within(disc, n_ambient, cap)
    return _ROWS_CACHE[key]

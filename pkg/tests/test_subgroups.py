"""Subgroup presentations: echelon forms, saturation, kernels, intersections."""

import random

import pytest

from toran.orders import EUCLIDEAN_DISCS, OrderElement, QuadRat, units
from toran.subgroups import (
    BudgetExceededError,
    RankError,
    SubgroupMatrix,
    TorsionPoint,
    apply_matrix,
    degree_surrogate,
    hnf,
    intersection_cardinality,
    intersection_exponent,
    is_anomalous,
    kernel_at_level,
    kernel_count_at_level,
    kernel_lattice_at_level,
    orthogonal_complement,
    parametrization,
    saturate,
    solve_field,
    sum_and_intersection,
    tangent_orthogonal,
    translate_has_no_anomalous,
)

DISCS = list(EUCLIDEAN_DISCS)


def random_matrix(rng, disc, n_ambient, r):
    """A full-row-rank r x N matrix with small entries."""
    while True:
        rows = [
            [OrderElement(disc, rng.randint(-3, 3), rng.randint(-3, 3)) for _ in range(n_ambient)]
            for _ in range(r)
        ]
        try:
            return SubgroupMatrix(disc, n_ambient, rows)
        except RankError:
            continue


def unimodular_shuffle(rng, M):
    """Another basis of the same row module."""
    rows = [list(r) for r in M.rows]
    us = units(M.disc)
    for _ in range(6):
        op = rng.randrange(3)
        i = rng.randrange(M.r)
        if op == 0:
            u = rng.choice(us)
            rows[i] = [u * e for e in rows[i]]
        elif op == 1 and M.r > 1:
            j = rng.randrange(M.r)
            if j != i:
                q = OrderElement(M.disc, rng.randint(-2, 2), rng.randint(-2, 2))
                rows[i] = [a + q * b for a, b in zip(rows[i], rows[j])]
        elif op == 2 and M.r > 1:
            j = rng.randrange(M.r)
            rows[i], rows[j] = rows[j], rows[i]
    return SubgroupMatrix(M.disc, M.N, rows, check_rank=False)


def mat_apply(M, vec):
    out = []
    for row in M.rows:
        acc = OrderElement.zero(M.disc)
        for e, c in zip(row, vec):
            acc = acc + e * c
        out.append(acc)
    return out


def test_constructor_validation():
    M = SubgroupMatrix.from_ints(-4, [[1, (0, 1)]])
    assert M.N == 2 and M.r == 1 and M.dim == 1 and M.codim == 1
    with pytest.raises(RankError):
        SubgroupMatrix.from_ints(-4, [[1, 1], [2, 2]])
    with pytest.raises(TypeError):
        SubgroupMatrix(-4, 2, [[1, 2]])
    with pytest.raises(ValueError):
        SubgroupMatrix.from_ints(-4, [[1, 2], [3]])


def test_hnf_frozen():
    # rows swap so the low-norm pivot leads; nothing else to reduce
    M = SubgroupMatrix.from_ints(-4, [[0, 2], [(1, 1), 0]])
    H = hnf(M)
    assert H.rows == (
        (OrderElement(-4, 1, 1), OrderElement(-4, 0, 0)),
        (OrderElement(-4, 0, 0), OrderElement(-4, 2, 0)),
    )
    assert hnf(H) == H


def test_hnf_unimodular_invariance():
    rng = random.Random(5)
    for _ in range(120):
        disc = rng.choice(DISCS)
        n = rng.randint(1, 3)
        r = rng.randint(1, n)
        M = random_matrix(rng, disc, n, r)
        H = hnf(M)
        assert hnf(unimodular_shuffle(rng, M)) == H
        assert hnf(H) == H
        # same row module, so the same kernel at every level
        for level in (2, 3):
            assert kernel_lattice_at_level(M, level) == kernel_lattice_at_level(H, level)


def test_saturate_frozen():
    # (2, 1+w) = (1-w) * (1+w, w) over the Gaussian order
    M = SubgroupMatrix.from_ints(-4, [[2, (1, 1)]])
    S = saturate(M)
    assert S.rows == ((OrderElement(-4, 1, 1), OrderElement(-4, 0, 1)),)
    assert saturate(S) == S


def test_saturate_properties():
    rng = random.Random(17)
    for _ in range(80):
        disc = rng.choice(DISCS)
        n = rng.randint(1, 3)
        r = rng.randint(1, n)
        M = random_matrix(rng, disc, n, r)
        S = saturate(M)
        assert S.r == M.r
        assert saturate(S) == S
        assert hnf(S) == S
        # scaling a row never changes the saturation
        rows = [list(row) for row in M.rows]
        rows[0] = [OrderElement(disc, 2, 1) * e for e in rows[0]]
        M2 = SubgroupMatrix(disc, n, rows)
        assert saturate(M2) == S
        # the connected kernel is unchanged: parametrizing columns still die
        for col in zip(*parametrization(S)):
            assert all(x.is_zero() for x in mat_apply(M, list(col)))


def test_degree_surrogate_frozen():
    M = SubgroupMatrix.from_ints(-4, [[(1, 1), 1]])
    s = degree_surrogate(M)
    assert s.minor_sum == 3
    assert s.row_product == 3
    assert s.hadamard_bound == 6
    M2 = SubgroupMatrix.from_ints(-4, [[1, (0, 1)], [(1, 1), 2]])
    s2 = degree_surrogate(M2)
    # det = 2 - w*(1+w) = 3 - w, norm 10
    assert s2.minor_sum == 10
    assert s2.row_product == 12
    assert s2.bound_holds()


def test_hadamard_bound_random():
    rng = random.Random(23)
    for _ in range(200):
        disc = rng.choice(DISCS)
        n = rng.randint(1, 4)
        r = rng.randint(1, n)
        M = random_matrix(rng, disc, n, r)
        assert degree_surrogate(M).bound_holds()


def test_torsion_point_arithmetic():
    p = TorsionPoint(-4, 4, [OrderElement(-4, 2, 0), OrderElement(-4, 0, 0)])
    assert p.order() == 2
    assert p.reduced().level == 2
    assert p.reduced().coords[0] == OrderElement(-4, 1, 0)
    assert p == TorsionPoint(-4, 2, [OrderElement(-4, 1, 0), OrderElement(-4, 0, 0)])
    assert (p + p).is_zero()
    q = TorsionPoint(-4, 3, [OrderElement(-4, 1, 0), OrderElement(-4, 0, 1)])
    s = p + q
    assert s.level == 12
    assert s.order() == 6
    assert (s - q) == p
    w = OrderElement.omega(-4)
    assert q.scaled(w).coords[0] == OrderElement(-4, 0, 1)
    assert hash(p) == hash(p.reduced())


def test_kernel_count_frozen():
    diag = SubgroupMatrix.from_ints(-4, [[1, -1]])
    for n in (1, 2, 3, 4, 6):
        assert kernel_count_at_level(diag, n) == n * n
    empty = SubgroupMatrix(-4, 2, [], check_rank=False)
    assert kernel_count_at_level(empty, 3) == 81
    # imprimitive presentation keeps the torsion translates
    fat = SubgroupMatrix.from_ints(-4, [[2, (0, 2)]])
    assert kernel_count_at_level(fat, 2) == 16
    assert kernel_count_at_level(saturate(fat), 2) == 4


def test_kernel_enumeration_matches_count():
    rng = random.Random(31)
    for _ in range(60):
        disc = rng.choice(DISCS)
        n = rng.randint(1, 3)
        r = rng.randint(1, n)
        M = random_matrix(rng, disc, n, r)
        level = rng.choice([2, 3, 4])
        try:
            points = kernel_at_level(M, level, max_points=4000)
        except BudgetExceededError:
            continue
        assert len(points) == kernel_count_at_level(M, level)
        assert len(set(points)) == len(points)
        for p in points:
            assert apply_matrix(M, p).is_zero()


def test_kernel_budget():
    empty = SubgroupMatrix(-4, 2, [], check_rank=False)
    with pytest.raises(BudgetExceededError):
        kernel_at_level(empty, 7, max_points=100)


def test_sum_and_intersection_frozen():
    diag = SubgroupMatrix.from_ints(-4, [[1, -1]])
    anti = SubgroupMatrix.from_ints(-4, [[1, 1]])
    dim_sum, dim_int, Msum, Mint = sum_and_intersection(diag, anti)
    assert (dim_sum, dim_int) == (2, 0)
    assert Msum.r == 0 and Mint.r == 2
    assert intersection_cardinality(diag, anti) == 4
    assert intersection_exponent(diag, anti) == 2


def test_sum_and_intersection_random():
    rng = random.Random(43)
    for _ in range(60):
        disc = rng.choice(DISCS)
        n = rng.randint(2, 4)
        H = random_matrix(rng, disc, n, rng.randint(1, n - 1))
        K = random_matrix(rng, disc, n, rng.randint(1, n - 1))
        dim_sum, dim_int, Msum, Mint = sum_and_intersection(H, K)
        assert dim_sum + dim_int == H.dim + K.dim
        assert dim_sum >= max(H.dim, K.dim)
        # both kernels vanish under the sum matrix; the intersection matrix
        # kernel vanishes under both inputs
        for M in (H, K):
            for col in zip(*parametrization(M)):
                assert all(x.is_zero() for x in mat_apply(Msum, list(col)))
        for col in zip(*parametrization(Mint)):
            assert all(x.is_zero() for x in mat_apply(H, list(col)))
            assert all(x.is_zero() for x in mat_apply(K, list(col)))


def test_intersection_cardinality_errors():
    diag = SubgroupMatrix.from_ints(-4, [[1, -1]])
    full = SubgroupMatrix.from_ints(-4, [[1, 0], [0, 1]])
    with pytest.raises(ValueError):
        intersection_cardinality(diag, full)
    with pytest.raises(RankError):
        intersection_cardinality(diag, diag)


def test_orthogonal_complement():
    rng = random.Random(59)
    diag = SubgroupMatrix.from_ints(-4, [[1, -1]])
    perp = orthogonal_complement(diag)
    assert perp.r == 1
    assert tangent_orthogonal(parametrization(diag), parametrization(perp))
    for _ in range(60):
        disc = rng.choice(DISCS)
        n = rng.randint(1, 4)
        r = rng.randint(1, n)
        M = random_matrix(rng, disc, n, r)
        P = orthogonal_complement(M)
        assert M.dim + P.dim == n
        assert tangent_orthogonal(parametrization(M), parametrization(P))
        if M.dim > 0:
            # the conjugate pairing is definite, so a nontrivial kernel is
            # never orthogonal to itself
            assert not tangent_orthogonal(parametrization(M), parametrization(M))


def test_tangent_orthogonal_validation():
    with pytest.raises(ValueError):
        tangent_orthogonal([[OrderElement(-4, 1, 0)]], [])


def test_is_anomalous():
    assert is_anomalous(0, 1, 1, 3)
    assert not is_anomalous(0, 1, 2, 3)
    assert is_anomalous(1, 2, 2, 4)
    with pytest.raises(ValueError):
        is_anomalous(2, 1, 1, 3)
    with pytest.raises(ValueError):
        is_anomalous(0, 3, 1, 3)


def test_translate_certificate():
    H = SubgroupMatrix.from_ints(-4, [[1, 0, 0], [0, 1, 0]])
    B = SubgroupMatrix.from_ints(-4, [[1, 0, 0], [0, 0, 1]])
    assert translate_has_no_anomalous(H, B, 0)
    B_big = SubgroupMatrix.from_ints(-4, [[1, 0, 0]])
    assert not translate_has_no_anomalous(H, B_big, 0)


def test_solve_field():
    rng = random.Random(71)
    for _ in range(80):
        disc = rng.choice(DISCS)
        n = rng.randint(1, 3)
        r = rng.randint(1, n)
        M = random_matrix(rng, disc, n, r)
        z0 = [QuadRat(disc, rng.randint(-4, 4), rng.randint(-4, 4)) for _ in range(n)]
        rhs = []
        for row in M.rows:
            acc = QuadRat.zero(disc)
            for e, z in zip(row, z0):
                acc = acc + QuadRat.from_order(e) * z
            rhs.append(acc)
        z = solve_field([list(row) for row in M.rows], rhs, disc)
        for row, want in zip(M.rows, rhs):
            acc = QuadRat.zero(disc)
            for e, zi in zip(row, z):
                acc = acc + QuadRat.from_order(e) * zi
            assert acc == want


def test_solve_field_inconsistent():
    one = OrderElement.one(-4)
    rows = [[one, one], [one, one]]
    rhs = [QuadRat.one(-4), QuadRat(-4, 2, 0)]
    with pytest.raises(RankError):
        solve_field(rows, rhs, -4)

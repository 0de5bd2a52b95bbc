"""Small kernel vectors with exact Siegel-shape certificates."""

import random
from fractions import Fraction

import pytest

from toran.orders import EUCLIDEAN_DISCS, OrderElement
from toran.siegel import (
    DEFAULT_SIEGEL_CONSTANT,
    LinearSystem,
    SiegelCertificate,
    complete_to_square,
    small_solution,
)
from toran.subgroups import RankError, SubgroupMatrix, _rank

DISCS = list(EUCLIDEAN_DISCS)


def random_system(rng, disc, m, n, span=4):
    while True:
        rows = [
            [OrderElement(disc, rng.randint(-span, span), rng.randint(-span, span)) for _ in range(n)]
            for _ in range(m)
        ]
        try:
            return LinearSystem(disc, rows)
        except RankError:
            continue


def test_system_validation():
    with pytest.raises(ValueError):
        LinearSystem.from_ints(-4, [[1, 2], [3, 4]])  # m == n
    with pytest.raises(ValueError):
        LinearSystem.from_ints(-4, [[1, 2], [3]])
    with pytest.raises(RankError):
        LinearSystem.from_ints(-4, [[1, 2, 3], [2, 4, 6]])
    s = LinearSystem.from_ints(-4, [[2, 3]])
    assert (s.m, s.n) == (1, 2)
    assert s.row_height(0) == 13
    assert s.size_term() == 13


def test_small_solution_frozen():
    system = LinearSystem.from_ints(-4, [[2, 3]])
    sols, cert = small_solution(system)
    assert sols == [[OrderElement(-4, 3, 0), OrderElement(-4, -2, 0)]]
    assert cert.achieved_norm == 9
    assert cert.size_term == 13
    assert (cert.exp_num, cert.exp_den) == (1, 1)
    assert cert.holds()


def test_small_solution_deterministic():
    system = LinearSystem.from_ints(-7, [[(1, 1), 2, (0, 1)]])
    a, ca = small_solution(system, count=2)
    b, cb = small_solution(system, count=2)
    assert a == b and ca == cb


def test_small_solution_count_range():
    system = LinearSystem.from_ints(-4, [[1, 1, 1]])
    with pytest.raises(ValueError):
        small_solution(system, count=3)
    sols, _ = small_solution(system, count=2)
    assert _rank([list(v) for v in sols], -4) == 2


def test_certificate_arithmetic():
    cert = SiegelCertificate(9, 13, 1, 1, Fraction(8))
    assert cert.holds()
    assert not SiegelCertificate(1000, 13, 1, 1, Fraction(8)).holds()
    # fractional exponent handled without floats: 30^2 > 8^2 * 13 = 832
    assert SiegelCertificate(28, 13, 1, 2, Fraction(8)).holds()
    assert not SiegelCertificate(30, 13, 1, 2, Fraction(8)).holds()
    assert SiegelCertificate(0, 13, 1, 2, Fraction(8)).required_constant() == 0.0


def test_random_certificates():
    rng = random.Random(7)
    checked = 0
    for _ in range(120):
        disc = rng.choice(DISCS)
        n = rng.randint(2, 4)
        m = rng.randint(1, n - 1)
        system = random_system(rng, disc, m, n)
        count = rng.choice([1, n - m])
        sols, cert = small_solution(system, count=count)
        assert len(sols) == count
        for v in sols:
            assert any(not e.is_zero() for e in v)
            assert all(e.is_zero() for e in system.evaluate(v))
        assert _rank([list(v) for v in sols], disc) == count
        assert cert.holds()
        assert cert.constant == DEFAULT_SIEGEL_CONSTANT
        checked += 1
    assert checked == 120


def test_no_box_fallback_still_solves():
    rng = random.Random(77)
    for _ in range(40):
        disc = rng.choice(DISCS)
        system = random_system(rng, disc, 1, 3)
        sols, _ = small_solution(system, box_fallback=False)
        for v in sols:
            assert all(e.is_zero() for e in system.evaluate(v))


def test_complete_to_square():
    rng = random.Random(101)
    for _ in range(50):
        disc = rng.choice(DISCS)
        n = rng.randint(2, 4)
        r = rng.randint(1, n - 1)
        while True:
            rows = [
                [OrderElement(disc, rng.randint(-3, 3), rng.randint(-3, 3)) for _ in range(n)]
                for _ in range(r)
            ]
            try:
                M = SubgroupMatrix(disc, n, rows)
                break
            except RankError:
                continue
        full, cert = complete_to_square(M)
        assert full.N == full.r == n  # constructor enforces full rank
        assert full.rows[:r] == M.rows
        assert cert.holds()


def test_complete_to_square_rejects_square():
    M = SubgroupMatrix.from_ints(-4, [[1, 0], [0, 1]])
    with pytest.raises(ValueError):
        complete_to_square(M)

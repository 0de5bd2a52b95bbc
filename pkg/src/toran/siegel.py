"""Small exact solutions of linear systems over the order, with certificates.

The kernel of an m x n full-row-rank system is a free module of rank n - m;
its rank-2(n-m) integer image is reduced with exact-arithmetic LLL under the
trace form, and the smallest fraction-field-independent vectors are returned
together with a norm certificate of Siegel shape: the largest coordinate
norm is at most c * (product of row norm sums)^(m/(n-m)).  For small n an
exhaustive box search double-checks or replaces the reduced basis.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct

from .orders import OrderElement, canonicalizing_unit, norm_omega, trace_omega
from .subgroups import (
    RankError,
    SubgroupMatrix,
    _rank,
    _right_kernel,
    hnf,
    orthogonal_complement,
    saturate,
    vector_to_ints,
)

#: default certificate constant; empirically stable across the five orders
#: for dense systems with entry norms up to a few hundred.
DEFAULT_SIEGEL_CONSTANT = Fraction(8)


class LinearSystem:
    """An m x n system over the order with m < n and independent rows."""

    __slots__ = ("disc", "m", "n", "rows")

    def __init__(self, disc: int, rows):
        entries = [tuple(row) for row in rows]
        if not entries:
            raise ValueError("system needs at least one row")
        n = len(entries[0])
        if any(len(row) != n for row in entries):
            raise ValueError("ragged system rows")
        for row in entries:
            for e in row:
                if not isinstance(e, OrderElement) or e.disc != disc:
                    raise ValueError("entries must be OrderElement over disc")
        m = len(entries)
        if m >= n:
            raise ValueError(f"need fewer equations than unknowns, got {m} x {n}")
        if _rank([list(r) for r in entries], disc) != m:
            raise RankError("system rows are dependent")
        object.__setattr__(self, "disc", disc)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "rows", tuple(entries))

    def __setattr__(self, name, value):
        raise AttributeError("LinearSystem is immutable")

    @classmethod
    def from_ints(cls, disc: int, rows) -> LinearSystem:
        conv = []
        for row in rows:
            out = []
            for e in row:
                if isinstance(e, OrderElement):
                    out.append(e)
                elif isinstance(e, tuple):
                    out.append(OrderElement(disc, e[0], e[1]))
                else:
                    out.append(OrderElement(disc, int(e), 0))
            conv.append(out)
        return cls(disc, conv)

    def row_height(self, i: int) -> int:
        return sum(e.norm() for e in self.rows[i])

    def size_term(self) -> int:
        out = 1
        for i in range(self.m):
            out *= self.row_height(i)
        return out

    def evaluate(self, v: list[OrderElement]) -> list[OrderElement]:
        out = []
        for row in self.rows:
            acc = OrderElement.zero(self.disc)
            for e, x in zip(row, v):
                acc = acc + e * x
            out.append(acc)
        return out


@dataclass(frozen=True)
class SiegelCertificate:
    """Certificate max_i norm(v_i) <= c * size_term^(m/(n-m)) for the returned
    solutions; the comparison is exact via (n-m)-th powers."""

    achieved_norm: int
    size_term: int
    exp_num: int  # m
    exp_den: int  # n - m
    constant: Fraction

    def holds(self) -> bool:
        lhs = Fraction(self.achieved_norm) ** self.exp_den
        rhs = self.constant**self.exp_den * Fraction(self.size_term) ** self.exp_num
        return lhs <= rhs

    def required_constant(self) -> float:
        """The smallest constant that would certify these solutions."""
        if self.achieved_norm == 0:
            return 0.0
        return self.achieved_norm / (self.size_term ** (self.exp_num / self.exp_den))


def _trace_gram(disc: int, u: list[int], v: list[int]) -> int:
    # sum of Tr(u_i * conj(v_i)) over coordinates, in (a, b) interleaved form
    t = trace_omega(disc)
    n0 = norm_omega(disc)
    acc = 0
    for i in range(0, len(u), 2):
        a1, b1, a2, b2 = u[i], u[i + 1], v[i], v[i + 1]
        acc += 2 * a1 * a2 + t * (a1 * b2 + a2 * b1) + 2 * n0 * b1 * b2
    return acc


def _lll(disc: int, basis: list[list[int]]) -> list[list[int]]:
    """Exact LLL (delta = 3/4) under the coordinate-wise trace form."""
    b = [list(v) for v in basis]
    k_max = len(b)
    if k_max <= 1:
        return b

    def gram(u, v):
        return Fraction(_trace_gram(disc, u, v))

    def gso():
        mu = [[Fraction(0)] * k_max for _ in range(k_max)]
        bstar_norm = [Fraction(0)] * k_max
        bstar = [[Fraction(x) for x in b[0]]]
        bstar_norm[0] = gram(b[0], b[0])
        for i in range(1, k_max):
            vec = [Fraction(x) for x in b[i]]
            for j in range(i):
                denom = bstar_norm[j]
                mu[i][j] = (
                    _frac_gram(disc, b[i], bstar[j]) / denom if denom else Fraction(0)
                )
                vec = [x - mu[i][j] * y for x, y in zip(vec, bstar[j])]
            bstar.append(vec)
            bstar_norm[i] = _frac_gram(disc, vec, vec)
        return mu, bstar, bstar_norm

    def _frac_gram(d, u, v):
        t = trace_omega(d)
        n0 = norm_omega(d)
        acc = Fraction(0)
        for i in range(0, len(u), 2):
            a1, b1, a2, b2 = u[i], u[i + 1], v[i], v[i + 1]
            acc += 2 * a1 * a2 + t * (a1 * b2 + a2 * b1) + 2 * n0 * b1 * b2
        return acc

    mu, bstar, bstar_norm = gso()
    k = 1
    while k < k_max:
        for j in range(k - 1, -1, -1):
            if abs(mu[k][j]) > Fraction(1, 2):
                q = round(mu[k][j])
                b[k] = [x - q * y for x, y in zip(b[k], b[j])]
                mu, bstar, bstar_norm = gso()
        if bstar_norm[k] >= (Fraction(3, 4) - mu[k][k - 1] ** 2) * bstar_norm[k - 1]:
            k += 1
        else:
            b[k], b[k - 1] = b[k - 1], b[k]
            mu, bstar, bstar_norm = gso()
            k = max(k - 1, 1)
    return b


def _max_coord_norm(disc: int, flat: list[int]) -> int:
    out = 0
    for i in range(0, len(flat), 2):
        out = max(out, OrderElement(disc, flat[i], flat[i + 1]).norm())
    return out


def _flat_to_vector(disc: int, flat: list[int]) -> list[OrderElement]:
    return [OrderElement(disc, flat[i], flat[i + 1]) for i in range(0, len(flat), 2)]


def small_solution(
    system: LinearSystem,
    count: int = 1,
    constant: Fraction = DEFAULT_SIEGEL_CONSTANT,
    box_fallback: bool = True,
) -> tuple[list[list[OrderElement]], SiegelCertificate]:
    """``count`` fraction-field-independent small non-zero kernel vectors.

    Deterministic: reduced basis vectors are taken in increasing max-norm
    order.  If the certificate with the given constant fails and the system
    is small, an exhaustive box search replaces the reduced vectors.
    """
    if not 1 <= count <= system.n - system.m:
        raise ValueError(
            f"count must lie in [1, {system.n - system.m}], got {count}"
        )
    disc = system.disc
    kernel = _right_kernel([list(r) for r in system.rows], disc, system.n)
    w = OrderElement.omega(disc)
    lattice = []
    for v in kernel:
        lattice.append(vector_to_ints(v))
        lattice.append(vector_to_ints([w * e for e in v]))
    reduced = _lll(disc, lattice)
    ordered = sorted(reduced, key=lambda f: (_max_coord_norm(disc, f), f))
    chosen: list[list[OrderElement]] = []
    for flat in ordered:
        cand = _flat_to_vector(disc, flat)
        if all(e.is_zero() for e in cand):
            continue
        if _rank([list(v) for v in chosen] + [cand], disc) == len(chosen) + 1:
            chosen.append(_unit_normalize(cand))
        if len(chosen) == count:
            break
    assert len(chosen) == count, "kernel rank cannot be short of count"
    cert = _certificate(system, chosen, constant)
    if not cert.holds() and box_fallback and system.n <= 6:
        boxed = _box_search(system, count)
        if boxed is not None:
            chosen = boxed
            cert = _certificate(system, chosen, constant)
    for v in chosen:
        assert all(e.is_zero() for e in system.evaluate(v))
    return chosen, cert


def _unit_normalize(v: list[OrderElement]) -> list[OrderElement]:
    # scale by a unit so the leading non-zero coordinate is canonical
    for e in v:
        if not e.is_zero():
            u = canonicalizing_unit(e)
            return [u * x for x in v]
    return v


def _certificate(
    system: LinearSystem, vectors: list[list[OrderElement]], constant: Fraction
) -> SiegelCertificate:
    achieved = max(max(e.norm() for e in v) for v in vectors)
    return SiegelCertificate(
        achieved_norm=achieved,
        size_term=system.size_term(),
        exp_num=system.m,
        exp_den=system.n - system.m,
        constant=constant,
    )


def _box_search(system: LinearSystem, count: int, max_cap: int = 9):
    """Smallest solutions by exhaustive search over increasing max norm.

    Returns None when the search space would be too large; callers treat
    that as "no improvement found".
    """
    disc, n = system.disc, system.n
    for cap in range(1, max_cap + 1):
        elems = _elements_up_to_norm(disc, cap)
        if len(elems) ** n > 2_000_000:
            return None
        chosen: list[list[OrderElement]] = []
        for tup in iproduct(elems, repeat=n):
            v = list(tup)
            if all(e.is_zero() for e in v):
                continue
            if any(not e.is_zero() for e in system.evaluate(v)):
                continue
            if _rank([list(u) for u in chosen] + [v], disc) == len(chosen) + 1:
                chosen.append(v)
                if len(chosen) == count:
                    return chosen
    return None


def _elements_up_to_norm(disc: int, cap: int) -> list[OrderElement]:
    out = []
    bound = int(cap**0.5) + 2
    for a in range(-bound, bound + 1):
        for b in range(-bound, bound + 1):
            e = OrderElement(disc, a, b)
            if e.norm() <= cap:
                out.append(e)
    out.sort(key=lambda e: (e.norm(), e.a, e.b))
    return out


def complete_to_square(
    M: SubgroupMatrix, constant: Fraction = DEFAULT_SIEGEL_CONSTANT
) -> tuple[SubgroupMatrix, SiegelCertificate]:
    """Extend the r x N matrix M to an invertible N x N matrix.

    The added rows are conjugates of small kernel vectors of M, so they
    present exactly the orthogonal complement of ker(M)^0; stacking them
    under M is invertible because a vector in both kernels pairs to zero
    with itself.
    """
    if M.r == 0 or M.r == M.N:
        raise ValueError("matrix must have 1 <= r < N rows to complete")
    system = LinearSystem(M.disc, [list(r) for r in M.rows])
    vectors, cert = small_solution(system, count=M.N - M.r, constant=constant)
    bottom = [[e.conjugate() for e in v] for v in vectors]
    full = SubgroupMatrix(M.disc, M.N, [list(r) for r in M.rows] + bottom)
    bottom_matrix = SubgroupMatrix(M.disc, M.N, bottom, check_rank=False)
    assert hnf(saturate(bottom_matrix)) == orthogonal_complement(M)
    return full, cert

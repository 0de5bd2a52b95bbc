"""Algebraic subgroups of E^N presented by matrices over the CM order.

A matrix M with r independent rows over the order presents the subgroup
B = (ker of the morphism y -> M*y)^0 of dimension N - r.  Matrices with the
same row module present the same kernel exactly (at every torsion level);
matrices with the same saturated row space present the same connected B.
Canonical forms here are Hermite-style echelon forms under unimodular row
operations with canonical-associate pivots.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, gcd as int_gcd, lcm as int_lcm, prod

from .intlattice import det_int, hnf_int, snf_int
from .orders import (
    DiscMismatchError,
    OrderElement,
    QuadRat,
    canonical_residue,
    canonicalizing_unit,
    euclid_div,
    exact_div,
    norm_omega,
    trace_omega,
)


class RankError(ValueError):
    """Raised when a matrix violates a full-rank precondition."""


class BudgetExceededError(RuntimeError):
    """Raised when an enumeration would exceed its declared budget."""


def _check_same(disc: int, n: int, other_disc: int, other_n: int) -> None:
    if disc != other_disc:
        raise DiscMismatchError(f"discriminants differ: {disc} vs {other_disc}")
    if n != other_n:
        raise ValueError(f"ambient powers differ: {n} vs {other_n}")


def _norm_key(x: OrderElement):
    return (x.norm(), x.a, x.b)


class SubgroupMatrix:
    """An r x N full-row-rank matrix over the order of discriminant ``disc``."""

    __slots__ = ("disc", "N", "r", "rows")

    def __init__(self, disc: int, n_ambient: int, rows, check_rank: bool = True):
        if n_ambient < 1:
            raise ValueError("ambient power must be at least 1")
        entries = []
        for row in rows:
            row = tuple(row)
            if len(row) != n_ambient:
                raise ValueError(f"row length {len(row)} != N = {n_ambient}")
            for e in row:
                if not isinstance(e, OrderElement):
                    raise TypeError("matrix entries must be OrderElement")
                if e.disc != disc:
                    raise DiscMismatchError(
                        f"entry discriminant {e.disc} != {disc}"
                    )
            entries.append(row)
        object.__setattr__(self, "disc", disc)
        object.__setattr__(self, "N", n_ambient)
        object.__setattr__(self, "r", len(entries))
        object.__setattr__(self, "rows", tuple(entries))
        if check_rank and self.r > 0 and _rank(list(self.rows), disc) != self.r:
            raise RankError(f"matrix rows are dependent (r = {self.r})")

    def __setattr__(self, name, value):
        raise AttributeError("SubgroupMatrix is immutable")

    @classmethod
    def from_ints(cls, disc: int, rows: list[list]) -> SubgroupMatrix:
        """Build from (a, b) pairs or plain integers."""
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
        return cls(disc, len(conv[0]), conv)

    @property
    def dim(self) -> int:
        """Dimension of the presented connected subgroup."""
        return self.N - self.r

    @property
    def codim(self) -> int:
        return self.r

    def __eq__(self, other) -> bool:
        if not isinstance(other, SubgroupMatrix):
            return NotImplemented
        return (self.disc, self.N, self.rows) == (other.disc, other.N, other.rows)

    def __hash__(self):
        return hash((self.disc, self.N, self.rows))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(e) for e in row) for row in self.rows)
        return f"SubgroupMatrix({self.disc}, N={self.N}, [{body}])"


# ---------------------------------------------------------------------------
# elimination over the order


def _column_echelon(rows: list[list[OrderElement]], disc: int, n_cols: int):
    """Column echelon form by unimodular column operations.

    Returns (E, U) with E = M*U and U unimodular; the columns of U matching
    zero columns of E form a saturated basis of the right kernel.
    """
    m = len(rows)
    E = [list(row) for row in rows]
    one = OrderElement.one(disc)
    zero = OrderElement.zero(disc)
    U = [[one if i == j else zero for j in range(n_cols)] for i in range(n_cols)]

    def col_sub(c_dst, c_src, q):
        for row in E:
            row[c_dst] = row[c_dst] - q * row[c_src]
        for row in U:
            row[c_dst] = row[c_dst] - q * row[c_src]

    def col_swap(c1, c2):
        for row in E:
            row[c1], row[c2] = row[c2], row[c1]
        for row in U:
            row[c1], row[c2] = row[c2], row[c1]

    col = 0
    pivots = []
    for i in range(m):
        if col >= n_cols:
            break
        while True:
            nz = [c for c in range(col, n_cols) if E[i][c]]
            if not nz:
                break
            c0 = min(nz, key=lambda c: (_norm_key(E[i][c]), c))
            if c0 != col:
                col_swap(col, c0)
            done = True
            for c in range(col + 1, n_cols):
                if E[i][c]:
                    q, _ = euclid_div(E[i][c], E[i][col])
                    col_sub(c, col, q)
                    if E[i][c]:
                        done = False
            if done:
                break
        if col < n_cols and E[i][col]:
            pivots.append((i, col))
            col += 1
    return E, U, pivots


def _rank(rows, disc: int) -> int:
    if not rows:
        return 0
    _, _, pivots = _column_echelon([list(r) for r in rows], disc, len(rows[0]))
    return len(pivots)


def _right_kernel(rows, disc: int, n_cols: int) -> list[list[OrderElement]]:
    """Saturated basis of {v : M v = 0}, as a list of column vectors."""
    if not rows:
        one = OrderElement.one(disc)
        zero = OrderElement.zero(disc)
        return [[one if i == j else zero for i in range(n_cols)] for j in range(n_cols)]
    E, U, pivots = _column_echelon([list(r) for r in rows], disc, n_cols)
    kernel_cols = [c for c in range(n_cols) if all(not E[i][c] for i in range(len(E)))]
    return [[U[i][c] for i in range(n_cols)] for c in kernel_cols]


def _transpose(rows):
    return [list(col) for col in zip(*rows)]


def _left_kernel(rows, disc: int) -> list[list[OrderElement]]:
    """Saturated basis of {u : u M = 0}, as a list of row vectors."""
    if not rows:
        return []
    return _right_kernel(_transpose(rows), disc, len(rows))


def _annihilator(vectors, disc: int, n_cols: int) -> list[list[OrderElement]]:
    # rows u with u . v = 0 (no conjugation) for every v in vectors
    if not vectors:
        return [
            [OrderElement(disc, int(i == j), 0) for j in range(n_cols)]
            for i in range(n_cols)
        ]
    return _right_kernel([list(v) for v in vectors], disc, n_cols)


def right_kernel_basis(M: SubgroupMatrix) -> list[list[OrderElement]]:
    """Columns parametrizing the connected kernel of M (dimension N - r)."""
    return _right_kernel(list(M.rows), M.disc, M.N)


def hnf(M: SubgroupMatrix) -> SubgroupMatrix:
    """Canonical echelon form of M under unimodular row operations.

    The row module, hence the kernel at every torsion level, is unchanged.
    Pivots are canonical associates in the leftmost possible columns and
    entries above a pivot are minimal-(norm, a, b) residues, so the form is
    idempotent and identical for any two row bases of the same module.
    """
    rows = [list(r) for r in M.rows]
    r, N = M.r, M.N
    i = 0
    for c in range(N):
        if i >= r:
            break
        while True:
            nz = [k for k in range(i, r) if rows[k][c]]
            if not nz:
                break
            k0 = min(nz, key=lambda k: (_norm_key(rows[k][c]), k))
            if k0 != i:
                rows[i], rows[k0] = rows[k0], rows[i]
            done = True
            for k in range(i + 1, r):
                if rows[k][c]:
                    q, _ = euclid_div(rows[k][c], rows[i][c])
                    rows[k] = [rows[k][j] - q * rows[i][j] for j in range(N)]
                    if rows[k][c]:
                        done = False
            if done:
                break
        if i < r and rows[i][c]:
            u = canonicalizing_unit(rows[i][c])
            if not u == 1:
                rows[i] = [u * e for e in rows[i]]
            pivot = rows[i][c]
            for k in range(i):
                if rows[k][c]:
                    target = canonical_residue(rows[k][c], pivot)
                    q = exact_div(rows[k][c] - target, pivot)
                    if q:
                        rows[k] = [rows[k][j] - q * rows[i][j] for j in range(N)]
            i += 1
    if i != r:
        raise RankError("matrix rows are dependent")
    return SubgroupMatrix(M.disc, M.N, rows, check_rank=False)


def saturate(M: SubgroupMatrix) -> SubgroupMatrix:
    """The primitive matrix with the same row space over the fraction field.

    The result presents the connected component of ker(M) exactly: clearing
    the finite cokernel removes the extra torsion translates.
    """
    if M.r == 0:
        return M
    kernel = _right_kernel(list(M.rows), M.disc, M.N)
    sat_rows = _annihilator(kernel, M.disc, M.N)
    sat = SubgroupMatrix(M.disc, M.N, sat_rows, check_rank=False)
    return hnf(sat)


# ---------------------------------------------------------------------------
# degree surrogates


@dataclass(frozen=True)
class DegreeSurrogate:
    """Two exact stand-ins for the degree of the presented subgroup.

    minor_sum is the sum of norm(det) over all maximal minors; row_product
    multiplies the coordinate-norm sums of the rows.  Hadamard's inequality
    gives minor_sum <= C(N, r) * row_product, checked as an invariant.
    """

    minor_sum: int
    row_product: int
    n_ambient: int
    n_rows: int

    @property
    def hadamard_bound(self) -> int:
        return comb(self.n_ambient, self.n_rows) * self.row_product

    def bound_holds(self) -> bool:
        return self.minor_sum <= self.hadamard_bound


def _det_order(rows: list[list[OrderElement]], disc: int) -> OrderElement:
    n = len(rows)
    if n == 0:
        return OrderElement.one(disc)
    if n == 1:
        return rows[0][0]
    out = OrderElement.zero(disc)
    for j in range(n):
        if not rows[0][j]:
            continue
        minor = [row[:j] + row[j + 1 :] for row in rows[1:]]
        term = rows[0][j] * _det_order(minor, disc)
        out = out + term if j % 2 == 0 else out - term
    return out


def degree_surrogate(M: SubgroupMatrix) -> DegreeSurrogate:
    from itertools import combinations

    if M.r == 0:
        return DegreeSurrogate(1, 1, M.N, 0)
    minor_sum = 0
    for cols in combinations(range(M.N), M.r):
        sub = [[row[c] for c in cols] for row in M.rows]
        minor_sum += _det_order(sub, M.disc).norm()
    row_product = prod(sum(e.norm() for e in row) for row in M.rows)
    return DegreeSurrogate(minor_sum, row_product, M.N, M.r)


# ---------------------------------------------------------------------------
# torsion points and torsion-level kernels


class TorsionPoint:
    """A torsion point of E^N written as coords/level with coords in the order.

    The point with coordinates (c_1/n, ..., c_N/n) modulo the period lattice;
    E[n] is identified with (1/n)O/O per coordinate, so coords live in O/nO.
    """

    __slots__ = ("disc", "N", "level", "coords")

    def __init__(self, disc: int, level: int, coords):
        if level < 1:
            raise ValueError("torsion level must be positive")
        reduced = []
        for c in coords:
            if not isinstance(c, OrderElement):
                raise TypeError("coords must be OrderElement")
            if c.disc != disc:
                raise DiscMismatchError(f"coordinate discriminant {c.disc} != {disc}")
            reduced.append(OrderElement(disc, c.a % level, c.b % level))
        object.__setattr__(self, "disc", disc)
        object.__setattr__(self, "N", len(reduced))
        object.__setattr__(self, "level", level)
        object.__setattr__(self, "coords", tuple(reduced))

    def __setattr__(self, name, value):
        raise AttributeError("TorsionPoint is immutable")

    @classmethod
    def zero(cls, disc: int, n_ambient: int, level: int = 1) -> TorsionPoint:
        return cls(disc, level, [OrderElement.zero(disc)] * n_ambient)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coords)

    def at_level(self, level: int) -> TorsionPoint:
        if level % self.level != 0:
            raise ValueError(f"{level} is not a multiple of level {self.level}")
        k = level // self.level
        return TorsionPoint(self.disc, level, [k * c for c in self.coords])

    def order(self) -> int:
        n = self.level
        for d in sorted(_divisors(n)):
            if all((d * c.a) % n == 0 and (d * c.b) % n == 0 for c in self.coords):
                return d
        raise AssertionError("unreachable")

    def reduced(self) -> TorsionPoint:
        """The same point written over its exact order."""
        o = self.order()
        k = self.level // o
        coords = [OrderElement(self.disc, c.a // k, c.b // k) for c in self.coords]
        return TorsionPoint(self.disc, o, coords)

    def __add__(self, other: TorsionPoint) -> TorsionPoint:
        _check_same(self.disc, self.N, other.disc, other.N)
        n = int_lcm(self.level, other.level)
        a, b = self.at_level(n), other.at_level(n)
        return TorsionPoint(self.disc, n, [x + y for x, y in zip(a.coords, b.coords)])

    def __neg__(self) -> TorsionPoint:
        return TorsionPoint(self.disc, self.level, [-c for c in self.coords])

    def __sub__(self, other: TorsionPoint) -> TorsionPoint:
        return self + (-other)

    def scaled(self, k: OrderElement | int) -> TorsionPoint:
        return TorsionPoint(self.disc, self.level, [k * c for c in self.coords])

    def __eq__(self, other) -> bool:
        if not isinstance(other, TorsionPoint):
            return NotImplemented
        if (self.disc, self.N) != (other.disc, other.N):
            return False
        a, b = self.reduced(), other.reduced()
        return a.level == b.level and a.coords == b.coords

    def __hash__(self):
        a = self.reduced()
        return hash((a.disc, a.level, a.coords))

    def __repr__(self) -> str:
        body = ", ".join(str(c) for c in self.coords)
        return f"TorsionPoint({self.disc}, level={self.level}, [{body}])"


def _divisors(n: int) -> list[int]:
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return out


def apply_matrix(M: SubgroupMatrix, zeta: TorsionPoint) -> TorsionPoint:
    """The image M*zeta, a torsion point of E^r at the same level."""
    _check_same(M.disc, M.N, zeta.disc, zeta.N)
    coords = []
    for row in M.rows:
        acc = OrderElement.zero(M.disc)
        for e, c in zip(row, zeta.coords):
            acc = acc + e * c
        coords.append(acc)
    return TorsionPoint(M.disc, zeta.level, coords)


def _int_block(e: OrderElement) -> list[list[int]]:
    # regular representation of multiplication by e on the basis (1, w)
    t = trace_omega(e.disc)
    n0 = norm_omega(e.disc)
    return [[e.a, -n0 * e.b], [e.b, e.a + t * e.b]]


def integer_model(rows, disc: int, n_cols: int) -> list[list[int]]:
    """The 2r x 2N integer matrix acting on coordinates (a_1, b_1, ..., a_N, b_N)."""
    out = []
    for row in rows:
        top, bot = [], []
        for e in row:
            blk = _int_block(e)
            top.extend(blk[0])
            bot.extend(blk[1])
        out.append(top)
        out.append(bot)
    return out


def vector_to_ints(v: list[OrderElement]) -> list[int]:
    out = []
    for e in v:
        out.extend((e.a, e.b))
    return out


def ints_to_vector(disc: int, flat: list[int]) -> list[OrderElement]:
    return [OrderElement(disc, flat[i], flat[i + 1]) for i in range(0, len(flat), 2)]


def kernel_count_at_level(M: SubgroupMatrix, level: int) -> int:
    """|{zeta in E[level]^N : M zeta = 0}| without enumeration."""
    if M.r == 0:
        return level ** (2 * M.N)
    d, _, _ = snf_int(integer_model(list(M.rows), M.disc, M.N))
    count = level ** (2 * (M.N - M.r))
    for di in d:
        count *= int_gcd(di, level)
    return count


def kernel_at_level(
    M: SubgroupMatrix, level: int, max_points: int | None = 200_000
) -> list[TorsionPoint]:
    """All torsion points of E[level]^N killed by M, via the integer model."""
    total = kernel_count_at_level(M, level)
    if max_points is not None and total > max_points:
        raise BudgetExceededError(
            f"kernel at level {level} has {total} points > budget {max_points}"
        )
    n2 = 2 * M.N
    if M.r == 0:
        ranges = [range(level)] * n2
        V = [[int(i == j) for j in range(n2)] for i in range(n2)]
    else:
        d, _, V = snf_int(integer_model(list(M.rows), M.disc, M.N))
        ranges = []
        for i in range(n2):
            if i < len(d) and d[i] != 0:
                g = int_gcd(d[i], level)
                step = level // g
                ranges.append(range(0, level, step))
            else:
                ranges.append(range(level))
    out = []
    from itertools import product as iproduct

    for u in iproduct(*ranges):
        v = [sum(V[i][j] * u[j] for j in range(n2)) % level for i in range(n2)]
        out.append(TorsionPoint(M.disc, level, ints_to_vector(M.disc, v)))
    seen = set()
    unique = []
    for p in out:
        key = p.coords
        if key not in seen:
            seen.add(key)
            unique.append(p)
    assert len(unique) == total
    return unique


def kernel_lattice_at_level(M: SubgroupMatrix, level: int) -> tuple:
    """Canonical integer form of {v in Z^{2N} : M v = 0 mod level}.

    Equal forms mean equal level-``level`` kernels, with no enumeration.
    """
    n2 = 2 * M.N
    gens = [[level * int(i == j) for j in range(n2)] for i in range(n2)]
    if M.r > 0:
        d, _, V = snf_int(integer_model(list(M.rows), M.disc, M.N))
        for i in range(n2):
            if i < len(d) and d[i] != 0:
                g = int_gcd(d[i], level)
                step = level // g
                gens.append([V[k][i] * step for k in range(n2)])
            else:
                gens.append([V[k][i] for k in range(n2)])
    return hnf_int(gens)


# ---------------------------------------------------------------------------
# sums, intersections, complements


def sum_and_intersection(
    H: SubgroupMatrix, K: SubgroupMatrix
) -> tuple[int, int, SubgroupMatrix, SubgroupMatrix]:
    """Dimensions and presenting matrices of H + K and the connected H ∩ K.

    The intersection matrix is the saturated row stack; the sum matrix is a
    saturated basis of the intersection of the two row spaces.
    """
    _check_same(H.disc, H.N, K.disc, K.N)
    disc, N = H.disc, H.N
    stacked = [list(r) for r in H.rows] + [list(r) for r in K.rows]
    if stacked:
        # saturation of a possibly dependent stack: annihilate its kernel
        kern = _right_kernel(stacked, disc, N)
        inter_rows = _annihilator(kern, disc, N)
        inter = hnf(SubgroupMatrix(disc, N, inter_rows, check_rank=False))
    else:
        inter = SubgroupMatrix(disc, N, [], check_rank=False)
    dim_int = N - inter.r
    k_h = _right_kernel(list(H.rows), disc, N)
    k_k = _right_kernel(list(K.rows), disc, N)
    sum_rows = _annihilator(k_h + k_k, disc, N)
    if sum_rows:
        Msum = hnf(SubgroupMatrix(disc, N, sum_rows, check_rank=False))
    else:
        Msum = SubgroupMatrix(disc, N, [], check_rank=False)
    dim_sum = N - Msum.r
    assert dim_sum + dim_int == H.dim + K.dim
    return dim_sum, dim_int, Msum, inter


def intersection_cardinality(H: SubgroupMatrix, K: SubgroupMatrix) -> int:
    """Exact |H ∩ K| for connected subgroups of complementary dimension.

    Computed as the index in O^N of the direct sum of the two kernel
    lattices, via an integer determinant on the rank-2N model.
    """
    _check_same(H.disc, H.N, K.disc, K.N)
    if H.dim + K.dim != H.N:
        raise ValueError(
            f"dimensions {H.dim} + {K.dim} != {H.N}: intersection not finite"
        )
    rows = _joint_lattice_rows(H, K)
    d = det_int(rows)
    if d == 0:
        raise RankError("kernel lattices are not complementary")
    return abs(d)


def _joint_lattice_rows(H: SubgroupMatrix, K: SubgroupMatrix) -> list[list[int]]:
    w = OrderElement.omega(H.disc)
    rows = []
    for v in _right_kernel(list(H.rows), H.disc, H.N) + _right_kernel(
        list(K.rows), K.disc, K.N
    ):
        rows.append(vector_to_ints(v))
        rows.append(vector_to_ints([w * e for e in v]))
    return rows

def intersection_exponent(H: SubgroupMatrix, K: SubgroupMatrix) -> int:
    """The least level annihilating every point of H ∩ K (complementary case)."""
    rows = _joint_lattice_rows(H, K)
    d, _, _ = snf_int(rows)
    if any(x == 0 for x in d):
        raise RankError("kernel lattices are not complementary")
    return d[-1]


def parametrization(M: SubgroupMatrix) -> list[list[OrderElement]]:
    """An N x m matrix whose columns parametrize the connected kernel of M."""
    cols = _right_kernel(list(M.rows), M.disc, M.N)
    return _transpose(cols) if cols else [[] for _ in range(M.N)]


def orthogonal_complement(M: SubgroupMatrix) -> SubgroupMatrix:
    """The connected subgroup whose tangent space is the conjugate-orthogonal
    complement of the tangent space of ker(M)^0.

    Its presenting matrix is the conjugate transpose of a kernel basis of M,
    so dim + dim-perp = N always holds.
    """
    kernel = _right_kernel(list(M.rows), M.disc, M.N)
    if not kernel:
        return SubgroupMatrix(M.disc, M.N, [], check_rank=False)
    rows = [[e.conjugate() for e in v] for v in kernel]
    return hnf(SubgroupMatrix(M.disc, M.N, rows, check_rank=False))


def tangent_orthogonal(
    A: list[list[OrderElement]], B: list[list[OrderElement]]
) -> bool:
    """Whether two parametrization matrices (N x d, row-major) have
    conjugate-orthogonal column spaces: sum_i A[i][j] * conj(B[i][k]) = 0."""
    if len(A) != len(B):
        raise ValueError(f"ambient sizes differ: {len(A)} vs {len(B)}")
    if not A or not A[0] or not B[0]:
        return True
    disc = A[0][0].disc
    d_a, d_b = len(A[0]), len(B[0])
    for j in range(d_a):
        for k in range(d_b):
            acc = OrderElement.zero(disc)
            for i in range(len(A)):
                acc = acc + A[i][j] * B[i][k].conjugate()
            if acc:
                return False
    return True


# ---------------------------------------------------------------------------
# anomaly tests


def is_anomalous(dim_y: int, dim_v: int, dim_b: int, n_ambient: int) -> bool:
    """Whether a dim_y component of V ∩ (B + torsion) is torsion anomalous:
    its codimension is less than the sum of the codimensions of V and B."""
    if not 0 <= dim_y <= dim_v < n_ambient:
        raise ValueError(
            f"need 0 <= dim_y <= dim_v < N, got ({dim_y}, {dim_v}, {n_ambient})"
        )
    if not dim_y <= dim_b <= n_ambient:
        raise ValueError(f"need dim_y <= dim_b <= N, got ({dim_y}, {dim_b}, {n_ambient})")
    return (n_ambient - dim_y) < (n_ambient - dim_v) + (n_ambient - dim_b)


def translate_has_no_anomalous(
    H: SubgroupMatrix, B: SubgroupMatrix, dim_y: int
) -> bool:
    """Certificate that a weak-transverse translate H + p admits no torsion
    anomalous component of dimension dim_y inside B + torsion.

    True when the dimension count dim H + dim B - dim_y < N holds (with
    dim(H ∩ B) >= dim_y): then H + B is a proper subgroup, and containment
    of H + p in a proper torsion variety would contradict weak-transversality,
    so the intersection must be empty.  False means the dimension data is not
    anomalous in the first place and no certificate is needed.
    """
    _check_same(H.disc, H.N, B.disc, B.N)
    dim_sum, dim_int, _, _ = sum_and_intersection(H, B)
    if dim_int < dim_y:
        return False
    if H.dim + B.dim - dim_y >= H.N:
        return False
    assert dim_sum < H.N
    return True


# ---------------------------------------------------------------------------
# field-level solves (used for coset base points)


def solve_field(
    rows: list[list[OrderElement]], rhs: list[QuadRat], disc: int
) -> list[QuadRat]:
    """One solution over the fraction field of M z = rhs (M full row rank)."""
    m = len(rows)
    if m == 0:
        return []
    n = len(rows[0])
    A = [[QuadRat.from_order(e) for e in row] + [rhs[i]] for i, row in enumerate(rows)]
    piv_cols = []
    ri = 0
    for c in range(n):
        piv = None
        for k in range(ri, m):
            if A[k][c]:
                piv = k
                break
        if piv is None:
            continue
        A[ri], A[piv] = A[piv], A[ri]
        inv = A[ri][c]
        A[ri] = [x / inv for x in A[ri]]
        for k in range(m):
            if k != ri and A[k][c]:
                f = A[k][c]
                A[k] = [x - f * y for x, y in zip(A[k], A[ri])]
        piv_cols.append(c)
        ri += 1
        if ri == m:
            break
    if ri < m:
        for k in range(ri, m):
            if A[k][n]:
                raise RankError("system is inconsistent")
    z = [QuadRat.zero(disc) for _ in range(n)]
    for i, c in enumerate(piv_cols):
        z[c] = A[i][n]
    return z

"""Exact integer matrix algebra.

Everything here runs on Python's arbitrary-precision integers: Hermite and
Smith normal forms with unimodular transforms, integer kernels and solvers,
cokernel invariants, and direct complements of saturated sublattices.  No
floating point is ever used, and all values are immutable, so the module is
safe for unrestricted concurrent use.

Conventions:
  * matrices act on row vectors from the right unless stated otherwise;
    a lattice is the row span of its basis matrix;
  * the Hermite normal form is row-style: pivots positive, entries below a
    pivot zero, entries above a pivot reduced into ``[0, pivot)``, zero rows
    dropped.  It is the single canonical representation of a lattice;
  * ``smith_normal_form(M)`` returns ``(U, D, V)`` with ``U * M * V = D``,
    ``U`` and ``V`` unimodular and ``D`` diagonal with a nonnegative
    divisibility chain ``d1 | d2 | ...``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import NotSaturated, NotUnimodular


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix stored as a tuple of row tuples."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        widths = {len(r) for r in self.rows}
        if len(widths) > 1:
            raise ValueError("ragged rows")

    @classmethod
    def from_rows(cls, rows, ncols: int | None = None) -> "IntMatrix":
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        if not rows and ncols is None:
            ncols = 0
        if rows and ncols is not None and any(len(r) != ncols for r in rows):
            raise ValueError("row width does not match ncols")
        m = cls(rows)
        if not rows:
            object.__setattr__(m, "_ncols", ncols or 0)
        return m

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "IntMatrix":
        m = cls(tuple(tuple(0 for _ in range(ncols)) for _ in range(nrows)))
        if nrows == 0:
            object.__setattr__(m, "_ncols", ncols)
        return m

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        if self.rows:
            return len(self.rows[0])
        return getattr(self, "_ncols", 0)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        cols = list(zip(*other.rows)) if other.rows else []
        rows = tuple(
            tuple(sum(a * b for a, b in zip(r, c)) for c in cols) for r in self.rows
        )
        out = IntMatrix(rows)
        if not rows or not cols:
            out = IntMatrix.from_rows(rows, ncols=other.ncols)
        return out

    def transpose(self) -> "IntMatrix":
        return IntMatrix.from_rows(tuple(zip(*self.rows)), ncols=self.nrows)

    def apply(self, vec: tuple[int, ...]) -> tuple[int, ...]:
        """Matrix times column vector."""
        if len(vec) != self.ncols:
            raise ValueError("shape mismatch")
        return tuple(sum(a * b for a, b in zip(r, vec)) for r in self.rows)

    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.rows[i][i] for i in range(min(self.nrows, self.ncols)))

    def det(self) -> int:
        """Determinant by fraction-free Bareiss elimination."""
        n = self.nrows
        if n != self.ncols:
            raise ValueError("determinant of a non-square matrix")
        if n == 0:
            return 1
        a = [list(r) for r in self.rows]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k] != 0:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
                a[i][k] = 0
            prev = a[k][k]
        return sign * a[n - 1][n - 1]

    def is_unimodular(self) -> bool:
        return self.nrows == self.ncols and abs(self.det()) == 1

    def flat(self) -> tuple[int, ...]:
        return tuple(x for r in self.rows for x in r)

    def to_lists(self) -> list[list[int]]:
        return [list(r) for r in self.rows]


def _hnf_inplace(rows: list[list[int]], transform: list[list[int]] | None):
    """Row-reduce ``rows`` to Hermite form in place, mirroring ops on ``transform``.

    Returns the list of pivot columns.  Rows below the pivot count end up zero.
    """
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        # gcd-eliminate column c among rows r..end
        while True:
            best = None
            for i in range(r, nrows):
                if rows[i][c] != 0 and (best is None or abs(rows[i][c]) < abs(rows[best][c])):
                    best = i
            if best is None:
                break
            if best != r:
                rows[r], rows[best] = rows[best], rows[r]
                if transform is not None:
                    transform[r], transform[best] = transform[best], transform[r]
            done = True
            for i in range(r + 1, nrows):
                if rows[i][c] != 0:
                    q = rows[i][c] // rows[r][c]
                    rows[i] = [x - q * y for x, y in zip(rows[i], rows[r])]
                    if transform is not None:
                        transform[i] = [x - q * y for x, y in zip(transform[i], transform[r])]
                    if rows[i][c] != 0:
                        done = False
            if done:
                break
        if r < nrows and rows[r][c] != 0:
            if rows[r][c] < 0:
                rows[r] = [-x for x in rows[r]]
                if transform is not None:
                    transform[r] = [-x for x in transform[r]]
            for i in range(r):
                q = rows[i][c] // rows[r][c]
                if q:
                    rows[i] = [x - q * y for x, y in zip(rows[i], rows[r])]
                    if transform is not None:
                        transform[i] = [x - q * y for x, y in zip(transform[i], transform[r])]
            pivots.append(c)
            r += 1
    return pivots


def hermite_normal_form(m: IntMatrix) -> IntMatrix:
    """Canonical row-style HNF of the row span of ``m``; zero rows dropped."""
    rows = [list(r) for r in m.rows]
    pivots = _hnf_inplace(rows, None)
    return IntMatrix.from_rows(rows[: len(pivots)], ncols=m.ncols)


def hnf_with_transform(m: IntMatrix) -> tuple[IntMatrix, IntMatrix, list[int]]:
    """HNF keeping zero rows, plus unimodular ``U`` with ``U @ m == H``."""
    rows = [list(r) for r in m.rows]
    transform = [[1 if i == j else 0 for j in range(m.nrows)] for i in range(m.nrows)]
    pivots = _hnf_inplace(rows, transform)
    return (
        IntMatrix.from_rows(rows, ncols=m.ncols),
        IntMatrix.from_rows(transform, ncols=m.nrows),
        pivots,
    )


def reduce_by_hnf(vec: tuple[int, ...], hnf: IntMatrix, pivots: list[int] | None = None):
    """Reduce ``vec`` against HNF rows; returns (residue, coefficients).

    ``residue = vec - coeffs @ hnf`` with each pivot-column entry of the
    residue lying in ``[0, pivot)``.
    """
    if pivots is None:
        pivots = []
        for i, row in enumerate(hnf.rows):
            for c, x in enumerate(row):
                if x != 0:
                    pivots.append(c)
                    break
    v = list(vec)
    coeffs = [0] * hnf.nrows
    for i, c in enumerate(pivots):
        q = v[c] // hnf.rows[i][c]
        if q:
            v = [x - q * y for x, y in zip(v, hnf.rows[i])]
            coeffs[i] = q
    return tuple(v), tuple(coeffs)


def left_kernel(m: IntMatrix) -> IntMatrix:
    """Canonical basis of ``{x : x @ m == 0}`` as HNF rows."""
    h, u, pivots = hnf_with_transform(m)
    kernel_rows = [u.rows[i] for i in range(len(pivots), m.nrows)]
    return hermite_normal_form(IntMatrix.from_rows(kernel_rows, ncols=m.nrows))


def solve_left(m: IntMatrix, target: tuple[int, ...]):
    """One integer solution ``x`` of ``x @ m == target``, or None."""
    h, u, pivots = hnf_with_transform(m)
    head = IntMatrix.from_rows(h.rows[: len(pivots)], ncols=m.ncols)
    residue, coeffs = reduce_by_hnf(target, head, pivots)
    if any(residue):
        return None
    x = [0] * m.nrows
    for q, urow in zip(coeffs, u.rows):
        if q:
            x = [a + q * b for a, b in zip(x, urow)]
    return tuple(x)


def smith_normal_form(m: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith normal form ``U @ m @ V = D``.

    ``U`` and ``V`` are unimodular, ``D`` is diagonal with nonnegative
    entries satisfying ``d1 | d2 | ...`` (signs are absorbed into ``U``).
    """
    nr, nc = m.nrows, m.ncols
    a = [list(r) for r in m.rows]
    u = [[1 if i == j else 0 for j in range(nr)] for i in range(nr)]
    v = [[1 if i == j else 0 for j in range(nc)] for i in range(nc)]

    def row_op(i, j, q):  # row i -= q * row j
        a[i] = [x - q * y for x, y in zip(a[i], a[j])]
        u[i] = [x - q * y for x, y in zip(u[i], u[j])]

    def col_op(i, j, q):  # col i -= q * col j
        for row in a:
            row[i] -= q * row[j]
        for row in v:
            row[i] -= q * row[j]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    k = 0
    while k < min(nr, nc):
        # find a nonzero entry of least absolute value in the trailing block
        best = None
        for i in range(k, nr):
            for j in range(k, nc):
                if a[i][j] != 0 and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        if i != k:
            swap_rows(k, i)
        if j != k:
            swap_cols(k, j)
        dirty = False
        for i in range(k + 1, nr):
            if a[i][k]:
                q = a[i][k] // a[k][k]
                row_op(i, k, q)
                if a[i][k]:
                    dirty = True
        for j in range(k + 1, nc):
            if a[k][j]:
                q = a[k][j] // a[k][k]
                col_op(j, k, q)
                if a[k][j]:
                    dirty = True
        if dirty:
            continue
        # pivot now clean; enforce divisibility against the rest of the block
        offender = None
        for i in range(k + 1, nr):
            for j in range(k + 1, nc):
                if a[i][j] % a[k][k] != 0:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            # fold the offending row into row k and redo the pivot
            a[k] = [x + y for x, y in zip(a[k], a[offender])]
            u[k] = [x + y for x, y in zip(u[k], u[offender])]
            continue
        k += 1

    for i in range(min(nr, nc)):
        if a[i][i] < 0:
            a[i] = [-x for x in a[i]]
            u[i] = [-x for x in u[i]]
    return (
        IntMatrix.from_rows(u, ncols=nr),
        IntMatrix.from_rows(a, ncols=nc),
        IntMatrix.from_rows(v, ncols=nc),
    )


def inverse_unimodular(m: IntMatrix) -> IntMatrix:
    """Exact inverse of a unimodular matrix."""
    inv, den = inverse_scaled(m)
    if abs(den) != 1:
        raise NotUnimodular(f"determinant {den} is not a unit")
    if den == 1:
        return inv
    return IntMatrix.from_rows([[-x for x in r] for r in inv.rows], ncols=m.ncols)


def inverse_scaled(m: IntMatrix) -> tuple[IntMatrix, int]:
    """Return ``(N, d)`` with ``m @ N == d * I`` and ``d = det(m) != 0``.

    Gauss-Jordan over exact rationals, then cleared to integers.
    """
    n = m.nrows
    if n != m.ncols:
        raise ValueError("inverse of a non-square matrix")
    d = m.det()
    if d == 0:
        raise ValueError("singular matrix")
    a = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(m.rows)]
    for col in range(n):
        piv = next(i for i in range(col, n) if a[i][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        scale = a[col][col]
        a[col] = [x / scale for x in a[col]]
        for i in range(n):
            if i != col and a[i][col] != 0:
                factor = a[i][col]
                a[i] = [x - factor * y for x, y in zip(a[i], a[col])]
    rows = []
    for i in range(n):
        row = []
        for j in range(n, 2 * n):
            val = a[i][j] * d
            if val.denominator != 1:
                raise ValueError("non-integer scaled inverse")
            row.append(int(val))
        rows.append(row)
    return IntMatrix.from_rows(rows, ncols=n), d


def cokernel_invariants(m: IntMatrix) -> tuple[tuple[int, ...], int]:
    """Structure of ``Z^nrows / column-span(m)``.

    Returns ``(invariant factors > 1, free rank)``.
    """
    _, d, _ = smith_normal_form(m)
    diag = d.diagonal()
    nonzero = [x for x in diag if x != 0]
    factors = tuple(x for x in nonzero if x > 1)
    return factors, m.nrows - len(nonzero)


def remove_p_part(a: int, p: int) -> int:
    """Divide ``a`` by the largest power of ``p`` dividing it; identity at p=0."""
    if p == 0 or a == 0:
        return a
    while a % p == 0:
        a //= p
    return a


@dataclass(frozen=True)
class Lattice:
    """Sublattice of ``Z^ambient_rank`` spanned by the rows of ``basis``.

    The stored basis is always the canonical HNF with zero rows dropped, so
    equal lattices compare equal structurally.
    """

    ambient_rank: int
    basis: IntMatrix

    @classmethod
    def from_rows(cls, ambient_rank: int, rows) -> "Lattice":
        m = IntMatrix.from_rows(rows, ncols=ambient_rank)
        if m.ncols != ambient_rank:
            raise ValueError("row width does not match ambient rank")
        return cls(ambient_rank, hermite_normal_form(m))

    @classmethod
    def full(cls, ambient_rank: int) -> "Lattice":
        return cls(ambient_rank, IntMatrix.identity(ambient_rank))

    @classmethod
    def zero(cls, ambient_rank: int) -> "Lattice":
        return cls(ambient_rank, IntMatrix.from_rows([], ncols=ambient_rank))

    @property
    def rank(self) -> int:
        return self.basis.nrows

    def contains(self, vec: tuple[int, ...]) -> bool:
        residue, _ = reduce_by_hnf(tuple(vec), self.basis)
        return not any(residue)


def reduce_trailing(vec: tuple[int, ...], basis: IntMatrix) -> tuple[int, ...]:
    """Reduce ``vec`` modulo the lattice, normalizing trailing coordinates.

    Works in reversed coordinate order so pivots sit as far right as
    possible; the reduced representative carries its weight on the earliest
    coordinates.  Used to pick canonical complement representatives.
    """
    if basis.nrows == 0:
        return vec
    rev = IntMatrix.from_rows([r[::-1] for r in basis.rows], ncols=basis.ncols)
    h = hermite_normal_form(rev)
    residue, _ = reduce_by_hnf(vec[::-1], h)
    return residue[::-1]


def saturated_complement(lat: Lattice) -> Lattice:
    """Direct complement ``C`` with ``lat (+) C = Z^r``.

    Requires ``Z^r / lat`` torsion-free; raises :class:`NotSaturated`
    otherwise.  The choice of complement is canonicalized by reducing each
    complement basis vector modulo ``lat`` (trailing coordinates normalized,
    sign fixed so the first nonzero entry is positive).
    """
    r = lat.ambient_rank
    k = lat.rank
    if k == 0:
        return Lattice.full(r)
    u, d, v = smith_normal_form(lat.basis)
    diag = d.diagonal()
    bad = [x for x in diag if x not in (0, 1)]
    if bad or any(x == 0 for x in diag):
        raise NotSaturated(f"quotient has torsion; Smith diagonal {diag}")
    # With U B V = [I_k | 0], the first k rows of V^{-1} span the lattice and
    # the remaining rows complete them to a basis of Z^r.
    w = inverse_unimodular(v)
    comp_rows = [w.rows[i] for i in range(k, r)]
    reduced = []
    for row in comp_rows:
        vec = reduce_trailing(tuple(row), lat.basis)
        lead = next((x for x in vec if x != 0), 0)
        if lead < 0:
            vec = tuple(-x for x in vec)
            vec = reduce_trailing(vec, lat.basis)
        reduced.append(vec)
    return Lattice.from_rows(r, reduced)


def stack(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    if a.ncols != b.ncols:
        raise ValueError("shape mismatch")
    return IntMatrix.from_rows(a.rows + b.rows, ncols=a.ncols)


def lattice_intersection(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    """Canonical basis of the intersection of two row-span lattices."""
    if a.ncols != b.ncols:
        raise ValueError("ambient dimensions differ")
    if a.nrows == 0 or b.nrows == 0:
        return IntMatrix.from_rows([], ncols=a.ncols)
    stacked = stack(a, b)
    kernel = left_kernel(stacked)
    rows = []
    for coeffs in kernel.rows:
        vec = [0] * a.ncols
        for c, row in zip(coeffs[: a.nrows], a.rows):
            vec = [x + c * y for x, y in zip(vec, row)]
        rows.append(vec)
    return hermite_normal_form(IntMatrix.from_rows(rows, ncols=a.ncols))


def congruence_kernel(rows, moduli, dim: int) -> IntMatrix:
    """Basis (HNF) of ``{x in Z^dim : row_j . x == 0 mod m_j for all j}``.

    Rows with modulus 1 impose nothing.  The solution lattice always has
    full rank ``dim``.
    """
    rows = [tuple(r) for r in rows]
    moduli = [int(m) for m in moduli]
    live = [(r, m) for r, m in zip(rows, moduli) if m != 1]
    if not live:
        return IntMatrix.identity(dim)
    k = len(live)
    # x satisfies the congruences iff (x, y) with A x = M y for some integer y;
    # build the (dim+k) x k relation matrix and take its left kernel projection.
    rel_rows = []
    for j in range(dim):
        rel_rows.append(tuple(live[i][0][j] for i in range(k)))
    for i in range(k):
        rel_rows.append(tuple(-live[i][1] if i == t else 0 for t in range(k)))
    rel = IntMatrix.from_rows(rel_rows, ncols=k)
    kernel = left_kernel(rel)
    projected = [row[:dim] for row in kernel.rows]
    return hermite_normal_form(IntMatrix.from_rows(projected, ncols=dim))

"""Simple Dynkin types: Cartan matrices, root systems, centers, diagram symmetry.

Node numbering follows Bourbaki throughout; this fixes which center element
of an even-D type is the vector involution versus the two half-spin ones.
The Cartan matrix convention is ``C[i][j] = <alpha_i, alpha_j^vee>``, so in
fundamental-weight coordinates the i-th simple root is row i of the matrix
and the reflection ``s_j`` sends a weight ``w`` to ``w - w[j] * row_j``.

Centers are computed, never table-loaded: the center of the simply connected
group of type ``t`` is the dual of the weight-mod-root-lattice quotient, read
off the Smith normal form of the Cartan matrix.  A :class:`CenterStructure`
retains the transform needed to pair center elements against weights and to
transport diagram automorphisms to the center.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import NotDiagramAutomorphism, ParseError
from .finab import FinAb
from .intlinalg import IntMatrix, inverse_unimodular, smith_normal_form

_RANK_RANGE = {
    # family: (min rank, max rank or None); coincidences B2=C2, D3=A3 are
    # excluded by the lower bounds
    "A": (1, None),
    "B": (2, None),
    "C": (3, None),
    "D": (4, None),
    "E": (6, 8),
    "F": (4, 4),
    "G": (2, 2),
}


@dataclass(frozen=True, order=True)
class SimpleType:
    """A simple Dynkin type such as A1, D4 or E8."""

    family: str
    rank: int

    def __post_init__(self):
        if self.family not in _RANK_RANGE:
            raise ParseError(f"unknown family {self.family!r}")
        lo, hi = _RANK_RANGE[self.family]
        if self.rank < lo or (hi is not None and self.rank > hi):
            raise ParseError(f"rank {self.rank} out of range for family {self.family}")

    @classmethod
    def parse(cls, name: str) -> "SimpleType":
        m = re.fullmatch(r"([A-G])(\d+)", name.strip())
        if not m:
            raise ParseError(f"cannot parse simple type {name!r}")
        return cls(m.group(1), int(m.group(2)))

    @property
    def name(self) -> str:
        return f"{self.family}{self.rank}"

    def __str__(self) -> str:
        return self.name


def all_types_of_rank(rank: int) -> list[SimpleType]:
    out = []
    for family, (lo, hi) in _RANK_RANGE.items():
        if rank >= lo and (hi is None or rank <= hi):
            out.append(SimpleType(family, rank))
    return sorted(out)


def _edges(t: SimpleType) -> list[tuple[int, int]]:
    """Dynkin diagram edges (unordered, 0-indexed Bourbaki nodes)."""
    l = t.rank
    chain = [(i, i + 1) for i in range(l - 1)]
    if t.family in ("A", "B", "C"):
        return chain
    if t.family == "D":
        return [(i, i + 1) for i in range(l - 2)] + [(l - 3, l - 1)]
    if t.family == "E":
        # chain 1-3-4-5-6(-7)(-8) with node 2 attached to node 4
        chain_nodes = [0, 2, 3, 4, 5, 6, 7][: l - 1]
        out = [(a, b) for a, b in zip(chain_nodes, chain_nodes[1:])]
        out.append((1, 3))
        return out
    if t.family == "F":
        return chain
    if t.family == "G":
        return chain
    raise AssertionError


@lru_cache(maxsize=None)
def cartan_matrix(t: SimpleType) -> IntMatrix:
    """Standard Cartan matrix in Bourbaki numbering."""
    l = t.rank
    rows = [[2 if i == j else 0 for j in range(l)] for i in range(l)]
    for a, b in _edges(t):
        rows[a][b] = -1
        rows[b][a] = -1
    if t.family == "B":
        # short last root: <alpha_{l-1}, alpha_l^vee> = -2
        rows[l - 2][l - 1] = -2
    elif t.family == "C":
        rows[l - 1][l - 2] = -2
    elif t.family == "F":
        rows[1][2] = -2
    elif t.family == "G":
        rows[1][0] = -3
    return IntMatrix.from_rows(rows)


@dataclass(frozen=True)
class RootSystem:
    """Full root set in simple-root coordinates."""

    type: SimpleType
    cartan: IntMatrix
    roots: frozenset[tuple[int, ...]]

    @property
    def dimension(self) -> int:
        return self.type.rank + len(self.roots)


@lru_cache(maxsize=None)
def generate_roots(t: SimpleType) -> RootSystem:
    """Close the simple roots under all simple reflections.

    In simple-root coordinates ``s_j(c) = c - (c^T C)_j e_j``.
    """
    c = cartan_matrix(t)
    l = t.rank
    simple = [tuple(1 if i == j else 0 for j in range(l)) for i in range(l)]
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        root = frontier.pop()
        pairing = [sum(root[i] * c.rows[i][j] for i in range(l)) for j in range(l)]
        for j in range(l):
            reflected = list(root)
            reflected[j] -= pairing[j]
            reflected = tuple(reflected)
            if reflected not in seen:
                seen.add(reflected)
                frontier.append(reflected)
    return RootSystem(t, c, frozenset(seen))


def dimension(t: SimpleType) -> int:
    return generate_roots(t).dimension


@dataclass(frozen=True)
class CenterStructure:
    """Center of the simply connected group of one simple type.

    ``group`` lists the invariant factors (> 1).  A center element ``z``
    pairs with a weight ``w`` (fundamental-weight coordinates) as

        <z, w> = sum_i z_i * (transform @ w)_i / factors_i  (mod 1),

    where ``transform`` collects the rows of the weight-side Smith transform
    belonging to nontrivial invariant factors.
    """

    type: SimpleType
    group: FinAb
    transform: IntMatrix  # ncoords x rank

    def pair(self, z, weight) -> Fraction:
        acc = Fraction(0)
        for zi, d, row in zip(z, self.group.orders, self.transform.rows):
            acc += Fraction(zi * sum(r * w for r, w in zip(row, weight)), d)
        return acc - (acc.numerator // acc.denominator)


@lru_cache(maxsize=None)
def center_structure(t: SimpleType) -> CenterStructure:
    c = cartan_matrix(t)
    # weight lattice mod root lattice: the roots span the row space of C,
    # so the quotient is coker(C^T); its coordinates are W x with W = V^T.
    u, d, v = smith_normal_form(c)
    diag = d.diagonal()
    w = v.transpose()
    keep = [i for i, x in enumerate(diag) if x > 1]
    group = FinAb(tuple(diag[i] for i in keep))
    transform = IntMatrix.from_rows([w.rows[i] for i in keep], ncols=t.rank)
    return CenterStructure(t, group, transform)


def center(t: SimpleType) -> FinAb:
    """Center of the simply connected simple group of type ``t``."""
    return center_structure(t).group


@lru_cache(maxsize=None)
def diagram_automorphisms(t: SimpleType) -> tuple[tuple[int, ...], ...]:
    """Full automorphism group of the Dynkin diagram as node permutations.

    Permutations are tuples with ``perm[i]`` the image of node ``i``.  The
    identity always comes first; the remaining elements are sorted.
    """
    l = t.rank
    identity = tuple(range(l))
    perms = [identity]
    if t.family == "A" and l >= 2:
        perms.append(tuple(l - 1 - i for i in range(l)))
    elif t.family == "D" and l == 4:
        # all permutations of the three outer nodes 0, 2, 3
        import itertools

        for img in itertools.permutations((0, 2, 3)):
            perm = list(range(4))
            for src, dst in zip((0, 2, 3), img):
                perm[src] = dst
            if tuple(perm) != identity:
                perms.append(tuple(perm))
    elif t.family == "D" and l >= 5:
        swap = list(range(l))
        swap[l - 2], swap[l - 1] = swap[l - 1], swap[l - 2]
        perms.append(tuple(swap))
    elif t.family == "E" and l == 6:
        perms.append((5, 1, 4, 3, 2, 0))
    out = [identity] + sorted(p for p in perms if p != identity)
    c = cartan_matrix(t)
    for p in out:
        assert all(
            c.rows[p[i]][p[j]] == c.rows[i][j] for i in range(l) for j in range(l)
        ), "permutation does not preserve the Cartan matrix"
    return tuple(out)


@lru_cache(maxsize=None)
def center_action(t: SimpleType, perm: tuple[int, ...]) -> IntMatrix:
    """Automorphism of ``center(t)`` induced by a diagram automorphism.

    The node permutation acts on weights; the center is the dual side, so
    the action is transported through the Smith transform of the Cartan
    matrix and rescaled by the invariant factors.
    """
    if perm not in diagram_automorphisms(t):
        raise NotDiagramAutomorphism(f"{perm} is not a diagram automorphism of {t.name}")
    l = t.rank
    cs = center_structure(t)
    u, d, v = smith_normal_form(cartan_matrix(t))
    w = v.transpose()
    winv = inverse_unimodular(w)
    diag = d.diagonal()
    # matrix of perm^{-1} in the convention P_sigma e_i = e_{sigma(i)}:
    # entry (i, perm[i]) = 1
    p_inv = IntMatrix.from_rows(
        [[1 if j == perm[i] else 0 for j in range(l)] for i in range(l)]
    )
    a = w @ p_inv @ winv  # action of perm^{-1} on weight-quotient coordinates
    keep = [i for i, x in enumerate(diag) if x > 1]
    rows = []
    for j in keep:
        row = []
        for i in keep:
            num = diag[j] * a.rows[i][j]
            assert num % diag[i] == 0, "transported action is not integral"
            row.append((num // diag[i]) % diag[j])
        rows.append(row)
    m = IntMatrix.from_rows(rows, ncols=len(keep))
    return m

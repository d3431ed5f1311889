"""Simply connected semisimple groups as sorted multisets of simple factors.

The center of a product is the direct sum of factor centers with the block
layout retained, the extended outer automorphism group is generated by
per-factor diagram automorphisms together with swaps of equal factors, and
isomorphism of central quotients is decided by orbit equivalence of the
central subgroups under that action.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .finab import (
    FinAb,
    FinAbSubgroup,
    direct_sum,
    orbit_equivalent,
    subgroup_image,
)
from .intlinalg import IntMatrix
from .roots import (
    SimpleType,
    center,
    center_action,
    diagram_automorphisms,
    dimension,
)


@dataclass(frozen=True)
class SCSemisimple:
    """Product of simply connected simple factors, sorted canonically."""

    factors: tuple[SimpleType, ...]

    def __post_init__(self):
        if tuple(sorted(self.factors)) != self.factors:
            raise ValueError("factors must be sorted; use SCSemisimple.of")

    @classmethod
    def of(cls, factors) -> "SCSemisimple":
        return cls(tuple(sorted(factors)))

    @classmethod
    def parse(cls, names) -> "SCSemisimple":
        return cls.of(SimpleType.parse(n) for n in names)

    @property
    def rank(self) -> int:
        return sum(t.rank for t in self.factors)

    @property
    def dim(self) -> int:
        return sum(dimension(t) for t in self.factors)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(t.name for t in self.factors)

    def is_trivial(self) -> bool:
        return not self.factors

    def __str__(self) -> str:
        return "x".join(self.names) if self.factors else "1"


@dataclass(frozen=True)
class ProductCenter:
    """Center of a product with its per-factor coordinate blocks."""

    semisimple: SCSemisimple
    group: FinAb
    blocks: tuple[tuple[SimpleType, int, int], ...]  # (factor, start, stop)

    def block_slice(self, index: int) -> tuple[int, int]:
        return self.blocks[index][1], self.blocks[index][2]


@lru_cache(maxsize=None)
def center_of(s: SCSemisimple) -> ProductCenter:
    """Direct sum of the factor centers, coordinates blocked per factor."""
    groups = []
    blocks = []
    offset = 0
    for t in s.factors:
        g = center(t)
        groups.append(g)
        blocks.append((t, offset, offset + g.ncoords))
        offset += g.ncoords
    return ProductCenter(s, direct_sum(*groups), tuple(blocks))


@dataclass(frozen=True)
class CentralSubgroup:
    """Central subgroup of a simply connected semisimple group."""

    parent: SCSemisimple
    subgroup: FinAbSubgroup

    def __post_init__(self):
        if self.subgroup.parent != center_of(self.parent).group:
            raise ValueError("subgroup does not live in the center of the parent")

    @property
    def order(self) -> int:
        return self.subgroup.order


@dataclass(frozen=True)
class OutGenerator:
    """One generator of the extended outer action on the center."""

    label: str
    matrix: IntMatrix


def _embed_block(total: int, start: int, block: IntMatrix) -> IntMatrix:
    rows = [[1 if i == j else 0 for j in range(total)] for i in range(total)]
    for i in range(block.nrows):
        for j in range(block.ncols):
            rows[start + i][start + j] = block.rows[i][j]
    return IntMatrix.from_rows(rows, ncols=total)


def _block_swap(total: int, a: tuple[int, int], b: tuple[int, int]) -> IntMatrix:
    rows = [[0] * total for _ in range(total)]
    width = a[1] - a[0]
    assert width == b[1] - b[0]
    moved = set(range(a[0], a[1])) | set(range(b[0], b[1]))
    for i in range(total):
        if i not in moved:
            rows[i][i] = 1
    for k in range(width):
        rows[a[0] + k][b[0] + k] = 1
        rows[b[0] + k][a[0] + k] = 1
    return IntMatrix.from_rows(rows, ncols=total)


@lru_cache(maxsize=None)
def extended_out_generators(s: SCSemisimple) -> tuple[OutGenerator, ...]:
    """Generators of the image of Out on the center.

    Per-factor diagram automorphisms (identity omitted) plus swaps of
    adjacent equal factors.  An empty tuple means the action is trivial.
    """
    pc = center_of(s)
    total = pc.group.ncoords
    out = []
    for idx, (t, start, stop) in enumerate(pc.blocks):
        for perm in diagram_automorphisms(t)[1:]:
            m = center_action(t, perm)
            out.append(
                OutGenerator(f"out[{idx}]{t.name}:{','.join(map(str, perm))}", _embed_block(total, start, m))
            )
    for idx in range(len(pc.blocks) - 1):
        t1, a0, a1 = pc.blocks[idx]
        t2, b0, b1 = pc.blocks[idx + 1]
        if t1 == t2:
            out.append(OutGenerator(f"swap[{idx},{idx + 1}]{t1.name}", _block_swap(total, (a0, a1), (b0, b1))))
    return tuple(out)


def isomorphic_quotients(
    s: SCSemisimple, first: CentralSubgroup, second: CentralSubgroup
) -> tuple[str, ...] | None:
    """Witness word iff the central quotients are isomorphic algebraic groups.

    Isomorphism of ``S/C1`` and ``S/C2`` is equivalent to ``C1`` and ``C2``
    lying in one orbit of the extended outer action on the center.
    """
    if first.parent != s or second.parent != s:
        raise ValueError("subgroups must be central in the given group")
    gens = extended_out_generators(s)
    word = orbit_equivalent(
        center_of(s).group, first.subgroup, second.subgroup, [g.matrix for g in gens]
    )
    if word is None:
        return None
    return tuple(gens[i].label for i in word)


def _simply_connected_name(t: SimpleType) -> str:
    l = t.rank
    if t.family == "A":
        return f"SL{l + 1}"
    if t.family == "B":
        return f"Spin{2 * l + 1}"
    if t.family == "C":
        return f"Sp{2 * l}"
    if t.family == "D":
        return f"Spin{2 * l}"
    return t.name

def quotient_name(t: SimpleType, c: FinAbSubgroup) -> str:
    """Conventional name of the quotient of the type-``t`` group by ``c``."""
    if c.parent != center(t):
        raise ValueError("subgroup does not live in the center of the given type")
    order = c.order
    full = center(t).order
    l = t.rank
    if order == 1:
        return _simply_connected_name(t)
    if t.family == "A":
        return f"PGL{l + 1}" if order == full else f"SL{l + 1}/Z{order}"
    if t.family == "B":
        return f"SO{2 * l + 1}"
    if t.family == "C":
        return f"PSp{2 * l}"
    if t.family == "D":
        if order == full:
            return f"PSO{2 * l}"
        if l % 2 == 1:
            return f"SO{2 * l}"
        # even D: SO for the Out-fixed involution, half-spin otherwise;
        # for D4 triality makes all three quotients SO8
        if l == 4:
            return "SO8"
        actions = [center_action(t, p) for p in diagram_automorphisms(t)[1:]]
        fixed = all(subgroup_image(c, m) == c for m in actions)
        return f"SO{2 * l}" if fixed else f"SSpin{2 * l}"
    if t.family == "E" and l in (6, 7):
        return f"E{l}ad"
    return f"{t.name}/Z{order}"

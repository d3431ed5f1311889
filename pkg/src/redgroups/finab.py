"""Finite abelian groups presented as products of cyclic groups.

A group is a tuple of cyclic orders; elements are coordinate tuples reduced
modulo those orders.  Subgroups are stored canonically as the Hermite normal
form of their preimage lattice in ``Z^k`` (which always contains
``diag(orders) * Z^k``), so equal subgroups compare equal structurally and
enumeration orders are deterministic.

The stored order tuple is a presentation, not necessarily an invariant-factor
chain: direct sums keep their per-coordinate block structure, and the
canonical chain is available through :meth:`FinAb.invariant_factors`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import gcd, lcm

from .errors import NotAutomorphism, NotSubgroup, TooLarge
from .intlinalg import (
    IntMatrix,
    hermite_normal_form,
    reduce_by_hnf,
    smith_normal_form,
    solve_left,
)

DEFAULT_BOUND = 10_000

Element = tuple[int, ...]


@dataclass(frozen=True)
class FinAb:
    """Product of cyclic groups ``Z/orders[0] + Z/orders[1] + ...``.

    Order-1 coordinates are permitted (they carry no content but preserve
    coordinate layout, e.g. for torsion points of a torus).
    """

    orders: tuple[int, ...]

    def __post_init__(self):
        if any(d < 1 for d in self.orders):
            raise ValueError("cyclic orders must be positive")

    @classmethod
    def trivial(cls) -> "FinAb":
        return cls(())

    @property
    def ncoords(self) -> int:
        return len(self.orders)

    @property
    def order(self) -> int:
        out = 1
        for d in self.orders:
            out *= d
        return out

    @property
    def exponent(self) -> int:
        return lcm(*self.orders) if self.orders else 1

    def invariant_factors(self) -> tuple[int, ...]:
        """Canonical chain d1 | d2 | ... with all di > 1."""
        if not self.orders:
            return ()
        diag = IntMatrix.from_rows(
            [[self.orders[i] if i == j else 0 for j in range(self.ncoords)] for i in range(self.ncoords)]
        )
        _, d, _ = smith_normal_form(diag)
        return tuple(x for x in d.diagonal() if x > 1)

    def is_trivial(self) -> bool:
        return self.order == 1

    def reduce(self, vec) -> Element:
        if len(vec) != self.ncoords:
            raise ValueError("coordinate length mismatch")
        return tuple(int(x) % d for x, d in zip(vec, self.orders))

    def zero(self) -> Element:
        return (0,) * self.ncoords

    def add(self, a: Element, b: Element) -> Element:
        return tuple((x + y) % d for x, y, d in zip(a, b, self.orders))

    def neg(self, a: Element) -> Element:
        return tuple((-x) % d for x, d in zip(a, self.orders))

    def scale(self, n: int, a: Element) -> Element:
        return tuple((n * x) % d for x, d in zip(a, self.orders))

    def element_order(self, a: Element) -> int:
        if not self.orders:
            return 1
        return lcm(*(d // gcd(x, d) for x, d in zip(a, self.orders)))

    def elements(self):
        return itertools.product(*(range(d) for d in self.orders))

    def display(self) -> str:
        facs = self.invariant_factors()
        if not facs:
            return "trivial"
        return " + ".join(f"Z/{d}" for d in facs)


def direct_sum(*groups: FinAb) -> FinAb:
    orders: tuple[int, ...] = ()
    for g in groups:
        orders = orders + g.orders
    return FinAb(orders)


@dataclass(frozen=True)
class FinAbSubgroup:
    """Subgroup of ``parent``, canonical as the HNF of its preimage lattice."""

    parent: FinAb
    lattice: IntMatrix

    @classmethod
    def from_generators(cls, parent: FinAb, gens) -> "FinAbSubgroup":
        k = parent.ncoords
        rows = [tuple(parent.reduce(g)) for g in gens]
        rows += [[parent.orders[i] if i == j else 0 for j in range(k)] for i in range(k)]
        return cls(parent, hermite_normal_form(IntMatrix.from_rows(rows, ncols=k)))

    @classmethod
    def trivial(cls, parent: FinAb) -> "FinAbSubgroup":
        return cls.from_generators(parent, [])

    @classmethod
    def full(cls, parent: FinAb) -> "FinAbSubgroup":
        return cls(parent, IntMatrix.identity(parent.ncoords))

    @property
    def order(self) -> int:
        det = 1
        for i in range(self.lattice.nrows):
            det *= self.lattice.rows[i][i]
        return self.parent.order // det

    def generators(self) -> tuple[Element, ...]:
        return tuple(self.parent.reduce(r) for r in self.lattice.rows)

    def contains(self, elem) -> bool:
        residue, _ = reduce_by_hnf(tuple(int(x) for x in elem), self.lattice)
        return not any(x % d for x, d in zip(residue, self.parent.orders))

    def contains_subgroup(self, other: "FinAbSubgroup") -> bool:
        return all(self.contains(g) for g in other.generators())

    def elements(self) -> frozenset[Element]:
        group = self.parent
        seen = {group.zero()}
        frontier = [group.zero()]
        gens = [g for g in self.generators() if any(g)]
        while frontier:
            cur = frontier.pop()
            for g in gens:
                nxt = group.add(cur, g)
                if nxt not in seen:
                    seen.add(nxt)
                    frontier.append(nxt)
        return frozenset(seen)

    def key(self) -> tuple[int, ...]:
        return self.lattice.flat()

    def exponent(self) -> int:
        facs = invariant_decomposition(self)[0]
        return facs[-1] if facs else 1

    def abstract_group(self) -> FinAb:
        return FinAb(invariant_decomposition(self)[0])


@lru_cache(maxsize=None)
def invariant_decomposition(sub: FinAbSubgroup) -> tuple[tuple[int, ...], tuple[Element, ...]]:
    """Invariant factors ``s1 | s2 | ...`` of a subgroup plus matching generators.

    The generators are elements of the parent group; generator ``i`` has
    order ``s_i`` and together they present the subgroup as ``(+) Z/s_i``.
    """
    parent = sub.parent
    gens = sub.generators()
    k = len(gens)
    if k == 0:
        return (), ()
    # relation lattice of the chosen generators inside Z^k
    gen_matrix = IntMatrix.from_rows(gens, ncols=parent.ncoords)
    relations = _relation_lattice(gen_matrix, parent.orders)
    u, d, _ = smith_normal_form(relations.transpose())
    # quotient Z^k / relations has coordinates U x; generator i of the
    # quotient is the class of U^{-1} e_i
    from .intlinalg import inverse_unimodular

    uinv = inverse_unimodular(u)
    diag = d.diagonal()
    factors = []
    new_gens = []
    for i, s in enumerate(diag):
        if s > 1:
            col = tuple(uinv.rows[j][i] for j in range(k))
            elem = parent.zero()
            for c, g in zip(col, gens):
                elem = parent.add(elem, parent.scale(c, g))
            factors.append(s)
            new_gens.append(elem)
    order = 1
    for s in factors:
        order *= s
    assert order == sub.order
    return tuple(factors), tuple(new_gens)


def _relation_lattice(gen_matrix: IntMatrix, orders) -> IntMatrix:
    """Basis of ``{c in Z^k : c @ gens == 0 in the parent group}``."""
    k = gen_matrix.nrows
    n = gen_matrix.ncols
    stacked_rows = list(gen_matrix.rows) + [
        [orders[i] if i == j else 0 for j in range(n)] for i in range(n)
    ]
    stacked = IntMatrix.from_rows(stacked_rows, ncols=n)
    from .intlinalg import left_kernel

    kernel = left_kernel(stacked)
    projected = [row[:k] for row in kernel.rows]
    # the projection always has full rank k since diag(orders) relations exist
    return hermite_normal_form(IntMatrix.from_rows(projected, ncols=k))


def solve_in_group(parent: FinAb, gens, target) -> tuple[int, ...] | None:
    """Coefficients ``c`` with ``sum c_i * gens_i == target`` in ``parent``."""
    n = parent.ncoords
    rows = list(gens) + [[parent.orders[i] if i == j else 0 for j in range(n)] for i in range(n)]
    m = IntMatrix.from_rows(rows, ncols=n)
    x = solve_left(m, tuple(int(v) for v in target))
    if x is None:
        return None
    return x[: len(gens)]


@dataclass(frozen=True)
class FinAbHom:
    """Homomorphism given by images of the source's coordinate generators.

    ``images[i]`` is the image (in target coordinates) of the generator of
    the i-th cyclic factor of ``source``; validity requires
    ``source.orders[i] * images[i] == 0`` in the target.
    """

    source: FinAb
    target: FinAb
    images: tuple[Element, ...]

    def __post_init__(self):
        if len(self.images) != self.source.ncoords:
            raise ValueError("one image per source generator required")
        object.__setattr__(
            self, "images", tuple(self.target.reduce(v) for v in self.images)
        )
        for d, img in zip(self.source.orders, self.images):
            if any(x for x in self.target.scale(d, img)):
                raise ValueError("image order does not divide generator order")

    def apply(self, elem) -> Element:
        vec = self.source.reduce(elem)
        out = self.target.zero()
        for c, img in zip(vec, self.images):
            out = self.target.add(out, self.target.scale(c, img))
        return out

    def image_subgroup(self) -> FinAbSubgroup:
        return FinAbSubgroup.from_generators(self.target, self.images)

    def is_surjective(self) -> bool:
        return self.image_subgroup() == FinAbSubgroup.full(self.target)


def subgroups(group: FinAb, bound: int = DEFAULT_BOUND) -> list[FinAbSubgroup]:
    """All subgroups, canonically ordered and duplicate-free.

    Enumerates Hermite-form lattices between ``diag(orders) Z^k`` and
    ``Z^k``; those are in bijection with the subgroups.
    """
    if group.order > bound:
        raise TooLarge(f"group order {group.order} exceeds bound {bound}")
    k = group.ncoords
    if k == 0:
        return [FinAbSubgroup.trivial(group)]

    def divisors(n):
        return [d for d in range(1, n + 1) if n % d == 0]

    found = []

    def build(rows, i):
        if i == k:
            lattice = IntMatrix.from_rows(rows, ncols=k)
            # keep only lattices containing diag(orders)
            for j in range(k):
                vec = tuple(group.orders[j] if t == j else 0 for t in range(k))
                residue, _ = reduce_by_hnf(vec, lattice)
                if any(residue):
                    return
            found.append(FinAbSubgroup(group, lattice))
            return
        for d in divisors(group.orders[i]):
            uppers = [range(d) for _ in range(i)]
            for above in itertools.product(*uppers):
                row = [0] * k
                row[i] = d
                rows_new = [list(r) for r in rows]
                for t, val in enumerate(above):
                    rows_new[t][i] = val
                build(rows_new + [row], i + 1)

    build([], 0)
    found.sort(key=lambda s: s.key())
    return found


def homomorphisms(
    source: FinAb,
    target: FinAb,
    surjective_only: bool = False,
    bound: int = DEFAULT_BOUND,
) -> list[FinAbHom]:
    """All homomorphisms (or epimorphisms) between two presented groups."""
    if source.order > bound or target.order > bound:
        raise TooLarge("group order exceeds bound")
    full = FinAbSubgroup.full(target)
    candidates = []
    for d in source.orders:
        killed = [e for e in target.elements() if not any(target.scale(d, e))]
        candidates.append(killed)
    out = []
    for images in itertools.product(*candidates):
        hom = FinAbHom(source, target, images)
        if surjective_only and FinAbSubgroup.from_generators(target, images) != full:
            continue
        out.append(hom)
    return out


def quotient(group: FinAb, sub: FinAbSubgroup) -> FinAb:
    """Quotient group in invariant-factor form."""
    if sub.parent != group:
        raise NotSubgroup("subgroup belongs to a different parent")
    if group.ncoords == 0:
        return FinAb.trivial()
    _, d, _ = smith_normal_form(sub.lattice)
    facs = tuple(x for x in d.diagonal() if x > 1)
    result = FinAb(facs)
    assert result.order * sub.order == group.order
    return result


def subgroup_intersection(a: FinAbSubgroup, b: FinAbSubgroup) -> FinAbSubgroup:
    """Intersection of two subgroups of the same parent."""
    if a.parent != b.parent:
        raise NotSubgroup("subgroups of different parents")
    from .intlinalg import lattice_intersection

    return FinAbSubgroup(a.parent, lattice_intersection(a.lattice, b.lattice))


def is_endomorphism_matrix(group: FinAb, m: IntMatrix) -> bool:
    """Does ``x -> m @ x`` define an endomorphism of the group?"""
    k = group.ncoords
    if m.nrows != k or m.ncols != k:
        return False
    for j in range(k):
        for i in range(k):
            if (m.rows[i][j] * group.orders[j]) % group.orders[i]:
                return False
    return True


def is_automorphism_matrix(group: FinAb, m: IntMatrix) -> bool:
    if not is_endomorphism_matrix(group, m):
        return False
    cols = [tuple(m.rows[i][j] for i in range(group.ncoords)) for j in range(group.ncoords)]
    return FinAbSubgroup.from_generators(group, cols) == FinAbSubgroup.full(group)


def apply_matrix(group: FinAb, m: IntMatrix, elem) -> Element:
    return group.reduce(m.apply(tuple(int(x) for x in elem)))


def subgroup_image(sub: FinAbSubgroup, m: IntMatrix) -> FinAbSubgroup:
    gens = [apply_matrix(sub.parent, m, g) for g in sub.generators()]
    return FinAbSubgroup.from_generators(sub.parent, gens)


def orbit_equivalent(
    group: FinAb,
    first: FinAbSubgroup,
    second: FinAbSubgroup,
    action_generators,
) -> tuple[int, ...] | None:
    """Breadth-first orbit search; returns a witness word or None.

    The witness is a tuple of indices into ``action_generators`` whose
    composite (applied left to right) maps ``first`` onto ``second``.  The
    search is complete: it exhausts the finite orbit of ``first``.
    """
    for g in action_generators:
        if not is_automorphism_matrix(group, g):
            raise NotAutomorphism(f"generator {g.rows} is not invertible on {group.orders}")
    if first.parent != group or second.parent != group:
        raise NotSubgroup("subgroups must live in the acted-on group")
    start = first.key()
    goal = second.key()
    if start == goal:
        return ()
    seen = {start: ()}
    frontier = [first]
    while frontier:
        nxt_frontier = []
        for sub in frontier:
            word = seen[sub.key()]
            for idx, g in enumerate(action_generators):
                image = subgroup_image(sub, g)
                k = image.key()
                if k in seen:
                    continue
                seen[k] = word + (idx,)
                if k == goal:
                    return seen[k]
                nxt_frontier.append(image)
        frontier = nxt_frontier
    return None


def orbit_partition(subgroup_list, action_generators) -> list[list[int]]:
    """Partition indices of ``subgroup_list`` into orbits of the action."""
    if not subgroup_list:
        return []
    group = subgroup_list[0].parent
    key_to_index = {s.key(): i for i, s in enumerate(subgroup_list)}
    unassigned = set(range(len(subgroup_list)))
    orbits = []
    while unassigned:
        seed = min(unassigned)
        orbit_keys = {subgroup_list[seed].key()}
        frontier = [subgroup_list[seed]]
        while frontier:
            cur = frontier.pop()
            for g in action_generators:
                image = subgroup_image(cur, g)
                if image.key() not in orbit_keys:
                    orbit_keys.add(image.key())
                    frontier.append(image)
        members = sorted(key_to_index[k] for k in orbit_keys if k in key_to_index)
        for i in members:
            unassigned.discard(i)
        orbits.append(members)
    return orbits

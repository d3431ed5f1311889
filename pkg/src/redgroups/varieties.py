"""Coordinate-mixing maps of power groups and twin-pair certificates.

For a power ``H^n`` of a simple group, every free-group automorphism on n
letters induces a variety self-map whose restriction to the center is the
integral linear action of its abelianization matrix.  Transporting a central
subgroup ``C`` along such a map changes the quotient group ``H^n / C`` only
up to variety isomorphism, so unimodular matrices over the center produce
certified pairs of varieties.

Two caveats are part of the contract.  Witnesses only ever certify variety
*isomorphism*: the absence of a matrix witness does not prove two varieties
distinct.  And every unimodular integer matrix does arise from a free-group
automorphism (elementary Nielsen moves abelianize onto generators of
``GL_n(Z)``), so a matrix witness is always realizable.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BaseMismatch, NotUnimodular, TooLarge
from .finab import FinAb, FinAbSubgroup, subgroups
from .intlinalg import IntMatrix
from .roots import SimpleType, center
from .semisimple import CentralSubgroup, SCSemisimple, center_of, isomorphic_quotients

DEFAULT_TWINS_BOUND = 10_000


def power_center(base: SimpleType, n: int) -> FinAb:
    return FinAb(center(base).orders * n)


@dataclass(frozen=True)
class PowerQuotient:
    """Quotient of the n-th power of a simple group by a central subgroup."""

    base: SimpleType
    n: int
    subgroup: FinAbSubgroup

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("power must be at least 1")
        if self.subgroup.parent != power_center(self.base, self.n):
            raise ValueError("subgroup does not live in the center of the power")


def _expand(base: SimpleType, n: int, m: IntMatrix) -> IntMatrix:
    """Blow up an n x n matrix to act blockwise on the power center."""
    width = center(base).ncoords
    total = n * width
    rows = [[0] * total for _ in range(total)]
    for i in range(n):
        for j in range(n):
            for k in range(width):
                rows[i * width + k][j * width + k] = m.rows[i][j]
    return IntMatrix.from_rows(rows, ncols=total)


def sigma_hat(m: IntMatrix, c: FinAbSubgroup, base: SimpleType, n: int) -> FinAbSubgroup:
    """Image of a central subgroup under the coordinate-mixing action.

    ``m`` must be integrally invertible; coordinate ``i`` of the image tuple
    is the ``m``-weighted combination of the input coordinates.
    """
    if m.nrows != n or m.ncols != n:
        raise NotUnimodular(f"matrix must be {n} x {n}")
    if not m.is_unimodular():
        raise NotUnimodular(f"matrix with determinant {m.det()} is not in GL_n(Z)")
    if c.parent != power_center(base, n):
        raise BaseMismatch("subgroup does not live in the stated power center")
    big = _expand(base, n, m)
    gens = [c.parent.reduce(big.apply(g)) for g in c.generators()]
    return FinAbSubgroup.from_generators(c.parent, gens)


def _gl_n_generators(n: int) -> list[IntMatrix]:
    """Integer generators whose images mod any modulus cover the action."""
    gens = []
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            for sign in (1, -1):
                rows = [[1 if a == b else 0 for b in range(n)] for a in range(n)]
                rows[i][j] = sign
                gens.append(IntMatrix.from_rows(rows))
    rows = [[1 if a == b else 0 for b in range(n)] for a in range(n)]
    rows[0][0] = -1
    gens.append(IntMatrix.from_rows(rows))
    for i in range(n - 1):
        rows = [[1 if a == b else 0 for b in range(n)] for a in range(n)]
        rows[i][i] = rows[i + 1][i + 1] = 0
        rows[i][i + 1] = rows[i + 1][i] = 1
        gens.append(IntMatrix.from_rows(rows))
    return gens


def variety_iso_witness(q1: PowerQuotient, q2: PowerQuotient) -> IntMatrix | None:
    """Unimodular matrix carrying one central subgroup onto the other.

    A returned matrix certifies that the underlying varieties of the two
    quotients are isomorphic.  ``None`` means no coordinate-mixing witness
    exists, which proves nothing about the varieties themselves.
    """
    if q1.base != q2.base or q1.n != q2.n:
        raise BaseMismatch("power quotients live over different powers")
    base, n = q1.base, q1.n
    if q1.subgroup == q2.subgroup:
        return IntMatrix.identity(n)
    goal = q1.subgroup.order
    if goal != q2.subgroup.order:
        return None
    gens = _gl_n_generators(n)
    seen = {q1.subgroup.key(): IntMatrix.identity(n)}
    frontier = [(q1.subgroup, IntMatrix.identity(n))]
    while frontier:
        nxt = []
        for sub, word in frontier:
            for g in gens:
                image = sigma_hat(g, sub, base, n)
                if image.key() in seen:
                    continue
                witness = g @ word
                seen[image.key()] = witness
                if image == q2.subgroup:
                    return witness
                nxt.append((image, witness))
        frontier = nxt
    return None


@dataclass(frozen=True)
class TwinCertificate:
    """Two non-isomorphic groups with variety-isomorphic underlying varieties.

    ``matrix`` maps ``c1`` onto ``c2`` through the coordinate-mixing action;
    ``out_orbit_size`` records the exhausted orbit search showing the two
    quotients are not isomorphic as groups.
    """

    base: SimpleType
    n: int
    c1: FinAbSubgroup
    c2: FinAbSubgroup
    matrix: IntMatrix
    names: tuple[str, str]
    variety_class_size: int
    out_orbit_size: int

    def __post_init__(self):
        assert self.matrix.is_unimodular()
        assert sigma_hat(self.matrix, self.c1, self.base, self.n) == self.c2

    def to_dict(self) -> dict:
        return {
            "base": self.base.name,
            "n": self.n,
            "names": list(self.names),
            "C1": self.c1.lattice.to_lists(),
            "C2": self.c2.lattice.to_lists(),
            "witness": self.matrix.to_lists(),
            "variety_class_size": self.variety_class_size,
            "out_orbit_size": self.out_orbit_size,
        }


def _sigma_classes(base: SimpleType, n: int, subs) -> list[list[FinAbSubgroup]]:
    gens = _gl_n_generators(n)
    key_to_sub = {s.key(): s for s in subs}
    unassigned = dict(key_to_sub)
    classes = []
    while unassigned:
        seed_key = min(unassigned)
        seed = unassigned[seed_key]
        orbit = {seed_key: seed}
        frontier = [seed]
        while frontier:
            cur = frontier.pop()
            for g in gens:
                image = sigma_hat(g, cur, base, n)
                if image.key() not in orbit:
                    orbit[image.key()] = image
                    frontier.append(image)
        for k in orbit:
            unassigned.pop(k, None)
        classes.append([orbit[k] for k in sorted(orbit)])
    return classes


def find_twin_pairs(
    base: SimpleType, n: int, bound: int = DEFAULT_TWINS_BOUND
) -> list[TwinCertificate]:
    """All certified twin pairs among central quotients of the n-th power.

    Central subgroups are partitioned into variety classes (orbits of the
    coordinate-mixing action, each pair joined by a unimodular witness) and,
    inside each, into group-isomorphism classes under the extended outer
    action.  One certificate is emitted per unordered pair of distinct
    group classes within a variety class.
    """
    if n < 1:
        raise TooLarge("power must be at least 1")
    group = power_center(base, n)
    if group.order > bound:
        raise TooLarge(f"center order {group.order} exceeds bound {bound}")
    power = SCSemisimple.of([base] * n)
    power_group = center_of(power).group
    assert power_group.orders == group.orders
    subs = subgroups(group, bound=bound)
    certificates = []
    for variety_class in _sigma_classes(base, n, subs):
        # split the variety class into group classes
        group_classes: list[list[FinAbSubgroup]] = []
        for sub in variety_class:
            placed = False
            for cls in group_classes:
                word = isomorphic_quotients(
                    power,
                    CentralSubgroup(power, FinAbSubgroup(power_group, cls[0].lattice)),
                    CentralSubgroup(power, FinAbSubgroup(power_group, sub.lattice)),
                )
                if word is not None:
                    cls.append(sub)
                    placed = True
                    break
            if not placed:
                group_classes.append([sub])
        if len(group_classes) < 2:
            continue
        group_classes.sort(key=lambda cls: (len(cls), cls[0].key()))
        for a in range(len(group_classes)):
            for b in range(a + 1, len(group_classes)):
                rep1 = group_classes[a][0]
                rep2 = group_classes[b][0]
                witness = variety_iso_witness(
                    PowerQuotient(base, n, rep1), PowerQuotient(base, n, rep2)
                )
                assert witness is not None, "same variety class must be connected"
                certificates.append(
                    TwinCertificate(
                        base=base,
                        n=n,
                        c1=rep1,
                        c2=rep2,
                        matrix=witness,
                        names=(
                            _quotient_display(base, n, rep1),
                            _quotient_display(base, n, rep2),
                        ),
                        variety_class_size=len(variety_class),
                        out_orbit_size=len(group_classes[a]) + len(group_classes[b]),
                    )
                )
    certificates.sort(key=lambda c: (c.c1.key(), c.c2.key()))
    return certificates


def _quotient_display(base: SimpleType, n: int, sub: FinAbSubgroup) -> str:
    from .reductive import _semisimple_quotient_name

    return _semisimple_quotient_name([base] * n, sub)

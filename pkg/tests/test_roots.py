"""Root system and center tests.

Root counts are checked against the closed-form dimension formulas, never
hard-coded from the generation path; center actions are checked against
independently known anchors (inversion on A-type centers, the vector
involution of even D types being the one fixed by the diagram swap).
"""

import pytest

from redgroups.errors import NotDiagramAutomorphism, ParseError
from redgroups.finab import FinAbSubgroup, orbit_partition, subgroups
from redgroups.intlinalg import IntMatrix
from redgroups.roots import (
    SimpleType,
    all_types_of_rank,
    cartan_matrix,
    center,
    center_action,
    center_structure,
    diagram_automorphisms,
    dimension,
    generate_roots,
)

T = SimpleType.parse


# ---------------------------------------------------------------------------
# types


def test_parse_and_ranges():
    assert T("A1") == SimpleType("A", 1)
    assert T("E8").rank == 8
    for bad in ("A0", "B1", "C2", "D3", "E9", "F5", "G3", "H2", "A"):
        with pytest.raises(ParseError):
            T(bad)


def test_all_types_of_rank():
    assert [t.name for t in all_types_of_rank(1)] == ["A1"]
    assert [t.name for t in all_types_of_rank(2)] == ["A2", "B2", "G2"]
    assert [t.name for t in all_types_of_rank(3)] == ["A3", "B3", "C3"]
    assert [t.name for t in all_types_of_rank(4)] == ["A4", "B4", "C4", "D4", "F4"]


# ---------------------------------------------------------------------------
# Cartan matrices


def test_cartan_examples():
    assert cartan_matrix(T("A1")).rows == ((2,),)
    assert cartan_matrix(T("A2")).rows == ((2, -1), (-1, 2))
    assert cartan_matrix(T("G2")).rows == ((2, -1), (-3, 2))
    assert cartan_matrix(T("B2")).rows == ((2, -2), (-1, 2))


def test_cartan_determinants():
    # |det Cartan| equals the center order for every family
    expected = {
        "A5": 6, "B4": 2, "C3": 2, "D4": 4, "D5": 4, "E6": 3, "E7": 2,
        "E8": 1, "F4": 1, "G2": 1,
    }
    for name, order in expected.items():
        assert abs(cartan_matrix(T(name)).det()) == order


# ---------------------------------------------------------------------------
# root generation


def closed_form_dimension(t):
    l = t.rank
    if t.family == "A":
        return l * (l + 2)
    if t.family in ("B", "C"):
        return l * (2 * l + 1)
    if t.family == "D":
        return l * (2 * l - 1)
    return {"E6": 78, "E7": 133, "E8": 248, "F4": 52, "G2": 14}[t.name]


@pytest.mark.parametrize(
    "name",
    ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "C3", "C4", "D4", "D5", "D6",
     "D8", "E6", "E7", "E8", "F4", "G2"],
)
def test_dimensions_match_closed_forms(name):
    t = T(name)
    rs = generate_roots(t)
    assert rs.dimension == closed_form_dimension(t)
    # closed under negation, even count, simple roots present
    assert len(rs.roots) % 2 == 0
    for r in rs.roots:
        assert tuple(-x for x in r) in rs.roots
    for i in range(t.rank):
        assert tuple(1 if j == i else 0 for j in range(t.rank)) in rs.roots


def test_root_count_examples():
    assert len(generate_roots(T("A1")).roots) == 2
    assert dimension(T("A1")) == 3
    assert len(generate_roots(T("G2")).roots) == 12
    assert dimension(T("G2")) == 14
    assert len(generate_roots(T("D4")).roots) == 24
    assert dimension(T("D4")) == 28


def test_g2_roots_match_weyl_orbit_brute_force():
    # independent generation: orbit of the simple roots under the full rank-2
    # reflection group acting in simple-root coordinates
    t = T("G2")
    c = cartan_matrix(t)

    def reflect(root, j):
        pairing = sum(root[i] * c.rows[i][j] for i in range(2))
        out = list(root)
        out[j] -= pairing
        return tuple(out)

    orbit = {(1, 0), (0, 1)}
    changed = True
    while changed:
        changed = False
        for root in list(orbit):
            for j in range(2):
                img = reflect(root, j)
                if img not in orbit:
                    orbit.add(img)
                    changed = True
    assert orbit == set(generate_roots(t).roots)


# ---------------------------------------------------------------------------
# centers


@pytest.mark.parametrize("d", range(2, 10))
def test_center_a_family(d):
    assert center(T(f"A{d - 1}")).invariant_factors() == (d,)


def test_center_tables():
    assert center(T("D4")).invariant_factors() == (2, 2)
    assert center(T("D6")).invariant_factors() == (2, 2)
    assert center(T("D8")).invariant_factors() == (2, 2)
    assert center(T("D5")).invariant_factors() == (4,)
    assert center(T("D7")).invariant_factors() == (4,)
    assert center(T("E6")).invariant_factors() == (3,)
    assert center(T("E7")).invariant_factors() == (2,)
    for name in ("B2", "B3", "C3", "C4"):
        assert center(T(name)).invariant_factors() == (2,)
    for name in ("E8", "F4", "G2"):
        assert center(T(name)).invariant_factors() == ()


def test_center_order_equals_cartan_determinant():
    for name in ("A1", "A4", "B3", "C3", "D4", "D5", "E6", "E7", "E8", "F4", "G2"):
        t = T(name)
        assert center(t).order == abs(cartan_matrix(t).det())


def test_center_pairing_kills_roots():
    for name in ("A2", "B2", "D4", "D5", "E6"):
        t = T(name)
        cs = center_structure(t)
        roots = generate_roots(t)
        for z in cs.group.elements():
            for root in roots.roots:
                weight = tuple(
                    sum(root[i] * cartan_matrix(t).rows[i][j] for i in range(t.rank))
                    for j in range(t.rank)
                )
                assert cs.pair(z, weight) == 0


# ---------------------------------------------------------------------------
# diagram automorphisms


def test_diagram_automorphism_groups():
    assert diagram_automorphisms(T("A1")) == ((0,),)
    assert len(diagram_automorphisms(T("A2"))) == 2
    assert len(diagram_automorphisms(T("D4"))) == 6
    assert len(diagram_automorphisms(T("D6"))) == 2
    assert len(diagram_automorphisms(T("E6"))) == 2
    for name in ("B3", "C3", "E7", "E8", "F4", "G2"):
        assert len(diagram_automorphisms(T(name))) == 1


def compose(p, q):
    # (p o q)(i) = p[q[i]]
    return tuple(p[q[i]] for i in range(len(p)))


def test_diagram_automorphisms_form_group():
    for name in ("A3", "D4", "D6", "E6"):
        t = T(name)
        perms = set(diagram_automorphisms(t))
        for p in perms:
            for q in perms:
                assert compose(p, q) in perms


def test_center_action_identity():
    for name in ("A1", "A3", "B2", "D4", "D5", "E6", "E7"):
        t = T(name)
        ident = diagram_automorphisms(t)[0]
        m = center_action(t, ident)
        k = center(t).ncoords
        assert m == IntMatrix.identity(k)


def test_center_action_is_homomorphism():
    for name in ("A2", "A4", "D4", "D5", "D6", "E6"):
        t = T(name)
        group = center(t)
        for p in diagram_automorphisms(t):
            for q in diagram_automorphisms(t):
                left = center_action(t, compose(p, q))
                right = center_action(t, p) @ center_action(t, q)
                # compare as endomorphisms, entry-wise modulo coordinate orders
                for i, d in enumerate(group.orders):
                    for j in range(group.ncoords):
                        assert left.rows[i][j] % d == right.rows[i][j] % d


def test_center_action_a_family_is_inversion():
    for name, d in (("A2", 3), ("A3", 4), ("A4", 5), ("E6", 3)):
        t = T(name)
        nontrivial = diagram_automorphisms(t)[1]
        m = center_action(t, nontrivial)
        assert m.rows[0][0] % d == d - 1


def test_center_action_rejects_bad_permutation():
    with pytest.raises(NotDiagramAutomorphism):
        center_action(T("D4"), (1, 0, 2, 3))


def test_d4_triality_cycles_involutions():
    t = T("D4")
    group = center(t)
    order_two = [s for s in subgroups(group) if s.order == 2]
    assert len(order_two) == 3
    perms = diagram_automorphisms(t)
    three_cycles = [p for p in perms if sorted(p) == [0, 1, 2, 3] and p != (0, 1, 2, 3)
                    and compose(p, p) != tuple(range(4))]
    assert len(three_cycles) == 2
    for p in three_cycles:
        m = center_action(t, p)
        images = {}
        for s in order_two:
            img = FinAbSubgroup.from_generators(group, [group.reduce(m.apply(g)) for g in s.generators()])
            images[s.key()] = img.key()
        # a 3-cycle on the three involutions: no fixed point
        assert all(images[k] != k for k in images)
        keys = set(images)
        assert set(images.values()) == keys


def test_d4_one_orbit_d6_d8_two_orbits():
    for name, expected in (("D4", 1), ("D6", 2), ("D8", 2)):
        t = T(name)
        group = center(t)
        actions = [center_action(t, p) for p in diagram_automorphisms(t)[1:]]
        order_two = [s for s in subgroups(group) if s.order == 2]
        assert len(order_two) == 3
        orbits = orbit_partition(order_two, actions)
        assert len(orbits) == expected


def test_d_even_swap_fixes_vector_involution():
    # anchor: the vector involution pairs to zero with the first fundamental
    # weight; the diagram swap must fix exactly that one and exchange the
    # two half-spin involutions
    for name in ("D6", "D8"):
        t = T(name)
        cs = center_structure(t)
        group = cs.group
        e1 = tuple(1 if i == 0 else 0 for i in range(t.rank))
        vector = [
            z
            for z in group.elements()
            if any(z) and group.scale(2, z) == group.zero() and cs.pair(z, e1) == 0
        ]
        assert len(vector) == 1
        swap = diagram_automorphisms(t)[1]
        m = center_action(t, swap)
        assert group.reduce(m.apply(vector[0])) == vector[0]
        others = [
            z
            for z in group.elements()
            if any(z) and group.scale(2, z) == group.zero() and z != vector[0]
        ]
        assert len(others) == 2
        assert group.reduce(m.apply(others[0])) == others[1]

"""Coordinate-mixing action, variety witnesses, and twin-pair discovery."""

import random

import pytest

from redgroups.errors import BaseMismatch, NotUnimodular, TooLarge
from redgroups.finab import FinAbSubgroup, subgroups
from redgroups.intlinalg import IntMatrix, inverse_unimodular
from redgroups.roots import SimpleType
from redgroups.varieties import (
    PowerQuotient,
    find_twin_pairs,
    power_center,
    sigma_hat,
    variety_iso_witness,
)

T = SimpleType.parse


def sub_of(base, n, gens):
    return FinAbSubgroup.from_generators(power_center(base, n), gens)


def diag_sub(base, n):
    width = power_center(base, 1).ncoords
    gens = []
    for row in FinAbSubgroup.full(power_center(base, 1)).generators():
        gens.append(tuple(list(row) * n))
    return FinAbSubgroup.from_generators(power_center(base, n), gens)


def random_unimodular(rng, n, steps=10):
    from redgroups.varieties import _gl_n_generators

    gens = _gl_n_generators(n)
    m = IntMatrix.identity(n)
    for _ in range(steps):
        m = m @ rng.choice(gens)
    return m


# ---------------------------------------------------------------------------
# sigma_hat


def test_sigma_hat_identity():
    c = diag_sub(T("A1"), 2)
    assert sigma_hat(IntMatrix.identity(2), c, T("A1"), 2) == c


def test_sigma_hat_worked_example():
    # x1 -> x1, x2 -> x1 x2^{-1} abelianizes to [[1,0],[1,-1]] and sends the
    # diagonal onto the first-factor copy
    base = T("A1")
    c = diag_sub(base, 2)
    m = IntMatrix.from_rows([[1, 0], [1, -1]])
    image = sigma_hat(m, c, base, 2)
    assert image == sub_of(base, 2, [(1, 0)])
    # same for any cyclic-center base
    base3 = T("A2")
    c3 = diag_sub(base3, 2)
    assert sigma_hat(m, c3, base3, 2) == sub_of(base3, 2, [(1, 0)])


def test_sigma_hat_swap():
    base = T("A1")
    m = IntMatrix.from_rows([[0, 1], [1, 0]])
    left = sub_of(base, 2, [(1, 0)])
    right = sub_of(base, 2, [(0, 1)])
    assert sigma_hat(m, left, base, 2) == right


def test_sigma_hat_rejects_non_unimodular():
    base = T("A1")
    c = diag_sub(base, 2)
    with pytest.raises(NotUnimodular):
        sigma_hat(IntMatrix.from_rows([[2, 0], [0, 1]]), c, base, 2)


def test_sigma_hat_action_law():
    rng = random.Random(7)
    base = T("A3")
    group = power_center(base, 2)
    subs = subgroups(group)
    for _ in range(25):
        m1 = random_unimodular(rng, 2)
        m2 = random_unimodular(rng, 2)
        c = rng.choice(subs)
        left = sigma_hat(m1 @ m2, c, base, 2)
        right = sigma_hat(m1, sigma_hat(m2, c, base, 2), base, 2)
        assert left == right


def test_sigma_hat_preserves_order_and_type():
    rng = random.Random(8)
    base = T("A3")
    subs = subgroups(power_center(base, 2))
    for _ in range(20):
        m = random_unimodular(rng, 2)
        c = rng.choice(subs)
        image = sigma_hat(m, c, base, 2)
        assert image.order == c.order
        assert image.abstract_group() == c.abstract_group()


# ---------------------------------------------------------------------------
# witnesses


def test_witness_identity_for_equal_subgroups():
    base = T("A1")
    c = diag_sub(base, 2)
    q = PowerQuotient(base, 2, c)
    assert variety_iso_witness(q, q) == IntMatrix.identity(2)


def test_witness_diagonal_to_split():
    base = T("A1")
    diag = PowerQuotient(base, 2, diag_sub(base, 2))
    split = PowerQuotient(base, 2, sub_of(base, 2, [(1, 0)]))
    w = variety_iso_witness(diag, split)
    assert w is not None
    assert w.is_unimodular()
    assert sigma_hat(w, diag.subgroup, base, 2) == split.subgroup


def test_witness_absent_on_order_mismatch():
    base = T("A1")
    trivial = PowerQuotient(base, 2, sub_of(base, 2, []))
    diag = PowerQuotient(base, 2, diag_sub(base, 2))
    assert variety_iso_witness(trivial, diag) is None


def test_witness_base_mismatch():
    with pytest.raises(BaseMismatch):
        variety_iso_witness(
            PowerQuotient(T("A1"), 2, diag_sub(T("A1"), 2)),
            PowerQuotient(T("A2"), 2, diag_sub(T("A2"), 2)),
        )


# ---------------------------------------------------------------------------
# twin pairs


def test_twins_a1_squared():
    certs = find_twin_pairs(T("A1"), 2)
    assert len(certs) == 1
    cert = certs[0]
    assert set(cert.names) == {"SO4", "PGL2xSL2"}
    # the witness maps the diagonal onto a split subgroup
    diag = diag_sub(T("A1"), 2)
    assert cert.c1 == diag
    image = sigma_hat(cert.matrix, cert.c1, T("A1"), 2)
    assert image == cert.c2
    assert cert.c2 in (sub_of(T("A1"), 2, [(1, 0)]), sub_of(T("A1"), 2, [(0, 1)]))
    # group non-isomorphism was established by exhausted orbit search
    from redgroups.semisimple import CentralSubgroup, SCSemisimple, center_of, isomorphic_quotients

    power = SCSemisimple.parse(["A1", "A1"])
    pg = center_of(power).group
    assert (
        isomorphic_quotients(
            power,
            CentralSubgroup(power, FinAbSubgroup(pg, cert.c1.lattice)),
            CentralSubgroup(power, FinAbSubgroup(pg, cert.c2.lattice)),
        )
        is None
    )


def test_twins_a2_squared():
    certs = find_twin_pairs(T("A2"), 2)
    assert len(certs) == 1
    cert = certs[0]
    assert set(cert.names) == {"(SL3xSL3)/diag", "PGL3xSL3"}
    # the pair joins the diagonal class and the split class
    keys = {cert.c1.key(), cert.c2.key()}
    assert sub_of(T("A2"), 2, [(1, 0)]).key() in keys or sub_of(T("A2"), 2, [(0, 1)]).key() in keys


def test_twins_inverse_direction_also_valid():
    cert = find_twin_pairs(T("A1"), 2)[0]
    inv = inverse_unimodular(cert.matrix)
    assert sigma_hat(inv, cert.c2, T("A1"), 2) == cert.c1


@pytest.mark.parametrize("name", ["A1", "A2", "A3", "B2", "C3", "D4", "D5"])
def test_no_twins_in_power_one(name):
    assert find_twin_pairs(T(name), 1) == []


def test_permutation_never_produces_twins():
    # a coordinate permutation is both a variety and a group witness, so the
    # pair (C, P.C) always lands inside one group class and is never emitted
    from redgroups.semisimple import (
        CentralSubgroup,
        SCSemisimple,
        center_of,
        isomorphic_quotients,
    )

    for base_name, n in (("A1", 2), ("A2", 2), ("A1", 3)):
        base = T(base_name)
        power = SCSemisimple.of([base] * n)
        pg = center_of(power).group
        perms = []
        for i in range(n - 1):
            rows = [[1 if a == b else 0 for b in range(n)] for a in range(n)]
            rows[i][i] = rows[i + 1][i + 1] = 0
            rows[i][i + 1] = rows[i + 1][i] = 1
            perms.append(IntMatrix.from_rows(rows))
        for sub in subgroups(power_center(base, n)):
            for p in perms:
                image = sigma_hat(p, sub, base, n)
                assert (
                    isomorphic_quotients(
                        power,
                        CentralSubgroup(power, FinAbSubgroup(pg, sub.lattice)),
                        CentralSubgroup(power, FinAbSubgroup(pg, image.lattice)),
                    )
                    is not None
                )
        certs = find_twin_pairs(base, n)
        for cert in certs:
            for p in perms:
                assert sigma_hat(p, cert.c1, base, n) != cert.c2


def test_twins_certificates_reverify():
    for base_name, n in (("A1", 2), ("A2", 2), ("A1", 3)):
        base = T(base_name)
        from redgroups.semisimple import (
            CentralSubgroup,
            SCSemisimple,
            center_of,
            isomorphic_quotients,
        )

        power = SCSemisimple.of([base] * n)
        pg = center_of(power).group
        for cert in find_twin_pairs(base, n):
            assert sigma_hat(cert.matrix, cert.c1, base, n) == cert.c2
            assert (
                isomorphic_quotients(
                    power,
                    CentralSubgroup(power, FinAbSubgroup(pg, cert.c1.lattice)),
                    CentralSubgroup(power, FinAbSubgroup(pg, cert.c2.lattice)),
                )
                is None
            )


def test_twins_bound():
    with pytest.raises(TooLarge):
        find_twin_pairs(T("A1"), 2, bound=3)

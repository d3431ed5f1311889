"""Connected reductive groups as central gluing data.

A datum is a torus rank ``n``, a simply connected semisimple group ``S``, a
finite subgroup ``H`` of the center of ``S``, and a surjection ``alpha`` from
``H`` onto a finite subgroup ``K`` of the ``e``-torsion points of the torus
(``e`` the exponent of ``H``).  The glued subgroup

    F = { (alpha(h), h) : h in H }  <=  Z x S,   F intersect Z = {e},

presents the group ``(Z x S)/F``; every connected reductive group of rank
``n + rank(S)`` arises this way.  Two data describe isomorphic groups exactly
when their glued subgroups lie in one orbit of the automorphisms of ``Z x S``
acting on the center: integral torus automorphisms on the ``K`` side and the
extended outer action on the ``H`` side.  That orbit equivalence is the
isomorphism semantics used throughout this module.

Data are canonicalized on construction by minimizing the serialized state
over the (finite) orbit, so canonical data compare equal iff isomorphic;
orbits larger than a configurable threshold fall back to the raw state and
pairwise search.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm

from .errors import BadModulus, ParseError, SemanticError, TooLarge
from .finab import (
    FinAb,
    FinAbHom,
    FinAbSubgroup,
    direct_sum,
    homomorphisms,
    invariant_decomposition,
    solve_in_group,
    subgroup_image,
    subgroup_intersection,
    subgroups,
)
from .intlinalg import (
    IntMatrix,
    Lattice,
    cokernel_invariants,
    congruence_kernel,
    hermite_normal_form,
    inverse_scaled,
    left_kernel,
    reduce_trailing,
    remove_p_part,
    saturated_complement,
    solve_left,
    stack,
)
from .roots import SimpleType, all_types_of_rank, cartan_matrix, center_structure, generate_roots
from .semisimple import (
    CentralSubgroup,
    OutGenerator,
    SCSemisimple,
    center_of,
    extended_out_generators,
    quotient_name,
)

DEFAULT_RANK_BOUND = 3
DEFAULT_SUBGROUP_BOUND = 10_000
CANONICAL_ORBIT_THRESHOLD = 100_000


def torus_points(n: int, modulus: int) -> FinAb:
    """The modulus-torsion points of an n-dimensional torus."""
    return FinAb((modulus,) * n)


# ---------------------------------------------------------------------------
# the datum


@dataclass(frozen=True)
class GluingDatum:
    torus_rank: int
    semisimple: SCSemisimple
    h_subgroup: FinAbSubgroup
    k_modulus: int
    k_subgroup: FinAbSubgroup
    alpha: FinAbHom
    canonical: bool = True

    @classmethod
    def build(
        cls,
        torus_rank: int,
        semisimple: SCSemisimple,
        h_subgroup: FinAbSubgroup,
        alpha_images,
        canonicalize: bool = True,
    ) -> "GluingDatum":
        """Assemble and (by default) canonicalize a datum.

        ``alpha_images`` are the torus-side images, one per invariant
        generator of ``h_subgroup``, with coordinates modulo the exponent
        of ``h_subgroup``.
        """
        if torus_rank < 0:
            raise SemanticError("torus rank must be nonnegative")
        pc = center_of(semisimple)
        if h_subgroup.parent != pc.group:
            raise SemanticError("H does not live in the center of S")
        e = h_subgroup.exponent()
        ambient = torus_points(torus_rank, e)
        facs, _ = invariant_decomposition(h_subgroup)
        images = tuple(ambient.reduce(v) for v in alpha_images)
        if len(images) != len(facs):
            raise SemanticError(
                f"alpha needs {len(facs)} generator images, got {len(images)}"
            )
        state = (h_subgroup, images)
        flag = True
        if canonicalize:
            space = _ActionSpace.get(torus_rank, semisimple, e)
            orbit = space.orbit(state, CANONICAL_ORBIT_THRESHOLD)
            if orbit is None:
                flag = False
            else:
                state = min(orbit, key=_state_key)
        h, images = state
        try:
            alpha = FinAbHom(FinAb(invariant_decomposition(h)[0]), ambient, images)
        except ValueError as exc:
            raise SemanticError(str(exc)) from exc
        k = FinAbSubgroup.from_generators(ambient, images)
        return cls(torus_rank, semisimple, h, e, k, alpha, flag and canonicalize)

    @property
    def rank(self) -> int:
        return self.torus_rank + self.semisimple.rank

    @property
    def dim(self) -> int:
        return self.torus_rank + self.semisimple.dim

    @property
    def glue_order(self) -> int:
        return self.h_subgroup.order

    def state(self) -> tuple[FinAbSubgroup, tuple]:
        return (self.h_subgroup, self.alpha.images)

    def central_subgroup(self) -> CentralSubgroup:
        return CentralSubgroup(self.semisimple, self.h_subgroup)

    def sort_key(self):
        return (
            self.torus_rank,
            self.semisimple.names,
            self.h_subgroup.key(),
            self.k_subgroup.key(),
            tuple(x for row in self.alpha.images for x in row),
        )

    def to_dict(self) -> dict:
        return {
            "torus_rank": self.torus_rank,
            "factors": list(self.semisimple.names),
            "H": self.h_subgroup.lattice.to_lists(),
            "K_modulus": self.k_modulus,
            "K": self.k_subgroup.lattice.to_lists(),
            "alpha": [list(v) for v in self.alpha.images],
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "GluingDatum":
        try:
            n = int(doc["torus_rank"])
            factor_names = [str(x) for x in doc["factors"]]
            h_rows = [[int(x) for x in row] for row in doc["H"]]
            k_modulus = int(doc["K_modulus"])
            k_rows = [[int(x) for x in row] for row in doc["K"]]
            alpha_rows = [[int(x) for x in row] for row in doc["alpha"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"malformed datum document: {exc}") from exc
        types = [SimpleType.parse(x) for x in factor_names]
        if [t.name for t in sorted(types)] != factor_names:
            raise SemanticError("factors must be listed in sorted order")
        s = SCSemisimple.of(types)
        pc = center_of(s)
        for row in h_rows:
            if len(row) != pc.group.ncoords:
                raise SemanticError("H rows do not match the center coordinates")
        h = FinAbSubgroup.from_generators(pc.group, h_rows)
        e = h.exponent()
        if k_modulus != e:
            raise SemanticError(
                f"K_modulus {k_modulus} differs from the exponent {e} of H"
            )
        for row in alpha_rows:
            if len(row) != n:
                raise SemanticError("alpha rows must have torus_rank entries")
        datum = cls.build(n, s, h, [tuple(r) for r in alpha_rows])
        ambient = torus_points(n, e)
        for row in k_rows:
            if len(row) != n:
                raise SemanticError("K rows must have torus_rank entries")
        declared_k = FinAbSubgroup.from_generators(ambient, k_rows)
        stated = FinAbSubgroup.from_generators(
            ambient, [tuple(r) for r in alpha_rows]
        )
        if declared_k != stated:
            raise SemanticError("K does not equal the image of alpha")
        return datum


# ---------------------------------------------------------------------------
# the acting group on gluing states


def _state_key(state):
    h, images = state
    return (h.key(), tuple(x for row in images for x in row))


class _ActionSpace:
    """Labeled generators acting on gluing states for one (n, S, e)."""

    _cache: dict = {}

    def __init__(self, n: int, s: SCSemisimple, e: int):
        self.n = n
        self.s = s
        self.e = e
        self.ambient = torus_points(n, e)
        self.center = center_of(s).group
        self.z_gens: list[tuple[str, IntMatrix]] = []
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                for sign in (1, -1):
                    rows = [
                        [1 if a == b else 0 for b in range(n)] for a in range(n)
                    ]
                    rows[i][j] = sign
                    self.z_gens.append(
                        (f"Z:add[{i},{j}]{'+' if sign > 0 else '-'}", IntMatrix.from_rows(rows))
                    )
        if n >= 1:
            rows = [[1 if a == b else 0 for b in range(n)] for a in range(n)]
            rows[0][0] = -1
            self.z_gens.append(("Z:neg[0]", IntMatrix.from_rows(rows)))
        for i in range(n - 1):
            rows = [[1 if a == b else 0 for b in range(n)] for a in range(n)]
            rows[i][i] = rows[i + 1][i + 1] = 0
            rows[i][i + 1] = rows[i + 1][i] = 1
            self.z_gens.append((f"Z:swap[{i},{i + 1}]", IntMatrix.from_rows(rows)))
        self.s_gens: list[OutGenerator] = list(extended_out_generators(s))

    @classmethod
    def get(cls, n: int, s: SCSemisimple, e: int) -> "_ActionSpace":
        key = (n, s, e)
        if key not in cls._cache:
            cls._cache[key] = cls(n, s, e)
        return cls._cache[key]

    def labels(self) -> list[str]:
        return [label for label, _ in self.z_gens] + [g.label for g in self.s_gens]

    def apply_z(self, state, m: IntMatrix):
        h, images = state
        return (h, tuple(self.ambient.reduce(m.apply(v)) for v in images))

    def apply_s(self, state, m: IntMatrix):
        h, images = state
        center = self.center
        new_h = subgroup_image(h, m)
        _, old_gens = invariant_decomposition(h)
        mapped = tuple(center.reduce(m.apply(g)) for g in old_gens)
        _, new_gens = invariant_decomposition(new_h)
        new_images = []
        for g in new_gens:
            coeffs = solve_in_group(center, mapped, g)
            assert coeffs is not None, "generator not reachable from mapped generators"
            img = self.ambient.zero()
            for c, v in zip(coeffs, images):
                img = self.ambient.add(img, self.ambient.scale(c, v))
            new_images.append(img)
        return (new_h, tuple(new_images))

    def neighbors(self, state):
        for label, m in self.z_gens:
            yield label, self.apply_z(state, m)
        for gen in self.s_gens:
            yield gen.label, self.apply_s(state, gen.matrix)

    def orbit(self, state, threshold: int):
        """Full orbit of a state, or None once ``threshold`` is exceeded."""
        seen = {_state_key(state): state}
        frontier = [state]
        while frontier:
            cur = frontier.pop()
            for _, nxt in self.neighbors(cur):
                k = _state_key(nxt)
                if k not in seen:
                    if len(seen) >= threshold:
                        return None
                    seen[k] = nxt
                    frontier.append(nxt)
        return list(seen.values())

    def search(self, start, goal):
        """BFS word of generator labels mapping ``start`` to ``goal``."""
        start_key = _state_key(start)
        goal_key = _state_key(goal)
        if start_key == goal_key:
            return ()
        seen = {start_key: ()}
        frontier = [start]
        while frontier:
            nxt_frontier = []
            for cur in frontier:
                word = seen[_state_key(cur)]
                for label, nxt in self.neighbors(cur):
                    k = _state_key(nxt)
                    if k in seen:
                        continue
                    seen[k] = word + (label,)
                    if k == goal_key:
                        return seen[k]
                    nxt_frontier.append(nxt)
            frontier = nxt_frontier
        return None


def isomorphic(d1: GluingDatum, d2: GluingDatum) -> tuple[str, ...] | None:
    """Witness word iff the represented groups are isomorphic.

    Torus rank and universal cover are isomorphism invariants, so data with
    different ``(n, S)`` are never isomorphic; otherwise the glued subgroups
    are searched for orbit equivalence under the combined action.
    """
    if d1.torus_rank != d2.torus_rank or d1.semisimple != d2.semisimple:
        return None
    if d1.h_subgroup.exponent() != d2.h_subgroup.exponent():
        return None
    if d1.canonical and d2.canonical:
        if d1.state() == d2.state():
            return ()
        # canonical forms are orbit minima, so distinct forms mean distinct orbits
        return None
    space = _ActionSpace.get(d1.torus_rank, d1.semisimple, d1.h_subgroup.exponent())
    return space.search(d1.state(), d2.state())


# ---------------------------------------------------------------------------
# construction from raw central subgroups


def normalize(
    torus_rank: int,
    semisimple: SCSemisimple,
    modulus: int,
    raw_generators,
) -> GluingDatum:
    """Datum of ``(Z x S) / F_raw`` for a finite central ``F_raw``.

    ``raw_generators`` are coordinate rows in ``mu_modulus^n x center(S)``.
    The part of ``F_raw`` meeting the torus is absorbed by re-coordinatizing
    the quotient torus, which leaves the represented group unchanged.
    """
    if modulus < 1:
        raise BadModulus(f"modulus must be positive, got {modulus}")
    pc = center_of(semisimple)
    n = torus_rank
    ambient = direct_sum(torus_points(n, modulus), pc.group)
    gens = []
    for row in raw_generators:
        row = tuple(int(x) for x in row)
        if len(row) != ambient.ncoords:
            raise BadModulus(
                f"generator length {len(row)} does not match mu_{modulus}^{n} x center"
            )
        if any(not (0 <= x < d) for x, d in zip(row[:n], (modulus,) * n)):
            raise BadModulus(f"torus coordinates of {row} not reduced modulo {modulus}")
        if any(not (0 <= x < d) for x, d in zip(row[n:], pc.group.orders)):
            raise BadModulus(f"center coordinates of {row} out of range")
        gens.append(row)
    f_raw = FinAbSubgroup.from_generators(ambient, gens)
    torus_block = FinAbSubgroup.from_generators(
        ambient,
        [tuple(1 if j == i else 0 for j in range(ambient.ncoords)) for i in range(n)],
    )
    meet = subgroup_intersection(f_raw, torus_block)
    z_part = FinAbSubgroup.from_generators(
        torus_points(n, modulus), [g[:n] for g in meet.generators()]
    )
    # characters of Z/(F meet Z): the sublattice killing the intersection
    z_gens = [g for g in z_part.generators()]
    new_chars = congruence_kernel(z_gens, [modulus] * len(z_gens), n)
    h = FinAbSubgroup.from_generators(pc.group, [g[n:] for g in f_raw.generators()])
    e = h.exponent()
    _, h_gens = invariant_decomposition(h)
    images = []
    s_parts = IntMatrix.from_rows(
        [g[n:] for g in f_raw.generators()], ncols=pc.group.ncoords
    )
    for g in h_gens:
        coeffs = solve_in_group(pc.group, tuple(tuple(r) for r in s_parts.rows), g)
        assert coeffs is not None
        lift = ambient.zero()
        for c, fg in zip(coeffs, f_raw.generators()):
            lift = ambient.add(lift, ambient.scale(c, fg))
        assert pc.group.reduce(lift[n:]) == pc.group.reduce(g)
        a = lift[:n]
        img = []
        for i in range(n):
            num = sum(new_chars.rows[i][j] * a[j] for j in range(n)) * e
            assert num % modulus == 0, "lift is not killed by the new coordinates"
            img.append((num // modulus) % e)
        images.append(tuple(img))
    return GluingDatum.build(n, semisimple, h, images)


# ---------------------------------------------------------------------------
# enumeration


def _semisimple_of_rank(rank: int) -> list[SCSemisimple]:
    """All simply connected semisimple groups of exactly the given rank."""
    if rank == 0:
        return [SCSemisimple.of([])]
    out = []

    # enumerate nondecreasing factor sequences directly
    def build(prefix, remaining):
        if remaining == 0:
            out.append(SCSemisimple.of(prefix))
            return
        for r in range(1, remaining + 1):
            for t in all_types_of_rank(r):
                if prefix and t < prefix[-1]:
                    continue
                build(prefix + [t], remaining - r)

    build([], rank)
    return sorted(set(out), key=lambda s: s.names)


def generate_raw_rank(
    rank: int,
    subgroup_bound: int = DEFAULT_SUBGROUP_BOUND,
    characteristic: int = 0,
    canonicalize: bool = False,
) -> list[GluingDatum]:
    """Every gluing datum of the given rank, with duplicates.

    Splits the rank into torus and semisimple parts and runs over all
    subgroups ``H`` of the center, all torsion subgroups ``K`` of the torus
    with exponent dividing that of ``H`` (invariant factors reduced in the
    working characteristic), and all epimorphisms ``H -> K``.
    """
    out = []
    for n in range(rank, -1, -1):
        for s in _semisimple_of_rank(rank - n):
            pc = center_of(s)
            for h in subgroups(pc.group, bound=subgroup_bound):
                e = h.exponent()
                h_facs, _ = invariant_decomposition(h)
                ambient = torus_points(n, e)
                for k in subgroups(ambient, bound=subgroup_bound):
                    k_facs, k_gens = invariant_decomposition(k)
                    if characteristic and any(
                        remove_p_part(f, characteristic) != f for f in k_facs
                    ):
                        continue
                    for hom in homomorphisms(
                        FinAb(h_facs), FinAb(k_facs), surjective_only=True
                    ):
                        images = []
                        for img in hom.images:
                            vec = ambient.zero()
                            for c, g in zip(img, k_gens):
                                vec = ambient.add(vec, ambient.scale(c, g))
                            images.append(vec)
                        out.append(
                            GluingDatum.build(
                                n, s, h, images, canonicalize=canonicalize
                            )
                        )
    return out


def enumerate_rank(
    rank: int,
    rank_bound: int = DEFAULT_RANK_BOUND,
    subgroup_bound: int = DEFAULT_SUBGROUP_BOUND,
    characteristic: int = 0,
) -> list[GluingDatum]:
    """All connected reductive groups of the given rank, up to isomorphism.

    Complete and duplicate-free: raw data are canonicalized and deduplicated
    by their canonical state, with a pairwise-search fallback for any datum
    whose orbit exceeded the canonicalization threshold.
    """
    if rank > rank_bound:
        raise TooLarge(f"rank {rank} exceeds bound {rank_bound}")
    if rank < 0:
        raise SemanticError("rank must be nonnegative")
    raw = generate_raw_rank(
        rank,
        subgroup_bound=subgroup_bound,
        characteristic=characteristic,
        canonicalize=True,
    )
    seen = {}
    leftovers = []
    for d in raw:
        if d.canonical:
            key = (d.torus_rank, d.semisimple, _state_key(d.state()))
            if key not in seen:
                seen[key] = d
        else:
            leftovers.append(d)
    unique = list(seen.values())
    for d in leftovers:
        if all(isomorphic(d, other) is None for other in unique):
            unique.append(d)
    unique.sort(key=GluingDatum.sort_key)
    return unique


# ---------------------------------------------------------------------------
# root data and invariants


@lru_cache(maxsize=None)
def character_lattice(d: GluingDatum) -> tuple[IntMatrix, tuple[tuple[int, ...], ...]]:
    """Character lattice of a maximal torus, plus all root vectors.

    Coordinates are (torus characters; fundamental-weight coordinates per
    factor).  The lattice is cut out of the full weight lattice by the
    congruences demanding triviality on the glued subgroup; roots lie in it
    automatically.
    """
    n = d.torus_rank
    s = d.semisimple
    pc = center_of(s)
    r = s.rank
    m = n + r
    e = d.k_modulus
    h_facs, h_gens = invariant_decomposition(d.h_subgroup)
    rows = []
    moduli = []
    for g, img in zip(h_gens, d.alpha.images):
        denominators = [e] if n else [1]
        for (t, start, stop) in pc.blocks:
            cs = center_structure(t)
            denominators.extend(cs.group.orders)
        modulus = lcm(*denominators) if denominators else 1
        row = [0] * m
        for i in range(n):
            row[i] = img[i] * (modulus // e)
        col = n
        for (t, start, stop) in pc.blocks:
            cs = center_structure(t)
            z = g[start:stop]
            for p in range(t.rank):
                acc = 0
                for zi, di, wrow in zip(z, cs.group.orders, cs.transform.rows):
                    acc += zi * wrow[p] * (modulus // di)
                row[col + p] = acc
            col += t.rank
        rows.append(tuple(row))
        moduli.append(modulus)
    basis = congruence_kernel(rows, moduli, m)
    roots = []
    col = n
    for t in s.factors:
        c = cartan_matrix(t)
        for root in sorted(generate_roots(t).roots):
            weight = [
                sum(root[i] * c.rows[i][j] for i in range(t.rank))
                for j in range(t.rank)
            ]
            vec = [0] * m
            vec[col : col + t.rank] = weight
            roots.append(tuple(vec))
        col += t.rank
    return basis, tuple(roots)


@lru_cache(maxsize=None)
def fundamental_group(d: GluingDatum) -> tuple[int, FinAb]:
    """Cocharacter lattice modulo the coroot lattice: (free rank, torsion)."""
    n = d.torus_rank
    r = d.semisimple.rank
    m = n + r
    if m == 0:
        return 0, FinAb(())
    basis, _ = character_lattice(d)
    inv, det = inverse_scaled(basis)
    scale = abs(det)
    # the cocharacter lattice is (1/det) colspan(inv); scale it to integers
    lam = hermite_normal_form(inv.transpose())
    coords = []
    for j in range(r):
        target = tuple(scale if t == n + j else 0 for t in range(m))
        c = solve_left(lam, target)
        assert c is not None, "coroot missing from the cocharacter lattice"
        coords.append(c)
    if not coords:
        return m, FinAb(())
    rel = IntMatrix.from_rows(coords, ncols=m).transpose()
    factors, free = cokernel_invariants(rel)
    assert free == n
    return free, FinAb(factors)


@dataclass(frozen=True)
class InvariantReport:
    """Variety invariants of a connected affine group."""

    dim: int
    rank: int
    units: int
    mh: int
    dim_radical: int
    dim_unipotent_radical: int
    pi1_free_rank: int
    pi1_torsion: FinAb

    def __post_init__(self):
        assert self.dim_unipotent_radical == self.dim - self.mh >= 0
        assert self.dim_radical == self.dim - self.mh + self.units

    def to_dict(self) -> dict:
        return {
            "dim": self.dim,
            "rank": self.rank,
            "units": self.units,
            "mh": self.mh,
            "dim_radical": self.dim_radical,
            "dim_unipotent_radical": self.dim_unipotent_radical,
            "pi1_free_rank": self.pi1_free_rank,
            "pi1_torsion": list(self.pi1_torsion.invariant_factors()),
        }


def invariants(d: GluingDatum) -> InvariantReport:
    """Invariant report of a reductive datum.

    Characters factor through the torus part, so ``units`` is the torus
    rank; the top nonvanishing homology degree of a reductive group equals
    its dimension, so ``mh = dim`` and the unipotent radical vanishes.
    """
    free, torsion = fundamental_group(d)
    return InvariantReport(
        dim=d.dim,
        rank=d.rank,
        units=d.torus_rank,
        mh=d.dim,
        dim_radical=d.torus_rank,
        dim_unipotent_radical=0,
        pi1_free_rank=free,
        pi1_torsion=torsion,
    )


def lie_algebra_invariant(d: GluingDatum) -> tuple[tuple[str, ...], int]:
    """Isomorphism class of the Lie algebra: semisimple factors and torus rank."""
    return d.semisimple.names, d.torus_rank


def variety_determines_group(d: GluingDatum) -> tuple[bool, str]:
    """Is the group structure forced by the underlying variety?

    True for tori, simply connected semisimple groups, and quotients of a
    single simple factor; False means "not guaranteed by the implemented
    criteria", not a proof of the contrary.
    """
    if d.semisimple.is_trivial():
        return True, "torus"
    if d.torus_rank == 0 and d.h_subgroup.order == 1:
        return True, "simply connected semisimple"
    if d.torus_rank == 0 and len(d.semisimple.factors) == 1:
        return True, "simple"
    return False, "not covered by the uniqueness criteria"


@dataclass(frozen=True)
class TorusSplit:
    """Witness for the variety factorization ``G ~ D x Z``.

    ``cocharacters / denominator`` are the rows spanning a direct complement
    of the saturated coroot span inside the cocharacter lattice, expressed
    in (torus; coroot) coordinates.
    """

    cocharacters: IntMatrix
    denominator: int

    def vectors(self) -> list[tuple[Fraction, ...]]:
        return [
            tuple(Fraction(x, self.denominator) for x in row)
            for row in self.cocharacters.rows
        ]


def torus_split(d: GluingDatum) -> TorusSplit:
    """Complement of the saturated coroot span in the cocharacter lattice.

    The number of complement generators equals ``units``; stacking them on a
    basis of the saturation recovers the whole cocharacter lattice.
    """
    n = d.torus_rank
    r = d.semisimple.rank
    m = n + r
    if m == 0:
        return TorusSplit(IntMatrix.from_rows([], ncols=0), 1)
    basis, _ = character_lattice(d)
    inv, det = inverse_scaled(basis)
    scale = abs(det)
    lam = hermite_normal_form(inv.transpose())  # scale * cocharacter lattice
    if r == 0:
        return TorusSplit(lam, scale)
    torus_cols = IntMatrix.from_rows([row[:n] for row in lam.rows], ncols=n)
    coeff_rows = left_kernel(torus_cols) if n else IntMatrix.identity(m)
    sat_rows = [
        tuple(sum(c * lam.rows[t][j] for t, c in enumerate(coeffs)) for j in range(m))
        for coeffs in coeff_rows.rows
    ]
    sat = hermite_normal_form(IntMatrix.from_rows(sat_rows, ncols=m))
    assert sat.nrows == r
    comp_coords = saturated_complement(
        Lattice(m, hermite_normal_form(coeff_rows))
    )
    comp_rows = []
    for coeffs in comp_coords.basis.rows:
        vec = tuple(
            sum(c * lam.rows[t][j] for t, c in enumerate(coeffs)) for j in range(m)
        )
        lead = next((x for x in vec if x != 0), 0)
        if lead < 0:
            vec = tuple(-x for x in vec)
        vec = reduce_trailing(vec, sat)
        comp_rows.append(vec)
    comp = IntMatrix.from_rows(comp_rows, ncols=m)
    assert comp.nrows == n
    combined = hermite_normal_form(stack(sat, comp))
    assert combined == lam, "complement and saturation do not span the lattice"
    return TorusSplit(comp, scale)


# ---------------------------------------------------------------------------
# display names


def describe(d: GluingDatum) -> str:
    """Best-effort conventional name, falling back to a generic description."""
    n = d.torus_rank
    s = d.semisimple
    torus = f"Gm^{n}" if n > 1 else ("Gm" if n == 1 else "")
    if s.is_trivial():
        return torus if torus else "1"
    if d.k_subgroup.order == 1:
        # no gluing to the torus: a direct product of a quotient and a torus
        name = _semisimple_quotient_name(list(s.factors), d.h_subgroup)
        return f"{name}x{torus}" if torus else name
    blocks = center_of(s).blocks
    gens = d.h_subgroup.generators()
    supported = [
        i for i, (_, a, b) in enumerate(blocks) if any(any(g[a:b]) for g in gens)
    ]
    if len(supported) < len(blocks):
        # factors untouched by the gluing split off as plain products
        from .semisimple import _simply_connected_name

        sub_types = [s.factors[i] for i in supported]
        s_sub = SCSemisimple.of(sub_types)
        h_sub = _project_blocks(list(s.factors), d.h_subgroup, supported)
        h_sub = FinAbSubgroup(center_of(s_sub).group, h_sub.lattice)
        _, old_gens = invariant_decomposition(d.h_subgroup)
        _, new_gens = invariant_decomposition(h_sub)
        ambient = torus_points(n, d.k_modulus)
        new_images = []
        for g in new_gens:
            lifted = [0] * center_of(s).group.ncoords
            col = 0
            for i in supported:
                _, a, b = blocks[i]
                lifted[a:b] = g[col : col + (b - a)]
                col += b - a
            coeffs = solve_in_group(center_of(s).group, old_gens, tuple(lifted))
            img = ambient.zero()
            for c, v in zip(coeffs, d.alpha.images):
                img = ambient.add(img, ambient.scale(c, v))
            new_images.append(img)
        glued = GluingDatum.build(n, s_sub, h_sub, new_images, canonicalize=False)
        rest = "x".join(
            _simply_connected_name(s.factors[i])
            for i in range(len(blocks))
            if i not in supported
        )
        return f"{describe(glued)}x{rest}"
    if (
        n == 1
        and len(s.factors) == 1
        and s.factors[0].family == "A"
        and d.h_subgroup.order == center_of(s).group.order
        and d.k_subgroup.order == d.h_subgroup.order
    ):
        dd = s.factors[0].rank + 1
        img = d.alpha.images[0][0]
        if img in (1 % dd, (dd - 1) % dd):
            return f"GL{dd}"
    prefix = f"{torus}x" if torus else ""
    return f"({prefix}{s})/F{d.glue_order}"


def _local_blocks(types):
    blocks = []
    offset = 0
    for t in types:
        width = center_structure(t).group.ncoords
        blocks.append((t, offset, offset + width))
        offset += width
    return blocks


def _project_blocks(types, sub: FinAbSubgroup, picked) -> FinAbSubgroup:
    """Projection of ``sub`` onto the picked factor blocks, reindexed."""
    blocks = _local_blocks(types)
    cols = []
    orders = []
    for idx in picked:
        _, start, stop = blocks[idx]
        cols.extend(range(start, stop))
        orders.extend(sub.parent.orders[start:stop])
    gens = [tuple(g[c] for c in cols) for g in sub.generators()]
    return FinAbSubgroup.from_generators(FinAb(tuple(orders)), gens)


def _semisimple_quotient_name(types, sub: FinAbSubgroup) -> str:
    """Name ``S/H``, splitting off product factors where ``H`` allows it."""
    from .semisimple import _simply_connected_name

    if len(types) == 1:
        return quotient_name(types[0], sub)
    indices = list(range(len(types)))
    for mask in range(1, 1 << len(types)):
        left = [i for i in indices if (mask >> i) & 1]
        right = [i for i in indices if not (mask >> i) & 1]
        if 0 not in left or not right:
            continue
        left_sub = _project_blocks(types, sub, left)
        right_sub = _project_blocks(types, sub, right)
        if left_sub.order * right_sub.order == sub.order:
            left_name = _semisimple_quotient_name([types[i] for i in left], left_sub)
            right_name = _semisimple_quotient_name([types[i] for i in right], right_sub)
            return f"{left_name}x{right_name}"
    if len(set(types)) == 1 and sub.order == center_structure(types[0]).group.order:
        if types[0].name == "A1" and len(types) == 2:
            return "SO4"
        base = _simply_connected_name(types[0])
        return f"({'x'.join([base] * len(types))})/diag"
    base = "x".join(_simply_connected_name(t) for t in types)
    return f"({base})/F{sub.order}"

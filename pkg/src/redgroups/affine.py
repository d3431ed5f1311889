"""Connected affine groups as a reductive part plus a unipotent dimension.

In characteristic zero a connected affine group is a semidirect product of a
maximal reductive subgroup and its unipotent radical, and every numerical
invariant treated here depends on the radical only through its dimension, so
the datum is ``(reductive gluing datum, u)``.

``classify`` computes each structural flag twice, once from the invariant
report (the numeric criteria) and once from the shape of the datum, and
insists they agree; a disagreement raises ``CriterionMismatch`` and would
indicate a bug, not bad input.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CriterionMismatch, NotSolvable, ParseError
from .intlinalg import IntMatrix
from .reductive import (
    GluingDatum,
    InvariantReport,
    describe,
    invariants as reductive_invariants,
    torus_split,
)


@dataclass(frozen=True)
class AffineDatum:
    """Levi presentation: reductive part and unipotent-radical dimension."""

    reductive_part: GluingDatum
    unipotent_dim: int

    def __post_init__(self):
        if self.unipotent_dim < 0:
            raise ParseError("unipotent dimension must be nonnegative")

    @property
    def dim(self) -> int:
        return self.reductive_part.dim + self.unipotent_dim

    def to_dict(self) -> dict:
        doc = self.reductive_part.to_dict()
        doc["unipotent_dim"] = self.unipotent_dim
        return doc

    @classmethod
    def from_dict(cls, doc: dict) -> "AffineDatum":
        u = int(doc.get("unipotent_dim", 0))
        core = {k: v for k, v in doc.items() if k != "unipotent_dim"}
        return cls(GluingDatum.from_dict(core), u)


def invariants(a: AffineDatum) -> InvariantReport:
    """Invariant report of the affine group.

    The unipotent radical is contractible, so the top homology degree and
    the unit-group rank agree with those of the reductive part while the
    dimension grows by ``u``.
    """
    base = reductive_invariants(a.reductive_part)
    return InvariantReport(
        dim=base.dim + a.unipotent_dim,
        rank=base.rank,
        units=base.units,
        mh=base.mh,
        dim_radical=a.unipotent_dim + base.units,
        dim_unipotent_radical=a.unipotent_dim,
        pi1_free_rank=base.pi1_free_rank,
        pi1_torsion=base.pi1_torsion,
    )


@dataclass(frozen=True)
class ClassificationFlags:
    reductive: bool
    semisimple: bool
    solvable: bool
    unipotent: bool
    torus: bool

    def to_dict(self) -> dict:
        return {
            "reductive": self.reductive,
            "semisimple": self.semisimple,
            "solvable": self.solvable,
            "unipotent": self.unipotent,
            "torus": self.torus,
        }


def classify(a: AffineDatum) -> ClassificationFlags:
    """Structural flags, computed from the numeric criteria and verified.

    Criteria on the invariant report: reductive iff dim = mh; semisimple iff
    additionally units = 0; solvable iff mh = units; unipotent iff
    mh = units = 0; torus iff dim = units.
    """
    rep = invariants(a)
    flags = ClassificationFlags(
        reductive=rep.dim == rep.mh,
        semisimple=rep.dim == rep.mh and rep.units == 0,
        solvable=rep.mh == rep.units,
        unipotent=rep.mh == rep.units == 0,
        torus=rep.dim == rep.units,
    )
    d = a.reductive_part
    structural = ClassificationFlags(
        reductive=a.unipotent_dim == 0,
        semisimple=a.unipotent_dim == 0 and d.torus_rank == 0,
        solvable=d.semisimple.is_trivial(),
        unipotent=d.semisimple.is_trivial() and d.torus_rank == 0,
        torus=d.semisimple.is_trivial() and a.unipotent_dim == 0,
    )
    if flags != structural:
        raise CriterionMismatch(
            f"criteria {flags} disagree with structure {structural}"
        )
    return flags


def solvable_variety_signature(a: AffineDatum) -> tuple[int, int]:
    """Parameters (t, r) of the underlying variety ``A_*^t x A^r``."""
    if not classify(a).solvable:
        raise NotSolvable("variety signature is defined for solvable groups only")
    rep = invariants(a)
    t = rep.units
    return t, rep.dim - t


@dataclass(frozen=True)
class Obstructions:
    """Factorization obstructions for a semisimple group's variety."""

    no_units_factor: bool
    no_curve_factor: bool
    no_surface_factor: bool
    no_contractible_factor: bool

    def to_dict(self) -> dict:
        return {
            "no_units_factor": self.no_units_factor,
            "no_curve_factor": self.no_curve_factor,
            "no_surface_factor": self.no_surface_factor,
            "no_contractible_factor": self.no_contractible_factor,
        }


@dataclass(frozen=True)
class FactorizationReport:
    """Variety factorization of a reductive group, or obstructions to one."""

    splits: bool
    factor_dims: tuple[int, int] | None
    iota_cocharacters: IntMatrix | None
    iota_denominator: int | None
    torus_power: int | None
    obstructions: Obstructions | None
    group_name: str

    def to_dict(self) -> dict:
        return {
            "group": self.group_name,
            "splits": self.splits,
            "factor_dims": list(self.factor_dims) if self.factor_dims else None,
            "iota_cocharacters": self.iota_cocharacters.to_lists()
            if self.iota_cocharacters is not None
            else None,
            "iota_denominator": self.iota_denominator,
            "torus_power": self.torus_power,
            "obstructions": self.obstructions.to_dict() if self.obstructions else None,
        }


def factorization_report(d: GluingDatum) -> FactorizationReport:
    """Positive factorization for units > 0, obstructions when semisimple.

    With a nontrivial central torus the underlying variety splits off a
    torus factor of dimension ``units``, witnessed by the complement
    cocharacters of :func:`torus_split`.  A semisimple group's variety, in
    contrast, admits no factor carrying nonconstant units, no curve or
    surface factor, and no contractible factor of positive dimension.
    """
    n = d.torus_rank
    name = describe(d)
    if n > 0:
        split = torus_split(d)
        return FactorizationReport(
            splits=True,
            factor_dims=(d.dim - n, n),
            iota_cocharacters=split.cocharacters,
            iota_denominator=split.denominator,
            torus_power=n,
            obstructions=None,
            group_name=name,
        )
    obstructions = None
    if not d.semisimple.is_trivial():
        obstructions = Obstructions(
            no_units_factor=True,
            no_curve_factor=True,
            no_surface_factor=True,
            no_contractible_factor=True,
        )
    return FactorizationReport(
        splits=False,
        factor_dims=None,
        iota_cocharacters=None,
        iota_denominator=None,
        torus_power=None,
        obstructions=obstructions,
        group_name=name,
    )

"""Request and response models of the classification service.

The wire format of a group datum matches the library's JSON document:
fields ``torus_rank``, ``factors``, ``H``, ``K_modulus``, ``K``, ``alpha``
in that order, integer matrices as row-major lists, and an optional
``unipotent_dim`` extension for affine data.
"""

from __future__ import annotations

from pydantic import BaseModel, ConfigDict, Field, model_serializer


class Strict(BaseModel):
    model_config = ConfigDict(extra="forbid")


class DatumModel(Strict):
    torus_rank: int = Field(ge=0)
    factors: list[str]
    H: list[list[int]]
    K_modulus: int = Field(ge=1)
    K: list[list[int]]
    alpha: list[list[int]]
    unipotent_dim: int | None = Field(default=None, ge=0)

    @model_serializer(mode="wrap")
    def _drop_missing_extension(self, handler):
        data = handler(self)
        if data.get("unipotent_dim") is None:
            data.pop("unipotent_dim", None)
        return data

    def to_document(self) -> dict:
        doc = {
            "torus_rank": self.torus_rank,
            "factors": self.factors,
            "H": self.H,
            "K_modulus": self.K_modulus,
            "K": self.K,
            "alpha": self.alpha,
        }
        if self.unipotent_dim is not None:
            doc["unipotent_dim"] = self.unipotent_dim
        return doc


class CenterRequest(Strict):
    type: str


class CenterResponse(Strict):
    type: str
    invariant_factors: list[int]
    display: str


class QuotientsRequest(Strict):
    type: str


class QuotientEntry(Strict):
    order: int
    name: str
    generators: list[list[int]]
    orbit_class: int


class QuotientsResponse(Strict):
    type: str
    center: CenterResponse
    entries: list[QuotientEntry]


class IsoRequest(Strict):
    left: DatumModel
    right: DatumModel


class IsoResponse(Strict):
    isomorphic: bool
    reason: str
    witness: list[str] | None


class InvariantsRequest(Strict):
    datum: DatumModel


class InvariantsResponse(Strict):
    name: str
    dim: int
    rank: int
    units: int
    mh: int
    dim_radical: int
    dim_unipotent_radical: int
    pi1_free_rank: int
    pi1_torsion: list[int]


class ClassifyRequest(Strict):
    datum: DatumModel


class ClassifyResponse(Strict):
    name: str
    reductive: bool
    semisimple: bool
    solvable: bool
    unipotent: bool
    torus: bool
    variety_signature: list[int] | None


class EnumerateRequest(Strict):
    rank: int = Field(ge=0)
    bound: int | None = None
    characteristic: int = Field(default=0, ge=0)


class EnumerateEntry(Strict):
    name: str
    datum: DatumModel


class EnumerateResponse(Strict):
    rank: int
    count: int
    entries: list[EnumerateEntry]


class TwinsRequest(Strict):
    base: str
    n: int = Field(ge=1)
    bound: int | None = None


class TwinCertificateModel(Strict):
    names: list[str]
    C1: list[list[int]]
    C2: list[list[int]]
    witness: list[list[int]]
    variety_class_size: int
    out_orbit_size: int


class TwinsResponse(Strict):
    base: str
    n: int
    certificates: list[TwinCertificateModel]


class SplitRequest(Strict):
    datum: DatumModel


class ObstructionsModel(Strict):
    no_units_factor: bool
    no_curve_factor: bool
    no_surface_factor: bool
    no_contractible_factor: bool


class SplitResponse(Strict):
    group: str
    splits: bool
    factor_dims: list[int] | None
    iota_cocharacters: list[list[int]] | None
    iota_denominator: int | None
    iota_display: list[str] | None
    torus_power: int | None
    obstructions: ObstructionsModel | None


class ErrorBody(Strict):
    code: str
    message: str

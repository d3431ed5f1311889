"""FastAPI application exposing the classification library.

All endpoints are pure functions of their request bodies, so the service is
stateless and safe to scale horizontally.  Error semantics: malformed input
(including unparsable type strings) yields 422, semantically invalid data
400, and exceeded resource bounds 413; every error body carries a machine
code alongside the message.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import affine, reductive, varieties
from ..errors import ParseError, RedgroupsError, TooLarge
from ..finab import subgroups
from ..roots import SimpleType, center, center_action, diagram_automorphisms
from ..semisimple import quotient_name
from . import schemas

app = FastAPI(
    title="redgroups",
    description="Exact classification of connected reductive algebraic groups",
    version="0.1.0",
)


@app.exception_handler(RedgroupsError)
async def library_error_handler(request: Request, exc: RedgroupsError):
    if isinstance(exc, ParseError):
        status, code = 422, "parse"
    elif isinstance(exc, TooLarge):
        status, code = 413, "bound"
    else:
        status, code = 400, "semantic"
    body = schemas.ErrorBody(code=code, message=str(exc))
    return JSONResponse(status_code=status, content=body.model_dump())


def _load_reductive(model: schemas.DatumModel) -> reductive.GluingDatum:
    doc = model.to_document()
    doc.pop("unipotent_dim", None)
    return reductive.GluingDatum.from_dict(doc)


def _load_affine(model: schemas.DatumModel) -> affine.AffineDatum:
    return affine.AffineDatum.from_dict(model.to_document())


def _dump_datum(d: reductive.GluingDatum) -> schemas.DatumModel:
    return schemas.DatumModel(**d.to_dict())


@app.get("/health")
def health() -> dict:
    return {"status": "ok"}


@app.post("/v1/center", response_model=schemas.CenterResponse)
def center_endpoint(req: schemas.CenterRequest) -> schemas.CenterResponse:
    t = SimpleType.parse(req.type)
    g = center(t)
    return schemas.CenterResponse(
        type=t.name,
        invariant_factors=list(g.invariant_factors()),
        display=g.display(),
    )


@app.post("/v1/quotients", response_model=schemas.QuotientsResponse)
def quotients_endpoint(req: schemas.QuotientsRequest) -> schemas.QuotientsResponse:
    t = SimpleType.parse(req.type)
    g = center(t)
    actions = [center_action(t, p) for p in diagram_automorphisms(t)[1:]]
    subs = subgroups(g)
    from ..finab import orbit_partition

    orbits = orbit_partition(subs, actions)
    orbit_of = {}
    for cls_index, members in enumerate(orbits):
        for i in members:
            orbit_of[i] = cls_index
    entries = [
        schemas.QuotientEntry(
            order=s.order,
            name=quotient_name(t, s),
            generators=s.lattice.to_lists(),
            orbit_class=orbit_of[i],
        )
        for i, s in enumerate(subs)
    ]
    entries.sort(key=lambda e: (e.order, e.generators))
    return schemas.QuotientsResponse(
        type=t.name,
        center=schemas.CenterResponse(
            type=t.name,
            invariant_factors=list(g.invariant_factors()),
            display=g.display(),
        ),
        entries=entries,
    )


@app.post("/v1/iso", response_model=schemas.IsoResponse)
def iso_endpoint(req: schemas.IsoRequest) -> schemas.IsoResponse:
    left = _load_reductive(req.left)
    right = _load_reductive(req.right)
    if left.torus_rank != right.torus_rank:
        return schemas.IsoResponse(
            isomorphic=False, reason="torus rank differs", witness=None
        )
    if left.semisimple != right.semisimple:
        return schemas.IsoResponse(
            isomorphic=False, reason="universal covers differ", witness=None
        )
    word = reductive.isomorphic(left, right)
    if word is None:
        return schemas.IsoResponse(
            isomorphic=False, reason="gluing orbits differ", witness=None
        )
    return schemas.IsoResponse(
        isomorphic=True,
        reason="gluing subgroups lie in one orbit",
        witness=list(word),
    )


@app.post("/v1/invariants", response_model=schemas.InvariantsResponse)
def invariants_endpoint(req: schemas.InvariantsRequest) -> schemas.InvariantsResponse:
    a = _load_affine(req.datum)
    rep = affine.invariants(a)
    name = reductive.describe(a.reductive_part)
    if a.unipotent_dim:
        name = f"{name} x U{a.unipotent_dim}"
    return schemas.InvariantsResponse(name=name, **rep.to_dict())


@app.post("/v1/classify", response_model=schemas.ClassifyResponse)
def classify_endpoint(req: schemas.ClassifyRequest) -> schemas.ClassifyResponse:
    a = _load_affine(req.datum)
    flags = affine.classify(a)
    signature = None
    if flags.solvable:
        signature = list(affine.solvable_variety_signature(a))
    name = reductive.describe(a.reductive_part)
    if a.unipotent_dim:
        name = f"{name} x U{a.unipotent_dim}"
    return schemas.ClassifyResponse(
        name=name, variety_signature=signature, **flags.to_dict()
    )


@app.post("/v1/enumerate", response_model=schemas.EnumerateResponse)
def enumerate_endpoint(req: schemas.EnumerateRequest) -> schemas.EnumerateResponse:
    kwargs = {"characteristic": req.characteristic}
    if req.bound is not None:
        kwargs["rank_bound"] = req.bound
    data = reductive.enumerate_rank(req.rank, **kwargs)
    entries = [
        schemas.EnumerateEntry(name=reductive.describe(d), datum=_dump_datum(d))
        for d in data
    ]
    return schemas.EnumerateResponse(rank=req.rank, count=len(entries), entries=entries)


@app.post("/v1/twins", response_model=schemas.TwinsResponse)
def twins_endpoint(req: schemas.TwinsRequest) -> schemas.TwinsResponse:
    base = SimpleType.parse(req.base)
    kwargs = {}
    if req.bound is not None:
        kwargs["bound"] = req.bound
    certs = varieties.find_twin_pairs(base, req.n, **kwargs)
    models = []
    for cert in certs:
        doc = cert.to_dict()
        models.append(
            schemas.TwinCertificateModel(
                names=doc["names"],
                C1=doc["C1"],
                C2=doc["C2"],
                witness=doc["witness"],
                variety_class_size=doc["variety_class_size"],
                out_orbit_size=doc["out_orbit_size"],
            )
        )
    return schemas.TwinsResponse(base=base.name, n=req.n, certificates=models)


@app.post("/v1/split", response_model=schemas.SplitResponse)
def split_endpoint(req: schemas.SplitRequest) -> schemas.SplitResponse:
    d = _load_reductive(req.datum)
    rep = affine.factorization_report(d)
    doc = rep.to_dict()
    display = None
    if rep.iota_cocharacters is not None:
        den = rep.iota_denominator
        display = [
            "(" + ", ".join(f"{x}/{den}" if den != 1 else str(x) for x in row) + ")"
            for row in rep.iota_cocharacters.rows
        ]
    return schemas.SplitResponse(
        group=doc["group"],
        splits=doc["splits"],
        factor_dims=doc["factor_dims"],
        iota_cocharacters=doc["iota_cocharacters"],
        iota_denominator=doc["iota_denominator"],
        iota_display=display,
        torus_power=doc["torus_power"],
        obstructions=schemas.ObstructionsModel(**doc["obstructions"])
        if doc["obstructions"]
        else None,
    )

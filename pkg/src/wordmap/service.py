"""HTTP service exposing the word-map computations.

The service is stateless apart from small in-memory caches keyed by group
spec; every endpoint recomputes deterministically, so results are safe to
cache client-side too.  Usage errors map to 400, blown budgets or caps to
413, and failed internal cross-checks to 500.
"""

from __future__ import annotations

from functools import lru_cache

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from . import analysis, engine, groups, schemas, words
from .errors import (
    AmbiguousMatchError,
    BudgetExceededError,
    CapExceededError,
    VerificationError,
    WordmapError,
)

_USAGE_STATUS = 400
_BUDGET_STATUS = 413
_INTERNAL_STATUS = 500


@lru_cache(maxsize=64)
def _group(spec: str, size_limit: int) -> groups.GroupTable:
    return groups.builtin_group(spec, size_limit=size_limit)


@lru_cache(maxsize=64)
def _distset(spec: str, size_limit: int, n: int, map_cap: int) -> engine.DistributionSet:
    return engine.distribution_set(_group(spec, size_limit), n, map_cap)


def _status_of(exc: WordmapError) -> int:
    if isinstance(exc, (BudgetExceededError, CapExceededError)):
        return _BUDGET_STATUS
    if isinstance(exc, (VerificationError, AmbiguousMatchError)):
        return _INTERNAL_STATUS
    return _USAGE_STATUS


def create_app() -> FastAPI:
    app = FastAPI(title="wordmap", version="0.1.0")

    @app.exception_handler(WordmapError)
    async def _wordmap_error(request: Request, exc: WordmapError):
        return JSONResponse(
            status_code=_status_of(exc),
            content={"error": type(exc).__name__, "message": str(exc)},
        )

    @app.exception_handler(ValueError)
    async def _value_error(request: Request, exc: ValueError):
        return JSONResponse(
            status_code=_USAGE_STATUS,
            content={"error": "ValueError", "message": str(exc)},
        )

    @app.get("/healthz")
    async def healthz() -> dict:
        return {"status": "ok"}

    @app.get("/catalog", response_model=schemas.CatalogOut)
    async def catalog() -> schemas.CatalogOut:
        return schemas.CatalogOut(specs=groups.catalog_specs())

    @app.post("/group", response_model=schemas.GroupInfo)
    async def group(req: schemas.GroupRequest) -> schemas.GroupInfo:
        G = _group(req.spec, req.size_limit)
        return schemas.GroupInfo(
            spec=req.spec,
            order=G.order,
            exponent=G.exponent(),
            abelian=groups.is_abelian_oracle(G),
            nilpotent=groups.is_nilpotent_oracle(G),
            center_size=len(groups.center(G)),
            derived_subgroup_size=len(groups.derived_subgroup(G)),
            element_orders=[int(o) for o in G.element_orders],
        )

    @app.post("/dist", response_model=schemas.DistributionOut)
    async def dist(req: schemas.DistRequest) -> schemas.DistributionOut:
        G = _group(req.group, req.size_limit)
        word = words.parse_word(req.word, arity_hint=req.vars)
        d = engine.fiber_distribution(
            word,
            G,
            n=req.vars,
            params=tuple(req.params),
            tuple_budget=req.tuple_budget,
            threads=req.threads,
        )
        return schemas.DistributionOut(**d.to_json_dict())

    @app.post("/distset", response_model=schemas.DistsetOut)
    async def distset(req: schemas.DistsetRequest) -> schemas.DistsetOut:
        D = _distset(req.group, req.size_limit, req.vars, req.map_cap)
        return schemas.DistsetOut(**D.to_json_dict())

    @app.post("/witness", response_model=schemas.WitnessOut)
    async def witness(req: schemas.WitnessRequest) -> schemas.WitnessOut:
        G = _group(req.group, req.size_limit)
        found = analysis.build_witness_word(G, tuple_budget=req.tuple_budget)
        if found is None:
            return schemas.WitnessOut(group=req.group, nilpotent=True)
        word, dist_, data = found
        return schemas.WitnessOut(
            group=req.group,
            nilpotent=False,
            word=str(word),
            p=data.p,
            q=data.q,
            k=data.k,
            pair=[data.a, data.b],
            r=data.r,
            s=data.s,
            distribution=schemas.DistributionOut(**dist_.to_json_dict()),
        )

    @app.post("/check", response_model=schemas.CheckOut)
    async def check(req: schemas.CheckRequest) -> schemas.CheckOut:
        G = _group(req.group, req.size_limit)
        prop, method = req.property, req.method
        details: dict = {}
        if prop == "nilpotent":
            if method == "auto":
                method = "dist1"
            if method == "oracle":
                verdict = groups.is_nilpotent_oracle(G)
            elif method == "dist1":
                D = _distset(req.group, req.size_limit, 1, req.map_cap)
                verdict = analysis.nilpotent_from_1var_distset(D)
                details["map_count"] = D.map_count
            elif method == "dist2":
                n = max(req.vars, 2)
                D = _distset(req.group, req.size_limit, n, req.map_cap)
                verdict = analysis.nilpotent_from_nvar_distset(D)
                details["map_count"] = D.map_count
                details["arity"] = n
            elif method == "witness":
                found = analysis.build_witness_word(G, tuple_budget=req.tuple_budget)
                verdict = found is None
                if found is not None:
                    details["witness_word"] = str(found[0])
            else:
                raise ValueError(
                    f"unknown method {req.method!r} for nilpotency "
                    "(try oracle, dist1, dist2 or witness)"
                )
        else:
            if method == "auto":
                method = "dist2"
            if method == "oracle":
                verdict = groups.is_abelian_oracle(G)
            elif method == "dist2":
                n = max(req.vars, 2)
                D = _distset(req.group, req.size_limit, n, req.map_cap)
                verdict = analysis.abelian_from_distset(D)
                details["map_count"] = D.map_count
                details["arity"] = n
            else:
                raise ValueError(
                    f"unknown method {req.method!r} for abelianness "
                    "(try oracle or dist2)"
                )
        return schemas.CheckOut(
            group=req.group,
            property=prop,
            method=method,
            verdict=bool(verdict),
            details=details,
        )

    @app.post("/compare", response_model=schemas.CompareOut)
    async def compare(req: schemas.CompareRequest) -> schemas.CompareOut:
        D1 = _distset(req.group1, req.size_limit, req.vars, req.map_cap)
        D2 = _distset(req.group2, req.size_limit, req.vars, req.map_cap)
        result = analysis.compare_distsets(D1, D2, node_budget=req.node_budget)
        return schemas.CompareOut(
            group1=req.group1,
            group2=req.group2,
            arity=req.vars,
            verdict=result.verdict,
            permutation=list(result.permutation) if result.permutation else None,
            reason=result.reason,
        )

    @app.post("/sylow", response_model=schemas.SylowOut)
    async def sylow(req: schemas.SylowRequest) -> schemas.SylowOut:
        D = _distset(req.group, req.size_limit, req.vars, req.map_cap)
        extracted = analysis.sylow_extract(D, req.prime)
        return schemas.SylowOut(
            group=req.group,
            prime=req.prime,
            parent_order=D.group_order,
            **extracted.to_json_dict(),
        )

    @app.post("/verify", response_model=schemas.VerifyOut)
    async def verify(req: schemas.VerifyRequest) -> schemas.VerifyOut:
        if req.theorem == "all":
            reports = analysis.verify_catalog(
                seed=req.seed,
                tuple_budget=req.tuple_budget,
                samples=req.samples,
            )
        else:
            reports = [
                analysis.verify(
                    req.theorem,
                    req.group,
                    seed=req.seed,
                    n=req.vars,
                    map_cap=req.map_cap,
                    tuple_budget=req.tuple_budget,
                    size_limit=req.size_limit,
                    samples=req.samples,
                )
            ]
        return schemas.VerifyOut(reports=[schemas.Report(**r) for r in reports])

    return app


app = create_app()

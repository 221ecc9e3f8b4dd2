"""FastAPI wrapper around the matching engine and decomposition registry.

The CLI runs the engine in-process; this service is a second, network-facing
front end over the same core for programmatic use.
"""

from __future__ import annotations

from typing import List, Optional

from fastapi import FastAPI, HTTPException, Query

from .. import __version__
from ..circuit import verify_on_binary_subspace
from ..decompositions import DECOMPOSITIONS, build_named, reference_named
from ..engine import MatchProblem, ascii_bits, run_match
from ..errors import DomainError, QuditMatchError, SupportBudgetError
from ..resources import NOISE_MODES, conformance, fredkin_sweep
from .schemas import (DecompositionResponse, HealthResponse, MatchRequest,
                      MatchResponse, NoiseRow, VerificationResponse)

MAX_VERIFY_WIRES = 12
MAX_COST_TEXT = 256


def create_app() -> FastAPI:
    app = FastAPI(title="quditmatch", version=__version__)

    @app.get("/health", response_model=HealthResponse)
    def health() -> HealthResponse:
        return HealthResponse(status="ok", version=__version__)

    @app.post("/match", response_model=MatchResponse)
    def match(req: MatchRequest) -> MatchResponse:
        text, pattern = req.text, req.pattern
        try:
            if req.ascii_input:
                text, pattern = ascii_bits(text), ascii_bits(pattern)
            problem = MatchProblem(text, pattern,
                                   iterations=req.iterations,
                                   expected_matches=req.expected_matches,
                                   support_budget=req.support_budget)
        except DomainError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
        try:
            result = run_match(problem)
        except SupportBudgetError as exc:
            raise HTTPException(
                status_code=507,
                detail={"error": str(exc), "support_trace": list(exc.trace)},
            ) from exc
        except QuditMatchError as exc:
            raise HTTPException(status_code=500, detail=str(exc)) from exc
        return MatchResponse(**result.to_json_dict())

    def _named(name: str, n: Optional[int]):
        if name not in DECOMPOSITIONS:
            raise HTTPException(status_code=404,
                                detail=f"unknown decomposition {name!r}")
        spec = DECOMPOSITIONS[name]
        try:
            circuit, spec = build_named(name, n if spec.parametric else None)
        except DomainError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
        return circuit, spec

    @app.get("/decompositions/{name}", response_model=DecompositionResponse)
    def decomposition(name: str, n: Optional[int] = Query(default=None, ge=2)
                      ) -> DecompositionResponse:
        circuit, spec = _named(name, n)
        return DecompositionResponse(name=spec.name, summary=spec.summary,
                                     circuit=circuit.dump().splitlines(),
                                     cost=circuit.cost().as_dict())

    @app.get("/decompositions/{name}/verification",
             response_model=VerificationResponse)
    def verification(name: str, n: Optional[int] = Query(default=None, ge=2)
                     ) -> VerificationResponse:
        circuit, spec = _named(name, n)
        if circuit.layout.wire_count > MAX_VERIFY_WIRES:
            raise HTTPException(
                status_code=422,
                detail=f"exhaustive verification supports up to {MAX_VERIFY_WIRES} wires")
        reference = reference_named(spec.name, n if spec.parametric else None)
        report = verify_on_binary_subspace(circuit, reference)
        return VerificationResponse(name=spec.name,
                                    wires=circuit.layout.wire_count,
                                    gates=len(circuit.ops),
                                    **report.as_dict())

    @app.get("/cost")
    def cost(n: int = Query(ge=1), m: int = Query(ge=1)) -> dict:
        if not 1 <= m <= n:
            raise HTTPException(status_code=422, detail="need 1 <= m <= n")
        if n > MAX_COST_TEXT:
            raise HTTPException(status_code=422,
                                detail=f"conformance supports n <= {MAX_COST_TEXT}")
        return conformance(n, m).as_dict()

    @app.get("/noise", response_model=List[NoiseRow])
    def noise(eps_min: float = Query(default=0.0, ge=0.0),
              eps_max: float = Query(default=0.05, lt=1.0),
              steps: int = Query(default=50, ge=1),
              mode: str = Query(default="uniform")) -> List[NoiseRow]:
        if mode not in NOISE_MODES:
            raise HTTPException(status_code=422,
                                detail=f"mode must be one of {NOISE_MODES}")
        if eps_min > eps_max:
            raise HTTPException(status_code=422, detail="need eps_min <= eps_max")
        if steps == 1:
            epsilons = [eps_min]
        else:
            step = (eps_max - eps_min) / (steps - 1)
            epsilons = [eps_min + i * step for i in range(steps)]
            epsilons[-1] = eps_max
        return [NoiseRow(epsilon=e, p_proposed=p, p_baseline=b, mode=md)
                for e, p, b, md in fredkin_sweep(epsilons, mode)]

    return app


app = create_app()

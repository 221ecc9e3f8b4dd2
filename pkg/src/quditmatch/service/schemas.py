"""Pydantic request/response models for the HTTP service."""

from __future__ import annotations

from typing import Dict, List, Optional

from pydantic import BaseModel, Field


class MatchRequest(BaseModel):
    text: str
    pattern: str
    iterations: Optional[int] = None
    expected_matches: Optional[int] = Field(default=None, ge=1)
    support_budget: Optional[int] = Field(default=None, ge=1)
    ascii_input: bool = False


class TopEntry(BaseModel):
    offset: int
    probability: float


class MatchResponse(BaseModel):
    offsets: Dict[str, float]
    top: List[TopEntry]
    iterations: int
    verified: bool
    cost_report: Dict[str, int]
    support_trace: List[int]


class DecompositionResponse(BaseModel):
    name: str
    summary: str
    circuit: List[str]
    cost: Dict[str, int]


class VerificationResponse(BaseModel):
    name: str
    wires: int
    gates: int
    equivalent: bool
    leakage: float
    restored: bool
    inputs_checked: int
    phase_spread: float


class NoiseRow(BaseModel):
    epsilon: float
    p_proposed: float
    p_baseline: float
    mode: str


class HealthResponse(BaseModel):
    status: str
    version: str

"""Sparse mixed-radix state vectors.

A register is an ordered list of wires with per-wire dimension in {2, 3, 4};
wire 0 is the most significant digit of the packed basis index.  States are
hash maps from packed index to complex amplitude, so cost scales with the
number of branches actually populated rather than with the full Hilbert
dimension.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

from .errors import DimensionError, DomainError
from .gates import GateOp

ROLES = ("index", "text", "pattern", "ancilla", "output")

PRUNE_CUTOFF = 1e-12
NORM_DRIFT_TOLERANCE = 1e-9

_SQRT_HALF = math.sqrt(0.5)
_T_PHASE = complex(math.cos(math.pi / 4), math.sin(math.pi / 4))


@dataclass(frozen=True)
class RegisterLayout:
    """Wire dimensions plus a role tag per wire.

    Roles partition the register: every wire carries exactly one role from
    ``ROLES``.  Standalone circuits that do not care about roles default to
    tagging every wire ``text``.
    """

    dims: Tuple[int, ...]
    roles: Tuple[str, ...] = ()

    def __post_init__(self):
        if not self.dims:
            raise DomainError("layout needs at least one wire")
        for w, d in enumerate(self.dims):
            if d not in (2, 3, 4):
                raise DimensionError(f"wire {w} has unsupported dim {d}")
        roles = self.roles or tuple("text" for _ in self.dims)
        if len(roles) != len(self.dims):
            raise DomainError("roles and dims must have equal length")
        for w, r in enumerate(roles):
            if r not in ROLES:
                raise DomainError(f"wire {w} has unknown role {r!r}")
        object.__setattr__(self, "roles", roles)
        strides: List[int] = [1] * len(self.dims)
        for w in range(len(self.dims) - 2, -1, -1):
            strides[w] = strides[w + 1] * self.dims[w + 1]
        object.__setattr__(self, "_strides", tuple(strides))
        # product over python ints: exact, no overflow possible
        object.__setattr__(self, "_total_dim", strides[0] * self.dims[0])

    @property
    def wire_count(self) -> int:
        return len(self.dims)

    @property
    def strides(self) -> Tuple[int, ...]:
        return self._strides  # type: ignore[attr-defined]

    @property
    def total_dim(self) -> int:
        return self._total_dim  # type: ignore[attr-defined]

    def wires_with_role(self, role: str) -> Tuple[int, ...]:
        if role not in ROLES:
            raise DomainError(f"unknown role {role!r}")
        return tuple(w for w, r in enumerate(self.roles) if r == role)

    def check_wire(self, wire: int):
        if not 0 <= wire < len(self.dims):
            raise DomainError(f"wire {wire} outside layout of {len(self.dims)} wires")

    def digit(self, index: int, wire: int) -> int:
        self.check_wire(wire)
        return (index // self.strides[wire]) % self.dims[wire]


def encode_basis(digits: Sequence[int], layout: RegisterLayout) -> int:
    """Pack per-wire digits (wire 0 most significant) into a basis index."""
    if len(digits) != layout.wire_count:
        raise DomainError(
            f"expected {layout.wire_count} digits, got {len(digits)}")
    index = 0
    for w, (d, dim) in enumerate(zip(digits, layout.dims)):
        if not 0 <= d < dim:
            raise DomainError(f"digit {d} out of range for wire {w} (dim {dim})")
        index += d * layout.strides[w]
    return index


def decode_basis(index: int, layout: RegisterLayout) -> Tuple[int, ...]:
    if not 0 <= index < layout.total_dim:
        raise DomainError(f"basis index {index} outside total dim {layout.total_dim}")
    return tuple((index // s) % d for s, d in zip(layout.strides, layout.dims))


@dataclass
class SparseState:
    """Sparse complex amplitudes over a fixed layout."""

    layout: RegisterLayout
    amplitudes: Dict[int, complex] = field(default_factory=dict)
    cutoff: float = PRUNE_CUTOFF

    def support_size(self) -> int:
        return len(self.amplitudes)

    def norm_sq(self) -> float:
        return sum((a.real * a.real + a.imag * a.imag) for a in self.amplitudes.values())

    def copy(self) -> "SparseState":
        return SparseState(self.layout, dict(self.amplitudes), self.cutoff)


def init_basis_state(layout: RegisterLayout, digits: Sequence[int]) -> SparseState:
    return SparseState(layout, {encode_basis(digits, layout): 1.0 + 0.0j})


def _validate_gate(g: GateOp, layout: RegisterLayout):
    for w in g.wires:
        layout.check_wire(w)
    if g.kind in ("xinc", "cinc") and g.modulus > layout.dims[g.wires[-1]]:
        raise DimensionError(
            f"modulus {g.modulus} exceeds dim {layout.dims[g.wires[-1]]} of wire {g.wires[-1]}")
    if g.kind == "cinc" and g.level >= layout.dims[g.wires[0]]:
        raise DimensionError(
            f"activation level {g.level} >= dim {layout.dims[g.wires[0]]} of wire {g.wires[0]}")
    if g.kind == "swap" and layout.dims[g.wires[0]] != layout.dims[g.wires[1]]:
        raise DimensionError("SWAP requires wires of equal dim")


def apply_gate(state: SparseState, g: GateOp) -> SparseState:
    """Apply one gate, returning a new state.

    Permutation and phase gates are exact; the Hadamard path prunes
    amplitudes below the cutoff and renormalizes only if the norm has
    drifted by more than ``NORM_DRIFT_TOLERANCE`` (aggressive
    renormalization would mask bugs).
    """
    lay = state.layout
    _validate_gate(g, lay)
    amps = state.amplitudes
    kind = g.kind

    if kind == "xinc":
        w = g.wires[0]
        s, dim = lay.strides[w], lay.dims[w]
        new = {}
        for i, a in amps.items():
            d = (i // s) % dim
            j = i + (((d + g.amount) % g.modulus) - d) * s if d < g.modulus else i
            new[j] = a
        return SparseState(lay, new, state.cutoff)

    if kind == "cinc":
        c, t = g.wires
        sc, dc = lay.strides[c], lay.dims[c]
        st, dt = lay.strides[t], lay.dims[t]
        new = {}
        for i, a in amps.items():
            if (i // sc) % dc == g.level:
                d = (i // st) % dt
                j = i + (((d + g.amount) % g.modulus) - d) * st if d < g.modulus else i
            else:
                j = i
            new[j] = a
        return SparseState(lay, new, state.cutoff)

    if kind == "swap":
        w1, w2 = g.wires
        s1, d1 = lay.strides[w1], lay.dims[w1]
        s2 = lay.strides[w2]
        new = {}
        for i, a in amps.items():
            a1 = (i // s1) % d1
            a2 = (i // s2) % d1
            new[i + (a2 - a1) * s1 + (a1 - a2) * s2] = a
        return SparseState(lay, new, state.cutoff)

    if kind in ("t", "tdg"):
        w = g.wires[0]
        s, dim = lay.strides[w], lay.dims[w]
        phase = _T_PHASE if kind == "t" else _T_PHASE.conjugate()
        new = {i: (a * phase if (i // s) % dim == 1 else a) for i, a in amps.items()}
        return SparseState(lay, new, state.cutoff)

    # Hadamard on the binary subspace of the wire
    w = g.wires[0]
    s, dim = lay.strides[w], lay.dims[w]
    new: Dict[int, complex] = {}
    for i, a in amps.items():
        d = (i // s) % dim
        if d >= 2:
            new[i] = new.get(i, 0.0) + a
            continue
        base = i - d * s
        contrib = a * _SQRT_HALF
        new[base] = new.get(base, 0.0) + contrib
        new[base + s] = new.get(base + s, 0.0) + (contrib if d == 0 else -contrib)
    out = SparseState(lay, new, state.cutoff)
    _prune(out)
    return out


def _prune(state: SparseState):
    cut = state.cutoff
    dead = [i for i, a in state.amplitudes.items() if abs(a) < cut]
    for i in dead:
        del state.amplitudes[i]
    drift = abs(state.norm_sq() - 1.0)
    if drift > NORM_DRIFT_TOLERANCE:
        scale = 1.0 / math.sqrt(state.norm_sq())
        for i in list(state.amplitudes):
            state.amplitudes[i] *= scale


def apply_ops(state: SparseState, ops: Iterable[GateOp]) -> SparseState:
    for g in ops:
        state = apply_gate(state, g)
    return state


def measure_register(state: SparseState, wires: Sequence[int]) -> Dict[Tuple[int, ...], float]:
    """Marginal probability distribution over the listed wires."""
    if not wires:
        raise DomainError("measure_register needs at least one wire")
    lay = state.layout
    for w in wires:
        lay.check_wire(w)
    probs: Dict[Tuple[int, ...], float] = {}
    for i, a in state.amplitudes.items():
        key = tuple((i // lay.strides[w]) % lay.dims[w] for w in wires)
        probs[key] = probs.get(key, 0.0) + (a.real * a.real + a.imag * a.imag)
    return probs


def inner_product(a: SparseState, b: SparseState) -> complex:
    """<a|b> over the common support; layouts must match."""
    if a.layout != b.layout:
        raise DomainError("inner_product requires identical layouts")
    small = a.amplitudes if len(a.amplitudes) <= len(b.amplitudes) else b.amplitudes
    other = b.amplitudes if small is a.amplitudes else a.amplitudes
    total = 0.0 + 0.0j
    for i in small:
        if i in other:
            total += a.amplitudes[i].conjugate() * b.amplitudes[i]
    return total

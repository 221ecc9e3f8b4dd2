"""Circuit IR: ordered gate lists with cost, depth, inversion and verification."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .errors import DimensionError, DomainError
from .gates import (CATEGORY_CNOT, CATEGORY_QUATERNARY, CATEGORY_SINGLE,
                    CATEGORY_T, CATEGORY_TERNARY, GateOp, ReferencePermutation,
                    format_gate, gate_category, gate_inverse, local_matrix,
                    parse_gate, reference_apply)
from .state import (RegisterLayout, SparseState, apply_ops, encode_basis,
                    init_basis_state)

DENSE_DIM_CAP = 4096
LEAKAGE_TOLERANCE = 1e-9
AMPLITUDE_TOLERANCE = 1e-9


@dataclass(frozen=True)
class CostReport:
    """Gate tallies by category plus depth and wire census."""

    cnot: int
    ternary: int
    quaternary: int
    t: int
    single_qudit: int
    depth: int
    wires: int
    ancilla: int

    @property
    def two_qudit_total(self) -> int:
        return self.cnot + self.ternary + self.quaternary

    def as_dict(self) -> Dict[str, int]:
        return {
            "cnot": self.cnot,
            "ternary": self.ternary,
            "quaternary": self.quaternary,
            "t": self.t,
            "single_qudit": self.single_qudit,
            "depth": self.depth,
            "wires": self.wires,
            "ancilla": self.ancilla,
        }


@dataclass(frozen=True)
class Circuit:
    """An ordered sequence of gates over a fixed layout."""

    layout: RegisterLayout
    ops: Tuple[GateOp, ...]

    def __post_init__(self):
        from .state import _validate_gate
        for g in self.ops:
            _validate_gate(g, self.layout)

    def depth(self) -> int:
        """Greedy earliest-layer depth: ops sharing a wire stack, disjoint ops pack."""
        frontier = [0] * self.layout.wire_count
        deepest = 0
        for g in self.ops:
            layer = 1 + max(frontier[w] for w in g.wires)
            for w in g.wires:
                frontier[w] = layer
            deepest = max(deepest, layer)
        return deepest

    def layers(self) -> List[List[GateOp]]:
        """The greedy layering itself (layer lists of wire-disjoint ops)."""
        frontier = [0] * self.layout.wire_count
        out: List[List[GateOp]] = []
        for g in self.ops:
            layer = 1 + max(frontier[w] for w in g.wires)
            for w in g.wires:
                frontier[w] = layer
            while len(out) < layer:
                out.append([])
            out[layer - 1].append(g)
        return out

    def cost(self) -> CostReport:
        tally = {CATEGORY_CNOT: 0, CATEGORY_TERNARY: 0, CATEGORY_QUATERNARY: 0,
                 CATEGORY_T: 0, CATEGORY_SINGLE: 0}
        for g in self.ops:
            tally[gate_category(g)] += 1
        return CostReport(
            cnot=tally[CATEGORY_CNOT],
            ternary=tally[CATEGORY_TERNARY],
            quaternary=tally[CATEGORY_QUATERNARY],
            t=tally[CATEGORY_T],
            single_qudit=tally[CATEGORY_SINGLE],
            depth=self.depth(),
            wires=self.layout.wire_count,
            ancilla=len(self.layout.wires_with_role("ancilla")),
        )

    def inverse(self) -> "Circuit":
        return Circuit(self.layout, tuple(gate_inverse(g) for g in reversed(self.ops)))

    def concat(self, other: "Circuit") -> "Circuit":
        if other.layout != self.layout:
            raise DomainError("cannot concatenate circuits over different layouts")
        return Circuit(self.layout, self.ops + other.ops)

    def __add__(self, other: "Circuit") -> "Circuit":
        return self.concat(other)

    def dump(self) -> str:
        """Stable textual form: a dims header line, then one gate per line."""
        head = "dims " + " ".join(str(d) for d in self.layout.dims)
        return "\n".join([head] + [format_gate(g) for g in self.ops])


def parse_circuit(text: str) -> Circuit:
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("dims "):
        raise DomainError("circuit text must start with a 'dims ...' header")
    try:
        dims = tuple(int(tok) for tok in lines[0].split()[1:])
    except ValueError as exc:
        raise DomainError(f"bad dims header {lines[0]!r}") from exc
    layout = RegisterLayout(dims)
    return Circuit(layout, tuple(parse_gate(ln) for ln in lines[1:]))


def infer_dims(ops: Sequence[GateOp], wire_count: Optional[int] = None,
               roles: Tuple[str, ...] = ()) -> RegisterLayout:
    """Smallest per-wire dims (min 2) that accommodate every op's levels."""
    if wire_count is None:
        if not ops:
            raise DomainError("cannot infer a layout from an empty op list")
        wire_count = 1 + max(w for g in ops for w in g.wires)
    need = [2] * wire_count
    for g in ops:
        for w in g.wires:
            if w >= wire_count:
                raise DomainError(f"op references wire {w} >= wire count {wire_count}")
        if g.kind in ("xinc", "cinc"):
            t = g.wires[-1]
            need[t] = max(need[t], g.modulus)
        if g.kind == "cinc":
            c = g.wires[0]
            need[c] = max(need[c], g.level + 1)
    for w, d in enumerate(need):
        if d > 4:
            raise DimensionError(f"wire {w} would need dim {d} > 4")
    return RegisterLayout(tuple(need), roles)


def circuit_on_fresh_wires(ops: Sequence[GateOp], wire_count: Optional[int] = None) -> Circuit:
    """Bundle raw ops into a circuit over an inferred layout."""
    return Circuit(infer_dims(ops, wire_count), tuple(ops))


def simulate_basis(circuit: Circuit, digits: Sequence[int]) -> SparseState:
    return apply_ops(init_basis_state(circuit.layout, digits), circuit.ops)


def dense_unitary(circuit: Circuit) -> np.ndarray:
    """Full-space unitary, for cross-checking the sparse simulator.

    Built from each gate's local matrix and basis arithmetic (independent of
    the sparse apply path).  Guarded to total dimension <= 4096.
    """
    lay = circuit.layout
    dim = lay.total_dim
    if dim > DENSE_DIM_CAP:
        raise DomainError(f"dense unitary capped at {DENSE_DIM_CAP}, layout has {dim}")
    full = np.eye(dim, dtype=complex)
    from .state import decode_basis
    for g in circuit.ops:
        dims = tuple(lay.dims[w] for w in g.wires)
        loc = local_matrix(g, dims)
        mat = np.zeros((dim, dim), dtype=complex)
        for col in range(dim):
            digits = list(decode_basis(col, lay))
            loc_col = 0
            for w in g.wires:
                loc_col = loc_col * lay.dims[w] + digits[w]
            for loc_row in np.nonzero(loc[:, loc_col])[0]:
                rem = int(loc_row)
                for w in reversed(g.wires):
                    digits[w] = rem % lay.dims[w]
                    rem //= lay.dims[w]
                mat[encode_basis(digits, lay), col] = loc[loc_row, loc_col]
        full = mat @ full
    return full


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of exhaustive binary-subspace verification."""

    equivalent: bool
    leakage: float
    restored: bool
    inputs_checked: int
    phase_spread: float

    def ok(self) -> bool:
        return self.equivalent and self.restored and self.leakage <= LEAKAGE_TOLERANCE

    def as_dict(self) -> Dict[str, object]:
        return {
            "equivalent": self.equivalent,
            "leakage": self.leakage,
            "restored": self.restored,
            "inputs_checked": self.inputs_checked,
            "phase_spread": self.phase_spread,
        }


def verify_on_binary_subspace(circuit: Circuit, reference: ReferencePermutation,
                              ancilla_wires: Sequence[int] = (),
                              phase_strict: bool = False) -> VerificationReport:
    """Simulate every binary input and compare against the reference map.

    * equivalent: each input lands on the reference image with unit-magnitude
      amplitude (per-input phase free unless ``phase_strict``)
    * leakage: worst-case final probability mass on digits >= 2
    * restored: non-target wires (and declared ancilla) end at their inputs
    """
    lay = circuit.layout
    ancilla = tuple(ancilla_wires)
    main_wires = tuple(w for w in range(lay.wire_count) if w not in ancilla)
    if len(main_wires) != reference.arity:
        raise DomainError(
            f"circuit has {len(main_wires)} non-ancilla wires, reference wants {reference.arity}")
    nontarget = tuple(w for i, w in enumerate(main_wires)
                      if i not in reference.target_wires)

    equivalent = True
    restored = True
    leakage = 0.0
    phases: List[complex] = []
    count = 0
    for bits in itertools.product((0, 1), repeat=reference.arity):
        count += 1
        digits = [0] * lay.wire_count
        for w, b in zip(main_wires, bits):
            digits[w] = b
        final = simulate_basis(circuit, digits)

        image = reference_apply(reference, bits)
        expect = [0] * lay.wire_count
        for w, b in zip(main_wires, image):
            expect[w] = b
        want = encode_basis(expect, lay)

        amp = final.amplitudes.get(want, 0.0)
        if abs(abs(amp) - 1.0) > AMPLITUDE_TOLERANCE:
            equivalent = False
        else:
            phases.append(amp / abs(amp))

        mass = 0.0
        for i, a in final.amplitudes.items():
            if any((i // lay.strides[w]) % lay.dims[w] >= 2 for w in range(lay.wire_count)):
                mass += abs(a) ** 2
        leakage = max(leakage, mass)

        # judge restoration from the dominant branch
        top = max(final.amplitudes, key=lambda i: abs(final.amplitudes[i]))
        for w in ancilla:
            if (top // lay.strides[w]) % lay.dims[w] != 0:
                restored = False
        for w in nontarget:
            if (top // lay.strides[w]) % lay.dims[w] != digits[w]:
                restored = False

    spread = 0.0
    if phases:
        ref_phase = phases[0]
        spread = max(abs(p - ref_phase) for p in phases)
    if phase_strict and spread > AMPLITUDE_TOLERANCE:
        equivalent = False
    return VerificationReport(equivalent=equivalent, leakage=leakage,
                              restored=restored, inputs_checked=count,
                              phase_spread=spread)

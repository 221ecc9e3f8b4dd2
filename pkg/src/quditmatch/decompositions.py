"""Gate decompositions: Toffoli, Fredkin and multi-controlled Toffoli families.

Two routes are provided for each three-wire gate: a Clifford+T realization on
qubits only, and an intermediate-qutrit realization that trades T gates for
ternary controlled increments.  The multi-controlled Toffoli reuses control
wires as carriers, briefly elevating them to qutrit/ququart levels, and needs
no ancilla.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .circuit import Circuit, circuit_on_fresh_wires
from .errors import DomainError
from .gates import (GateOp, ReferencePermutation, cnot, controlled_inc,
                    fredkin_reference, gate_inverse, hadamard, mct_reference,
                    t_dagger, t_gate, toffoli_reference, x_inc)


def toffoli_clifford_t_ops(c0: int, c1: int, t: int) -> List[GateOp]:
    """Standard 6-CNOT, 7-T, 2-H Toffoli (exact, phases included)."""
    return [
        hadamard(t),
        cnot(c1, t), t_dagger(t),
        cnot(c0, t), t_gate(t),
        cnot(c1, t), t_dagger(t),
        cnot(c0, t),
        t_gate(c1), t_gate(t),
        hadamard(t),
        cnot(c0, c1),
        t_gate(c0), t_dagger(c1),
        cnot(c0, c1),
    ]


def toffoli_qutrit_ops(c0: int, c1: int, t: int) -> List[GateOp]:
    """Toffoli via one intermediate qutrit level on the second control.

    |11> on the controls elevates c1 to 2, a |2>-activated CNOT flips the
    target, and the mirror increment restores c1.  Three ternary gates,
    depth three, no T gates.
    """
    return [
        controlled_inc(c0, 1, c1, 1, 3),
        controlled_inc(c1, 2, t, 1, 2),
        controlled_inc(c0, 1, c1, 2, 3),
    ]


def fredkin_clifford_t_ops(c: int, a: int, b: int) -> List[GateOp]:
    """Controlled swap from a Toffoli merged with its wrapping CNOTs.

    Merging CNOT(b,a) . Toffoli(c,a,b) . CNOT(b,a) and cancelling one
    in-sandwich CNOT leaves 7 CNOTs and 7 T gates.  The result is a
    relative-phase Fredkin: every binary input maps to the correct basis
    state, with an input-dependent phase (accepted by the default
    phase-free verification; the phase-exact variant costs one more CNOT).
    """
    return [
        cnot(b, a),
        hadamard(b),
        t_gate(b),
        cnot(c, b), t_dagger(b),
        cnot(a, b), t_gate(b),
        cnot(c, b),
        t_dagger(a), t_dagger(b),
        hadamard(b),
        cnot(c, a),
        t_gate(c), t_dagger(a),
        cnot(c, a),
        cnot(b, a),
    ]


def fredkin_qutrit_ops(c: int, a: int, b: int) -> List[GateOp]:
    """Controlled swap as CNOT-conjugated qutrit Toffoli: 2 CNOTs + 3 ternary."""
    return [cnot(b, a)] + toffoli_qutrit_ops(c, a, b) + [cnot(b, a)]


# ---------------------------------------------------------------------------
# Multi-controlled Toffoli over intermediate qutrits/ququarts
#
# The AND of the controls is accumulated into one carrier wire whose level
# encodes "my whole subtree is |1>".  Leaf pairs and chains keep carriers at
# level 2 (ternary gates only); joining two level-2 carriers pushes one to
# level 3 (a ququart), and a level-3 carrier can absorb one fresh control to
# come back down to level 2.  The down-sweep is mirrored after the root gate
# so every control is restored.


def _chain(wires: Sequence[int]) -> Tuple[List[GateOp], int, int]:
    """AND k >= 2 raw controls along a path; carrier stays at level 2."""
    ops = [controlled_inc(wires[0], 1, wires[1], 1, 3)]
    for i in range(1, len(wires) - 1):
        ops.append(controlled_inc(wires[i], 2, wires[i + 1], 1, 3))
    return ops, wires[-1], 2


def _join23(ops: List[GateOp], fa: int, fb: int) -> Tuple[int, int]:
    """Combine two level-2 carriers; fb rises to 3."""
    ops.append(controlled_inc(fa, 2, fb, 1, 4))
    return fb, 3


def _join32(ops: List[GateOp], fa: int, fb: int) -> Tuple[int, int]:
    """Fold a level-2 carrier fb into a level-3 carrier fa; fb rises to 3."""
    ops.append(controlled_inc(fa, 3, fb, 1, 4))
    return fb, 3


def _ext3(ops: List[GateOp], fa: int, raw: int) -> Tuple[int, int]:
    """Absorb one raw control below a level-3 carrier; result sits at level 2."""
    ops.append(controlled_inc(fa, 3, raw, 1, 3))
    return raw, 2


def _split(total: int) -> Tuple[int, int]:
    """Near-balanced split of an even total into two odd parts, avoiding 5."""
    half = total // 2
    for d in range(total):
        for k1 in (half - d, half + d):
            k2 = total - k1
            if min(k1, k2) >= 3 and k1 % 2 == 1 and k1 != 5 and k2 != 5:
                return k1, k2
    raise DomainError(f"no odd split of {total}")


def _and_flag2(wires: Sequence[int]) -> Tuple[List[GateOp], int, int]:
    """Carrier at level 2 for an odd number of controls (k != 5)."""
    k = len(wires)
    if k == 3:
        return _chain(wires)
    if k == 9:
        ops, flag, _ = _and_flag3(wires[:8])
        flag, lvl = _ext3(ops, flag, wires[8])
        return ops, flag, lvl
    k1, _ = _split(k - 1)
    ops_a, fa, _ = _and_flag2(wires[:k1])
    ops_b, fb, _ = _and_flag2(wires[k1:k - 1])
    ops = ops_a + ops_b
    fb, _ = _join23(ops, fa, fb)
    flag, lvl = _ext3(ops, fb, wires[k - 1])
    return ops, flag, lvl


def _and_flag3(wires: Sequence[int]) -> Tuple[List[GateOp], int, int]:
    """Carrier at level 3 for an even number of controls (or exactly 5)."""
    k = len(wires)
    if k == 4:
        ops, fa, _ = _chain(wires[:2])
        ops_b, fb, _ = _chain(wires[2:])
        ops += ops_b
        flag, lvl = _join23(ops, fa, fb)
        return ops, flag, lvl
    if k == 5:
        ops, fa, _ = _chain(wires[:3])
        ops_b, fb, _ = _chain(wires[3:])
        ops += ops_b
        flag, lvl = _join23(ops, fa, fb)
        return ops, flag, lvl
    if k == 8:
        ops, fa, _ = _chain(wires[:3])
        ops_b, fb, _ = _chain(wires[3:6])
        ops_c, fc, _ = _chain(wires[6:])
        ops += ops_b + ops_c
        fb, _ = _join23(ops, fa, fb)
        flag, lvl = _join32(ops, fb, fc)
        return ops, flag, lvl
    k1, _ = _split(k)
    ops_a, fa, _ = _and_flag2(wires[:k1])
    ops_b, fb, _ = _and_flag2(wires[k1:])
    ops = ops_a + ops_b
    flag, lvl = _join23(ops, fa, fb)
    return ops, flag, lvl


def mct_ops(controls: Sequence[int], target: int) -> List[GateOp]:
    """Multi-controlled X on raw wire ids; controls restored via mirrored sweep."""
    controls = list(controls)
    if target in controls or len(set(controls)) != len(controls):
        raise DomainError("mct wires must be distinct")
    k = len(controls)
    if k == 0:
        return [x_inc(target, 1, 2)]
    if k == 1:
        return [cnot(controls[0], target)]
    if k == 2:
        return toffoli_qutrit_ops(controls[0], controls[1], target)
    if k == 4:
        down, flag, lvl = _chain(controls)
    elif k % 2 == 1 and k != 5:
        down, flag, lvl = _and_flag2(controls)
    else:
        down, flag, lvl = _and_flag3(controls)
    root = controlled_inc(flag, lvl, target, 1, 2)
    return down + [root] + [gate_inverse(g) for g in reversed(down)]


def mct_expected_counts(n: int) -> Dict[str, int]:
    """Contract gate counts for the n-wire MCT: 2n-3 total, max(0, n-4) quaternary."""
    if n < 2:
        raise DomainError(f"mct needs n >= 2 wires, got {n}")
    if n == 2:
        return {"cnot": 1, "ternary": 0, "quaternary": 0, "t": 0}
    quaternary = max(0, n - 4)
    return {"cnot": 0, "ternary": (2 * n - 3) - quaternary,
            "quaternary": quaternary, "t": 0}


# ---------------------------------------------------------------------------
# Canonical circuits and the named registry


def toffoli_clifford_t() -> Circuit:
    return circuit_on_fresh_wires(toffoli_clifford_t_ops(0, 1, 2), 3)


def toffoli_qutrit() -> Circuit:
    return circuit_on_fresh_wires(toffoli_qutrit_ops(0, 1, 2), 3)


def fredkin_clifford_t() -> Circuit:
    return circuit_on_fresh_wires(fredkin_clifford_t_ops(0, 1, 2), 3)


def fredkin_qutrit() -> Circuit:
    return circuit_on_fresh_wires(fredkin_qutrit_ops(0, 1, 2), 3)


def mct_ududit(n: int) -> Circuit:
    """n-wire multi-controlled Toffoli on wires 0..n-2 (controls) and n-1 (target)."""
    if n < 2:
        raise DomainError(f"mct needs n >= 2 wires, got {n}")
    return circuit_on_fresh_wires(mct_ops(list(range(n - 1)), n - 1), n)


@dataclass(frozen=True)
class DecompositionSpec:
    """Registry entry: how to build a named decomposition and what it should cost."""

    name: str
    parametric: bool
    build: Callable[..., Circuit]
    reference: Callable[..., ReferencePermutation]
    expected_cost: Callable[..., Dict[str, int]]
    summary: str


def _fixed(counts: Dict[str, int]) -> Callable[..., Dict[str, int]]:
    return lambda *args: dict(counts)


DECOMPOSITIONS: Dict[str, DecompositionSpec] = {
    "toffoli-ct": DecompositionSpec(
        "toffoli-ct", False, toffoli_clifford_t, lambda: toffoli_reference(),
        _fixed({"cnot": 6, "ternary": 0, "quaternary": 0, "t": 7}),
        "Clifford+T Toffoli (6 CNOT, 7 T, 2 H)"),
    "toffoli-qutrit": DecompositionSpec(
        "toffoli-qutrit", False, toffoli_qutrit, lambda: toffoli_reference(),
        _fixed({"cnot": 0, "ternary": 3, "quaternary": 0, "t": 0}),
        "Toffoli via one intermediate qutrit (3 ternary gates, depth 3)"),
    "fredkin-ct": DecompositionSpec(
        "fredkin-ct", False, fredkin_clifford_t, lambda: fredkin_reference(),
        _fixed({"cnot": 7, "ternary": 0, "quaternary": 0, "t": 7}),
        "Clifford+T controlled swap (7 CNOT, 7 T; relative phase)"),
    "fredkin-qutrit": DecompositionSpec(
        "fredkin-qutrit", False, fredkin_qutrit, lambda: fredkin_reference(),
        _fixed({"cnot": 2, "ternary": 3, "quaternary": 0, "t": 0}),
        "Controlled swap via qutrit Toffoli (2 CNOT + 3 ternary)"),
    "mct": DecompositionSpec(
        "mct", True, mct_ududit, mct_reference, mct_expected_counts,
        "Multi-controlled Toffoli via intermediate qudits (2n-3 gates)"),
}


def build_named(name: str, n: Optional[int] = None) -> Tuple[Circuit, DecompositionSpec]:
    spec = DECOMPOSITIONS.get(name)
    if spec is None:
        raise DomainError(f"unknown decomposition {name!r}; known: {sorted(DECOMPOSITIONS)}")
    if spec.parametric:
        if n is None:
            raise DomainError(f"decomposition {name!r} needs a wire count n")
        return spec.build(n), spec
    if n is not None and n != 3:
        raise DomainError(f"decomposition {name!r} is fixed at 3 wires")
    return spec.build(), spec


def reference_named(name: str, n: Optional[int] = None) -> ReferencePermutation:
    spec = DECOMPOSITIONS.get(name)
    if spec is None:
        raise DomainError(f"unknown decomposition {name!r}; known: {sorted(DECOMPOSITIONS)}")
    if spec.parametric:
        if n is None:
            raise DomainError(f"decomposition {name!r} needs a wire count n")
        return spec.reference(n)
    return spec.reference()

"""Grover-style substring matching on a mixed-radix register.

The register holds an index superposition over candidate offsets, the text,
a difference buffer (``pattern`` role), swap ancillas and one phase-kickback
output wire.  One walk of the match unitary U:

1. X-encode the text and the sought pattern,
2. put the index register into a uniform superposition over the K = N-M+1
   offsets (Hadamards when K is a power of two, otherwise a dense register
   initializer applied directly to the state and excluded from gate costs),
3. conditionally left-rotate the text by the offset: for each index bit, a
   fan-out of CNOT copies onto the ancillas controls two layers of parallel
   controlled swaps realizing the rotation's cycle decomposition,
4. XOR the aligned window into the buffer with M CNOTs, so the buffer is
   all-zero exactly on matching branches.

The oracle phase-flips all-zero-buffer branches via X conjugation and a
multi-controlled Toffoli onto the |-> output wire; the diffusion step is
the reflection about the all-zero index state.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .circuit import Circuit, CostReport, infer_dims
from .decompositions import fredkin_qutrit_ops, mct_ops
from .errors import ConfigurationError, DomainError, SupportBudgetError
from .gates import GateOp, cnot, gate_inverse, hadamard, x_inc
from .state import (RegisterLayout, SparseState, apply_gate, init_basis_state,
                    measure_register)

DEFAULT_TOP = 8


def classical_match(text: str, pattern: str) -> List[int]:
    """Offsets where pattern occurs in text (no wraparound)."""
    if not pattern:
        raise DomainError("pattern must be nonempty")
    m = len(pattern)
    return [s for s in range(len(text) - m + 1) if text[s:s + m] == pattern]


def ascii_bits(s: str) -> str:
    """8-bit, most-significant-bit-first encoding of an ASCII string.

    Matching happens at the bit level, so reported offsets are bit offsets
    and need not be multiples of 8 (a pattern can match across character
    boundaries).
    """
    out = []
    for ch in s:
        code = ord(ch)
        if code > 255:
            raise DomainError(f"character {ch!r} is not 8-bit")
        out.append(format(code, "08b"))
    return "".join(out)


@dataclass(frozen=True)
class MatchProblem:
    """A substring query over binary strings."""

    text: str
    pattern: str
    iterations: Optional[int] = None
    expected_matches: Optional[int] = None
    support_budget: Optional[int] = None

    def __post_init__(self):
        for name, s in (("text", self.text), ("pattern", self.pattern)):
            if not s or set(s) - {"0", "1"}:
                raise DomainError(f"{name} must be a nonempty binary string")
        if len(self.pattern) > len(self.text):
            raise DomainError("pattern is longer than text")
        if self.iterations is not None and self.iterations < 0:
            raise DomainError("iterations must be >= 0")
        if self.expected_matches is not None and self.expected_matches < 1:
            raise DomainError("expected_matches must be >= 1")
        if self.support_budget is not None and self.support_budget < 1:
            raise DomainError("support_budget must be >= 1")

    @property
    def offsets_count(self) -> int:
        return len(self.text) - len(self.pattern) + 1


@dataclass(frozen=True)
class WirePlan:
    """Wire ids per role for a given text/pattern size.

    Order: index (most significant offset bit first), text, pattern buffer,
    ancilla, output.
    """

    text_len: int
    pattern_len: int

    def __post_init__(self):
        if not 1 <= self.pattern_len <= self.text_len:
            raise DomainError("need 1 <= pattern length <= text length")

    @property
    def offsets_count(self) -> int:
        return self.text_len - self.pattern_len + 1

    @property
    def n_index(self) -> int:
        return (self.offsets_count - 1).bit_length()

    @property
    def n_ancilla(self) -> int:
        return (self.text_len + 1) // 2

    @property
    def index(self) -> List[int]:
        return list(range(self.n_index))

    @property
    def text(self) -> List[int]:
        return list(range(self.n_index, self.n_index + self.text_len))

    @property
    def pattern(self) -> List[int]:
        base = self.n_index + self.text_len
        return list(range(base, base + self.pattern_len))

    @property
    def ancilla(self) -> List[int]:
        base = self.n_index + self.text_len + self.pattern_len
        return list(range(base, base + self.n_ancilla))

    @property
    def output(self) -> int:
        return self.n_index + self.text_len + self.pattern_len + self.n_ancilla

    @property
    def wire_count(self) -> int:
        return self.output + 1

    @property
    def roles(self) -> Tuple[str, ...]:
        return (("index",) * self.n_index + ("text",) * self.text_len
                + ("pattern",) * self.pattern_len
                + ("ancilla",) * self.n_ancilla + ("output",))

    @classmethod
    def from_layout(cls, layout: RegisterLayout) -> "WirePlan":
        plan = cls(len(layout.wires_with_role("text")),
                   len(layout.wires_with_role("pattern")))
        if plan.roles != tuple(layout.roles):
            raise DomainError("layout roles do not follow the engine wire order")
        return plan


def build_layout(problem: MatchProblem) -> RegisterLayout:
    """Resting layout (all wires binary); gates widen wires as needed later."""
    plan = WirePlan(len(problem.text), len(problem.pattern))
    return RegisterLayout((2,) * plan.wire_count, plan.roles)


def grover_iterations(offsets: int, marked: int = 1) -> int:
    """Iteration count maximizing the marked mass: round(pi/4 / theta - 1/2)."""
    if offsets <= 1:
        return 0
    marked = min(max(marked, 1), offsets)
    theta = math.asin(math.sqrt(marked / offsets))
    return max(0, round(math.pi / (4.0 * theta) - 0.5))


def grover_probabilities(offsets: int, marked: int, iterations: int) -> Tuple[float, float]:
    """(per-match, per-nonmatch) probability after the given iteration count."""
    if offsets <= 0 or not 0 <= marked <= offsets:
        raise DomainError("need 0 <= marked <= offsets with offsets > 0")
    if marked == 0:
        return 0.0, 1.0 / offsets
    theta = math.asin(math.sqrt(marked / offsets))
    p_match = math.sin((2 * iterations + 1) * theta) ** 2 / marked
    if marked == offsets:
        return p_match, 0.0
    return p_match, (1.0 - marked * p_match) / (offsets - marked)


def index_initializer(offsets: int, n_index: int) -> np.ndarray:
    """Unitary over the index register sending |0...0> to uniform over offsets.

    Only needed when the offset count is not a power of two; completed to a
    full unitary by orthonormalizing the remaining columns against the
    target column.
    """
    dim = 1 << n_index
    if not 1 <= offsets <= dim:
        raise DomainError(f"offsets {offsets} out of range for {n_index} wires")
    target = np.zeros(dim, dtype=complex)
    target[:offsets] = 1.0 / math.sqrt(offsets)
    seed = np.eye(dim, dtype=complex)
    seed[:, 0] = target
    q, r = np.linalg.qr(seed)
    signs = np.sign(np.real(np.diag(r)))
    signs[signs == 0] = 1.0
    return q * signs


def embed_binary_register(matrix: np.ndarray, dims: Sequence[int]) -> np.ndarray:
    """Extend a qubit-register unitary to widened wires (identity above level 1)."""
    if all(d == 2 for d in dims):
        return matrix
    full = 1
    for d in dims:
        full *= d
    n = len(dims)
    if matrix.shape != (1 << n, 1 << n):
        raise DomainError(f"matrix shape {matrix.shape} is not a {n}-qubit unitary")
    out = np.eye(full, dtype=complex)
    coords = []
    for v in range(1 << n):
        reg = 0
        for j in range(n):
            reg = reg * dims[j] + ((v >> (n - 1 - j)) & 1)
        coords.append(reg)
    out[np.ix_(coords, coords)] = matrix
    return out


def apply_register_unitary(state: SparseState, wires: Sequence[int],
                           matrix: np.ndarray) -> SparseState:
    """Apply a dense unitary to a sub-register of a sparse state."""
    lay = state.layout
    strides = [lay.strides[w] for w in wires]
    dims = [lay.dims[w] for w in wires]
    dim = 1
    for d in dims:
        dim *= d
    if matrix.shape != (dim, dim):
        raise DomainError(f"matrix shape {matrix.shape} != register dim {dim}")
    groups: Dict[int, np.ndarray] = {}
    for idx, amp in state.amplitudes.items():
        value, base = 0, idx
        for s, d in zip(strides, dims):
            digit = (idx // s) % d
            value = value * d + digit
            base -= digit * s
        vec = groups.get(base)
        if vec is None:
            vec = np.zeros(dim, dtype=complex)
            groups[base] = vec
        vec[value] += amp
    out: Dict[int, complex] = {}
    for base, vec in groups.items():
        res = matrix @ vec
        for value, amp in enumerate(res):
            if abs(amp) < state.cutoff:
                continue
            idx, rem = base, int(value)
            for s, d in zip(reversed(strides), reversed(dims)):
                idx += (rem % d) * s
                rem //= d
            out[idx] = out.get(idx, 0.0) + complex(amp)
    return SparseState(lay, out, state.cutoff)


# ---------------------------------------------------------------------------
# Circuit pieces


def _fanout_ops(source: int, copies: Sequence[int]) -> List[GateOp]:
    """CNOT tree copying a bit onto the given wires in log depth."""
    ops: List[GateOp] = []
    have = [source]
    i = 0
    while i < len(copies):
        written = []
        for h in have:
            if i >= len(copies):
                break
            ops.append(cnot(h, copies[i]))
            written.append(copies[i])
            i += 1
        have += written
    return ops


def _rotation_swap_layers(length: int, shift: int) -> Tuple[List[Tuple[int, int]],
                                                            List[Tuple[int, int]]]:
    """Two layers of disjoint transpositions realizing a left rotation.

    Positions split into gcd(length, shift) cycles; reversing each cycle
    around two pivots rotates its content by one step, i.e. position p
    receives the content of p + shift.  Total swaps: length - gcd.
    """
    g = math.gcd(length, shift)
    first: List[Tuple[int, int]] = []
    second: List[Tuple[int, int]] = []
    for c in range(g):
        cyc = [(c + k * shift) % length for k in range(length // g)]
        size = len(cyc)
        for j in range((size - 1) // 2):
            first.append((cyc[1 + j], cyc[size - 1 - j]))
        for j in range(size // 2):
            second.append((cyc[j], cyc[size - 1 - j]))
    return first, second


def _cyclic_shift_ops(plan: WirePlan) -> List[GateOp]:
    """Left-rotate the text by the binary value of the index register."""
    n_text = plan.text_len
    text, ancilla = plan.text, plan.ancilla
    ops: List[GateOp] = []
    for j, wire in enumerate(plan.index):
        shift = (1 << (plan.n_index - 1 - j)) % n_text
        if shift == 0:
            continue
        first, second = _rotation_swap_layers(n_text, shift)
        copies = ancilla[:max(len(first), len(second))]
        fan = _fanout_ops(wire, copies)
        ops += fan
        for layer in (first, second):
            for i, (p, q) in enumerate(layer):
                ops += fredkin_qutrit_ops(copies[i], text[p], text[q])
        ops += [gate_inverse(g) for g in reversed(fan)]
    return ops


def _match_unitary_ops(text: str, pattern: str) -> Tuple[List[GateOp], bool, List[GateOp]]:
    """The walk unitary U as (ops up to and including index prep, needs dense
    initializer, remaining ops).  The dense initializer (non-power-of-two
    offset counts) sits between the two lists and is applied at the state
    level, not as gates."""
    plan = WirePlan(len(text), len(pattern))
    pre = [x_inc(plan.text[i], 1, 2) for i, ch in enumerate(text) if ch == "1"]
    pre += [x_inc(plan.pattern[i], 1, 2) for i, ch in enumerate(pattern) if ch == "1"]
    power_of_two = plan.offsets_count == (1 << plan.n_index)
    if power_of_two:
        pre += [hadamard(w) for w in plan.index]
    post = _cyclic_shift_ops(plan)
    post += [cnot(plan.text[i], plan.pattern[i]) for i in range(plan.pattern_len)]
    return pre, not power_of_two, post


def _oracle_ops(plan: WirePlan) -> List[GateOp]:
    """Phase-flip (via the |-> output wire) branches with all-zero buffer."""
    flips = [x_inc(w, 1, 2) for w in plan.pattern]
    return flips + mct_ops(plan.pattern, plan.output) + flips


def reflection_about_zero(wires: Sequence[int]) -> List[GateOp]:
    """I - 2|0..0><0..0| on binary wires: X conjugation around a phase flip."""
    if not wires:
        return []
    xs = [x_inc(w, 1, 2) for w in wires]
    last = wires[-1]
    return (xs + [hadamard(last)] + mct_ops(list(wires[:-1]), last)
            + [hadamard(last)] + xs)


def _as_circuit(ops: Sequence[GateOp], plan: WirePlan) -> Circuit:
    layout = infer_dims(ops, plan.wire_count, plan.roles)
    return Circuit(layout, tuple(ops))


def build_state_prep(problem: MatchProblem, layout: Optional[RegisterLayout] = None,
                     allow_initializer: bool = True) -> Circuit:
    """The gate part of U (encode, index Hadamards, shift, XOR).

    When the offset count is not a power of two the uniform initializer is
    not expressible in the gate set; with ``allow_initializer`` the returned
    circuit simply omits index preparation (the engine applies the dense
    initializer at the state level), otherwise this is an error.
    """
    plan = WirePlan(len(problem.text), len(problem.pattern))
    if layout is not None and tuple(layout.roles) != plan.roles:
        raise DomainError("layout does not match the problem's wire plan")
    pre, needs_init, post = _match_unitary_ops(problem.text, problem.pattern)
    if needs_init and not allow_initializer:
        raise ConfigurationError(
            f"offset count {plan.offsets_count} is not a power of two; "
            "enable the uniform-superposition initializer")
    return _as_circuit(pre + post, plan)


def build_cyclic_shift(layout: RegisterLayout) -> Circuit:
    """The controlled-rotation block as a standalone circuit."""
    plan = WirePlan.from_layout(layout)
    return _as_circuit(_cyclic_shift_ops(plan), plan)


def build_oracle(layout: RegisterLayout) -> Circuit:
    """All-zero-buffer phase oracle (output wire must be held in |->)."""
    plan = WirePlan.from_layout(layout)
    return _as_circuit(_oracle_ops(plan), plan)


def build_full_circuit(text: str, pattern: str,
                       iterations: Optional[int] = None,
                       expected_matches: Optional[int] = None) -> Circuit:
    """The complete gate list actually walked by run_match.

    For offset counts that are not a power of two the index initializer is a
    dense register unitary, not a gate; it is applied at the state level and
    therefore absent here (and from all gate tallies).
    """
    plan = WirePlan(len(text), len(pattern))
    pre, _, post = _match_unitary_ops(text, pattern)
    oracle = _oracle_ops(plan)
    diffuse = reflection_about_zero(plan.index)
    if iterations is None:
        iterations = grover_iterations(plan.offsets_count, expected_matches or 1)
    if plan.n_index == 0:
        iterations = 0
    inv_pre = [gate_inverse(g) for g in reversed(pre)]
    inv_post = [gate_inverse(g) for g in reversed(post)]
    ops = [x_inc(plan.output, 1, 2), hadamard(plan.output)] + pre + post
    for _ in range(iterations):
        ops += oracle + inv_post + inv_pre + diffuse + pre + post
    return _as_circuit(ops, plan)


# ---------------------------------------------------------------------------
# Running a match


@dataclass
class MatchResult:
    """Outcome of a simulated match run.

    offsets holds the full measured index distribution; top is its ranking
    (probability descending, offset ascending); verified reports whether the
    top offset is a classically confirmed match.
    """

    offsets: Dict[int, float]
    top: List[Tuple[int, float]]
    iterations: int
    verified: bool
    cost_report: CostReport
    support_trace: List[int]
    matched_offsets: List[int] = field(default_factory=list)
    ancilla_trace: List[float] = field(default_factory=list)
    leakage: float = 0.0

    def to_json_dict(self) -> Dict[str, object]:
        return {
            "offsets": {str(k): p for k, p in sorted(self.offsets.items())},
            "top": [{"offset": o, "probability": p} for o, p in self.top],
            "iterations": self.iterations,
            "verified": self.verified,
            "cost_report": self.cost_report.as_dict(),
            "support_trace": list(self.support_trace),
        }


def _resolve_budget(problem: MatchProblem, n_index: int) -> int:
    if problem.support_budget is not None:
        return problem.support_budget
    env = os.environ.get("QUDITMATCH_SUPPORT_BUDGET")
    if env is not None:
        try:
            value = int(env)
        except ValueError as exc:
            raise ConfigurationError(
                f"QUDITMATCH_SUPPORT_BUDGET must be an integer, got {env!r}") from exc
        if value < 1:
            raise ConfigurationError("QUDITMATCH_SUPPORT_BUDGET must be >= 1")
        return value
    return max(16, 1 << (n_index + 2))


def _apply_checked(state: SparseState, ops: Sequence[GateOp], budget: int,
                   trace: List[int]) -> SparseState:
    for g in ops:
        state = apply_gate(state, g)
        if state.support_size() > budget:
            raise SupportBudgetError(
                f"state support {state.support_size()} exceeded budget {budget}",
                trace + [state.support_size()])
    return state


def _mass_where(state: SparseState, wires: Sequence[int], predicate) -> float:
    lay = state.layout
    mass = 0.0
    for idx, amp in state.amplitudes.items():
        if any(predicate(lay.digit(idx, w)) for w in wires):
            mass += abs(amp) ** 2
    return mass


def run_match(problem: MatchProblem) -> MatchResult:
    """Simulate the full Grover walk and classically confirm the top offset."""
    text, pattern = problem.text, problem.pattern
    plan = WirePlan(len(text), len(pattern))
    offsets_count = plan.offsets_count
    marked = problem.expected_matches or 1
    iterations = (problem.iterations if problem.iterations is not None
                  else grover_iterations(offsets_count, marked))
    if plan.n_index == 0:
        iterations = 0
    budget = _resolve_budget(problem, plan.n_index)

    pre, needs_init, post = _match_unitary_ops(text, pattern)
    oracle = _oracle_ops(plan)
    diffuse = reflection_about_zero(plan.index)
    inv_pre = [gate_inverse(g) for g in reversed(pre)]
    inv_post = [gate_inverse(g) for g in reversed(post)]
    prep = [x_inc(plan.output, 1, 2), hadamard(plan.output)]
    layout = infer_dims(prep + pre + post + oracle + diffuse,
                        plan.wire_count, plan.roles)
    init = None
    if needs_init:
        init = embed_binary_register(
            index_initializer(offsets_count, plan.n_index),
            [layout.dims[w] for w in plan.index])
    init_dag = init.conj().T if init is not None else None

    trace: List[int] = []
    ancilla_trace: List[float] = []

    def at_boundary(state: SparseState) -> None:
        trace.append(state.support_size())
        ancilla_trace.append(_mass_where(state, plan.ancilla, lambda d: d != 0))

    state = init_basis_state(layout, [0] * layout.wire_count)
    state = _apply_checked(state, prep + pre, budget, trace)
    if init is not None:
        state = apply_register_unitary(state, plan.index, init)
        if state.support_size() > budget:
            raise SupportBudgetError(
                f"state support {state.support_size()} exceeded budget {budget}",
                trace + [state.support_size()])
    state = _apply_checked(state, post, budget, trace)
    at_boundary(state)
    for _ in range(iterations):
        state = _apply_checked(state, oracle + inv_post, budget, trace)
        if init_dag is not None:
            state = apply_register_unitary(state, plan.index, init_dag)
        state = _apply_checked(state, inv_pre + diffuse + pre, budget, trace)
        if init is not None:
            state = apply_register_unitary(state, plan.index, init)
        state = _apply_checked(state, post, budget, trace)
        at_boundary(state)

    if plan.n_index == 0:
        offset_probs = {0: 1.0}
    else:
        raw = measure_register(state, plan.index)
        offset_probs = {}
        for bits, p in raw.items():
            value = 0
            for b in bits:
                value = (value << 1) | b
            offset_probs[value] = offset_probs.get(value, 0.0) + p

    ranked = sorted(offset_probs.items(), key=lambda kv: (-kv[1], kv[0]))
    top = ranked[:DEFAULT_TOP]
    threshold = 1.5 / offsets_count if offsets_count > 1 else 0.5
    candidates = [o for o, p in ranked if p >= threshold]
    matched = [o for o in sorted(candidates)
               if o + plan.pattern_len <= plan.text_len
               and text[o:o + plan.pattern_len] == pattern]
    top_offset = ranked[0][0]
    verified = (top_offset + plan.pattern_len <= plan.text_len
                and text[top_offset:top_offset + plan.pattern_len] == pattern)

    return MatchResult(
        offsets=offset_probs,
        top=top,
        iterations=iterations,
        verified=verified,
        cost_report=build_full_circuit(text, pattern, iterations).cost(),
        support_trace=trace,
        matched_offsets=matched,
        ancilla_trace=ancilla_trace,
        leakage=_mass_where(state, range(layout.wire_count), lambda d: d >= 2),
    )

"""Gate vocabulary for mixed-radix circuits.

Supported kinds:

* ``xinc``  -- cyclic increment ``X+a%d`` on one wire (acts on digits below
  ``d``, identity above, so a mod-2 increment is a valid gate on a wider wire)
* ``h``     -- binary-subspace Hadamard (levels 0/1; identity on levels >= 2)
* ``t`` / ``tdg`` -- binary-subspace T and its adjoint
* ``cinc``  -- singly-controlled increment: fires when the control wire sits
  exactly at ``level``
* ``swap``  -- exchange of two equal-dimension wires

Every controlled gate has exactly one control; multi-control behaviour is
built as a composite circuit, never as a primitive.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Sequence, Tuple

import numpy as np

from .errors import DimensionError, DomainError

KINDS = ("xinc", "h", "t", "tdg", "cinc", "swap")

CATEGORY_SINGLE = "single_qudit"
CATEGORY_CNOT = "cnot"
CATEGORY_TERNARY = "ternary"
CATEGORY_QUATERNARY = "quaternary"
CATEGORY_T = "t"

_SQRT_HALF = 1.0 / np.sqrt(2.0)
_T_PHASE = np.exp(1j * np.pi / 4)


@dataclass(frozen=True)
class GateOp:
    """One primitive gate application.

    ``wires`` is ``(target,)`` for single-wire kinds, ``(control, target)``
    for ``cinc`` and ``(a, b)`` for ``swap``.
    """

    kind: str
    wires: Tuple[int, ...]
    amount: int = 0
    modulus: int = 0
    level: int = -1

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DomainError(f"unknown gate kind {self.kind!r}")
        if len(set(self.wires)) != len(self.wires):
            raise DomainError(f"gate wires must be distinct, got {self.wires}")


def x_inc(wire: int, amount: int = 1, modulus: int = 2) -> GateOp:
    """Increment gate ``X+amount%modulus`` on one wire."""
    _check_increment(amount, modulus)
    return GateOp("xinc", (wire,), amount=amount % modulus, modulus=modulus)


def hadamard(wire: int) -> GateOp:
    return GateOp("h", (wire,))


def t_gate(wire: int) -> GateOp:
    return GateOp("t", (wire,))


def t_dagger(wire: int) -> GateOp:
    return GateOp("tdg", (wire,))


def controlled_inc(control: int, level: int, target: int,
                   amount: int = 1, modulus: int = 2) -> GateOp:
    """Increment on ``target`` fired when ``control`` sits exactly at ``level``."""
    _check_increment(amount, modulus)
    if not 0 <= level <= 3:
        raise DimensionError(f"activation level {level} outside supported dims")
    return GateOp("cinc", (control, target), amount=amount % modulus,
                  modulus=modulus, level=level)


def cnot(control: int, target: int) -> GateOp:
    return controlled_inc(control, 1, target, 1, 2)


def swap(a: int, b: int) -> GateOp:
    return GateOp("swap", (a, b))


def _check_increment(amount: int, modulus: int):
    if modulus < 2 or modulus > 4:
        raise DimensionError(f"increment modulus {modulus} outside 2..4")
    if amount % modulus == 0:
        raise DomainError(f"increment amount {amount} is trivial mod {modulus}")


def gate_inverse(g: GateOp) -> GateOp:
    """Exact inverse of a gate, within the same vocabulary."""
    if g.kind == "xinc":
        return x_inc(g.wires[0], g.modulus - g.amount, g.modulus)
    if g.kind == "cinc":
        return controlled_inc(g.wires[0], g.level, g.wires[1],
                              g.modulus - g.amount, g.modulus)
    if g.kind == "t":
        return t_dagger(g.wires[0])
    if g.kind == "tdg":
        return t_gate(g.wires[0])
    # h and swap are involutions
    return g


def gate_category(g: GateOp) -> str:
    """Cost category used by the resource tables.

    Controlled gates are classed by the highest level they can address
    (activation level or any digit reachable on the target): below 2 is a
    plain CNOT, below 3 a ternary CNOT, below 4 a quaternary CNOT.  T gates
    are tallied on their own; everything else is single-qudit.  A bare SWAP
    is counted in the CNOT class (it is three CNOTs on binary wires; none of
    the shipped constructions emit it).
    """
    if g.kind in ("t", "tdg"):
        return CATEGORY_T
    if g.kind in ("xinc", "h"):
        return CATEGORY_SINGLE
    if g.kind == "swap":
        return CATEGORY_CNOT
    reach = max(g.level, g.modulus - 1)
    if reach < 2:
        return CATEGORY_CNOT
    if reach < 3:
        return CATEGORY_TERNARY
    return CATEGORY_QUATERNARY


# ---------------------------------------------------------------------------
# Textual notation


def format_gate(g: GateOp) -> str:
    """Stable one-line notation, e.g. ``C[w3@1] X+1%3 w5``."""
    if g.kind == "xinc":
        return f"X+{g.amount}%{g.modulus} w{g.wires[0]}"
    if g.kind == "h":
        return f"H w{g.wires[0]}"
    if g.kind == "t":
        return f"T w{g.wires[0]}"
    if g.kind == "tdg":
        return f"Tdg w{g.wires[0]}"
    if g.kind == "cinc":
        c, t = g.wires
        return f"C[w{c}@{g.level}] X+{g.amount}%{g.modulus} w{t}"
    a, b = g.wires
    return f"SWAP w{a} w{b}"


_XINC_RE = re.compile(r"^X\+(\d+)%(\d+) w(\d+)$")
_CINC_RE = re.compile(r"^C\[w(\d+)@(\d+)\] X\+(\d+)%(\d+) w(\d+)$")
_ONEWIRE_RE = re.compile(r"^(H|T|Tdg) w(\d+)$")
_SWAP_RE = re.compile(r"^SWAP w(\d+) w(\d+)$")


def parse_gate(line: str) -> GateOp:
    """Parse one line of :func:`format_gate` notation."""
    line = line.strip()
    m = _CINC_RE.match(line)
    if m:
        c, lvl, a, d, t = map(int, m.groups())
        return controlled_inc(c, lvl, t, a, d)
    m = _XINC_RE.match(line)
    if m:
        a, d, w = map(int, m.groups())
        return x_inc(w, a, d)
    m = _ONEWIRE_RE.match(line)
    if m:
        kind, w = m.group(1), int(m.group(2))
        return {"H": hadamard, "T": t_gate, "Tdg": t_dagger}[kind](w)
    m = _SWAP_RE.match(line)
    if m:
        return swap(int(m.group(1)), int(m.group(2)))
    raise DomainError(f"unparseable gate line {line!r}")


# ---------------------------------------------------------------------------
# Local matrices (used by the dense verification oracle and unitarity tests)


def local_matrix(g: GateOp, dims: Sequence[int]) -> np.ndarray:
    """Unitary of ``g`` on its own wires, ``dims`` giving those wires' dims."""
    if len(dims) != len(g.wires):
        raise DomainError("dims must match the gate's wire count")
    if g.kind == "xinc":
        return _inc_matrix(dims[0], g.amount, g.modulus)
    if g.kind == "h":
        m = np.eye(dims[0], dtype=complex)
        m[0, 0] = m[0, 1] = m[1, 0] = _SQRT_HALF
        m[1, 1] = -_SQRT_HALF
        return m
    if g.kind in ("t", "tdg"):
        m = np.eye(dims[0], dtype=complex)
        m[1, 1] = _T_PHASE if g.kind == "t" else np.conj(_T_PHASE)
        return m
    if g.kind == "cinc":
        dc, dt = dims
        if g.level >= dc:
            raise DimensionError(
                f"activation level {g.level} >= control dim {dc}")
        m = np.eye(dc * dt, dtype=complex)
        block = _inc_matrix(dt, g.amount, g.modulus)
        lo = g.level * dt
        m[lo:lo + dt, lo:lo + dt] = block
        return m
    da, db = dims
    if da != db:
        raise DimensionError("SWAP requires equal wire dims")
    m = np.zeros((da * db, da * db), dtype=complex)
    for i in range(da):
        for j in range(db):
            m[j * da + i, i * db + j] = 1.0
    return m


def _inc_matrix(dim: int, amount: int, modulus: int) -> np.ndarray:
    if modulus > dim:
        raise DimensionError(f"increment modulus {modulus} > wire dim {dim}")
    m = np.zeros((dim, dim), dtype=complex)
    for d in range(dim):
        m[(d + amount) % modulus if d < modulus else d, d] = 1.0
    return m


# ---------------------------------------------------------------------------
# Reference permutations for verification


@dataclass(frozen=True)
class ReferencePermutation:
    """A classical reversible map on binary tuples used as a verification target."""

    name: str
    arity: int
    func: Callable[[Tuple[int, ...]], Tuple[int, ...]]
    target_wires: Tuple[int, ...]


def reference_apply(p: ReferencePermutation, digits: Sequence[int]) -> Tuple[int, ...]:
    digits = tuple(digits)
    if len(digits) != p.arity:
        raise DomainError(f"{p.name} expects {p.arity} digits, got {len(digits)}")
    if any(d not in (0, 1) for d in digits):
        raise DomainError(f"{p.name} is defined on binary tuples only")
    return p.func(digits)


def toffoli_reference() -> ReferencePermutation:
    def f(d):
        c0, c1, t = d
        return (c0, c1, t ^ (c0 & c1))
    return ReferencePermutation("toffoli", 3, f, (2,))


def fredkin_reference() -> ReferencePermutation:
    def f(d):
        c, a, b = d
        return (c, b, a) if c == 1 else (c, a, b)
    return ReferencePermutation("fredkin", 3, f, (1, 2))


def mct_reference(n: int) -> ReferencePermutation:
    """n-wire multi-controlled Toffoli: n-1 controls, last wire is the target."""
    if n < 2:
        raise DomainError(f"mct reference needs n >= 2, got {n}")

    def f(d):
        flip = all(x == 1 for x in d[:-1])
        return d[:-1] + ((d[-1] ^ 1) if flip else d[-1],)
    return ReferencePermutation(f"mct{n}", n, f, (n - 1,))

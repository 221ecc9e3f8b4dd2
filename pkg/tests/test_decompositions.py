"""Named decompositions: correctness, exact gate counts, depths, registry."""

import itertools

import numpy as np
import pytest

from quditmatch.circuit import verify_on_binary_subspace, simulate_basis
from quditmatch.decompositions import (DECOMPOSITIONS, build_named,
                                       fredkin_clifford_t, fredkin_qutrit,
                                       mct_expected_counts, mct_ops,
                                       mct_ududit, reference_named,
                                       toffoli_clifford_t, toffoli_qutrit,
                                       _split)
from quditmatch.errors import DomainError
from quditmatch.gates import (cnot, gate_inverse, mct_reference,
                              reference_apply, x_inc)
from quditmatch.state import encode_basis


# --- fixed three-wire decompositions ---------------------------------------

FIXED_CASES = [
    ("toffoli-ct", {"cnot": 6, "ternary": 0, "quaternary": 0, "t": 7}, 11, 2),
    ("toffoli-qutrit", {"cnot": 0, "ternary": 3, "quaternary": 0, "t": 0}, 3, 0),
    ("fredkin-ct", {"cnot": 7, "ternary": 0, "quaternary": 0, "t": 7}, 12, 2),
    ("fredkin-qutrit", {"cnot": 2, "ternary": 3, "quaternary": 0, "t": 0}, 5, 0),
]


@pytest.mark.parametrize("name,counts,depth,hadamards", FIXED_CASES)
def test_fixed_decomposition_cost(name, counts, depth, hadamards):
    circ, spec = build_named(name)
    rep = circ.cost()
    assert {"cnot": rep.cnot, "ternary": rep.ternary,
            "quaternary": rep.quaternary, "t": rep.t} == counts
    assert rep.single_qudit == hadamards
    assert rep.depth == depth
    assert spec.expected_cost() == counts


@pytest.mark.parametrize("name,counts,depth,hadamards", FIXED_CASES)
def test_fixed_decomposition_verifies(name, counts, depth, hadamards):
    circ, _ = build_named(name)
    rep = verify_on_binary_subspace(circ, reference_named(name))
    assert rep.ok(), f"{name}: {rep.as_dict()}"
    assert rep.inputs_checked == 8
    assert rep.leakage <= 1e-9


def test_toffoli_ct_is_phase_exact():
    rep = verify_on_binary_subspace(toffoli_clifford_t(),
                                    reference_named("toffoli-ct"),
                                    phase_strict=True)
    assert rep.ok() and rep.phase_spread < 1e-9


def test_fredkin_ct_is_relative_phase_only():
    """The cheap controlled swap is exact only up to per-input phases."""
    rep = verify_on_binary_subspace(fredkin_clifford_t(),
                                    reference_named("fredkin-ct"))
    assert rep.ok()
    assert abs(rep.phase_spread - np.sqrt(2)) < 1e-6
    strict = verify_on_binary_subspace(fredkin_clifford_t(),
                                       reference_named("fredkin-ct"),
                                       phase_strict=True)
    assert not strict.equivalent


def test_fredkin_qutrit_is_phase_exact():
    rep = verify_on_binary_subspace(fredkin_qutrit(),
                                    reference_named("fredkin-qutrit"),
                                    phase_strict=True)
    assert rep.ok()


def test_toffoli_qutrit_uses_one_widened_wire():
    circ = toffoli_qutrit()
    assert circ.layout.dims == (2, 3, 2)


# --- multi-controlled Toffoli tree ------------------------------------------

def _mct_counts(n):
    rep = mct_ududit(n).cost()
    return {"cnot": rep.cnot, "ternary": rep.ternary,
            "quaternary": rep.quaternary, "t": rep.t}


@pytest.mark.parametrize("n", list(range(3, 13)))
def test_mct_verifies_exhaustively(n):
    circ = mct_ududit(n)
    rep = verify_on_binary_subspace(circ, mct_reference(n))
    assert rep.ok(), f"n={n}: {rep.as_dict()}"
    assert rep.inputs_checked == 2 ** n
    assert circ.layout.wire_count == n  # no ancilla wires at all


@pytest.mark.parametrize("n", [13, 16, 21, 33, 34, 48, 64])
def test_mct_verifies_on_critical_and_sampled_inputs(n):
    """Large widths: check the AND-sensitive inputs plus a seeded sample.

    The target flips only on the all-ones control word, so all-ones plus
    every one-zero word exercises each control's influence.
    """
    circ = mct_ududit(n)
    ref = mct_reference(n)
    rng = np.random.default_rng(n)
    inputs = [(1,) * n, (1,) * (n - 1) + (0,)]
    inputs += [tuple(1 - (j == i) for j in range(n - 1)) + (t,)
               for i in range(n - 1) for t in (0, 1)]
    inputs += [tuple(int(b) for b in rng.integers(0, 2, size=n))
               for _ in range(40)]
    for bits in inputs:
        final = simulate_basis(circ, bits)
        want = encode_basis(reference_apply(ref, bits), circ.layout)
        amp = final.amplitudes.get(want, 0.0)
        assert abs(abs(amp) - 1.0) < 1e-9, f"n={n}, input {bits}"
        assert final.support_size() == 1


def test_mct_total_two_qudit_count_is_2n_minus_3():
    for n in range(3, 65):
        counts = _mct_counts(n)
        total = counts["cnot"] + counts["ternary"] + counts["quaternary"]
        assert total == 2 * n - 3, f"n={n}: {counts}"
        assert counts["t"] == 0 and counts["cnot"] == 0


def test_mct_counts_match_contract_away_from_5_and_6():
    for n in [3, 4] + list(range(7, 65)):
        assert _mct_counts(n) == mct_expected_counts(n), f"n={n}"


def test_mct_counts_known_divergence_at_5_and_6():
    """Widths 5 and 6 spend one extra ternary instead of each quaternary.

    With 4 (resp. 5) controls there is no odd >=3, !=5 split, so the build
    falls back to chain joins; the 2n-3 total still holds (see the count
    test above) but the ternary/quaternary mix differs from the contract.
    """
    assert _mct_counts(5) == {"cnot": 0, "ternary": 7, "quaternary": 0, "t": 0}
    assert mct_expected_counts(5) == {"cnot": 0, "ternary": 6, "quaternary": 1, "t": 0}
    assert _mct_counts(6) == {"cnot": 0, "ternary": 6, "quaternary": 3, "t": 0}
    assert mct_expected_counts(6) == {"cnot": 0, "ternary": 7, "quaternary": 2, "t": 0}


@pytest.mark.parametrize("n,depth", [
    (3, 3), (4, 5), (5, 7), (6, 7), (7, 7), (8, 9), (9, 9), (10, 11),
    (16, 13), (32, 17), (64, 21),
])
def test_mct_depth_values(n, depth):
    assert mct_ududit(n).depth() == depth


@pytest.mark.parametrize("n", [4, 8, 9, 16, 33])
def test_mct_sweep_is_mirrored(n):
    ops = mct_ops(list(range(n - 1)), n - 1)
    assert len(ops) % 2 == 1
    for i in range(len(ops) // 2):
        assert ops[i] == gate_inverse(ops[-1 - i])
    root = ops[len(ops) // 2]
    assert root.wires[1] == n - 1 and root.modulus == 2


def test_mct_ops_small_cases():
    assert mct_ops([], 0) == [x_inc(0, 1, 2)]
    assert mct_ops([3], 1) == [cnot(3, 1)]
    with pytest.raises(DomainError):
        mct_ops([0, 0], 1)
    with pytest.raises(DomainError):
        mct_ops([0, 1], 1)


def test_split_properties():
    for total in range(6, 61, 2):
        if total == 8:
            continue  # 8 = 3+5 only, and 5-wide subtrees are forbidden
        k1, k2 = _split(total)
        assert k1 + k2 == total
        assert k1 % 2 == 1 and k2 % 2 == 1
        assert min(k1, k2) >= 3 and 5 not in (k1, k2)
    # the unsplittable totals are exactly why 8 and 9 controls get their
    # own hand-rolled spines in the flag builders
    for bad in (4, 8):
        with pytest.raises(DomainError):
            _split(bad)


def test_mct_expected_counts_edges():
    assert mct_expected_counts(2) == {"cnot": 1, "ternary": 0, "quaternary": 0, "t": 0}
    assert mct_expected_counts(3) == {"cnot": 0, "ternary": 3, "quaternary": 0, "t": 0}
    assert mct_expected_counts(7) == {"cnot": 0, "ternary": 8, "quaternary": 3, "t": 0}
    with pytest.raises(DomainError):
        mct_expected_counts(1)


# --- registry ----------------------------------------------------------------

def test_registry_names_and_flags():
    assert set(DECOMPOSITIONS) == {"toffoli-ct", "toffoli-qutrit",
                                   "fredkin-ct", "fredkin-qutrit", "mct"}
    for name, spec in DECOMPOSITIONS.items():
        assert spec.name == name and spec.summary
        assert spec.parametric == (name == "mct")


def test_build_named_errors():
    with pytest.raises(DomainError):
        build_named("nope")
    with pytest.raises(DomainError):
        build_named("mct")  # parametric, needs n
    with pytest.raises(DomainError):
        build_named("toffoli-ct", n=5)
    with pytest.raises(DomainError):
        reference_named("mct")
    circ, spec = build_named("mct", n=6)
    assert circ.layout.wire_count == 6 and spec.parametric


def test_build_named_accepts_explicit_three():
    circ, _ = build_named("fredkin-qutrit", n=3)
    assert circ.layout.wire_count == 3

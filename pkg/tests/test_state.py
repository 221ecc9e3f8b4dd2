"""Sparse mixed-radix state: encoding, gate application, measurement."""

import math

import numpy as np
import pytest

from quditmatch.errors import DimensionError, DomainError
from quditmatch.gates import (cnot, controlled_inc, hadamard, local_matrix,
                              swap, t_dagger, t_gate, x_inc)
from quditmatch.state import (RegisterLayout, SparseState, apply_gate,
                              apply_ops, decode_basis, encode_basis,
                              init_basis_state, inner_product,
                              measure_register)


def test_layout_rejects_bad_dims():
    with pytest.raises(DimensionError):
        RegisterLayout((2, 5))
    with pytest.raises(DomainError):
        RegisterLayout(())


def test_layout_rejects_bad_roles():
    with pytest.raises(DomainError):
        RegisterLayout((2, 2), ("index",))
    with pytest.raises(DomainError):
        RegisterLayout((2, 2), ("index", "nonsense"))


def test_layout_total_dim_and_strides():
    lay = RegisterLayout((2, 3, 4))
    assert lay.total_dim == 24
    assert lay.strides == (12, 4, 1)
    assert lay.wire_count == 3


def test_roles_default_and_query():
    lay = RegisterLayout((2, 2, 3), ("index", "text", "ancilla"))
    assert lay.wires_with_role("index") == (0,)
    assert lay.wires_with_role("ancilla") == (2,)
    assert lay.wires_with_role("output") == ()
    assert RegisterLayout((2, 2)).roles == ("text", "text")


@pytest.mark.parametrize("dims,digits,expected", [
    ((2, 3), (0, 0), 0),
    ((2, 3), (1, 2), 5),
    ((2, 2, 2), (1, 1, 0), 6),
    ((4, 3, 2), (3, 2, 1), 23),
])
def test_encode_basis_known_values(dims, digits, expected):
    """Wire 0 is the most significant mixed-radix digit."""
    lay = RegisterLayout(dims)
    assert encode_basis(digits, lay) == expected
    assert decode_basis(expected, lay) == tuple(digits)


def test_encode_decode_round_trip_exhaustive():
    lay = RegisterLayout((2, 3, 4, 2))
    for i in range(lay.total_dim):
        assert encode_basis(decode_basis(i, lay), lay) == i


def test_encode_rejects_out_of_range_digit():
    lay = RegisterLayout((2, 3))
    with pytest.raises(DomainError):
        encode_basis((0, 3), lay)
    with pytest.raises(DomainError):
        encode_basis((0,), lay)
    with pytest.raises(DomainError):
        decode_basis(6, lay)


def test_digit_extraction():
    lay = RegisterLayout((2, 3, 2))
    idx = encode_basis((1, 2, 0), lay)
    assert [lay.digit(idx, w) for w in range(3)] == [1, 2, 0]


def _dense(state: SparseState) -> np.ndarray:
    v = np.zeros(state.layout.total_dim, dtype=complex)
    for i, a in state.amplitudes.items():
        v[i] = a
    return v


def _dense_gate(g, lay) -> np.ndarray:
    """Independent dense application of a gate via its local matrix."""
    dim = lay.total_dim
    loc = local_matrix(g, tuple(lay.dims[w] for w in g.wires))
    full = np.zeros((dim, dim), dtype=complex)
    for col in range(dim):
        digits = list(decode_basis(col, lay))
        lc = 0
        for w in g.wires:
            lc = lc * lay.dims[w] + digits[w]
        for lr in range(loc.shape[0]):
            if loc[lr, lc] == 0:
                continue
            rem = lr
            for w in reversed(g.wires):
                digits[w] = rem % lay.dims[w]
                rem //= lay.dims[w]
            full[encode_basis(digits, lay), col] = loc[lr, lc]
    return full


GATE_ZOO = [
    ((2, 3, 4), x_inc(0, 1, 2)),
    ((2, 3, 4), x_inc(1, 2, 3)),
    ((2, 3, 4), x_inc(2, 3, 4)),
    ((3, 3, 4), x_inc(0, 1, 2)),          # binary-subspace increment on a qutrit
    ((2, 3, 4), hadamard(0)),
    ((2, 3, 4), hadamard(1)),             # binary-subspace Hadamard on a qutrit
    ((2, 3, 4), t_gate(0)),
    ((2, 3, 4), t_dagger(1)),
    ((2, 3, 4), cnot(0, 2)),
    ((2, 3, 4), controlled_inc(1, 2, 2, 1, 4)),
    ((2, 3, 4), controlled_inc(2, 3, 1, 2, 3)),
    ((2, 3, 4), controlled_inc(1, 0, 0, 1, 2)),
    ((3, 2, 3), swap(0, 2)),
]


@pytest.mark.parametrize("dims,g", GATE_ZOO)
def test_apply_gate_matches_dense_matrix(dims, g):
    """Sparse application agrees with the gate's local matrix on every basis state."""
    lay = RegisterLayout(dims)
    full = _dense_gate(g, lay)
    for col in range(lay.total_dim):
        state = SparseState(lay, {col: 1.0 + 0.0j})
        got = _dense(apply_gate(state, g))
        assert np.allclose(got, full[:, col], atol=1e-12)


@pytest.mark.parametrize("dims,g", GATE_ZOO)
def test_apply_gate_preserves_norm(dims, g):
    lay = RegisterLayout(dims)
    rng = np.random.default_rng(7)
    vec = rng.normal(size=lay.total_dim) + 1j * rng.normal(size=lay.total_dim)
    vec /= np.linalg.norm(vec)
    state = SparseState(lay, {i: complex(v) for i, v in enumerate(vec)})
    out = apply_gate(state, g)
    assert abs(out.norm_sq() - 1.0) < 1e-9


def test_hadamard_twice_is_identity_on_binary_wire():
    lay = RegisterLayout((2,))
    for b in (0, 1):
        state = init_basis_state(lay, (b,))
        out = apply_ops(state, [hadamard(0), hadamard(0)])
        assert out.support_size() == 1
        amp = out.amplitudes[encode_basis((b,), lay)]
        assert abs(amp - 1.0) < 1e-12


def test_hadamard_fixes_elevated_levels():
    """H is identity on digits >= 2 of a widened wire."""
    lay = RegisterLayout((3,))
    state = init_basis_state(lay, (2,))
    out = apply_gate(state, hadamard(0))
    assert out.amplitudes == {2: 1.0 + 0.0j}


def test_t_gate_phases_only_digit_one():
    lay = RegisterLayout((3,))
    phase = complex(math.cos(math.pi / 4), math.sin(math.pi / 4))
    for d, expect in ((0, 1.0), (1, phase), (2, 1.0)):
        out = apply_gate(init_basis_state(lay, (d,)), t_gate(0))
        assert abs(out.amplitudes[d] - expect) < 1e-12


def test_controlled_inc_fires_only_at_level():
    lay = RegisterLayout((3, 2))
    g = controlled_inc(0, 2, 1, 1, 2)
    for c in range(3):
        out = apply_gate(init_basis_state(lay, (c, 0)), g)
        got = decode_basis(next(iter(out.amplitudes)), lay)
        assert got == (c, 1 if c == 2 else 0)


def test_mod2_increment_on_qutrit_fixes_level_two():
    lay = RegisterLayout((3,))
    g = x_inc(0, 1, 2)
    images = []
    for d in range(3):
        out = apply_gate(init_basis_state(lay, (d,)), g)
        images.append(next(iter(out.amplitudes)))
    assert images == [1, 0, 2]


def test_swap_requires_equal_dims():
    lay = RegisterLayout((2, 3))
    with pytest.raises(DimensionError):
        apply_gate(init_basis_state(lay, (0, 0)), swap(0, 1))


def test_gate_validation_against_layout():
    lay = RegisterLayout((2, 2))
    with pytest.raises(DomainError):
        apply_gate(init_basis_state(lay, (0, 0)), x_inc(5, 1, 2))
    with pytest.raises(DimensionError):
        apply_gate(init_basis_state(lay, (0, 0)), x_inc(0, 1, 3))
    with pytest.raises(DimensionError):
        apply_gate(init_basis_state(lay, (0, 0)), controlled_inc(0, 2, 1, 1, 2))


def test_pruning_drops_tiny_amplitudes():
    lay = RegisterLayout((2,))
    state = SparseState(lay, {0: 1.0 + 0.0j, 1: 1e-15 + 0.0j})
    out = apply_ops(state, [hadamard(0), hadamard(0)])
    assert out.support_size() == 1


def test_measure_register_marginals():
    lay = RegisterLayout((2, 2))
    state = apply_gate(init_basis_state(lay, (0, 0)), hadamard(0))
    state = apply_gate(state, cnot(0, 1))
    probs = measure_register(state, (0, 1))
    assert set(probs) == {(0, 0), (1, 1)}
    assert abs(probs[(0, 0)] - 0.5) < 1e-12
    marg = measure_register(state, (1,))
    assert abs(marg[(0,)] - 0.5) < 1e-12 and abs(marg[(1,)] - 0.5) < 1e-12
    with pytest.raises(DomainError):
        measure_register(state, ())


def test_inner_product_conjugation_and_layout_check():
    lay = RegisterLayout((2,))
    plus_i = SparseState(lay, {0: 1 / math.sqrt(2), 1: 1j / math.sqrt(2)})
    zero = init_basis_state(lay, (0,))
    assert abs(inner_product(plus_i, zero) - 1 / math.sqrt(2)) < 1e-12
    assert abs(inner_product(plus_i, plus_i) - 1.0) < 1e-12
    # <a|b> = conj(<b|a>)
    b = apply_gate(zero, hadamard(0))
    assert abs(inner_product(plus_i, b) - inner_product(b, plus_i).conjugate()) < 1e-12
    with pytest.raises(DomainError):
        inner_product(plus_i, init_basis_state(RegisterLayout((3,)), (0,)))


def test_random_circuit_norm_and_support_stay_sane():
    """Seeded random walks over the zoo keep unit norm without renormalizing."""
    lay = RegisterLayout((2, 3, 4))
    rng = np.random.default_rng(42)
    pool = [g for dims, g in GATE_ZOO if dims == (2, 3, 4)]
    state = init_basis_state(lay, (0, 0, 0))
    for _ in range(200):
        state = apply_gate(state, pool[rng.integers(len(pool))])
        assert abs(state.norm_sq() - 1.0) < 1e-9
        assert state.support_size() <= lay.total_dim

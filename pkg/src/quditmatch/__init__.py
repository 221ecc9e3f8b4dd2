"""quditmatch: qudit-assisted Grover string matching, simulated and costed.

Sparse mixed-radix state simulation, a small level-controlled gate set,
Toffoli/Fredkin/multi-controlled-Toffoli decompositions using intermediate
qutrits and ququarts, a Grover substring-matching engine, and resource/noise
accounting, with CLI and HTTP front ends.
"""

__version__ = "0.1.0"

from .circuit import (Circuit, CostReport, VerificationReport, dense_unitary,
                      infer_dims, parse_circuit, simulate_basis,
                      verify_on_binary_subspace)
from .decompositions import (DECOMPOSITIONS, DecompositionSpec, build_named,
                             fredkin_clifford_t, fredkin_qutrit,
                             mct_expected_counts, mct_ops, mct_ududit,
                             reference_named, toffoli_clifford_t,
                             toffoli_qutrit)
from .engine import (MatchProblem, MatchResult, WirePlan, ascii_bits,
                     build_cyclic_shift, build_full_circuit, build_layout,
                     build_oracle, build_state_prep, classical_match,
                     grover_iterations, grover_probabilities, run_match)
from .errors import (ConfigurationError, DimensionError, DomainError,
                     QuditMatchError, SupportBudgetError)
from .gates import (GateOp, cnot, controlled_inc, format_gate, gate_category,
                    gate_inverse, hadamard, parse_gate, swap, t_dagger,
                    t_gate, x_inc)
from .resources import (FormulaReport, NoiseModel, circuit_census,
                        conformance, fredkin_sweep, success_probability,
                        sweep_csv, table3_predict)
from .state import (RegisterLayout, SparseState, apply_gate, apply_ops,
                    decode_basis, encode_basis, init_basis_state,
                    inner_product, measure_register)

__all__ = [
    "__version__",
    "Circuit", "CostReport", "VerificationReport", "dense_unitary",
    "infer_dims", "parse_circuit", "simulate_basis", "verify_on_binary_subspace",
    "DECOMPOSITIONS", "DecompositionSpec", "build_named",
    "fredkin_clifford_t", "fredkin_qutrit", "mct_expected_counts", "mct_ops",
    "mct_ududit", "reference_named", "toffoli_clifford_t", "toffoli_qutrit",
    "MatchProblem", "MatchResult", "WirePlan", "ascii_bits",
    "build_cyclic_shift", "build_full_circuit", "build_layout", "build_oracle",
    "build_state_prep", "classical_match", "grover_iterations",
    "grover_probabilities", "run_match",
    "ConfigurationError", "DimensionError", "DomainError", "QuditMatchError",
    "SupportBudgetError",
    "GateOp", "cnot", "controlled_inc", "format_gate", "gate_category",
    "gate_inverse", "hadamard", "parse_gate", "swap", "t_dagger", "t_gate",
    "x_inc",
    "FormulaReport", "NoiseModel", "circuit_census", "conformance",
    "fredkin_sweep", "success_probability", "sweep_csv", "table3_predict",
    "RegisterLayout", "SparseState", "apply_gate", "apply_ops", "decode_basis",
    "encode_basis", "init_basis_state", "inner_product", "measure_register",
]

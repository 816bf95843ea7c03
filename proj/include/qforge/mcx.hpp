// Copyright 2026 The qforge developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <vector>

#include "qforge/circuit.hpp"

namespace qforge {

/**
 * Multi-controlled X synthesis on k controls with m clean ancillae.
 *
 * Returns a circuit on k+1+m qubits (controls, target, ancillae in that
 * order) whose action on the main k+1 qubits equals MCX(k) and which
 * restores all ancillae, assumed |0>, to |0>. Strategy: a V-chain of
 * 2(k-2)+1 Toffolis when m >= k-2, a recursive split into two smaller
 * MCX when 1 <= m < k-2, and a catalogued no-ancilla scheme otherwise.
 */
QuantumCircuit mcx_decompose(uint32_t k_controls, uint32_t clean_ancillae);

/**
 * Phase tolerant MCX on k controls: a circuit on k+1 qubits equal to
 * D * MCX(k) for some diagonal D acting trivially on the all-controls-on
 * subspace. Intended for compute/uncompute pairs where D cancels.
 */
QuantumCircuit mcx_phase_tolerant(uint32_t k_controls);

/// The 3-CX relative-phase Toffoli as a reusable gate.
GateKind margolus_gate();

/// Exact 6-CX Toffoli expansion appended onto `qc`.
void emit_toffoli(QuantumCircuit &qc, uint32_t c1, uint32_t c2, uint32_t t);

/**
 * Exact MCX over explicit wires with clean (known |0>) and dirty
 * (borrowed, any state) helper qubits. All helpers are restored.
 */
void emit_mcx(QuantumCircuit &qc, std::vector<uint32_t> ctrls, uint32_t target,
              std::vector<uint32_t> clean, std::vector<uint32_t> dirty);

/// Phase tolerant MCX over explicit wires (margolus at k=2).
void emit_mcx_pt(QuantumCircuit &qc, std::vector<uint32_t> ctrls, uint32_t target,
                 std::vector<uint32_t> dirty, bool dagger);

/// k-controlled single-qubit unitary, ancilla free (2x2 matrix driven).
void emit_controlled_1q(QuantumCircuit &qc, const Mat2 &u, std::vector<uint32_t> ctrls,
                        uint32_t target, std::vector<uint32_t> dirty);

/**
 * k-controlled version of `kind`. Returns a primitive kind when one
 * exists (X -> CX -> MCX, Z family, P -> CP) and a Defined gate otherwise;
 * the controlled unitary is exact, with no residual phase.
 */
GateKind control_gate(const GateKind &kind, uint32_t k_controls);

/// Estimated transpiled depth of mcx_decompose(k, m), memoized.
size_t mcx_depth_estimate(uint32_t k, uint32_t m);

} // namespace qforge

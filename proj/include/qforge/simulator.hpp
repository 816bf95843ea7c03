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

#include <functional>
#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

#include "qforge/circuit.hpp"

namespace qforge {

/**
 * Sparse statevector: a map from basis index to complex amplitude. Basis
 * index bit j carries qubit j. Entries below 1e-12 are pruned.
 */
class SparseState {
  public:
    static SparseState zero(size_t num_qubits);

    size_t num_qubits() const { return num_qubits_; }
    const std::unordered_map<uint64_t, cmplx> &amplitudes() const { return amps_; }

    cmplx amp(uint64_t basis) const {
        auto it = amps_.find(basis);
        return it == amps_.end() ? cmplx(0.0) : it->second;
    }

    double norm() const;

    void apply(const Instruction &ins);
    /// Apply with an explicit wire map (body qubit index -> state qubit).
    void apply(const Instruction &ins, const std::vector<uint32_t> &wires);

    /// Entries in ascending basis order.
    std::vector<std::pair<uint64_t, cmplx>> sorted() const;

    /// Marginal probability of reading |1> on one qubit.
    double prob_one(uint32_t qubit) const;

    /// Inner product <other|this>.
    cmplx inner(const SparseState &other) const;

  private:
    size_t num_qubits_ = 0;
    std::unordered_map<uint64_t, cmplx> amps_;
    std::vector<bool> measured_;

    void prune();
    friend SparseState run(const QuantumCircuit &, std::optional<size_t>);
};

/// Simulator qubit cap; QFORGE_SIM_CAP overrides the default of 26.
size_t sim_cap();

/**
 * Deterministic sparse simulation of a circuit from |0...0>. Defined gates
 * are expanded; terminal measures are allowed, mid-circuit measures are
 * rejected.
 */
SparseState run(const QuantumCircuit &qc, std::optional<size_t> cap_override = {});

/**
 * Marginal distribution over a qubit subset, decoded to labels; equal
 * labels merge and entries below 1e-6 are dropped.
 */
std::map<Label, double> measure_probs(const SparseState &state,
                                      const std::vector<uint32_t> &qubits,
                                      const std::function<Label(uint64_t)> &decoder);

std::string format_distribution(const std::map<Label, double> &probs);

} // namespace qforge

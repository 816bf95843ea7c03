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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qforge/gates.hpp"

namespace qforge {

/// One wire of a circuit: the index within the owning circuit plus an
/// optional human readable label such as "qf.0".
struct Qubit {
    uint32_t id = 0;
    std::string label;
};

struct Instruction {
    GateKind kind;
    std::vector<uint32_t> qubits;
    int32_t clbit = -1; // Measure only
};

struct CircuitStats {
    size_t depth = 0;
    std::map<std::string, size_t> counts;
    size_t num_qubits = 0;

    size_t count(const std::string &name) const {
        auto it = counts.find(name);
        return it == counts.end() ? 0 : it->second;
    }
    size_t total() const;
};

class UnitaryMatrix;

/**
 * Low-level circuit IR: an ordered gate list over indexed qubits. Mutable
 * only while its single owner builds it; treated as a frozen value once
 * handed to the simulator, unitary computation or compiler.
 */
class QuantumCircuit {
  public:
    QuantumCircuit() = default;
    explicit QuantumCircuit(size_t num_qubits, size_t num_clbits = 0)
        : num_qubits_(num_qubits), num_clbits_(num_clbits) {}

    size_t num_qubits() const { return num_qubits_; }
    size_t num_clbits() const { return num_clbits_; }
    const std::vector<Instruction> &instructions() const { return instructions_; }

    uint32_t add_qubit(std::string label = "");
    void set_label(uint32_t q, std::string label);
    const std::string &label(uint32_t q) const;

    void append(GateKind kind, std::vector<uint32_t> qubits, int32_t clbit = -1);

    // Qiskit-flavoured builders.
    void x(uint32_t q) { append(GateKind(Op::X), {q}); }
    void y(uint32_t q) { append(GateKind(Op::Y), {q}); }
    void z(uint32_t q) { append(GateKind(Op::Z), {q}); }
    void h(uint32_t q) { append(GateKind(Op::H), {q}); }
    void s(uint32_t q) { append(GateKind(Op::S), {q}); }
    void sdg(uint32_t q) { append(GateKind(Op::Sdg), {q}); }
    void t(uint32_t q) { append(GateKind(Op::T), {q}); }
    void tdg(uint32_t q) { append(GateKind(Op::Tdg), {q}); }
    void rx(double theta, uint32_t q) { append(GateKind(Op::RX, theta), {q}); }
    void ry(double theta, uint32_t q) { append(GateKind(Op::RY, theta), {q}); }
    void rz(double theta, uint32_t q) { append(GateKind(Op::RZ, theta), {q}); }
    void p(double theta, uint32_t q) { append(GateKind(Op::P, theta), {q}); }
    void cx(uint32_t c, uint32_t t) { append(GateKind(Op::CX), {c, t}); }
    void cz(uint32_t a, uint32_t b) { append(GateKind(Op::CZ), {a, b}); }
    void cp(double theta, uint32_t a, uint32_t b) { append(GateKind(Op::CP, theta), {a, b}); }
    void swap(uint32_t a, uint32_t b) { append(GateKind(Op::Swap), {a, b}); }
    void mcx(std::vector<uint32_t> ctrls, uint32_t target);
    void mcz(std::vector<uint32_t> qubits);
    void measure(uint32_t q, uint32_t c) { append(GateKind(Op::Measure), {q}, (int32_t)c); }
    void barrier(std::vector<uint32_t> qubits) { append(GateKind(Op::Barrier), std::move(qubits)); }

    void extend(const QuantumCircuit &other, const std::vector<uint32_t> &wire_map);

    /// Adjoint circuit: order reversed, every gate replaced by its inverse.
    QuantumCircuit inverse() const;

    /// Depth, per-name gate counts and qubit count. With `transpiled` the
    /// circuit is first rewritten into the {CX + single-qubit} basis.
    CircuitStats stats(bool transpiled = false) const;

    /// Rewrite into CX + single-qubit gates (Measure/Barrier pass through).
    QuantumCircuit transpiled() const;

    /// Recursively inline Defined gates.
    QuantumCircuit flattened() const;

    UnitaryMatrix get_unitary(size_t cap = 12) const;
    bool compare_unitary(const QuantumCircuit &other, int precision = 10) const;

    std::string to_qasm() const;

    bool has_measure() const;

  private:
    size_t num_qubits_ = 0;
    size_t num_clbits_ = 0;
    std::vector<Instruction> instructions_;
    std::vector<std::string> labels_;
};

/// Composite gate: a named definition circuit, optionally annotated with
/// semantics the emitting code knows but structure alone cannot show.
struct DefinedGate {
    std::string name;
    QuantumCircuit body;
    /// Set when the emitter knows the total unitary is a generalized
    /// permutation even though the body uses non-qfree gates internally.
    std::optional<bool> qfree_hint;
    /// Per-wire override: true marks a wire the gate acts diagonally on.
    std::optional<std::vector<bool>> diagonal_hint;
};

std::shared_ptr<const DefinedGate> make_defined(std::string name, QuantumCircuit body);

} // namespace qforge

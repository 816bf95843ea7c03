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
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qforge/circuit.hpp"

namespace qforge {

struct SessionState;
struct VarState;

/// Handle to one logical qubit. Handles stay valid across session merges.
struct QubitRef {
    std::shared_ptr<SessionState> origin;
    uint64_t id = 0;

    bool valid() const { return origin != nullptr; }
};

/// Resolve a handle to its current root session and root-local id.
std::pair<std::shared_ptr<SessionState>, uint64_t> resolve(const QubitRef &q);

enum class LogTag : uint8_t { Alloc, Dealloc, Gate };

struct LogEntry {
    LogTag tag = LogTag::Gate;
    GateKind kind;
    std::vector<uint64_t> qubits;
};

struct SessionState : std::enable_shared_from_this<SessionState> {
    std::vector<LogEntry> log;
    uint64_t next_id = 0;
    std::shared_ptr<SessionState> merged_into;
    uint64_t merge_offset = 0;
    std::vector<std::shared_ptr<VarState>> variables;
    std::vector<uint8_t> live;    // by root-local id
    std::vector<uint8_t> touched; // gate seen since alloc
    std::vector<std::string> qubit_names;
    int open_envs = 0;
};

struct CompileOptions {
    uint32_t workspace = 0;
    bool mcx_recompilation = true;
    std::map<std::string, double> gate_speed; // per gate name, default 1.0
};

struct CompileResult {
    QuantumCircuit circuit;
    std::map<uint64_t, uint32_t> layout; // live logical qubit -> slot
    size_t logical_qubits = 0;
};

struct ABStats {
    CircuitStats with_mcx;
    CircuitStats without_mcx;
};

/**
 * Append-only instruction log plus allocation markers; the compiler's
 * input. Every QuantumVariable is registered in exactly one live session;
 * entangling operations across sessions merge them.
 */
class QuantumSession {
  public:
    QuantumSession() : s_(std::make_shared<SessionState>()) {}
    explicit QuantumSession(std::shared_ptr<SessionState> s) : s_(std::move(s)) {}

    std::shared_ptr<SessionState> root() const;
    bool same_as(const QuantumSession &other) const { return root() == other.root(); }

    std::vector<QubitRef> alloc(size_t n, const std::string &name);
    /// Dealloc with optional verification that each qubit reads |0>.
    void dealloc(const std::vector<QubitRef> &qubits, bool verify = false);

    const std::vector<LogEntry> &log() const { return root()->log; }
    size_t num_logical() const { return root()->next_id; }

    /**
     * Compile the log into a physical-qubit-minimal circuit. Allocations
     * take the free slot available earliest; deallocations return slots to
     * the pool; with mcx_recompilation every MCX(k>=2) is re-synthesized
     * at its log position using the clean slots free at that moment.
     */
    CompileResult compile(const CompileOptions &options = {}) const;

    /// Compile twice toggling MCX recompilation; stats are transpiled.
    ABStats compile_stats_ab(const CompileOptions &options = {}) const;

    std::shared_ptr<SessionState> state() const { return s_; }

  private:
    std::shared_ptr<SessionState> s_;
};

/// Merge s2 into s1's root: logs concatenated preserving internal order,
/// variables re-registered, stale handles keep forwarding.
QuantumSession merge(const QuantumSession &s1, const QuantumSession &s2);

/// One circuit wire per logical qubit, no reuse. Test oracle and raw export.
QuantumCircuit naive_circuit(const QuantumSession &qs);

// Gate emission. Operands in different sessions merge; gates recorded
// inside an active environment are rewritten by it.
void x(const QubitRef &q);
void y(const QubitRef &q);
void z(const QubitRef &q);
void h(const QubitRef &q);
void s(const QubitRef &q);
void sdg(const QubitRef &q);
void t(const QubitRef &q);
void tdg(const QubitRef &q);
void rx(double theta, const QubitRef &q);
void ry(double theta, const QubitRef &q);
void rz(double theta, const QubitRef &q);
void p(double theta, const QubitRef &q);
void cx(const QubitRef &c, const QubitRef &t);
void cz(const QubitRef &a, const QubitRef &b);
void cp(double theta, const QubitRef &a, const QubitRef &b);
void swap(const QubitRef &a, const QubitRef &b);
void mcx(const std::vector<QubitRef> &ctrls, const QubitRef &target);
void mcz(const std::vector<QubitRef> &qubits);
void barrier(const std::vector<QubitRef> &qubits);

namespace detail {
/// Record a gate: merge operand sessions, apply active environments, append.
void record_gate(GateKind kind, std::vector<QubitRef> qubits);
/// Append without environment processing (already processed).
void raw_append(const std::shared_ptr<SessionState> &root, LogEntry entry);
/// Merge other into root, inserting before any active captured span.
void merge_into(const std::shared_ptr<SessionState> &root,
                const std::shared_ptr<SessionState> &other);
/// Raw allocation that bypasses variable tracking.
std::vector<uint64_t> alloc_raw(const std::shared_ptr<SessionState> &root, size_t n,
                                const std::string &name);
void dealloc_raw(const std::shared_ptr<SessionState> &root, const std::vector<uint64_t> &ids);
/// Invert log[begin:end); deallocated temporaries are re-allocated fresh.
std::vector<LogEntry> invert_log_span(const std::shared_ptr<SessionState> &root, size_t begin,
                                      size_t end);
} // namespace detail

} // namespace qforge

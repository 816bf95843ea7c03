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

#include "qforge/environments.hpp"
#include "qforge/session.hpp"

namespace qforge {

struct VarState {
    std::string name;
    std::vector<QubitRef> qubits;
    std::function<Label(uint64_t)> decoder;
    bool deleted = false;

    struct FloatMeta {
        size_t msize = 0;
        int exponent = 0;
        bool is_signed = false;
    };
    std::optional<FloatMeta> float_meta;
    std::optional<uint64_t> modulus;
};

/**
 * Named qubit register with a decoder mapping basis indices (qubit 0 least
 * significant) to human readable labels. The default decoder yields
 * bitstrings with qubit 0 printed first.
 */
class QuantumVariable {
  public:
    explicit QuantumVariable(size_t size, std::string name = "");
    QuantumVariable(const QuantumSession &qs, size_t size, std::string name = "");
    explicit QuantumVariable(std::shared_ptr<VarState> s) : s_(std::move(s)) {}

    size_t size() const { return s_->qubits.size(); }
    QubitRef operator[](size_t i) const { return s_->qubits.at(i); }
    const std::vector<QubitRef> &qubits() const { return s_->qubits; }
    const std::string &name() const { return s_->name; }
    QuantumSession session() const;
    bool is_deleted() const { return s_->deleted; }

    void set_decoder(std::function<Label(uint64_t)> d) { s_->decoder = std::move(d); }
    Label decode(uint64_t i) const { return s_->decoder(i); }

    /// Indices whose decoded label equals `l` (exhaustive scan).
    std::vector<uint64_t> find_label(const Label &l) const;

    /// Write a classical label into a freshly allocated register.
    void encode(const Label &l);

    /// Prepare an arbitrary normalized state over labelled basis states.
    void init_state(const std::vector<std::pair<Label, cmplx>> &amplitudes);

    /// Simulate the session and return the decoded marginal distribution.
    std::map<Label, double> get_measurement() const;

    /// Append deallocation markers; with verify, simulate first and require
    /// every qubit to read |0>.
    void delete_var(bool verify = false);

    std::shared_ptr<VarState> state() const { return s_; }

  protected:
    std::shared_ptr<VarState> s_;

    static std::shared_ptr<VarState> create(const QuantumSession &qs, size_t size,
                                            std::string name, const std::string &auto_prefix);
};

/**
 * Fixed-point number: msize mantissa qubits scaled by 2^exponent, plus a
 * two's-complement sign qubit (most significant) when signed.
 */
class QuantumFloat : public QuantumVariable {
  public:
    explicit QuantumFloat(size_t msize, int exponent = 0, bool is_signed = false,
                          std::string name = "");
    QuantumFloat(const QuantumSession &qs, size_t msize, int exponent = 0, bool is_signed = false,
                 std::string name = "");
    explicit QuantumFloat(std::shared_ptr<VarState> s) : QuantumVariable(std::move(s)) {}

    size_t msize() const { return s_->float_meta->msize; }
    int exponent() const { return s_->float_meta->exponent; }
    bool is_signed() const { return s_->float_meta->is_signed; }

    void encode(double value) { QuantumVariable::encode(Label(value)); }

    static double decode_value(uint64_t i, size_t msize, int exponent, bool is_signed);
};

class QuantumBool : public QuantumVariable {
  public:
    explicit QuantumBool(std::string name = "");
    explicit QuantumBool(const QuantumSession &qs, std::string name = "");
    explicit QuantumBool(std::shared_ptr<VarState> s) : QuantumVariable(std::move(s)) {}

    void encode(bool v) { QuantumVariable::encode(Label(v)); }
    void flip() { x((*this)[0]); }
};

/// Elements of Z/NZ on ceil(log2 N) qubits; indices >= N decode to the
/// sentinel label "invalid".
class QuantumModulus : public QuantumVariable {
  public:
    explicit QuantumModulus(uint64_t modulus, std::string name = "");
    QuantumModulus(const QuantumSession &qs, uint64_t modulus, std::string name = "");

    uint64_t modulus() const { return *s_->modulus; }

    void encode(uint64_t v);
};

// Whole-register gate helpers.
void x(const QuantumVariable &v);
void y(const QuantumVariable &v);
void z(const QuantumVariable &v);
void h(const QuantumVariable &v);

std::map<Label, double> get_measurement(const QuantumVariable &v);

/// Joint decoded distribution over several variables of one session.
std::map<std::vector<Label>, double> multi_measurement(const std::vector<QuantumVariable> &vars);

struct StatevectorTerm {
    std::vector<Label> labels; // one per live variable, registration order
    cmplx amplitude;
};

/// Amplitudes grouped by the joint decoded labels of all live variables;
/// deallocated variables are omitted.
std::vector<StatevectorTerm> statevector_view(const QuantumSession &qs);
std::string statevector_string(const std::vector<StatevectorTerm> &terms);

/// Condition scope on an expression-created bool: the bool is computed
/// (controlled on any outer condition), the body runs controlled on it,
/// and the evaluation is uncomputed at exit.
void condition(const std::function<QuantumBool()> &expr, const std::function<void()> &body);
/// Condition scope on a caller-owned bool; the bool is left alive.
void condition(const QuantumBool &b, const std::function<void()> &body);

namespace detail {
/// Called for every created variable so scopes can track them.
void notify_var_created(const std::shared_ptr<VarState> &v);
} // namespace detail

} // namespace qforge

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

#include "qforge/circuit.hpp"

#include <algorithm>
#include <set>

#include "qforge/mcx.hpp"

namespace qforge {

size_t CircuitStats::total() const {
    size_t n = 0;
    for (const auto &[name, c] : counts)
        n += c;
    return n;
}

uint32_t QuantumCircuit::add_qubit(std::string label) {
    labels_.resize(num_qubits_);
    labels_.push_back(std::move(label));
    return static_cast<uint32_t>(num_qubits_++);
}

void QuantumCircuit::set_label(uint32_t q, std::string label) {
    labels_.resize(num_qubits_);
    labels_.at(q) = std::move(label);
}

const std::string &QuantumCircuit::label(uint32_t q) const {
    static const std::string empty;
    return q < labels_.size() ? labels_[q] : empty;
}

void QuantumCircuit::append(GateKind kind, std::vector<uint32_t> qubits, int32_t clbit) {
    if (kind.op != Op::Barrier && qubits.size() != kind.arity())
        throw Error("arity mismatch: gate " + kind.name() + " expects " +
                    std::to_string(kind.arity()) + " qubits, got " + std::to_string(qubits.size()));
    std::set<uint32_t> seen;
    for (uint32_t q : qubits) {
        if (q >= num_qubits_)
            throw Error("unknown qubit " + std::to_string(q) + " in circuit of size " +
                        std::to_string(num_qubits_));
        if (!seen.insert(q).second)
            throw Error("duplicate qubit " + std::to_string(q) + " in " + kind.name() +
                        " instruction");
    }
    if (kind.op == Op::Measure) {
        if (clbit < 0 || static_cast<size_t>(clbit) >= num_clbits_)
            throw Error("unknown clbit " + std::to_string(clbit));
    }
    instructions_.push_back({std::move(kind), std::move(qubits), clbit});
}

void QuantumCircuit::mcx(std::vector<uint32_t> ctrls, uint32_t target) {
    auto k = static_cast<uint32_t>(ctrls.size());
    ctrls.push_back(target);
    if (k == 0)
        append(GateKind(Op::X), std::move(ctrls));
    else if (k == 1)
        append(GateKind(Op::CX), std::move(ctrls));
    else
        append(GateKind::mcx(k), std::move(ctrls));
}

void QuantumCircuit::mcz(std::vector<uint32_t> qubits) {
    if (qubits.empty())
        throw Error("mcz needs at least one qubit");
    if (qubits.size() == 1)
        append(GateKind(Op::Z), std::move(qubits));
    else if (qubits.size() == 2)
        append(GateKind(Op::CZ), std::move(qubits));
    else
        append(GateKind::mcz(static_cast<uint32_t>(qubits.size() - 1)), std::move(qubits));
}

void QuantumCircuit::extend(const QuantumCircuit &other, const std::vector<uint32_t> &wire_map) {
    for (const auto &ins : other.instructions()) {
        std::vector<uint32_t> qs;
        qs.reserve(ins.qubits.size());
        for (uint32_t q : ins.qubits)
            qs.push_back(wire_map.at(q));
        append(ins.kind, std::move(qs), ins.clbit);
    }
}

QuantumCircuit QuantumCircuit::inverse() const {
    QuantumCircuit inv(num_qubits_, num_clbits_);
    inv.labels_ = labels_;
    for (auto it = instructions_.rbegin(); it != instructions_.rend(); ++it) {
        if (it->kind.op == Op::Measure)
            throw Error("cannot invert a circuit containing measure");
        if (it->kind.op == Op::Barrier) {
            inv.append(it->kind, it->qubits);
            continue;
        }
        inv.append(it->kind.adjoint(), it->qubits);
    }
    return inv;
}

CircuitStats QuantumCircuit::stats(bool transpile_first) const {
    if (transpile_first)
        return transpiled().stats(false);
    CircuitStats st;
    st.num_qubits = num_qubits_;
    std::vector<size_t> track(num_qubits_, 0);
    for (const auto &ins : instructions_) {
        if (ins.kind.op == Op::Barrier) {
            size_t m = 0;
            for (uint32_t q : ins.qubits)
                m = std::max(m, track[q]);
            for (uint32_t q : ins.qubits)
                track[q] = m;
            continue;
        }
        st.counts[ins.kind.name()] += 1;
        size_t m = 0;
        for (uint32_t q : ins.qubits)
            m = std::max(m, track[q]);
        for (uint32_t q : ins.qubits)
            track[q] = m + 1;
        st.depth = std::max(st.depth, m + 1);
    }
    return st;
}

QuantumCircuit QuantumCircuit::flattened() const {
    QuantumCircuit out(num_qubits_, num_clbits_);
    out.labels_ = labels_;
    for (const auto &ins : instructions_) {
        if (ins.kind.op == Op::Defined) {
            QuantumCircuit body = ins.kind.def->body.flattened();
            out.extend(body, ins.qubits);
        } else {
            out.append(ins.kind, ins.qubits, ins.clbit);
        }
    }
    return out;
}

bool QuantumCircuit::has_measure() const {
    for (const auto &ins : instructions_)
        if (ins.kind.op == Op::Measure)
            return true;
    return false;
}

} // namespace qforge

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

#include "qforge/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace qforge {

namespace {
constexpr double kPrune = 1e-12;
}

SparseState SparseState::zero(size_t num_qubits) {
    SparseState st;
    st.num_qubits_ = num_qubits;
    st.amps_[0] = 1.0;
    st.measured_.assign(num_qubits, false);
    return st;
}

double SparseState::norm() const {
    double n = 0;
    for (const auto &[k, a] : amps_)
        n += std::norm(a);
    return std::sqrt(n);
}

void SparseState::prune() {
    for (auto it = amps_.begin(); it != amps_.end();)
        it = std::abs(it->second) < kPrune ? amps_.erase(it) : std::next(it);
}

void SparseState::apply(const Instruction &ins) {
    static thread_local std::vector<uint32_t> identity;
    if (identity.size() < num_qubits_) {
        identity.resize(num_qubits_);
        for (uint32_t i = 0; i < identity.size(); ++i)
            identity[i] = i;
    }
    apply(ins, identity);
}

void SparseState::apply(const Instruction &ins, const std::vector<uint32_t> &wires) {
    const auto &k = ins.kind;
    auto bit = [&](size_t pos) { return uint64_t{1} << wires[ins.qubits[pos]]; };
    switch (k.op) {
    case Op::Barrier:
    case Op::Measure:
        return;
    case Op::X: {
        uint64_t m = bit(0);
        std::unordered_map<uint64_t, cmplx> next;
        next.reserve(amps_.size());
        for (auto &[key, a] : amps_)
            next.emplace(key ^ m, a);
        amps_ = std::move(next);
        return;
    }
    case Op::Y: {
        uint64_t m = bit(0);
        const cmplx i(0, 1);
        std::unordered_map<uint64_t, cmplx> next;
        next.reserve(amps_.size());
        for (auto &[key, a] : amps_)
            next.emplace(key ^ m, (key & m) ? -i * a : i * a);
        amps_ = std::move(next);
        return;
    }
    case Op::CX: {
        uint64_t c = bit(0), t = bit(1);
        std::unordered_map<uint64_t, cmplx> next;
        next.reserve(amps_.size());
        for (auto &[key, a] : amps_)
            next.emplace((key & c) ? key ^ t : key, a);
        amps_ = std::move(next);
        return;
    }
    case Op::MCX: {
        uint64_t cm = 0;
        for (size_t i = 0; i < k.controls; ++i)
            cm |= bit(i);
        uint64_t t = bit(k.controls);
        std::unordered_map<uint64_t, cmplx> next;
        next.reserve(amps_.size());
        for (auto &[key, a] : amps_)
            next.emplace((key & cm) == cm ? key ^ t : key, a);
        amps_ = std::move(next);
        return;
    }
    case Op::Swap: {
        uint64_t x = bit(0), y = bit(1);
        std::unordered_map<uint64_t, cmplx> next;
        next.reserve(amps_.size());
        for (auto &[key, a] : amps_) {
            bool bx = key & x, by = key & y;
            uint64_t nk = key;
            if (bx != by)
                nk ^= x | y;
            next.emplace(nk, a);
        }
        amps_ = std::move(next);
        return;
    }
    case Op::Z:
    case Op::S:
    case Op::Sdg:
    case Op::T:
    case Op::Tdg:
    case Op::P: {
        cmplx f = k.matrix1q()[3];
        uint64_t m = bit(0);
        for (auto &[key, a] : amps_)
            if (key & m)
                a *= f;
        return;
    }
    case Op::RZ: {
        Mat2 g = k.matrix1q();
        uint64_t m = bit(0);
        for (auto &[key, a] : amps_)
            a *= (key & m) ? g[3] : g[0];
        return;
    }
    case Op::CZ:
    case Op::MCZ: {
        uint64_t cm = 0;
        for (size_t i = 0; i < ins.qubits.size(); ++i)
            cm |= bit(i);
        for (auto &[key, a] : amps_)
            if ((key & cm) == cm)
                a = -a;
        return;
    }
    case Op::CP: {
        uint64_t cm = bit(0) | bit(1);
        cmplx f = std::exp(cmplx(0, 1) * k.angle);
        for (auto &[key, a] : amps_)
            if ((key & cm) == cm)
                a *= f;
        return;
    }
    case Op::H:
    case Op::RX:
    case Op::RY: {
        Mat2 g = k.matrix1q();
        uint64_t m = bit(0);
        std::unordered_map<uint64_t, cmplx> next;
        next.reserve(amps_.size() * 2);
        for (auto &[key, a] : amps_) {
            uint64_t k0 = key & ~m, k1 = key | m;
            if (key & m) {
                next[k0] += g[1] * a;
                next[k1] += g[3] * a;
            } else {
                next[k0] += g[0] * a;
                next[k1] += g[2] * a;
            }
        }
        amps_ = std::move(next);
        prune();
        return;
    }
    case Op::Defined: {
        std::vector<uint32_t> sub(ins.qubits.size());
        for (size_t i = 0; i < ins.qubits.size(); ++i)
            sub[i] = wires[ins.qubits[i]];
        for (const auto &inner : k.def->body.instructions())
            apply(inner, sub);
        return;
    }
    }
}

std::vector<std::pair<uint64_t, cmplx>> SparseState::sorted() const {
    std::vector<std::pair<uint64_t, cmplx>> v(amps_.begin(), amps_.end());
    std::sort(v.begin(), v.end(), [](const auto &a, const auto &b) { return a.first < b.first; });
    return v;
}

double SparseState::prob_one(uint32_t qubit) const {
    uint64_t m = uint64_t{1} << qubit;
    double p = 0;
    for (const auto &[key, a] : amps_)
        if (key & m)
            p += std::norm(a);
    return p;
}

cmplx SparseState::inner(const SparseState &other) const {
    cmplx acc(0.0);
    for (const auto &[key, a] : amps_) {
        auto it = other.amps_.find(key);
        if (it != other.amps_.end())
            acc += std::conj(it->second) * a;
    }
    return acc;
}

size_t sim_cap() {
    if (const char *env = std::getenv("QFORGE_SIM_CAP")) {
        char *end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && v > 0)
            return static_cast<size_t>(v);
    }
    return 26;
}

SparseState run(const QuantumCircuit &qc, std::optional<size_t> cap_override) {
    size_t cap = cap_override ? *cap_override : sim_cap();
    if (qc.num_qubits() > cap)
        throw Error("simulator cap exceeded: " + std::to_string(qc.num_qubits()) +
                    " qubits > cap " + std::to_string(cap));
    SparseState st = SparseState::zero(qc.num_qubits());
    for (const auto &ins : qc.instructions()) {
        if (ins.kind.op == Op::Measure) {
            st.measured_[ins.qubits[0]] = true;
            continue;
        }
        if (ins.kind.op != Op::Barrier)
            for (uint32_t q : ins.qubits)
                if (st.measured_[q])
                    throw Error("mid-circuit measure on qubit " + std::to_string(q) +
                                " is not supported");
        st.apply(ins);
    }
    return st;
}

std::map<Label, double> measure_probs(const SparseState &state,
                                      const std::vector<uint32_t> &qubits,
                                      const std::function<Label(uint64_t)> &decoder) {
    std::map<uint64_t, double> marginal;
    for (const auto &[key, a] : state.sorted()) {
        uint64_t sub = 0;
        for (size_t j = 0; j < qubits.size(); ++j)
            if (key & (uint64_t{1} << qubits[j]))
                sub |= uint64_t{1} << j;
        marginal[sub] += std::norm(a);
    }
    std::map<Label, double> out;
    for (const auto &[sub, p] : marginal) {
        if (p < 1e-6)
            continue;
        Label label = decoder(sub);
        out[label] += p;
    }
    return out;
}

std::string format_distribution(const std::map<Label, double> &probs) {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (const auto &[label, p] : probs) {
        if (!first)
            os << ", ";
        first = false;
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.4f", p);
        os << label.str() << ": " << buf;
    }
    os << "}";
    return os.str();
}

} // namespace qforge

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

#include <functional>
#include <set>

#include "qforge/mcx.hpp"
#include "qforge/session.hpp"

namespace qforge {

namespace {

// Walk an instruction with Defined gates inlined, wires mapped to ids.
void flatten_gate(const GateKind &kind, const std::vector<uint64_t> &ids,
                  const std::function<void(const GateKind &, const std::vector<uint64_t> &)> &sink) {
    if (kind.op != Op::Defined) {
        sink(kind, ids);
        return;
    }
    for (const auto &ins : kind.def->body.instructions()) {
        std::vector<uint64_t> sub;
        sub.reserve(ins.qubits.size());
        for (uint32_t q : ins.qubits)
            sub.push_back(ids[q]);
        flatten_gate(ins.kind, sub, sink);
    }
}

struct Allocator {
    std::vector<double> available_at;           // per slot
    std::set<std::pair<double, uint32_t>> pool; // free slots by (timestamp, id)
    QuantumCircuit circuit;

    uint32_t take() {
        if (!pool.empty()) {
            auto it = pool.begin();
            uint32_t slot = it->second;
            pool.erase(it);
            return slot;
        }
        available_at.push_back(0.0);
        return circuit.add_qubit();
    }

    void give_back(uint32_t slot) { pool.insert({available_at[slot], slot}); }

    std::vector<uint32_t> borrow(size_t n) {
        std::vector<uint32_t> out;
        out.reserve(n);
        for (size_t i = 0; i < n && !pool.empty(); ++i) {
            auto it = pool.begin();
            out.push_back(it->second);
            pool.erase(it);
        }
        return out;
    }
};

} // namespace

CompileResult QuantumSession::compile(const CompileOptions &options) const {
    auto r = root();
    if (r->open_envs > 0)
        throw Error("unbalanced environment markers: session has open environments");

    Allocator alloc;
    for (uint32_t w = 0; w < options.workspace; ++w) {
        alloc.available_at.push_back(0.0);
        alloc.pool.insert({0.0, alloc.circuit.add_qubit()});
    }
    std::map<uint64_t, uint32_t> place;

    auto duration = [&](const GateKind &k) {
        auto it = options.gate_speed.find(k.name());
        return it == options.gate_speed.end() ? 1.0 : it->second;
    };
    auto emit = [&](const GateKind &k, const std::vector<uint32_t> &slots) {
        alloc.circuit.append(k, slots);
        double d = duration(k);
        for (uint32_t s : slots)
            alloc.available_at[s] += d;
    };
    // Re-synthesize one MCX/MCZ at its log position with borrowed slots.
    auto recompile_mcx = [&](bool is_z, uint32_t k, const std::vector<uint32_t> &slots) {
        uint32_t m_avail = static_cast<uint32_t>(std::min<size_t>(k - 2, alloc.pool.size()));
        uint32_t best_m = 0;
        size_t best_depth = mcx_depth_estimate(k, 0);
        for (uint32_t m = 1; m <= m_avail; ++m) {
            size_t d = mcx_depth_estimate(k, m);
            if (d < best_depth) {
                best_depth = d;
                best_m = m;
            }
        }
        std::vector<uint32_t> borrowed = alloc.borrow(best_m);
        std::vector<uint32_t> wires = slots;
        wires.insert(wires.end(), borrowed.begin(), borrowed.end());
        if (is_z)
            emit(GateKind(Op::H), {slots[k]});
        QuantumCircuit dec = mcx_decompose(k, best_m);
        for (const auto &ins : dec.instructions()) {
            std::vector<uint32_t> qs;
            qs.reserve(ins.qubits.size());
            for (uint32_t q : ins.qubits)
                qs.push_back(wires[q]);
            emit(ins.kind, qs);
        }
        if (is_z)
            emit(GateKind(Op::H), {slots[k]});
        for (uint32_t b : borrowed)
            alloc.give_back(b);
    };

    for (const auto &e : r->log) {
        switch (e.tag) {
        case LogTag::Alloc:
            place[e.qubits[0]] = alloc.take();
            break;
        case LogTag::Dealloc: {
            auto it = place.find(e.qubits[0]);
            if (it == place.end())
                throw Error("dealloc of unallocated qubit in log");
            alloc.give_back(it->second);
            place.erase(it);
            break;
        }
        case LogTag::Gate:
            flatten_gate(e.kind, e.qubits, [&](const GateKind &k, const std::vector<uint64_t> &ids) {
                std::vector<uint32_t> slots;
                slots.reserve(ids.size());
                for (uint64_t q : ids) {
                    auto it = place.find(q);
                    if (it == place.end())
                        throw Error("gate on deallocated qubit in log");
                    slots.push_back(it->second);
                }
                bool recompilable = options.mcx_recompilation &&
                                    ((k.op == Op::MCX && k.controls >= 2) ||
                                     (k.op == Op::MCZ && k.controls >= 2));
                if (recompilable)
                    recompile_mcx(k.op == Op::MCZ, k.controls, slots);
                else
                    emit(k, slots);
            });
            break;
        }
    }
    CompileResult res{std::move(alloc.circuit), std::move(place), r->next_id};
    return res;
}

ABStats QuantumSession::compile_stats_ab(const CompileOptions &options) const {
    CompileOptions with = options, without = options;
    with.mcx_recompilation = true;
    without.mcx_recompilation = false;
    ABStats st;
    st.with_mcx = compile(with).circuit.stats(true);
    st.without_mcx = compile(without).circuit.stats(true);
    return st;
}

} // namespace qforge

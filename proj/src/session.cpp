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

#include "qforge/session.hpp"

#include <algorithm>

#include "qforge/simulator.hpp"

namespace qforge {

QuantumSession merge(const QuantumSession &s1, const QuantumSession &s2) {
    auto r1 = s1.root(), r2 = s2.root();
    if (r1 == r2)
        throw Error("cannot merge a session with itself");
    auto absorber = r1, other = r2;
    if (r2->open_envs > 0)
        std::swap(absorber, other);
    detail::merge_into(absorber, other);
    return QuantumSession(absorber);
}

std::pair<std::shared_ptr<SessionState>, uint64_t> resolve(const QubitRef &q) {
    if (!q.valid())
        throw Error("invalid qubit handle");
    auto s = q.origin;
    uint64_t id = q.id;
    while (s->merged_into) {
        id += s->merge_offset;
        s = s->merged_into;
    }
    return {s, id};
}

std::shared_ptr<SessionState> QuantumSession::root() const {
    auto s = s_;
    while (s->merged_into)
        s = s->merged_into;
    return s;
}

std::vector<QubitRef> QuantumSession::alloc(size_t n, const std::string &name) {
    if (n < 1)
        throw Error("alloc needs at least one qubit");
    auto r = root();
    auto ids = detail::alloc_raw(r, n, name);
    std::vector<QubitRef> out;
    out.reserve(n);
    for (uint64_t id : ids)
        out.push_back(QubitRef{r, id});
    return out;
}

void QuantumSession::dealloc(const std::vector<QubitRef> &qubits, bool verify) {
    auto r = root();
    if (verify) {
        if (r->open_envs > 0)
            throw Error("cannot verify deallocation inside an open environment");
        CompileOptions opt;
        opt.mcx_recompilation = false;
        CompileResult res = compile(opt);
        SparseState st = run(res.circuit);
        for (const auto &q : qubits) {
            auto [s, id] = resolve(q);
            if (s != r)
                throw Error("qubit belongs to a different session");
            double p1 = st.prob_one(res.layout.at(id));
            if (p1 > 1e-9)
                throw Error("qubit " + r->qubit_names[id] + " is not in |0>");
        }
    }
    std::vector<uint64_t> ids;
    ids.reserve(qubits.size());
    for (const auto &q : qubits) {
        auto [s, id] = resolve(q);
        if (s != r)
            throw Error("qubit belongs to a different session");
        ids.push_back(id);
    }
    detail::dealloc_raw(r, ids);
}

namespace detail {

std::vector<uint64_t> alloc_raw(const std::shared_ptr<SessionState> &root, size_t n,
                                const std::string &name) {
    std::vector<uint64_t> ids;
    ids.reserve(n);
    for (size_t i = 0; i < n; ++i) {
        uint64_t id = root->next_id++;
        root->live.push_back(1);
        root->touched.push_back(0);
        root->qubit_names.push_back(n == 1 ? name : name + "." + std::to_string(i));
        root->log.push_back({LogTag::Alloc, GateKind(), {id}});
        ids.push_back(id);
    }
    return ids;
}

void dealloc_raw(const std::shared_ptr<SessionState> &root, const std::vector<uint64_t> &ids) {
    for (uint64_t id : ids) {
        if (id >= root->next_id)
            throw Error("unknown qubit id " + std::to_string(id));
        if (!root->live[id])
            throw Error("qubit " + root->qubit_names[id] + " is already deallocated");
        root->live[id] = 0;
        root->log.push_back({LogTag::Dealloc, GateKind(), {id}});
    }
}

std::vector<LogEntry> invert_log_span(const std::shared_ptr<SessionState> &root, size_t begin,
                                      size_t end) {
    std::vector<LogEntry> out;
    std::map<uint64_t, uint64_t> remap; // dead id -> fresh id
    for (size_t i = end; i-- > begin;) {
        const LogEntry &e = root->log[i];
        switch (e.tag) {
        case LogTag::Dealloc: {
            uint64_t fresh = alloc_raw(root, 1, root->qubit_names[e.qubits[0]] + "'")[0];
            // alloc_raw appended an Alloc entry to the log; keep it in `out`
            // instead so the caller controls placement.
            out.push_back(root->log.back());
            root->log.pop_back();
            remap[e.qubits[0]] = fresh;
            break;
        }
        case LogTag::Alloc: {
            uint64_t id = e.qubits[0];
            auto it = remap.find(id);
            if (it != remap.end()) {
                out.push_back({LogTag::Dealloc, GateKind(), {it->second}});
                root->live[it->second] = 0;
                remap.erase(it);
            } else {
                if (!root->live[id])
                    throw Error("cannot invert a span that leaks allocations");
                out.push_back({LogTag::Dealloc, GateKind(), {id}});
                root->live[id] = 0;
            }
            break;
        }
        case LogTag::Gate: {
            LogEntry inv = e;
            inv.kind = e.kind.op == Op::Barrier ? e.kind : e.kind.adjoint();
            for (auto &q : inv.qubits) {
                auto it = remap.find(q);
                if (it != remap.end())
                    q = it->second;
            }
            out.push_back(std::move(inv));
            break;
        }
        }
    }
    if (!remap.empty())
        throw Error("cannot invert a span that leaks allocations");
    return out;
}

} // namespace detail

QuantumCircuit naive_circuit(const QuantumSession &qs) {
    auto r = qs.root();
    QuantumCircuit qc(r->next_id);
    for (uint64_t i = 0; i < r->next_id; ++i)
        qc.set_label(static_cast<uint32_t>(i), r->qubit_names[i]);
    for (const auto &e : r->log) {
        if (e.tag != LogTag::Gate)
            continue;
        std::vector<uint32_t> qs32;
        qs32.reserve(e.qubits.size());
        for (uint64_t q : e.qubits)
            qs32.push_back(static_cast<uint32_t>(q));
        qc.append(e.kind, std::move(qs32));
    }
    return qc;
}

// Single-operand and two-operand gate helpers.
void x(const QubitRef &q) { detail::record_gate(GateKind(Op::X), {q}); }
void y(const QubitRef &q) { detail::record_gate(GateKind(Op::Y), {q}); }
void z(const QubitRef &q) { detail::record_gate(GateKind(Op::Z), {q}); }
void h(const QubitRef &q) { detail::record_gate(GateKind(Op::H), {q}); }
void s(const QubitRef &q) { detail::record_gate(GateKind(Op::S), {q}); }
void sdg(const QubitRef &q) { detail::record_gate(GateKind(Op::Sdg), {q}); }
void t(const QubitRef &q) { detail::record_gate(GateKind(Op::T), {q}); }
void tdg(const QubitRef &q) { detail::record_gate(GateKind(Op::Tdg), {q}); }
void rx(double theta, const QubitRef &q) { detail::record_gate(GateKind(Op::RX, theta), {q}); }
void ry(double theta, const QubitRef &q) { detail::record_gate(GateKind(Op::RY, theta), {q}); }
void rz(double theta, const QubitRef &q) { detail::record_gate(GateKind(Op::RZ, theta), {q}); }
void p(double theta, const QubitRef &q) { detail::record_gate(GateKind(Op::P, theta), {q}); }
void cx(const QubitRef &c, const QubitRef &t) { detail::record_gate(GateKind(Op::CX), {c, t}); }
void cz(const QubitRef &a, const QubitRef &b) { detail::record_gate(GateKind(Op::CZ), {a, b}); }
void cp(double theta, const QubitRef &a, const QubitRef &b) {
    detail::record_gate(GateKind(Op::CP, theta), {a, b});
}
void swap(const QubitRef &a, const QubitRef &b) {
    detail::record_gate(GateKind(Op::Swap), {a, b});
}

void mcx(const std::vector<QubitRef> &ctrls, const QubitRef &target) {
    std::vector<QubitRef> qs = ctrls;
    qs.push_back(target);
    if (ctrls.empty())
        detail::record_gate(GateKind(Op::X), std::move(qs));
    else if (ctrls.size() == 1)
        detail::record_gate(GateKind(Op::CX), std::move(qs));
    else
        detail::record_gate(GateKind::mcx(static_cast<uint32_t>(ctrls.size())), std::move(qs));
}

void mcz(const std::vector<QubitRef> &qubits) {
    if (qubits.empty())
        throw Error("mcz needs at least one qubit");
    if (qubits.size() == 1)
        detail::record_gate(GateKind(Op::Z), qubits);
    else if (qubits.size() == 2)
        detail::record_gate(GateKind(Op::CZ), qubits);
    else
        detail::record_gate(GateKind::mcz(static_cast<uint32_t>(qubits.size() - 1)), qubits);
}

void barrier(const std::vector<QubitRef> &qubits) {
    detail::record_gate(GateKind(Op::Barrier), qubits);
}

} // namespace qforge

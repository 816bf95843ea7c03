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

#include "qforge/environments.hpp"

#include <algorithm>
#include <set>

#include "qforge/mcx.hpp"

namespace qforge {

namespace {

std::shared_ptr<SessionState> reroot(std::shared_ptr<SessionState> s) {
    while (s && s->merged_into)
        s = s->merged_into;
    return s;
}

struct EnvFrame {
    enum class Kind { Control, Condition, Inversion, Conjugation, GateWrap, Suppress, EvalCapture };
    Kind kind;
    std::shared_ptr<SessionState> session; // bound root; null until first gate
    bool bound = false;

    // Control
    std::vector<QubitRef> ctrls;
    uint64_t ctrl_state = ~uint64_t{0};
    bool materialized = false;
    uint64_t ctrl_id = 0;
    bool owns_accumulator = false;
    std::vector<uint64_t> acc_inputs;
    std::vector<uint64_t> anti_ids;

    // Span frames
    size_t span_begin = 0;
    // Conjugation / Condition evaluation region
    size_t u_begin = 0, u_end = 0;
    bool has_u = false;
};

thread_local std::vector<EnvFrame> g_envs;
thread_local bool g_capture_suppressed = false;

std::shared_ptr<SessionState> env_root() {
    for (auto it = g_envs.rbegin(); it != g_envs.rend(); ++it)
        if (it->bound && it->session)
            return it->session = reroot(it->session);
    return nullptr;
}

void bind_frame(EnvFrame &f, const std::shared_ptr<SessionState> &root) {
    f.session = root;
    f.bound = true;
    f.span_begin = root->log.size();
    root->open_envs += 1;
}

void bind_pending_frames(const std::shared_ptr<SessionState> &root) {
    for (auto &f : g_envs)
        if (!f.bound)
            bind_frame(f, root);
}

GateKind margolus_dg_gate() {
    static const GateKind g = margolus_gate().adjoint();
    return g;
}

void splice_circuit(const std::shared_ptr<SessionState> &root, const QuantumCircuit &qc,
                    const std::vector<uint64_t> &wires) {
    for (const auto &ins : qc.instructions()) {
        LogEntry e{LogTag::Gate, ins.kind, {}};
        e.qubits.reserve(ins.qubits.size());
        for (uint32_t q : ins.qubits)
            e.qubits.push_back(wires.at(q));
        detail::raw_append(root, std::move(e));
    }
}

uint64_t materialize(size_t frame_index);

std::optional<uint64_t> effective_control() {
    for (size_t i = g_envs.size(); i-- > 0;) {
        switch (g_envs[i].kind) {
        case EnvFrame::Kind::Suppress:
            return std::nullopt;
        case EnvFrame::Kind::Control:
        case EnvFrame::Kind::Condition:
            return materialize(i);
        default:
            break;
        }
    }
    return std::nullopt;
}

uint64_t materialize(size_t frame_index) {
    EnvFrame &f = g_envs[frame_index];
    if (f.materialized)
        return f.ctrl_id;
    std::optional<uint64_t> outer;
    for (size_t j = frame_index; j-- > 0;) {
        if (g_envs[j].kind == EnvFrame::Kind::Suppress)
            break;
        if (g_envs[j].kind == EnvFrame::Kind::Control ||
            g_envs[j].kind == EnvFrame::Kind::Condition) {
            outer = materialize(j);
            break;
        }
    }
    auto root = f.session = reroot(f.session);
    std::vector<uint64_t> inputs;
    if (outer)
        inputs.push_back(*outer);
    for (size_t i = 0; i < f.ctrls.size(); ++i) {
        auto [s, id] = resolve(f.ctrls[i]);
        if (s != root)
            throw Error("control qubit left its environment session");
        inputs.push_back(id);
        if (!((f.ctrl_state >> i) & 1)) {
            detail::raw_append(root, {LogTag::Gate, GateKind(Op::X), {id}});
            f.anti_ids.push_back(id);
        }
    }
    f.materialized = true;
    if (inputs.size() == 1) {
        f.ctrl_id = inputs[0];
        return f.ctrl_id;
    }
    uint64_t acc = detail::alloc_raw(root, 1, "env_ctrl")[0];
    std::vector<uint64_t> qs = inputs;
    qs.push_back(acc);
    if (inputs.size() == 2)
        detail::raw_append(root, {LogTag::Gate, margolus_gate(), std::move(qs)});
    else
        detail::raw_append(
            root, {LogTag::Gate, GateKind::mcx(static_cast<uint32_t>(inputs.size())), std::move(qs)});
    f.acc_inputs = std::move(inputs);
    f.ctrl_id = acc;
    f.owns_accumulator = true;
    return acc;
}

void emit_controlled(const std::shared_ptr<SessionState> &root, const GateKind &kind,
                     const std::vector<uint64_t> &ids, uint64_t c) {
    auto raw = [&](GateKind k, std::vector<uint64_t> qs) {
        detail::raw_append(root, {LogTag::Gate, std::move(k), std::move(qs)});
    };
    auto with_ctrl = [&](uint64_t extra = 0) {
        std::vector<uint64_t> qs{c};
        qs.insert(qs.end(), ids.begin(), ids.end());
        (void)extra;
        return qs;
    };
    switch (kind.op) {
    case Op::X:
        raw(GateKind(Op::CX), {c, ids[0]});
        return;
    case Op::CX:
        raw(GateKind::mcx(2), with_ctrl());
        return;
    case Op::MCX:
        raw(GateKind::mcx(kind.controls + 1), with_ctrl());
        return;
    case Op::Z:
        raw(GateKind(Op::CZ), {c, ids[0]});
        return;
    case Op::CZ:
        raw(GateKind::mcz(2), with_ctrl());
        return;
    case Op::MCZ:
        raw(GateKind::mcz(kind.controls + 1), with_ctrl());
        return;
    case Op::P:
        raw(GateKind(Op::CP, kind.angle), {c, ids[0]});
        return;
    case Op::S:
        raw(GateKind(Op::CP, M_PI / 2), {c, ids[0]});
        return;
    case Op::Sdg:
        raw(GateKind(Op::CP, -M_PI / 2), {c, ids[0]});
        return;
    case Op::T:
        raw(GateKind(Op::CP, M_PI / 4), {c, ids[0]});
        return;
    case Op::Tdg:
        raw(GateKind(Op::CP, -M_PI / 4), {c, ids[0]});
        return;
    case Op::CP: {
        double t2 = kind.angle / 2;
        raw(GateKind(Op::CP, t2), {ids[0], ids[1]});
        raw(GateKind(Op::CX), {c, ids[0]});
        raw(GateKind(Op::CP, -t2), {ids[0], ids[1]});
        raw(GateKind(Op::CX), {c, ids[0]});
        raw(GateKind(Op::CP, t2), {c, ids[1]});
        return;
    }
    case Op::RZ: {
        raw(GateKind(Op::RZ, kind.angle / 2), {ids[0]});
        raw(GateKind(Op::CX), {c, ids[0]});
        raw(GateKind(Op::RZ, -kind.angle / 2), {ids[0]});
        raw(GateKind(Op::CX), {c, ids[0]});
        return;
    }
    case Op::Swap:
        raw(GateKind(Op::CX), {ids[1], ids[0]});
        raw(GateKind::mcx(2), {c, ids[0], ids[1]});
        raw(GateKind(Op::CX), {ids[1], ids[0]});
        return;
    case Op::H:
    case Op::RX:
    case Op::RY:
    case Op::Y: {
        QuantumCircuit tmp(2);
        emit_controlled_1q(tmp, kind.matrix1q(), {0}, 1, {});
        splice_circuit(root, tmp, {c, ids[0]});
        return;
    }
    case Op::Defined: {
        GateKind cg = control_gate(kind, 1);
        std::vector<uint64_t> qs{c};
        qs.insert(qs.end(), ids.begin(), ids.end());
        raw(std::move(cg), std::move(qs));
        return;
    }
    case Op::Measure:
        throw Error("measure inside an environment is not supported");
    case Op::Barrier:
        raw(kind, ids);
        return;
    }
}

void pop_frame() {
    EnvFrame &f = g_envs.back();
    if (f.bound && f.session) {
        f.session = reroot(f.session);
        f.session->open_envs -= 1;
    }
    g_envs.pop_back();
}

} // namespace

namespace detail {

void raw_append(const std::shared_ptr<SessionState> &root, LogEntry entry) {
    if (entry.tag == LogTag::Gate && entry.kind.op != Op::Barrier)
        for (uint64_t q : entry.qubits)
            root->touched[q] = 1;
    root->log.push_back(std::move(entry));
}

void merge_into(const std::shared_ptr<SessionState> &root,
                const std::shared_ptr<SessionState> &other) {
    if (root == other)
        return;
    if (other->open_envs > 0)
        throw Error("cannot merge a session with open environments");
    uint64_t offset = root->next_id;
    root->next_id += other->next_id;
    root->live.insert(root->live.end(), other->live.begin(), other->live.end());
    root->touched.insert(root->touched.end(), other->touched.begin(), other->touched.end());
    root->qubit_names.insert(root->qubit_names.end(), other->qubit_names.begin(),
                             other->qubit_names.end());
    std::vector<LogEntry> entries = std::move(other->log);
    for (auto &e : entries)
        for (auto &q : e.qubits)
            q += offset;
    // Insert before any active captured span so span rewriting stays valid.
    size_t pos = root->log.size();
    for (const auto &f : g_envs) {
        if (!f.bound || reroot(f.session) != root)
            continue;
        pos = std::min(pos, f.span_begin);
        if (f.has_u)
            pos = std::min(pos, f.u_begin);
    }
    root->log.insert(root->log.begin() + static_cast<ptrdiff_t>(pos),
                     std::make_move_iterator(entries.begin()),
                     std::make_move_iterator(entries.end()));
    size_t delta = entries.size();
    for (auto &f : g_envs) {
        if (!f.bound || reroot(f.session) != root)
            continue;
        if (f.span_begin >= pos)
            f.span_begin += delta;
        if (f.has_u && f.u_begin >= pos) {
            f.u_begin += delta;
            f.u_end += delta;
        }
    }
    for (auto &v : other->variables)
        root->variables.push_back(std::move(v));
    other->variables.clear();
    other->merged_into = root;
    other->merge_offset = offset;
}

void record_gate(GateKind kind, std::vector<QubitRef> qubits) {
    if (qubits.empty())
        return;
    auto target = env_root();
    if (!target)
        target = resolve(qubits[0]).first;
    for (const auto &q : qubits) {
        auto r = resolve(q).first;
        if (r != target)
            merge_into(target, r);
    }
    bind_pending_frames(target);

    std::vector<uint64_t> ids;
    ids.reserve(qubits.size());
    std::set<uint64_t> seen;
    for (const auto &q : qubits) {
        auto [s, id] = resolve(q);
        if (!s->live[id])
            throw Error("gate on deallocated qubit " + s->qubit_names[id]);
        if (!seen.insert(id).second)
            throw Error("duplicate qubit " + s->qubit_names[id] + " in " + kind.name() +
                        " instruction");
        ids.push_back(id);
    }
    if (kind.op != Op::Barrier && ids.size() != kind.arity())
        throw Error("arity mismatch: gate " + kind.name() + " expects " +
                    std::to_string(kind.arity()) + " qubits, got " + std::to_string(ids.size()));

    std::optional<uint64_t> ctrl =
        kind.op == Op::Barrier ? std::nullopt : effective_control();
    target = reroot(target);
    if (!ctrl) {
        raw_append(target, {LogTag::Gate, std::move(kind), std::move(ids)});
        return;
    }
    emit_controlled(target, kind, ids, *ctrl);
}

void eval_capture_begin() {
    EnvFrame f;
    f.kind = EnvFrame::Kind::EvalCapture;
    g_envs.push_back(std::move(f));
}

EvalSpan eval_capture_end() {
    if (g_envs.empty() || g_envs.back().kind != EnvFrame::Kind::EvalCapture)
        throw Error("mismatched evaluation capture");
    EvalSpan span;
    EnvFrame &f = g_envs.back();
    if (f.bound) {
        span.session = reroot(f.session);
        span.begin = f.span_begin;
        span.end = span.session->log.size();
        span.bound = true;
    }
    pop_frame();
    return span;
}

void condition_scope(const QubitRef &bool_qubit, const EvalSpan &eval, bool auto_uncompute,
                     const std::function<void()> &body) {
    auto [root, id] = resolve(bool_qubit);
    EnvFrame f;
    f.kind = EnvFrame::Kind::Condition;
    f.materialized = true;
    f.ctrl_id = id;
    bind_frame(f, root);
    f.span_begin = eval.bound ? eval.begin : root->log.size();
    if (eval.bound) {
        f.has_u = true;
        f.u_begin = eval.begin;
        f.u_end = eval.end;
    }
    g_envs.push_back(std::move(f));
    try {
        body();
    } catch (...) {
        pop_frame();
        throw;
    }
    EnvFrame frame = g_envs.back();
    pop_frame();
    if (auto_uncompute && frame.has_u) {
        auto r = reroot(frame.session);
        auto inv = invert_log_span(r, frame.u_begin, frame.u_end);
        for (auto &e : inv)
            raw_append(r, std::move(e));
    }
}

} // namespace detail

void control(const std::vector<QubitRef> &ctrls, const std::function<void()> &body,
             uint64_t ctrl_state) {
    if (ctrls.empty())
        throw Error("control environment needs at least one control qubit");
    auto target = env_root();
    if (!target)
        target = resolve(ctrls[0]).first;
    for (const auto &c : ctrls) {
        auto r = resolve(c).first;
        if (r != target)
            detail::merge_into(target, r);
    }
    EnvFrame f;
    f.kind = EnvFrame::Kind::Control;
    f.ctrls = ctrls;
    f.ctrl_state = ctrl_state;
    bind_frame(f, target);
    g_envs.push_back(std::move(f));
    try {
        body();
    } catch (...) {
        pop_frame();
        throw;
    }
    EnvFrame frame = g_envs.back();
    pop_frame();
    if (frame.materialized) {
        auto root = reroot(frame.session);
        if (frame.owns_accumulator) {
            std::vector<uint64_t> qs = frame.acc_inputs;
            qs.push_back(frame.ctrl_id);
            if (frame.acc_inputs.size() == 2)
                detail::raw_append(root, {LogTag::Gate, margolus_dg_gate(), std::move(qs)});
            else
                detail::raw_append(
                    root, {LogTag::Gate, GateKind::mcx(static_cast<uint32_t>(frame.acc_inputs.size())),
                           std::move(qs)});
            detail::dealloc_raw(root, {frame.ctrl_id});
        }
        for (auto it = frame.anti_ids.rbegin(); it != frame.anti_ids.rend(); ++it)
            detail::raw_append(root, {LogTag::Gate, GateKind(Op::X), {*it}});
    }
}

void control(const QubitRef &ctrl, const std::function<void()> &body) {
    control(std::vector<QubitRef>{ctrl}, body);
}

void invert(const std::function<void()> &body) {
    EnvFrame f;
    f.kind = EnvFrame::Kind::Inversion;
    g_envs.push_back(std::move(f));
    try {
        body();
    } catch (...) {
        pop_frame();
        throw;
    }
    EnvFrame frame = g_envs.back();
    pop_frame();
    if (!frame.bound)
        return;
    auto root = reroot(frame.session);
    size_t begin = frame.span_begin;
    auto inv = detail::invert_log_span(root, begin, root->log.size());
    root->log.erase(root->log.begin() + static_cast<ptrdiff_t>(begin), root->log.end());
    for (auto &e : inv)
        detail::raw_append(root, std::move(e));
}

void conjugate(const std::function<void()> &conjugator, const std::function<void()> &body) {
    EnvFrame cap;
    cap.kind = EnvFrame::Kind::Suppress;
    g_envs.push_back(std::move(cap));
    try {
        conjugator();
    } catch (...) {
        pop_frame();
        throw;
    }
    EnvFrame ucap = g_envs.back();
    pop_frame();
    if (ucap.bound) {
        // The conjugator must not leak allocations.
        auto root = reroot(ucap.session);
        std::set<uint64_t> allocated;
        for (size_t i = ucap.span_begin; i < root->log.size(); ++i) {
            const auto &e = root->log[i];
            if (e.tag == LogTag::Alloc)
                allocated.insert(e.qubits[0]);
            else if (e.tag == LogTag::Dealloc)
                allocated.erase(e.qubits[0]);
        }
        if (!allocated.empty())
            throw Error("conjugator must be self-contained (it leaks allocations)");
    }

    EnvFrame f;
    f.kind = EnvFrame::Kind::Conjugation;
    if (ucap.bound) {
        auto root = reroot(ucap.session);
        bind_frame(f, root);
        f.span_begin = ucap.span_begin;
        f.has_u = true;
        f.u_begin = ucap.span_begin;
        f.u_end = root->log.size();
    }
    g_envs.push_back(std::move(f));
    try {
        body();
    } catch (...) {
        pop_frame();
        throw;
    }
    EnvFrame frame = g_envs.back();
    pop_frame();
    if (frame.has_u) {
        auto root = reroot(frame.session);
        auto inv = detail::invert_log_span(root, frame.u_begin, frame.u_end);
        for (auto &e : inv)
            detail::raw_append(root, std::move(e));
    }
}

void gate_wrap(const std::string &name, const std::function<void()> &body) {
    EnvFrame f;
    f.kind = EnvFrame::Kind::GateWrap;
    g_envs.push_back(std::move(f));
    try {
        body();
    } catch (...) {
        pop_frame();
        throw;
    }
    EnvFrame frame = g_envs.back();
    pop_frame();
    if (!frame.bound)
        return;
    auto root = reroot(frame.session);
    size_t begin = frame.span_begin;
    std::vector<uint64_t> wires;
    for (size_t i = begin; i < root->log.size(); ++i) {
        const auto &e = root->log[i];
        if (e.tag != LogTag::Gate)
            throw Error("gate_wrap body must be pure gates (no allocation)");
        for (uint64_t q : e.qubits)
            if (std::find(wires.begin(), wires.end(), q) == wires.end())
                wires.push_back(q);
    }
    std::sort(wires.begin(), wires.end());
    QuantumCircuit bodyqc(wires.size());
    for (size_t i = begin; i < root->log.size(); ++i) {
        const auto &e = root->log[i];
        std::vector<uint32_t> qs;
        qs.reserve(e.qubits.size());
        for (uint64_t q : e.qubits)
            qs.push_back(static_cast<uint32_t>(
                std::lower_bound(wires.begin(), wires.end(), q) - wires.begin()));
        bodyqc.append(e.kind, std::move(qs));
    }
    root->log.erase(root->log.begin() + static_cast<ptrdiff_t>(begin), root->log.end());
    auto def = make_defined(name, std::move(bodyqc));
    detail::raw_append(root, {LogTag::Gate, GateKind::defined(std::move(def)), std::move(wires)});
}

void custom_call(const std::function<void(std::optional<QubitRef>)> &f) {
    std::optional<uint64_t> ctrl;
    std::shared_ptr<SessionState> root;
    for (size_t i = g_envs.size(); i-- > 0;) {
        if (g_envs[i].kind == EnvFrame::Kind::Suppress)
            break;
        if (g_envs[i].kind == EnvFrame::Kind::Control ||
            g_envs[i].kind == EnvFrame::Kind::Condition) {
            ctrl = materialize(i);
            root = reroot(g_envs[i].session);
            break;
        }
    }
    if (!ctrl) {
        f(std::nullopt);
        return;
    }
    EnvFrame sup;
    sup.kind = EnvFrame::Kind::Suppress;
    g_envs.push_back(std::move(sup));
    try {
        f(QubitRef{root, *ctrl});
    } catch (...) {
        pop_frame();
        throw;
    }
    pop_frame();
}

} // namespace qforge

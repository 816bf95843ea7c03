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

#include "qforge/mcx.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace qforge {

namespace {

constexpr double kEps = 1e-12;

struct Zyz {
    double alpha, beta, gamma, delta;
};

// U = e^{i alpha} RZ(beta) RY(gamma) RZ(delta)
Zyz decompose_zyz(const Mat2 &u) {
    cmplx det = u[0] * u[3] - u[1] * u[2];
    double alpha = std::arg(det) / 2.0;
    cmplx ph = std::exp(cmplx(0, -alpha));
    cmplx v00 = ph * u[0], v10 = ph * u[2], v11 = ph * u[3];
    double gamma = 2.0 * std::atan2(std::abs(v10), std::abs(v00));
    double beta, delta;
    if (std::abs(v10) < kEps) {
        beta = std::abs(v11) < kEps ? 0.0 : std::arg(v11);
        delta = beta;
    } else if (std::abs(v00) < kEps) {
        beta = std::arg(v10);
        delta = -beta;
    } else {
        double sum = std::arg(v11) * 2.0;  // beta + delta
        double diff = std::arg(v10) * 2.0; // beta - delta
        beta = (sum + diff) / 2.0;
        delta = (sum - diff) / 2.0;
    }
    return {alpha, beta, gamma, delta};
}

Mat2 mat_sqrt(const Mat2 &u) {
    cmplx det = u[0] * u[3] - u[1] * u[2];
    cmplx tr = u[0] + u[3];
    cmplx sd = std::sqrt(det);
    if (std::abs(tr + 2.0 * sd) < 1e-9)
        sd = -sd;
    cmplx denom = std::sqrt(tr + 2.0 * sd);
    return {(u[0] + sd) / denom, u[1] / denom, u[2] / denom, (u[3] + sd) / denom};
}

Mat2 mat_adjoint(const Mat2 &u) {
    return {std::conj(u[0]), std::conj(u[2]), std::conj(u[1]), std::conj(u[3])};
}

void emit_rz(QuantumCircuit &qc, double theta, uint32_t q) {
    if (std::abs(theta) > kEps)
        qc.rz(theta, q);
}

void emit_ry(QuantumCircuit &qc, double theta, uint32_t q) {
    if (std::abs(theta) > kEps)
        qc.ry(theta, q);
}

// Single-controlled U via the two-CX ABC decomposition, phase exact.
void emit_cu_abc(QuantumCircuit &qc, const Mat2 &u, uint32_t c, uint32_t t) {
    Zyz d = decompose_zyz(u);
    emit_rz(qc, (d.delta - d.beta) / 2.0, t);
    qc.cx(c, t);
    emit_rz(qc, -(d.delta + d.beta) / 2.0, t);
    emit_ry(qc, -d.gamma / 2.0, t);
    qc.cx(c, t);
    emit_ry(qc, d.gamma / 2.0, t);
    emit_rz(qc, d.beta, t);
    if (std::abs(d.alpha) > kEps)
        qc.p(d.alpha, c);
}

std::vector<uint32_t> concat(std::vector<uint32_t> a, const std::vector<uint32_t> &b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

std::vector<uint32_t> slice(const std::vector<uint32_t> &v, size_t from, size_t to) {
    return {v.begin() + from, v.begin() + to};
}

} // namespace

GateKind margolus_gate() {
    static const std::shared_ptr<const DefinedGate> inst = [] {
        QuantumCircuit body(3);
        body.ry(-M_PI / 4, 2);
        body.cx(1, 2);
        body.ry(-M_PI / 4, 2);
        body.cx(0, 2);
        body.ry(M_PI / 4, 2);
        body.cx(1, 2);
        body.ry(M_PI / 4, 2);
        auto d = std::make_shared<DefinedGate>();
        d->name = "rtof";
        d->body = std::move(body);
        d->qfree_hint = true;
        return d;
    }();
    return GateKind::defined(inst);
}

void emit_toffoli(QuantumCircuit &qc, uint32_t c1, uint32_t c2, uint32_t t) {
    qc.h(t);
    qc.cx(c2, t);
    qc.tdg(t);
    qc.cx(c1, t);
    qc.t(t);
    qc.cx(c2, t);
    qc.tdg(t);
    qc.cx(c1, t);
    qc.t(c2);
    qc.t(t);
    qc.h(t);
    qc.cx(c1, c2);
    qc.t(c1);
    qc.tdg(c2);
    qc.cx(c1, c2);
}

void emit_mcx_pt(QuantumCircuit &qc, std::vector<uint32_t> ctrls, uint32_t target,
                 std::vector<uint32_t> dirty, bool dagger) {
    size_t k = ctrls.size();
    if (k == 0) {
        qc.x(target);
        return;
    }
    if (k == 1) {
        qc.cx(ctrls[0], target);
        return;
    }
    if (k == 2) {
        GateKind g = margolus_gate();
        if (dagger)
            g = g.adjoint();
        qc.append(g, {ctrls[0], ctrls[1], target});
        return;
    }
    // Larger phase tolerant blocks fall back to the exact synthesis (D = I).
    QuantumCircuit tmp(qc.num_qubits());
    emit_mcx(tmp, std::move(ctrls), target, {}, std::move(dirty));
    if (dagger)
        tmp = tmp.inverse();
    std::vector<uint32_t> idmap(qc.num_qubits());
    for (uint32_t i = 0; i < idmap.size(); ++i)
        idmap[i] = i;
    qc.extend(tmp, idmap);
}

void emit_controlled_1q(QuantumCircuit &qc, const Mat2 &u, std::vector<uint32_t> ctrls,
                        uint32_t target, std::vector<uint32_t> dirty) {
    size_t k = ctrls.size();
    if (k == 0)
        throw Error("emit_controlled_1q needs at least one control");
    if (k == 1) {
        emit_cu_abc(qc, u, ctrls[0], target);
        return;
    }
    Mat2 v = mat_sqrt(u);
    uint32_t last = ctrls.back();
    std::vector<uint32_t> rest = slice(ctrls, 0, k - 1);
    emit_controlled_1q(qc, v, rest, target, concat(dirty, {last}));
    emit_mcx_pt(qc, rest, last, concat(dirty, {target}), false);
    emit_cu_abc(qc, mat_adjoint(v), last, target);
    emit_mcx_pt(qc, rest, last, concat(dirty, {target}), true);
    emit_cu_abc(qc, v, last, target);
}

void emit_mcx(QuantumCircuit &qc, std::vector<uint32_t> ctrls, uint32_t target,
              std::vector<uint32_t> clean, std::vector<uint32_t> dirty) {
    size_t k = ctrls.size();
    if (k == 0) {
        qc.x(target);
        return;
    }
    if (k == 1) {
        qc.cx(ctrls[0], target);
        return;
    }
    if (k == 2) {
        emit_toffoli(qc, ctrls[0], ctrls[1], target);
        return;
    }
    if (clean.size() >= k - 2) {
        // V-chain: margolus compute/uncompute pairs around one exact Toffoli.
        std::vector<uint32_t> anc = slice(clean, 0, k - 2);
        QuantumCircuit chain(qc.num_qubits());
        chain.append(margolus_gate(), {ctrls[0], ctrls[1], anc[0]});
        for (size_t i = 2; i + 1 < k; ++i)
            chain.append(margolus_gate(), {ctrls[i], anc[i - 2], anc[i - 1]});
        std::vector<uint32_t> idmap(qc.num_qubits());
        for (uint32_t i = 0; i < idmap.size(); ++i)
            idmap[i] = i;
        qc.extend(chain, idmap);
        emit_toffoli(qc, ctrls[k - 1], anc[k - 3], target);
        qc.extend(chain.inverse(), idmap);
        return;
    }
    if (!clean.empty()) {
        // Split on one clean helper: a <- AND(A), then MCX(B + a), restore a.
        uint32_t a = clean[0];
        size_t half = (k + 1) / 2;
        std::vector<uint32_t> ga = slice(ctrls, 0, half);
        std::vector<uint32_t> gb = slice(ctrls, half, k);
        emit_mcx_pt(qc, ga, a, concat(concat(gb, {target}), dirty), false);
        emit_mcx(qc, concat(gb, {a}), target, slice(clean, 1, clean.size()), concat(dirty, ga));
        emit_mcx_pt(qc, ga, a, concat(concat(gb, {target}), dirty), true);
        return;
    }
    if (!dirty.empty()) {
        // Borrowed-qubit split: t ^= B&(d xor A&...) twice nets AND of all.
        uint32_t d = dirty[0];
        std::vector<uint32_t> rest_dirty = slice(dirty, 1, dirty.size());
        size_t half = (k + 1) / 2;
        std::vector<uint32_t> ga = slice(ctrls, 0, half);
        std::vector<uint32_t> gb = slice(ctrls, half, k);
        auto m1 = [&] { emit_mcx(qc, concat(gb, {d}), target, {}, concat(rest_dirty, ga)); };
        m1();
        emit_mcx_pt(qc, ga, d, concat(concat(rest_dirty, gb), {target}), false);
        m1();
        emit_mcx_pt(qc, ga, d, concat(concat(rest_dirty, gb), {target}), true);
        return;
    }
    // No helpers: recurse through controlled roots of X; the phase tolerant
    // halves inside borrow the target-side qubit.
    Mat2 x{0, 1, 1, 0};
    emit_controlled_1q(qc, x, std::move(ctrls), target, {});
}

QuantumCircuit mcx_decompose(uint32_t k_controls, uint32_t clean_ancillae) {
    if (k_controls < 1)
        throw Error("mcx_decompose needs at least one control");
    QuantumCircuit qc(k_controls + 1 + clean_ancillae);
    std::vector<uint32_t> ctrls, clean;
    for (uint32_t i = 0; i < k_controls; ++i)
        ctrls.push_back(i);
    for (uint32_t i = 0; i < clean_ancillae; ++i)
        clean.push_back(k_controls + 1 + i);
    emit_mcx(qc, ctrls, k_controls, clean, {});
    return qc;
}

QuantumCircuit mcx_phase_tolerant(uint32_t k_controls) {
    if (k_controls < 2)
        throw Error("mcx_phase_tolerant needs at least two controls");
    QuantumCircuit qc(k_controls + 1);
    std::vector<uint32_t> ctrls;
    for (uint32_t i = 0; i < k_controls; ++i)
        ctrls.push_back(i);
    emit_mcx_pt(qc, ctrls, k_controls, {}, false);
    return qc;
}

GateKind control_gate(const GateKind &kind, uint32_t k) {
    if (!kind.invertible())
        throw Error("cannot control non-invertible gate " + kind.name());
    if (kind.op == Op::Barrier)
        throw Error("cannot control a barrier");
    if (k == 0)
        return kind;
    switch (kind.op) {
    case Op::X:
        return k == 1 ? GateKind(Op::CX) : GateKind::mcx(k);
    case Op::CX:
        return GateKind::mcx(k + 1);
    case Op::MCX:
        return GateKind::mcx(kind.controls + k);
    case Op::Z:
        return k == 1 ? GateKind(Op::CZ) : GateKind::mcz(k);
    case Op::CZ:
        return GateKind::mcz(k + 1);
    case Op::MCZ:
        return GateKind::mcz(kind.controls + k);
    case Op::P:
        if (k == 1)
            return GateKind(Op::CP, kind.angle);
        break;
    case Op::S:
        return control_gate(GateKind(Op::P, M_PI / 2), k);
    case Op::Sdg:
        return control_gate(GateKind(Op::P, -M_PI / 2), k);
    case Op::T:
        return control_gate(GateKind(Op::P, M_PI / 4), k);
    case Op::Tdg:
        return control_gate(GateKind(Op::P, -M_PI / 4), k);
    case Op::CP:
        return control_gate(GateKind(Op::P, kind.angle), k + 1);
    default:
        break;
    }
    std::string cname = "c" + std::to_string(k) + "_" + kind.name();
    if (kind.op == Op::Swap) {
        QuantumCircuit body(k + 2);
        uint32_t a = k, b = k + 1;
        std::vector<uint32_t> ctrls;
        for (uint32_t i = 0; i < k; ++i)
            ctrls.push_back(i);
        body.cx(b, a);
        emit_mcx(body, concat(ctrls, {a}), b, {}, {});
        body.cx(b, a);
        auto d = make_defined(cname, std::move(body));
        return GateKind::defined(std::move(d));
    }
    if (kind.op == Op::Defined) {
        QuantumCircuit body(k + kind.arity());
        std::vector<uint32_t> ctrls;
        for (uint32_t i = 0; i < k; ++i)
            ctrls.push_back(i);
        for (const auto &ins : kind.def->body.instructions()) {
            GateKind cg = control_gate(ins.kind, k);
            std::vector<uint32_t> qs = ctrls;
            for (uint32_t q : ins.qubits)
                qs.push_back(q + k);
            body.append(std::move(cg), std::move(qs));
        }
        return GateKind::defined(make_defined(cname, std::move(body)));
    }
    // Remaining single-qubit kinds (H, RX, RY, RZ, P with k >= 2, Y).
    QuantumCircuit body(k + 1);
    std::vector<uint32_t> ctrls;
    for (uint32_t i = 0; i < k; ++i)
        ctrls.push_back(i);
    emit_controlled_1q(body, kind.matrix1q(), ctrls, k, {});
    auto d = std::make_shared<DefinedGate>();
    d->name = cname;
    d->body = std::move(body);
    d->qfree_hint = kind.is_qfree();
    return GateKind::defined(std::move(d));
}

QuantumCircuit QuantumCircuit::transpiled() const {
    QuantumCircuit out(num_qubits(), num_clbits());
    for (const auto &ins : instructions()) {
        switch (ins.kind.op) {
        case Op::Measure:
        case Op::Barrier:
            out.append(ins.kind, ins.qubits, ins.clbit);
            break;
        case Op::CX:
            out.append(ins.kind, ins.qubits);
            break;
        case Op::CZ:
            out.h(ins.qubits[1]);
            out.cx(ins.qubits[0], ins.qubits[1]);
            out.h(ins.qubits[1]);
            break;
        case Op::CP: {
            double t2 = ins.kind.angle / 2;
            out.p(t2, ins.qubits[0]);
            out.cx(ins.qubits[0], ins.qubits[1]);
            out.p(-t2, ins.qubits[1]);
            out.cx(ins.qubits[0], ins.qubits[1]);
            out.p(t2, ins.qubits[1]);
            break;
        }
        case Op::Swap:
            out.cx(ins.qubits[0], ins.qubits[1]);
            out.cx(ins.qubits[1], ins.qubits[0]);
            out.cx(ins.qubits[0], ins.qubits[1]);
            break;
        case Op::MCX: {
            if (ins.kind.controls == 2) {
                emit_toffoli(out, ins.qubits[0], ins.qubits[1], ins.qubits[2]);
            } else {
                QuantumCircuit dec =
                    mcx_decompose(ins.kind.controls, 0).transpiled();
                out.extend(dec, ins.qubits);
            }
            break;
        }
        case Op::MCZ: {
            uint32_t t = ins.qubits.back();
            out.h(t);
            QuantumCircuit sub(num_qubits());
            sub.mcx(slice(ins.qubits, 0, ins.qubits.size() - 1), t);
            sub = sub.transpiled();
            std::vector<uint32_t> idmap(num_qubits());
            for (uint32_t i = 0; i < idmap.size(); ++i)
                idmap[i] = i;
            out.extend(sub, idmap);
            out.h(t);
            break;
        }
        case Op::Defined: {
            QuantumCircuit sub = ins.kind.def->body.transpiled();
            out.extend(sub, ins.qubits);
            break;
        }
        default:
            out.append(ins.kind, ins.qubits);
            break;
        }
    }
    return out;
}

size_t mcx_depth_estimate(uint32_t k, uint32_t m) {
    static std::map<std::pair<uint32_t, uint32_t>, size_t> memo;
    static std::mutex mu;
    if (k < 2)
        return 1;
    uint32_t m_eff = std::min(m, k >= 2 ? k - 2 : 0);
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(k, m_eff);
    auto it = memo.find(key);
    if (it != memo.end())
        return it->second;
    size_t d = mcx_decompose(k, m_eff).stats(true).depth;
    memo[key] = d;
    return d;
}

} // namespace qforge

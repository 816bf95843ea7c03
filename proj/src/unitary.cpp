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

#include "qforge/unitary.hpp"

#include <cmath>

namespace qforge {

UnitaryMatrix::UnitaryMatrix(size_t num_qubits) : dim_(size_t{1} << num_qubits) {
    m_.assign(dim_ * dim_, cmplx(0.0));
    for (size_t i = 0; i < dim_; ++i)
        at(i, i) = 1.0;
}

namespace {

// Row index transforms for U <- G U. Rows are paired on the target bit;
// full rows combine at once so the matrix is updated in place.
void apply_1q(std::vector<cmplx> &m, size_t dim, const Mat2 &g, uint32_t q) {
    const size_t mask = size_t{1} << q;
    for (size_t r = 0; r < dim; ++r) {
        if (r & mask)
            continue;
        cmplx *row0 = m.data() + r * dim;
        cmplx *row1 = m.data() + (r | mask) * dim;
        for (size_t c = 0; c < dim; ++c) {
            cmplx a = row0[c], b = row1[c];
            row0[c] = g[0] * a + g[1] * b;
            row1[c] = g[2] * a + g[3] * b;
        }
    }
}

void swap_rows(std::vector<cmplx> &m, size_t dim, size_t r0, size_t r1) {
    cmplx *a = m.data() + r0 * dim;
    cmplx *b = m.data() + r1 * dim;
    for (size_t c = 0; c < dim; ++c)
        std::swap(a[c], b[c]);
}

void scale_row(std::vector<cmplx> &m, size_t dim, size_t r, cmplx f) {
    cmplx *a = m.data() + r * dim;
    for (size_t c = 0; c < dim; ++c)
        a[c] *= f;
}

} // namespace

void UnitaryMatrix::apply(const Instruction &ins) {
    const auto &k = ins.kind;
    switch (k.op) {
    case Op::Barrier:
        return;
    case Op::Measure:
        throw Error("cannot compute the unitary of a circuit containing measure");
    case Op::CX: {
        size_t c = size_t{1} << ins.qubits[0], t = size_t{1} << ins.qubits[1];
        for (size_t r = 0; r < dim_; ++r)
            if ((r & c) && !(r & t))
                swap_rows(m_, dim_, r, r | t);
        return;
    }
    case Op::MCX: {
        size_t cm = 0;
        for (size_t i = 0; i < k.controls; ++i)
            cm |= size_t{1} << ins.qubits[i];
        size_t t = size_t{1} << ins.qubits.back();
        for (size_t r = 0; r < dim_; ++r)
            if ((r & cm) == cm && !(r & t))
                swap_rows(m_, dim_, r, r | t);
        return;
    }
    case Op::CZ:
    case Op::MCZ: {
        size_t cm = 0;
        for (uint32_t q : ins.qubits)
            cm |= size_t{1} << q;
        for (size_t r = 0; r < dim_; ++r)
            if ((r & cm) == cm)
                scale_row(m_, dim_, r, cmplx(-1.0));
        return;
    }
    case Op::CP: {
        size_t cm = (size_t{1} << ins.qubits[0]) | (size_t{1} << ins.qubits[1]);
        cmplx f = std::exp(cmplx(0, 1) * k.angle);
        for (size_t r = 0; r < dim_; ++r)
            if ((r & cm) == cm)
                scale_row(m_, dim_, r, f);
        return;
    }
    case Op::Swap: {
        size_t a = size_t{1} << ins.qubits[0], b = size_t{1} << ins.qubits[1];
        for (size_t r = 0; r < dim_; ++r)
            if ((r & a) && !(r & b))
                swap_rows(m_, dim_, r, (r & ~a) | b);
        return;
    }
    case Op::Defined: {
        for (const auto &sub : k.def->body.instructions()) {
            Instruction mapped = sub;
            for (auto &q : mapped.qubits)
                q = ins.qubits[q];
            apply(mapped);
        }
        return;
    }
    default:
        apply_1q(m_, dim_, k.matrix1q(), ins.qubits[0]);
        return;
    }
}

double UnitaryMatrix::max_diff(const UnitaryMatrix &other) const {
    double d = 0;
    for (size_t i = 0; i < m_.size(); ++i)
        d = std::max(d, std::abs(m_[i] - other.m_[i]));
    return d;
}

bool UnitaryMatrix::is_identity(double tol) const {
    for (size_t r = 0; r < dim_; ++r)
        for (size_t c = 0; c < dim_; ++c) {
            cmplx want = r == c ? cmplx(1.0) : cmplx(0.0);
            if (std::abs(at(r, c) - want) > tol)
                return false;
        }
    return true;
}

double UnitaryMatrix::phase_aligned_diff(const UnitaryMatrix &other) const {
    if (dim_ != other.dim_)
        throw Error("dimension mismatch in unitary comparison");
    cmplx inner(0.0);
    for (size_t i = 0; i < m_.size(); ++i)
        inner += std::conj(other.m_[i]) * m_[i];
    cmplx phase = std::abs(inner) < 1e-300 ? cmplx(1.0) : inner / std::abs(inner);
    double d = 0;
    for (size_t i = 0; i < m_.size(); ++i)
        d = std::max(d, std::abs(m_[i] - phase * other.m_[i]));
    return d;
}

UnitaryMatrix QuantumCircuit::get_unitary(size_t cap) const {
    if (num_qubits_ > cap)
        throw Error("unitary cap exceeded: " + std::to_string(num_qubits_) + " qubits > cap " +
                    std::to_string(cap));
    if (has_measure())
        throw Error("cannot compute the unitary of a circuit containing measure");
    UnitaryMatrix u(num_qubits_);
    for (const auto &ins : instructions_)
        u.apply(ins);
    return u;
}

bool QuantumCircuit::compare_unitary(const QuantumCircuit &other, int precision) const {
    if (num_qubits_ != other.num_qubits_)
        throw Error("dimension mismatch: " + std::to_string(num_qubits_) + " vs " +
                    std::to_string(other.num_qubits_) + " qubits");
    UnitaryMatrix u1 = get_unitary(std::max(num_qubits_, size_t{12}));
    UnitaryMatrix u2 = other.get_unitary(std::max(num_qubits_, size_t{12}));
    return u1.phase_aligned_diff(u2) < std::pow(10.0, -precision);
}

} // namespace qforge

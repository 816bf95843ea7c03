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

#include <array>
#include <cstdint>
#include <memory>
#include <string>

#include "qforge/common.hpp"

namespace qforge {

struct DefinedGate;

enum class Op : uint8_t {
    X,
    Y,
    Z,
    H,
    S,
    Sdg,
    T,
    Tdg,
    RX,
    RY,
    RZ,
    P,
    CX,
    CZ,
    CP,
    Swap,
    MCX,
    MCZ,
    Measure,
    Barrier,
    Defined,
};

using Mat2 = std::array<cmplx, 4>; // row-major 2x2

/**
 * A gate kind: the operation plus its static parameters (angle, control
 * count, or a definition circuit for composite gates).
 */
class GateKind {
  public:
    Op op = Op::X;
    double angle = 0.0;
    uint32_t controls = 0; // MCX/MCZ only
    std::shared_ptr<const DefinedGate> def;

    GateKind() = default;
    explicit GateKind(Op o) : op(o) {}
    GateKind(Op o, double theta) : op(o), angle(theta) {}

    static GateKind mcx(uint32_t k);
    static GateKind mcz(uint32_t k);
    static GateKind defined(std::shared_ptr<const DefinedGate> d);

    size_t arity() const;
    std::string name() const;
    bool invertible() const { return op != Op::Measure; }
    bool parameterized() const {
        return op == Op::RX || op == Op::RY || op == Op::RZ || op == Op::P || op == Op::CP;
    }
    GateKind adjoint() const;

    /// True iff the unitary is a generalized permutation matrix.
    bool is_qfree() const;

    /// True iff the unitary is block-diagonal in the computational basis of
    /// the qubit at `position` (control-style use, preserves that qubit).
    bool diagonal_on(size_t position) const;

    /// 2x2 matrix for single-qubit kinds.
    Mat2 matrix1q() const;

    bool is_single_qubit() const;
};

} // namespace qforge

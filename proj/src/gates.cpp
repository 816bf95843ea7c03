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

#include "qforge/gates.hpp"

#include <cmath>
#include <cstdio>

#include "qforge/circuit.hpp"

namespace qforge {

std::string Label::str() const {
    if (std::holds_alternative<bool>(v_))
        return std::get<bool>(v_) ? "true" : "false";
    if (std::holds_alternative<int64_t>(v_))
        return std::to_string(std::get<int64_t>(v_));
    if (std::holds_alternative<double>(v_))
        return format_double(std::get<double>(v_));
    return std::get<std::string>(v_);
}

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", x);
    std::string s(buf);
    if (s.find('.') == std::string::npos && s.find('e') == std::string::npos &&
        s.find("inf") == std::string::npos && s.find("nan") == std::string::npos)
        s += ".0";
    return s;
}

GateKind GateKind::mcx(uint32_t k) {
    GateKind g(Op::MCX);
    g.controls = k;
    return g;
}

GateKind GateKind::mcz(uint32_t k) {
    GateKind g(Op::MCZ);
    g.controls = k;
    return g;
}

GateKind GateKind::defined(std::shared_ptr<const DefinedGate> d) {
    GateKind g(Op::Defined);
    g.def = std::move(d);
    return g;
}

size_t GateKind::arity() const {
    switch (op) {
    case Op::X:
    case Op::Y:
    case Op::Z:
    case Op::H:
    case Op::S:
    case Op::Sdg:
    case Op::T:
    case Op::Tdg:
    case Op::RX:
    case Op::RY:
    case Op::RZ:
    case Op::P:
    case Op::Measure:
        return 1;
    case Op::CX:
    case Op::CZ:
    case Op::CP:
    case Op::Swap:
        return 2;
    case Op::MCX:
    case Op::MCZ:
        return controls + 1;
    case Op::Barrier:
        return 0; // variadic
    case Op::Defined:
        return def->body.num_qubits();
    }
    return 0;
}

std::string GateKind::name() const {
    switch (op) {
    case Op::X: return "x";
    case Op::Y: return "y";
    case Op::Z: return "z";
    case Op::H: return "h";
    case Op::S: return "s";
    case Op::Sdg: return "sdg";
    case Op::T: return "t";
    case Op::Tdg: return "tdg";
    case Op::RX: return "rx";
    case Op::RY: return "ry";
    case Op::RZ: return "rz";
    case Op::P: return "p";
    case Op::CX: return "cx";
    case Op::CZ: return "cz";
    case Op::CP: return "cp";
    case Op::Swap: return "swap";
    case Op::MCX: return "mcx";
    case Op::MCZ: return "mcz";
    case Op::Measure: return "measure";
    case Op::Barrier: return "barrier";
    case Op::Defined: return def->name;
    }
    return "?";
}

GateKind GateKind::adjoint() const {
    switch (op) {
    case Op::S: return GateKind(Op::Sdg);
    case Op::Sdg: return GateKind(Op::S);
    case Op::T: return GateKind(Op::Tdg);
    case Op::Tdg: return GateKind(Op::T);
    case Op::RX:
    case Op::RY:
    case Op::RZ:
    case Op::P:
    case Op::CP: {
        GateKind g(op, -angle);
        return g;
    }
    case Op::Measure:
        throw Error("measure instruction is not invertible");
    case Op::Defined: {
        auto inv = std::make_shared<DefinedGate>();
        inv->name = def->name.size() >= 3 && def->name.substr(def->name.size() - 3) == "_dg"
                        ? def->name.substr(0, def->name.size() - 3)
                        : def->name + "_dg";
        inv->body = def->body.inverse();
        inv->qfree_hint = def->qfree_hint;
        inv->diagonal_hint = def->diagonal_hint;
        return GateKind::defined(std::move(inv));
    }
    default:
        return *this; // self-adjoint
    }
}

bool GateKind::is_qfree() const {
    switch (op) {
    case Op::X:
    case Op::Y:
    case Op::Z:
    case Op::S:
    case Op::Sdg:
    case Op::T:
    case Op::Tdg:
    case Op::RZ:
    case Op::P:
    case Op::CX:
    case Op::CZ:
    case Op::CP:
    case Op::Swap:
    case Op::MCX:
    case Op::MCZ:
    case Op::Barrier:
        return true;
    case Op::H:
    case Op::RX:
    case Op::RY:
    case Op::Measure:
        return false;
    case Op::Defined:
        if (def->qfree_hint)
            return *def->qfree_hint;
        for (const auto &ins : def->body.instructions())
            if (!ins.kind.is_qfree())
                return false;
        return true;
    }
    return false;
}

bool GateKind::diagonal_on(size_t position) const {
    switch (op) {
    case Op::Z:
    case Op::S:
    case Op::Sdg:
    case Op::T:
    case Op::Tdg:
    case Op::RZ:
    case Op::P:
    case Op::CZ:
    case Op::CP:
    case Op::MCZ:
    case Op::Barrier:
        return true;
    case Op::CX:
        return position == 0;
    case Op::MCX:
        return position < controls;
    case Op::X:
    case Op::Y:
    case Op::H:
    case Op::RX:
    case Op::RY:
    case Op::Swap:
    case Op::Measure:
        return false;
    case Op::Defined: {
        if (def->diagonal_hint)
            return def->diagonal_hint->at(position);
        for (const auto &ins : def->body.instructions())
            for (size_t p = 0; p < ins.qubits.size(); ++p)
                if (ins.qubits[p] == position && !ins.kind.diagonal_on(p))
                    return false;
        return true;
    }
    }
    return false;
}

bool GateKind::is_single_qubit() const {
    switch (op) {
    case Op::X:
    case Op::Y:
    case Op::Z:
    case Op::H:
    case Op::S:
    case Op::Sdg:
    case Op::T:
    case Op::Tdg:
    case Op::RX:
    case Op::RY:
    case Op::RZ:
    case Op::P:
        return true;
    default:
        return false;
    }
}

Mat2 GateKind::matrix1q() const {
    const cmplx i(0.0, 1.0);
    const double s2 = 1.0 / std::sqrt(2.0);
    switch (op) {
    case Op::X: return {0, 1, 1, 0};
    case Op::Y: return {0, -i, i, 0};
    case Op::Z: return {1, 0, 0, -1};
    case Op::H: return {s2, s2, s2, -s2};
    case Op::S: return {1, 0, 0, i};
    case Op::Sdg: return {1, 0, 0, -i};
    case Op::T: return {1, 0, 0, std::exp(i * (M_PI / 4))};
    case Op::Tdg: return {1, 0, 0, std::exp(-i * (M_PI / 4))};
    case Op::RX: {
        double c = std::cos(angle / 2), sn = std::sin(angle / 2);
        return {c, -i * sn, -i * sn, c};
    }
    case Op::RY: {
        double c = std::cos(angle / 2), sn = std::sin(angle / 2);
        return {c, -sn, sn, c};
    }
    case Op::RZ:
        return {std::exp(-i * (angle / 2)), 0, 0, std::exp(i * (angle / 2))};
    case Op::P:
        return {1, 0, 0, std::exp(i * angle)};
    default:
        throw Error("matrix1q: gate " + name() + " is not single-qubit");
    }
}

std::shared_ptr<const DefinedGate> make_defined(std::string name, QuantumCircuit body) {
    auto d = std::make_shared<DefinedGate>();
    d->name = std::move(name);
    d->body = std::move(body);
    return d;
}

} // namespace qforge

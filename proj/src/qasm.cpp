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

#include <cctype>
#include <cstdio>
#include <map>
#include <sstream>

#include "qforge/circuit.hpp"
#include "qforge/mcx.hpp"

namespace qforge {

namespace {

std::string fmt_angle(double a) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", a);
    return buf;
}

std::string sanitize(const std::string &name) {
    std::string out;
    for (char c : name) {
        if (std::isalnum(static_cast<unsigned char>(c)))
            out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        else if (c == '_')
            out += c;
    }
    if (out.empty() || !std::isalpha(static_cast<unsigned char>(out[0])))
        out = "g" + out;
    return out;
}

// Rewrites MCX(k>=3) and MCZ into expressible gates; Defined bodies are
// lowered recursively with shared definitions preserved.
class QasmLowering {
  public:
    QuantumCircuit lower(const QuantumCircuit &qc) {
        QuantumCircuit out(qc.num_qubits(), qc.num_clbits());
        for (const auto &ins : qc.instructions()) {
            switch (ins.kind.op) {
            case Op::MCX:
                if (ins.kind.controls <= 2) {
                    out.append(ins.kind, ins.qubits, ins.clbit);
                } else {
                    out.extend(mcx_decompose(ins.kind.controls, 0), ins.qubits);
                }
                break;
            case Op::MCZ: {
                uint32_t t = ins.qubits.back();
                out.h(t);
                if (ins.kind.controls <= 2) {
                    std::vector<uint32_t> qs = ins.qubits;
                    out.append(GateKind::mcx(ins.kind.controls), qs);
                } else {
                    out.extend(mcx_decompose(ins.kind.controls, 0), ins.qubits);
                }
                out.h(t);
                break;
            }
            case Op::Defined: {
                auto &cached = lowered_[ins.kind.def.get()];
                if (!cached) {
                    auto d = std::make_shared<DefinedGate>();
                    d->name = ins.kind.def->name;
                    d->body = lower(ins.kind.def->body);
                    cached = std::move(d);
                }
                out.append(GateKind::defined(cached), ins.qubits, ins.clbit);
                break;
            }
            default:
                out.append(ins.kind, ins.qubits, ins.clbit);
                break;
            }
        }
        return out;
    }

  private:
    std::map<const DefinedGate *, std::shared_ptr<const DefinedGate>> lowered_;
};

class QasmWriter {
  public:
    std::string write(const QuantumCircuit &qc) {
        for (const auto &ins : qc.instructions())
            if (ins.kind.op == Op::Defined)
                declare(ins.kind.def);
        std::ostringstream out;
        out << "OPENQASM 2.0;\n";
        out << "include \"qelib1.inc\";\n";
        out << decls_.str();
        out << "qreg q[" << qc.num_qubits() << "];\n";
        if (qc.has_measure())
            out << "creg c[" << qc.num_clbits() << "];\n";
        for (const auto &ins : qc.instructions())
            emit(out, ins, "q", nullptr);
        return out.str();
    }

  private:
    void declare(const std::shared_ptr<const DefinedGate> &def) {
        if (names_.count(def.get()))
            return;
        for (const auto &ins : def->body.instructions())
            if (ins.kind.op == Op::Defined)
                declare(ins.kind.def);
        std::string name = sanitize(def->name) + "_" + std::to_string(names_.size());
        names_[def.get()] = name;
        std::vector<std::string> params;
        params.reserve(def->body.num_qubits());
        for (size_t i = 0; i < def->body.num_qubits(); ++i)
            params.push_back("a" + std::to_string(i));
        decls_ << "gate " << name << " ";
        for (size_t i = 0; i < params.size(); ++i)
            decls_ << (i ? "," : "") << params[i];
        decls_ << " {\n";
        for (const auto &ins : def->body.instructions()) {
            decls_ << "  ";
            emit(decls_, ins, "", &params);
        }
        decls_ << "}\n";
    }

    void emit(std::ostream &os, const Instruction &ins, const std::string &reg,
              const std::vector<std::string> *params) {
        auto qubit = [&](uint32_t q) {
            return params ? (*params)[q] : reg + "[" + std::to_string(q) + "]";
        };
        const auto &k = ins.kind;
        std::string name;
        std::string args;
        switch (k.op) {
        case Op::Measure:
            os << "measure " << qubit(ins.qubits[0]) << " -> c[" << ins.clbit << "];\n";
            return;
        case Op::Barrier:
            os << "barrier";
            for (size_t i = 0; i < ins.qubits.size(); ++i)
                os << (i ? "," : " ") << qubit(ins.qubits[i]);
            os << ";\n";
            return;
        case Op::P:
            name = "u1";
            args = "(" + fmt_angle(k.angle) + ")";
            break;
        case Op::CP:
            name = "cu1";
            args = "(" + fmt_angle(k.angle) + ")";
            break;
        case Op::RX:
        case Op::RY:
        case Op::RZ:
            name = k.name();
            args = "(" + fmt_angle(k.angle) + ")";
            break;
        case Op::MCX:
            if (k.controls == 1)
                name = "cx";
            else if (k.controls == 2)
                name = "ccx";
            else
                throw Error("to_qasm: mcx must be pre-decomposed");
            break;
        case Op::MCZ:
            throw Error("to_qasm: mcz must be pre-decomposed");
        case Op::Defined:
            name = names_.at(k.def.get());
            break;
        default:
            name = k.name();
            break;
        }
        os << name << args;
        for (size_t i = 0; i < ins.qubits.size(); ++i)
            os << (i ? "," : " ") << qubit(ins.qubits[i]);
        os << ";\n";
    }

    std::map<const DefinedGate *, std::string> names_;
    std::ostringstream decls_;
};

} // namespace

std::string QuantumCircuit::to_qasm() const {
    QasmLowering lowering;
    QuantumCircuit lowered = lowering.lower(*this);
    QasmWriter writer;
    return writer.write(lowered);
}

} // namespace qforge

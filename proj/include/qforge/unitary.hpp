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

#include <vector>

#include "qforge/circuit.hpp"

namespace qforge {

/**
 * Dense unitary of a circuit, row-major over 2^n basis states. Basis index
 * bit j corresponds to qubit j (little-endian), so the index of a basis
 * state equals the register value for LSB-first registers.
 */
class UnitaryMatrix {
  public:
    explicit UnitaryMatrix(size_t num_qubits);

    size_t dim() const { return dim_; }
    cmplx &at(size_t row, size_t col) { return m_[row * dim_ + col]; }
    const cmplx &at(size_t row, size_t col) const { return m_[row * dim_ + col]; }

    /// Left-multiply by a gate acting on the given qubits (U <- G U).
    void apply(const Instruction &ins);

    double max_diff(const UnitaryMatrix &other) const;
    bool is_identity(double tol) const;

    /// max-entry |this - e^{i a} other| with the phase chosen from the
    /// Frobenius inner product direction.
    double phase_aligned_diff(const UnitaryMatrix &other) const;

  private:
    size_t dim_;
    std::vector<cmplx> m_;
};

} // namespace qforge

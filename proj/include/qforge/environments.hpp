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

#include <functional>

#include "qforge/session.hpp"

namespace qforge {

/**
 * Scoped compilation modes. Each function records its body under a
 * specific rewriting: controlled, inverted, conjugated or collected into
 * one gate. Nested control is context informed: the inner condition value
 * is computed controlled on the outer one, and body gates always carry a
 * single control qubit.
 */

/// Run `body` with every recorded gate controlled on `ctrls`. Bit i of
/// `ctrl_state` gives the required value of ctrls[i] (default all ones).
void control(const std::vector<QubitRef> &ctrls, const std::function<void()> &body,
             uint64_t ctrl_state = ~uint64_t{0});
void control(const QubitRef &ctrl, const std::function<void()> &body);

/// Replace the recorded body by its inverse.
void invert(const std::function<void()> &body);

/// Emit U_f, body, U_f^dag. Under an outer control only the body gates
/// receive the control. The conjugator must not leak allocations.
void conjugate(const std::function<void()> &conjugator, const std::function<void()> &body);

/// Collect the body into a single named gate (body must be pure gates).
void gate_wrap(const std::string &name, const std::function<void()> &body);

/**
 * Custom-control hand-off: if called under a Control/Condition
 * environment, f receives the current control qubit and its emitted gates
 * are not wrapped by that environment (single-layer suppression);
 * otherwise f runs with no control.
 */
void custom_call(const std::function<void(std::optional<QubitRef>)> &f);

namespace detail {
struct EvalSpan {
    std::shared_ptr<SessionState> session;
    size_t begin = 0, end = 0;
    bool bound = false;
};
/// Capture a condition-evaluation region of the log.
void eval_capture_begin();
EvalSpan eval_capture_end();
/// Condition scope: body controlled on an evaluated bool qubit. With
/// auto_uncompute the captured evaluation is inverted at exit, which
/// also deallocates the bool through its inverted allocation.
void condition_scope(const QubitRef &bool_qubit, const EvalSpan &eval, bool auto_uncompute,
                     const std::function<void()> &body);
} // namespace detail

} // namespace qforge

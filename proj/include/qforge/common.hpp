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

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>

namespace qforge {

using cmplx = std::complex<double>;

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/**
 * Outcome label of a measured register. Decoders map basis indices to
 * labels; labels act as ordered map keys and render to human readable text.
 */
class Label {
  public:
    Label() : v_(int64_t{0}) {}
    Label(bool b) : v_(b) {}
    Label(int64_t i) : v_(i) {}
    Label(int i) : v_(int64_t{i}) {}
    Label(uint64_t i) : v_(static_cast<int64_t>(i)) {}
    Label(double d) : v_(d) {}
    Label(std::string s) : v_(std::move(s)) {}
    Label(const char *s) : v_(std::string(s)) {}

    bool operator==(const Label &o) const { return v_ == o.v_; }
    bool operator!=(const Label &o) const { return !(v_ == o.v_); }
    bool operator<(const Label &o) const { return v_ < o.v_; }

    bool is_double() const { return std::holds_alternative<double>(v_); }
    bool is_string() const { return std::holds_alternative<std::string>(v_); }
    double as_double() const { return std::get<double>(v_); }
    int64_t as_int() const { return std::get<int64_t>(v_); }
    bool as_bool() const { return std::get<bool>(v_); }
    const std::string &as_string() const { return std::get<std::string>(v_); }

    std::string str() const;

  private:
    std::variant<bool, int64_t, double, std::string> v_;
};

std::string format_double(double x);

} // namespace qforge

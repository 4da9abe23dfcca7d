// Copyright 2026 The qgate Authors
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

#include <cmath>
#include <limits>
#include <string>
#include <utility>

namespace qgate {

/// A real number that may also be +infinity or indeterminate (0/0).
///
/// Fisher informations and the bounds derived from them hit both cases at
/// measure-zero settings. Carrying the tag explicitly keeps serialized output
/// free of raw IEEE infinities and lets scans skip indeterminate cells.
class ExtendedValue {
public:
    enum class Kind { finite, infinite, indeterminate };

    static ExtendedValue finite(double v) { return ExtendedValue(Kind::finite, v, {}); }
    static ExtendedValue infinite(std::string reason = {}) {
        return ExtendedValue(Kind::infinite, std::numeric_limits<double>::infinity(),
                             std::move(reason));
    }
    static ExtendedValue indeterminate(std::string reason) {
        return ExtendedValue(Kind::indeterminate, std::numeric_limits<double>::quiet_NaN(),
                             std::move(reason));
    }

    Kind kind() const { return kind_; }
    bool is_finite() const { return kind_ == Kind::finite; }
    bool is_infinite() const { return kind_ == Kind::infinite; }
    bool is_indeterminate() const { return kind_ == Kind::indeterminate; }

    // +inf for infinite, NaN for indeterminate.
    double value() const { return value_; }
    const std::string& reason() const { return reason_; }

private:
    ExtendedValue(Kind k, double v, std::string reason)
        : kind_(k), value_(v), reason_(std::move(reason)) {}

    Kind kind_;
    double value_;
    std::string reason_;
};

} // namespace qgate

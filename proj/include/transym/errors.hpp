// Copyright 2026 The transym Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

namespace transym {

enum class ErrorCode {
    NonHermitian,
    NoConvergence,
    NotPSD,
    NonFinite,
    DimensionMismatch,
    BadIndex,
    SizeCap,
    InvalidChannel,
    Singular,
    CenterDegenerate,
    RankCollapse,
    PreconditionFailed,
    SingularTarget,
    SingularPrior,
    NotCovariant,
    AssertionFailure,
    ParseError,
    SchemaVersionMismatch,
    IoError,
};

std::string_view error_code_name(ErrorCode code);

/// Every failure raised by the library. `value` carries the measured quantity
/// that tripped the check (residual, disturbance, condition number) when there
/// is one, and NaN otherwise.
class Error : public std::runtime_error {
   public:
    Error(ErrorCode code, const std::string &what, double value = std::numeric_limits<double>::quiet_NaN());

    ErrorCode code() const noexcept { return code_; }
    double value() const noexcept { return value_; }
    /// Message without the code-name prefix.
    const std::string &detail() const noexcept { return detail_; }

   private:
    ErrorCode code_;
    double value_;
    std::string detail_;
};

[[noreturn]] void fail(ErrorCode code, const std::string &what, double value = std::numeric_limits<double>::quiet_NaN());

}  // namespace transym

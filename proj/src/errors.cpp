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

#include "transym/errors.hpp"

namespace transym {

std::string_view error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::NonHermitian: return "NonHermitian";
        case ErrorCode::NoConvergence: return "NoConvergence";
        case ErrorCode::NotPSD: return "NotPSD";
        case ErrorCode::NonFinite: return "NonFinite";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::BadIndex: return "BadIndex";
        case ErrorCode::SizeCap: return "SizeCap";
        case ErrorCode::InvalidChannel: return "InvalidChannel";
        case ErrorCode::Singular: return "Singular";
        case ErrorCode::CenterDegenerate: return "CenterDegenerate";
        case ErrorCode::RankCollapse: return "RankCollapse";
        case ErrorCode::PreconditionFailed: return "PreconditionFailed";
        case ErrorCode::SingularTarget: return "SingularTarget";
        case ErrorCode::SingularPrior: return "SingularPrior";
        case ErrorCode::NotCovariant: return "NotCovariant";
        case ErrorCode::AssertionFailure: return "AssertionFailure";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::SchemaVersionMismatch: return "SchemaVersionMismatch";
        case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string &what, double value)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code), value_(value), detail_(what) {}

void fail(ErrorCode code, const std::string &what, double value) { throw Error(code, what, value); }

}  // namespace transym

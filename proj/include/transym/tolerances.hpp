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

namespace transym {

/// Validation threshold for structural checks (Hermiticity, PSD, trace, TP).
inline constexpr double kTolStruct = 1e-9;
/// Accuracy demanded of decompositions (eigen, Wedderburn, projections).
inline constexpr double kTolEig = 1e-10;
/// Eigenvalues at or below this are treated as exact zeros (supports, pseudo-inverses).
inline constexpr double kTolRank = 1e-12;
/// Regularization added before any matrix inverse the optimizers need.
inline constexpr double kRegularization = 1e-10;

}  // namespace transym

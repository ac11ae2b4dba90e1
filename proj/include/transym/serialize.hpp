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

#include <json.hpp>

#include "transym/ki.hpp"
#include "transym/quantum.hpp"

namespace transym {

using json = nlohmann::json;

/// {"rows", "cols", "re": [...], "im": [...]}, entries row-major.
json matrix_to_json(const Mat &m);
/// ParseError on missing fields, wrong lengths or non-finite entries.
Mat matrix_from_json(const json &j);

/// {"dim", "spectrum", "eigenbasis": matrix | "computational"}.
json system_to_json(const SystemSpec &sys);
SystemSpec system_from_json(const json &j);

json ki_to_json(const KIDecomposition &dec);

}  // namespace transym

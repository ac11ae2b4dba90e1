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

#include "transym/serialize.hpp"

#include <cmath>

#include "transym/errors.hpp"

namespace transym {

namespace {

const json &field(const json &j, const char *name, const char *what) {
    if (!j.is_object() || !j.contains(name)) {
        fail(ErrorCode::ParseError, std::string(what) + ": missing field \"" + name + "\"");
    }
    return j.at(name);
}

}  // namespace

json matrix_to_json(const Mat &m) {
    std::vector<double> re, im;
    re.reserve(m.size());
    im.reserve(m.size());
    for (Index r = 0; r < m.rows(); ++r) {
        for (Index c = 0; c < m.cols(); ++c) {
            re.push_back(m(r, c).real());
            im.push_back(m(r, c).imag());
        }
    }
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"re", re}, {"im", im}};
}

Mat matrix_from_json(const json &j) {
    const auto &rows = field(j, "rows", "matrix");
    const auto &cols = field(j, "cols", "matrix");
    const auto &re = field(j, "re", "matrix");
    if (!rows.is_number_integer() || !cols.is_number_integer() || rows.get<long long>() <= 0 ||
        cols.get<long long>() <= 0) {
        fail(ErrorCode::ParseError, "matrix: rows and cols must be positive integers");
    }
    const Index r = rows.get<Index>();
    const Index c = cols.get<Index>();
    if (!re.is_array() || static_cast<Index>(re.size()) != r * c) {
        fail(ErrorCode::ParseError, "matrix: \"re\" must hold rows * cols numbers");
    }
    json im = j.contains("im") ? j.at("im") : json::array();
    if (!im.is_array() || (!im.empty() && static_cast<Index>(im.size()) != r * c)) {
        fail(ErrorCode::ParseError, "matrix: \"im\" must hold rows * cols numbers");
    }
    for (const auto &[key, _] : j.items()) {
        if (key != "rows" && key != "cols" && key != "re" && key != "im") {
            fail(ErrorCode::ParseError, "matrix: unknown field \"" + key + "\"");
        }
    }
    Mat m(r, c);
    for (Index a = 0; a < r; ++a) {
        for (Index b = 0; b < c; ++b) {
            const auto &x = re.at(a * c + b);
            if (!x.is_number() || (!im.empty() && !im.at(a * c + b).is_number())) {
                fail(ErrorCode::ParseError, "matrix: entries must be numbers");
            }
            double y = im.empty() ? 0.0 : im.at(a * c + b).get<double>();
            m(a, b) = cplx(x.get<double>(), y);
        }
    }
    if (!m.allFinite()) {
        fail(ErrorCode::ParseError, "matrix: entries must be finite");
    }
    return m;
}

json system_to_json(const SystemSpec &sys) {
    json eig = "computational";
    if (max_abs(sys.eigenbasis() - Mat::Identity(sys.dim(), sys.dim())) != 0.0) {
        eig = matrix_to_json(sys.eigenbasis());
    }
    return json{{"dim", sys.dim()}, {"spectrum", sys.spectrum()}, {"eigenbasis", eig}};
}

SystemSpec system_from_json(const json &j) {
    const auto &dim = field(j, "dim", "system");
    const auto &spec = field(j, "spectrum", "system");
    for (const auto &[key, _] : j.items()) {
        if (key != "dim" && key != "spectrum" && key != "eigenbasis") {
            fail(ErrorCode::ParseError, "system: unknown field \"" + key + "\"");
        }
    }
    if (!dim.is_number_integer() || dim.get<long long>() <= 0) {
        fail(ErrorCode::ParseError, "system: \"dim\" must be a positive integer");
    }
    const int d = dim.get<int>();
    if (!spec.is_array() || static_cast<int>(spec.size()) != d) {
        fail(ErrorCode::ParseError, "system: \"spectrum\" must list dim integers");
    }
    std::vector<int> values;
    for (const auto &x : spec) {
        if (!x.is_number_integer()) {
            fail(ErrorCode::ParseError, "system: spectrum entries must be integers");
        }
        values.push_back(x.get<int>());
    }
    if (!j.contains("eigenbasis") || j.at("eigenbasis") == "computational") {
        return SystemSpec::diagonal(std::move(values));
    }
    Mat v = matrix_from_json(j.at("eigenbasis"));
    try {
        return SystemSpec(std::move(values), std::move(v));
    } catch (const Error &e) {
        fail(ErrorCode::ParseError, std::string("system: ") + e.what());
    }
}

json ki_to_json(const KIDecomposition &dec) {
    json blocks = json::array();
    for (const auto &b : dec.blocks) {
        blocks.push_back(json{{"m", b.m},
                              {"k", b.k},
                              {"projector", matrix_to_json(b.projector)},
                              {"isometry", matrix_to_json(b.isometry)},
                              {"omega", matrix_to_json(b.omega)}});
    }
    json probs = json::object();
    for (size_t x = 0; x < dec.labels.size(); ++x) {
        probs[dec.labels[x]] = dec.probs[x];
    }
    return json{{"blocks", blocks}, {"probs", probs}};
}

}  // namespace transym

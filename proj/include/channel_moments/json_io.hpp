// Copyright 2026 The channel_moments Authors
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


// JSON encodings of matrices and channels:
//   matrix:  {"rows": r, "cols": c, "data": [[re, im], ...]}   (row-major)
//   channel: {"dim_in": n, "dim_out": d, "kraus": [matrix, ...]}

#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "channel_moments/channel.hpp"
#include "channel_moments/report.hpp"

namespace chm {

inline Json matrix_to_json(const ComplexMatrix& m) {
  Json data = Json::array();
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) data.push_back(complex_json(m(i, j)));
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

namespace detail {

inline Index json_dim(const Json& j, const char* key, const std::string& what) {
  if (!j.is_object() || !j.contains(key) || !j.at(key).is_number_integer())
    throw InputError(what + ": missing integer field '" + key + "'");
  const auto v = j.at(key).get<long long>();
  if (v < 1) throw InputError(what + ": field '" + std::string(key) + "' must be >= 1");
  return static_cast<Index>(v);
}

inline double json_real(const Json& j, const std::string& what) {
  if (!j.is_number()) throw InputError(what + ": expected a number");
  return j.get<double>();
}

}  // namespace detail

inline ComplexMatrix matrix_from_json(const Json& j, const std::string& what = "matrix") {
  const Index rows = detail::json_dim(j, "rows", what);
  const Index cols = detail::json_dim(j, "cols", what);
  if (rows > kMaxDenseOperatorDim || cols > kMaxDenseOperatorDim)
    throw DimensionError(what + ": matrix exceeds the dense size limit");
  if (!j.contains("data") || !j.at("data").is_array())
    throw InputError(what + ": missing array field 'data'");
  const Json& data = j.at("data");
  if (data.size() != static_cast<std::size_t>(rows * cols))
    throw InputError(what + ": 'data' has " + std::to_string(data.size()) +
                     " entries, expected rows * cols = " + std::to_string(rows * cols));
  ComplexMatrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index c = 0; c < cols; ++c) {
      const Json& e = data[static_cast<std::size_t>(i * cols + c)];
      if (e.is_array() && e.size() == 2)
        m(i, c) = Complex(detail::json_real(e[0], what), detail::json_real(e[1], what));
      else if (e.is_number())
        m(i, c) = Complex(e.get<double>(), 0.0);
      else
        throw InputError(what + ": entries must be [re, im] pairs");
    }
  require_finite(m, what);
  return m;
}

inline Json channel_to_json(const KrausChannel& e) {
  Json kraus = Json::array();
  for (const ComplexMatrix& a : e.kraus()) kraus.push_back(matrix_to_json(a));
  return Json{{"dim_in", e.dim_in()}, {"dim_out", e.dim_out()}, {"kraus", std::move(kraus)}};
}

inline KrausChannel channel_from_json(const Json& j) {
  const Index n = detail::json_dim(j, "dim_in", "channel");
  const Index d = detail::json_dim(j, "dim_out", "channel");
  if (!j.contains("kraus") || !j.at("kraus").is_array() || j.at("kraus").empty())
    throw InputError("channel: missing non-empty array field 'kraus'");
  std::vector<ComplexMatrix> kraus;
  std::size_t idx = 0;
  for (const Json& m : j.at("kraus"))
    kraus.push_back(matrix_from_json(m, "channel kraus[" + std::to_string(idx++) + "]"));
  return KrausChannel(n, d, std::move(kraus));
}

inline Json parse_json_text(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(what + ": invalid JSON (" + e.what() + ")");
  }
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str(), path);
}

}  // namespace chm

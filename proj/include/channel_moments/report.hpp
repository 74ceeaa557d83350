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

#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "channel_moments/haar.hpp"

namespace chm {

using Json = nlohmann::json;

/// One identity check: what was checked, with which parameters, the
/// computed values and the verdict at the stated tolerance.
struct VerificationReport {
  std::string check;
  Json params = Json::object();
  Json values = Json::object();
  double tolerance = kExactTol;
  bool pass = false;
};

inline Json to_json(const VerificationReport& r) {
  return Json{{"check", r.check},
              {"params", r.params},
              {"values", r.values},
              {"tolerance", r.tolerance},
              {"pass", r.pass}};
}

inline Json to_json(const McComparison& c, std::size_t samples, double sigma) {
  return Json{{"samples", samples},
              {"max_abs_dev", c.max_abs_dev},
              {"max_sigma_ratio", c.max_sigma_ratio},
              {"median_stderr", c.median_stderr},
              {"sigma", sigma},
              {"pass", c.pass}};
}

inline Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

}  // namespace chm

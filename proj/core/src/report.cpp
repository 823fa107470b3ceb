// Copyright 2026 The armapred Authors.
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

#include "armapred/report.hpp"

#include <cmath>
#include <cstdio>
#include <utility>

#include "json.hpp"

namespace armapred {
namespace {

double safe_ratio(double lhs, double rhs) {
  if (lhs == 0.0 && rhs == 0.0) return 1.0;
  return lhs / rhs;
}

// NaN and infinities are not valid JSON numbers.
nlohmann::json number(double x) {
  if (std::isfinite(x)) return x;
  return format_double(x);
}

}  // namespace

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

CheckRow check_close(std::string name, double lhs, double rhs, double tol) {
  const bool ok = std::abs(lhs - rhs) <= tol * std::max(1.0, std::abs(rhs));
  return {std::move(name), lhs, rhs, safe_ratio(lhs, rhs), tol, ok};
}

CheckRow check_bound(std::string name, double value, double bound) {
  return {std::move(name), value, bound, safe_ratio(value, bound), bound, value <= bound};
}

CheckRow check_ratio(std::string name, double lhs, double rhs, double tol) {
  const double r = safe_ratio(lhs, rhs);
  return {std::move(name), lhs, rhs, r, tol, std::abs(r - 1.0) <= tol};
}

CheckRow check_true(std::string name, bool ok, double witness, double tol) {
  return {std::move(name), witness, tol, safe_ratio(witness, tol), tol, ok};
}

bool Report::pass() const {
  for (const CheckRow& r : rows)
    if (!r.pass) return false;
  return true;
}

void Report::append(const Report& other) {
  rows.insert(rows.end(), other.rows.begin(), other.rows.end());
}

std::string to_csv(const Report& report) {
  std::string out = "name,lhs,rhs,ratio,tol,pass\n";
  for (const CheckRow& r : report.rows) {
    out += r.name + "," + format_double(r.lhs) + "," + format_double(r.rhs) + "," +
           format_double(r.ratio) + "," + format_double(r.tol) + "," +
           (r.pass ? "true" : "false") + "\n";
  }
  return out;
}

std::string to_json(const Report& report, int indent) {
  nlohmann::json rows = nlohmann::json::array();
  for (const CheckRow& r : report.rows) {
    rows.push_back({{"name", r.name},
                    {"lhs", number(r.lhs)},
                    {"rhs", number(r.rhs)},
                    {"ratio", number(r.ratio)},
                    {"tol", number(r.tol)},
                    {"pass", r.pass}});
  }
  nlohmann::json j = {{"title", report.title}, {"pass", report.pass()}, {"rows", rows}};
  return j.dump(indent);
}

}  // namespace armapred

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

#pragma once

#include <string>
#include <vector>

namespace armapred {

/// One comparison of two independently computed numbers.
struct CheckRow {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;  // lhs / rhs, or 1 when both vanish
  double tol = 0.0;
  bool pass = false;
};

/// |lhs - rhs| <= tol * max(1, |rhs|).
CheckRow check_close(std::string name, double lhs, double rhs, double tol);
/// value <= bound; the bound is reported as both rhs and tol.
CheckRow check_bound(std::string name, double value, double bound);
/// |lhs / rhs - 1| <= tol.
CheckRow check_ratio(std::string name, double lhs, double rhs, double tol);
/// A boolean fact (e.g. a determinant is nonzero) with its witness value.
CheckRow check_true(std::string name, bool ok, double witness, double tol);

struct Report {
  std::string title;
  std::vector<CheckRow> rows;

  bool pass() const;
  void add(CheckRow row) { rows.push_back(std::move(row)); }
  void append(const Report& other);
};

/// Flat CSV with header name,lhs,rhs,ratio,tol,pass; numbers use %.17g.
std::string to_csv(const Report& report);
/// {"title":..., "pass":..., "rows":[{...}]}.
std::string to_json(const Report& report, int indent = 2);

/// %.17g formatting shared by the text emitters.
std::string format_double(double x);

}  // namespace armapred

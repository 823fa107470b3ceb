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

#include "armapred/model_io.hpp"

#include <fstream>
#include <sstream>
#include <utility>

#include "json.hpp"

namespace armapred {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorKind::Parse, what); }

Complex parse_complex(const json& j, const std::string& where) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  fail(where + ": expected [re, im]");
}

ComplexMatrix parse_matrix(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) fail(where + ": expected a nonempty matrix");
  const std::size_t rows = j.size();
  if (!j[0].is_array() || j[0].empty()) fail(where + ": expected matrix rows");
  const std::size_t cols = j[0].size();
  ComplexMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) fail(where + ": ragged matrix");
    for (std::size_t c = 0; c < cols; ++c)
      m(r, c) = parse_complex(j[r][c], where + "[" + std::to_string(r) + "][" +
                                           std::to_string(c) + "]");
  }
  return m;
}

MatrixList parse_matrix_list(const json& j, const std::string& where) {
  if (!j.is_array()) fail(where + ": expected an array of matrices");
  MatrixList out;
  for (std::size_t k = 0; k < j.size(); ++k)
    out.push_back(parse_matrix(j[k], where + "[" + std::to_string(k) + "]"));
  return out;
}

void require_square(const ComplexMatrix& m, Eigen::Index d, const std::string& where) {
  if (m.rows() != d || m.cols() != d)
    fail(where + ": expected " + std::to_string(d) + "x" + std::to_string(d));
}

PolynomialMatrix parse_polynomial_matrix(const json& j, const std::string& where) {
  MatrixList coef = parse_matrix_list(j, where);
  if (coef.empty()) fail(where + ": no coefficients");
  const Eigen::Index d = coef[0].rows();
  for (std::size_t k = 0; k < coef.size(); ++k)
    require_square(coef[k], d, where + "[" + std::to_string(k) + "]");
  return PolynomialMatrix(d, d, std::move(coef));
}

OuterInverseDecomposition parse_poledata(const json& j, const std::string& where) {
  if (!j.is_object()) fail(where + ": expected an object");
  OuterInverseDecomposition pd;
  if (!j.contains("d") || !j["d"].is_number_integer() || j["d"].get<long>() < 1)
    fail(where + ".d: expected a positive integer");
  pd.d = j["d"].get<long>();
  if (!j.contains("rho0")) fail(where + ": missing rho0");
  pd.rho0 = parse_matrix(j["rho0"], where + ".rho0");
  require_square(pd.rho0, pd.d, where + ".rho0");
  if (j.contains("poles")) {
    const json& poles = j["poles"];
    if (!poles.is_array()) fail(where + ".poles: expected an array");
    for (std::size_t mu = 0; mu < poles.size(); ++mu) {
      const std::string w = where + ".poles[" + std::to_string(mu) + "]";
      if (!poles[mu].is_object() || !poles[mu].contains("p") || !poles[mu].contains("rho"))
        fail(w + ": expected {\"p\", \"rho\"}");
      Pole pole;
      pole.p = parse_complex(poles[mu]["p"], w + ".p");
      MatrixList rho = parse_matrix_list(poles[mu]["rho"], w + ".rho");
      if (rho.empty()) fail(w + ".rho: at least one coefficient required");
      for (std::size_t k = 0; k < rho.size(); ++k)
        require_square(rho[k], pd.d, w + ".rho[" + std::to_string(k) + "]");
      pole.multiplicity = static_cast<int>(rho.size());
      pd.poles.push_back(pole);
      pd.rho.push_back(std::move(rho));
    }
  }
  if (j.contains("rho0j")) {
    pd.rho0j = parse_matrix_list(j["rho0j"], where + ".rho0j");
    for (std::size_t k = 0; k < pd.rho0j.size(); ++k)
      require_square(pd.rho0j[k], pd.d, where + ".rho0j[" + std::to_string(k) + "]");
  }
  try {
    pd.validate();
  } catch (const Error& e) {
    fail(where + ": " + e.what());
  }
  return pd;
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

json matrix_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_json(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

json matrix_list_json(const MatrixList& l) {
  json out = json::array();
  for (const ComplexMatrix& m : l) out.push_back(matrix_json(m));
  return out;
}

json poledata_json(const OuterInverseDecomposition& pd) {
  json poles = json::array();
  for (int mu = 0; mu < pd.K(); ++mu)
    poles.push_back({{"p", complex_json(pd.poles[mu].p)}, {"rho", matrix_list_json(pd.rho[mu])}});
  json j = {{"d", pd.d}, {"rho0", matrix_json(pd.rho0)}, {"poles", poles}};
  if (pd.m0() > 0) j["rho0j"] = matrix_list_json(pd.rho0j);
  return j;
}

json polynomial_json(const PolynomialMatrix& p) {
  json out = json::array();
  for (int k = 0; k <= p.degree(); ++k) out.push_back(matrix_json(p.coefficient(k)));
  return out;
}

}  // namespace

ModelSpec parse_model(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) fail("model file must hold a JSON object");
  ModelSpec spec;
  if (j.contains("name")) {
    if (!j["name"].is_string()) fail("name: expected a string");
    spec.name = j["name"].get<std::string>();
  }
  const bool poly = j.contains("psi") || j.contains("phi") || j.contains("sigma_half");
  const bool pole = j.contains("h_inverse_poledata");
  if (poly == pole) fail("give either psi/phi/sigma_half or h_inverse_poledata");
  if (poly) {
    if (!j.contains("psi")) fail("psi is required in the polynomial form");
    spec.psi = parse_polynomial_matrix(j["psi"], "psi");
    const Eigen::Index d = spec.psi->rows();
    if (j.contains("phi")) {
      spec.phi = parse_polynomial_matrix(j["phi"], "phi");
      if (spec.phi->rows() != d) fail("phi and psi sizes differ");
    }
    if (j.contains("sigma_half")) {
      spec.sigma_half = parse_matrix(j["sigma_half"], "sigma_half");
      require_square(*spec.sigma_half, d, "sigma_half");
    }
  } else {
    spec.h_inverse_poledata = parse_poledata(j["h_inverse_poledata"], "h_inverse_poledata");
  }
  if (j.contains("h_sharp_inverse_poledata")) {
    spec.h_sharp_inverse_poledata =
        parse_poledata(j["h_sharp_inverse_poledata"], "h_sharp_inverse_poledata");
  }
  return spec;
}

ModelSpec load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_model(ss.str());
}

std::string serialize_model(const ModelSpec& spec, int indent) {
  json j = json::object();
  if (!spec.name.empty()) j["name"] = spec.name;
  if (spec.phi) j["phi"] = polynomial_json(*spec.phi);
  if (spec.psi) j["psi"] = polynomial_json(*spec.psi);
  if (spec.sigma_half) j["sigma_half"] = matrix_json(*spec.sigma_half);
  if (spec.h_inverse_poledata) j["h_inverse_poledata"] = poledata_json(*spec.h_inverse_poledata);
  if (spec.h_sharp_inverse_poledata)
    j["h_sharp_inverse_poledata"] = poledata_json(*spec.h_sharp_inverse_poledata);
  return j.dump(indent);
}

RationalMatrixFunction build_h(const ModelSpec& spec, const Tolerances& tol, bool check) {
  if (spec.h_inverse_poledata) return from_inverse_poledata(*spec.h_inverse_poledata, tol);
  if (!spec.psi) throw Error(ErrorKind::InvalidArgument, "model has neither form of h");
  const Eigen::Index d = spec.psi->rows();
  const PolynomialMatrix phi = spec.phi ? *spec.phi : PolynomialMatrix::identity(d);
  const ComplexMatrix sigma = spec.sigma_half ? *spec.sigma_half : ComplexMatrix::Identity(d, d);
  return from_arma_polynomials(phi, *spec.psi, sigma, tol, check);
}

}  // namespace armapred

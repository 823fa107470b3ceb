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

#include "cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "armapred/oracle.hpp"
#include "armapred/pipeline.hpp"
#include "armapred/report.hpp"
#include "json.hpp"

namespace armapred::cli {
namespace {

using nlohmann::json;

struct Config {
  std::string command;
  std::string model_path;
  std::optional<long> n;
  std::string n_list;
  long grid = 1024;
  std::optional<double> tol;
  std::string format = "json";
  std::string out_path;
  unsigned long long seed = 20260101;
  std::string oracle = "dl";
};

// Usage problems detected after CLI11 has accepted the arguments.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

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

std::vector<long> horizons(const Config& cfg, bool required) {
  std::vector<long> ns;
  if (!cfg.n_list.empty()) {
    try {
      ns = parse_n_list(cfg.n_list);
    } catch (const std::invalid_argument& e) {
      throw UsageError(std::string("--n-list: ") + e.what());
    }
  } else if (cfg.n) {
    ns = {*cfg.n};
  }
  if (ns.empty() && required) throw UsageError("give --n or --n-list");
  for (long n : ns)
    if (n < 1) throw UsageError("horizons must be at least 1");
  return ns;
}

int cmd_validate(const Config& cfg, std::string& text) {
  const Report rep =
      validate_model(load_model(cfg.model_path), cfg.grid, Tolerances{}, cfg.seed);
  text = cfg.format == "csv" ? to_csv(rep) : to_json(rep) + "\n";
  return rep.pass() ? kPass : kFailure;
}

int cmd_factorize(const Config& cfg, std::string& text) {
  const ModelSpec spec = load_model(cfg.model_path);
  const PreparedModel pm = prepare(spec, cfg.grid, Tolerances{});
  const CorrespondenceReport corr = verify_pole_correspondence(pm.h, pm.pd, pm.pd_sharp);
  Report rep;
  rep.title = "factorize";
  if (pm.pd.d >= 2 && !pm.sharp_supplied)
    rep.add(check_bound("sharp.factorization_residual", pm.sf.residual, pm.tol.factorization));
  rep.add(check_bound("sharp.fit_residual", pm.sf.fit_residual, pm.tol.sharp_fit));
  for (const CorrespondenceRow& r : corr.rows)
    rep.add(check_bound("sharp.pole_correspondence[mu=" + std::to_string(r.mu) + "]", r.residual,
                        pm.tol.correspondence));
  if (cfg.format == "csv") {
    text = to_csv(rep);
  } else {
    ModelSpec outspec;
    outspec.name = spec.name;
    outspec.h_inverse_poledata = pm.pd;
    outspec.h_sharp_inverse_poledata = pm.pd_sharp;
    json j = json::parse(serialize_model(outspec));
    j["grid"] = pm.sf.grid;
    j["wilson_iterations"] = pm.sf.iterations;
    j["gauge"] = matrix_json(pm.sf.gauge);
    j["checks"] = json::parse(to_json(rep));
    text = j.dump(2) + "\n";
  }
  return rep.pass() ? kPass : kFailure;
}

int cmd_predict(const Config& cfg, std::string& text) {
  const std::vector<long> ns = horizons(cfg, true);
  const PreparedModel pm = prepare(load_model(cfg.model_path), cfg.grid, Tolerances{});
  std::vector<PredictorTable> tables;
  for (long n : ns) tables.push_back(predict(pm, n));
  if (cfg.format == "csv") {
    std::string s = "n,j,row,col,phi_nj,phi_j,method\n";
    for (const PredictorTable& t : tables)
      for (long j = 0; j < t.n; ++j)
        for (Eigen::Index r = 0; r < t.phi[j].rows(); ++r)
          for (Eigen::Index c = 0; c < t.phi[j].cols(); ++c)
            s += std::to_string(t.n) + "," + std::to_string(j + 1) + "," + std::to_string(r) + "," +
                 std::to_string(c) + "," +
                 format_complex_csv(t.phi[j](r, c).real(), t.phi[j](r, c).imag()) + "," +
                 format_complex_csv(t.phi_inf[j](r, c).real(), t.phi_inf[j](r, c).imag()) + "," +
                 t.method + "\n";
    text = s;
  } else {
    json arr = json::array();
    for (const PredictorTable& t : tables) {
      json j = {{"n", t.n},
                {"method", t.method},
                {"phi", matrix_list_json(t.phi)},
                {"phi_inf", matrix_list_json(t.phi_inf)}};
      if (t.method == "closed-form") {
        const NeumannDiagnostics nd = neumann_diagnostics(*pm.blocks, t.n);
        j["neumann"] = {{"spectral_radius", nd.spectral_radius},
                        {"partial_sum_error", nd.partial_sum_error},
                        {"condition", nd.condition}};
      }
      arr.push_back(j);
    }
    text = (arr.size() == 1 ? arr[0] : arr).dump(2) + "\n";
  }
  return kPass;
}

int cmd_compare(const Config& cfg, std::string& text) {
  const std::vector<long> ns = horizons(cfg, true);
  OracleKind kind = OracleKind::DurbinLevinson;
  if (cfg.oracle == "dense") kind = OracleKind::Dense;
  if (cfg.oracle == "both") kind = OracleKind::Both;
  const double tol = cfg.tol.value_or(1e-8);
  const PreparedModel pm = prepare(load_model(cfg.model_path), cfg.grid, Tolerances{});
  const std::vector<ComparisonRow> rows = compare(pm, ns, kind);
  bool ok = true;
  for (const ComparisonRow& r : rows) ok = ok && r.max_deviation <= tol;
  if (cfg.format == "csv") {
    std::string s =
        "n,oracle,method,max_deviation,median_deviation,tol,pass,closed_seconds,oracle_seconds\n";
    for (const ComparisonRow& r : rows)
      s += std::to_string(r.n) + "," + r.oracle + "," + r.method + "," +
           format_double(r.max_deviation) + "," + format_double(r.median_deviation) + "," +
           format_double(tol) + "," + (r.max_deviation <= tol ? "true" : "false") + "," +
           format_double(r.closed_seconds) + "," + format_double(r.oracle_seconds) + "\n";
    text = s;
  } else {
    json arr = json::array();
    for (const ComparisonRow& r : rows)
      arr.push_back({{"n", r.n},
                     {"oracle", r.oracle},
                     {"method", r.method},
                     {"max_deviation", r.max_deviation},
                     {"median_deviation", r.median_deviation},
                     {"tol", tol},
                     {"pass", r.max_deviation <= tol},
                     {"closed_seconds", r.closed_seconds},
                     {"oracle_seconds", r.oracle_seconds}});
    text = json({{"pass", ok}, {"rows", arr}}).dump(2) + "\n";
  }
  return ok ? kPass : kFailure;
}

int cmd_asymptotics(const Config& cfg, std::string& text) {
  const double tol = cfg.tol.value_or(0.05);
  const PreparedModel pm = prepare(load_model(cfg.model_path), cfg.grid, Tolerances{});
  if (!pm.blocks)
    throw Error(ErrorKind::AssumptionP1MaxViolated, "model has no poles (K = 0)");
  std::vector<long> ns = horizons(cfg, false);
  if (ns.empty()) {
    ns = asymptotic_window(baxter_asymptotics(*pm.blocks, {}, pm.tol));
    if (ns.empty()) throw Error(ErrorKind::NoConvergence, "empty asymptotic window");
  }
  const AsymptoticsReport ar = baxter_asymptotics(*pm.blocks, ns, pm.tol);
  Report rep;
  rep.title = "asymptotics";
  // Only the largest horizon decides the exit status; earlier rows show the trend.
  for (const AsymptoticRow& r : ar.rows) {
    const std::string at = "[n=" + std::to_string(r.n) + "]";
    CheckRow thm = check_ratio("lhs_over_theorem" + at, r.lhs_sum, r.theorem_rhs, tol);
    CheckRow cor = check_ratio("cor_ratio_over_limit" + at, r.cor_ratio, ar.cor_limit, tol);
    CheckRow tail = check_ratio("tail_over_formula" + at, r.tail_sum, r.tail_formula, tol);
    if (&r != &ar.rows.back()) thm.pass = cor.pass = tail.pass = true;
    rep.add(thm);
    rep.add(cor);
    rep.add(tail);
  }
  if (cfg.format == "csv") {
    text = to_csv(rep);
  } else {
    json rows = json::array();
    for (const AsymptoticRow& r : ar.rows)
      rows.push_back({{"n", r.n},
                      {"lhs_sum", r.lhs_sum},
                      {"theorem_rhs", r.theorem_rhs},
                      {"cor_ratio", r.cor_ratio},
                      {"tail_sum", r.tail_sum},
                      {"tail_formula", r.tail_formula},
                      {"leading_term", r.leading_term}});
    json c1 = json::array();
    for (double t : ar.C1_terms) c1.push_back(t);
    text = json({{"C1", ar.C1},
                 {"C1_terms", c1},
                 {"p1", complex_json(ar.p1)},
                 {"m1", ar.m1},
                 {"cor_limit", ar.cor_limit},
                 {"H", matrix_json(ar.H)},
                 {"rows", rows},
                 {"checks", json::parse(to_json(rep))}})
               .dump(2) +
           "\n";
  }
  return rep.pass() ? kPass : kFailure;
}

}  // namespace

std::vector<long> parse_n_list(const std::string& text) {
  auto to_long = [](const std::string& s) {
    std::size_t used = 0;
    const long v = std::stol(s, &used);
    if (used != s.size()) throw std::invalid_argument("not an integer: " + s);
    return v;
  };
  std::vector<long> out;
  const std::size_t dots = text.find("..");
  try {
    if (dots != std::string::npos) {
      const long lo = to_long(text.substr(0, dots));
      std::string rest = text.substr(dots + 2);
      long step = 1;
      const std::size_t colon = rest.find(':');
      if (colon != std::string::npos) {
        step = to_long(rest.substr(colon + 1));
        rest = rest.substr(0, colon);
      }
      const long hi = to_long(rest);
      if (step < 1 || hi < lo) throw std::invalid_argument("empty range " + text);
      for (long n = lo; n <= hi; n += step) out.push_back(n);
    } else {
      std::stringstream ss(text);
      std::string item;
      while (std::getline(ss, item, ',')) out.push_back(to_long(item));
    }
  } catch (const std::out_of_range&) {
    throw std::invalid_argument("integer out of range in " + text);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(e.what() == std::string("stol") ? "not an integer list: " + text
                                                                 : e.what());
  }
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

std::string format_complex_csv(double re, double im) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.17g%+.17gj", re, im);
  return buf;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config cfg;
  CLI::App app{"Finite predictor coefficients of multivariate ARMA processes", "arma_predict"};
  app.require_subcommand(1);
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("model", cfg.model_path, "Model JSON file")->required();
    sub->add_option("--grid", cfg.grid, "Circle grid for the spectral factorization")
        ->check(CLI::Range(2L, 1L << 22));
    sub->add_option("--format", cfg.format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--out", cfg.out_path, "Write results to this file");
    sub->add_option("--seed", cfg.seed, "Seed for randomized checks");
    sub->add_option("--tol", cfg.tol, "Pass/fail tolerance");
  };
  auto add_horizons = [&](CLI::App* sub) {
    sub->add_option("--n", cfg.n, "Horizon");
    sub->add_option("--n-list", cfg.n_list, "Horizons: a..b, a..b:step or a,b,c");
  };
  CLI::App* validate = app.add_subcommand("validate", "Run every structural check on a model");
  CLI::App* factorize = app.add_subcommand("factorize", "Pole data of h^{-1} and h_sharp^{-1}");
  CLI::App* predict_cmd = app.add_subcommand("predict", "Predictor coefficients phi_{n,j}");
  CLI::App* compare_cmd = app.add_subcommand("compare", "Closed form against Levinson oracles");
  CLI::App* asym = app.add_subcommand("asymptotics", "Baxter-type ratios for growing n");
  for (CLI::App* sub : {validate, factorize, predict_cmd, compare_cmd, asym}) add_common(sub);
  for (CLI::App* sub : {predict_cmd, compare_cmd, asym}) add_horizons(sub);
  compare_cmd->add_option("--oracle", cfg.oracle, "Reference solver")
      ->check(CLI::IsMember({"dl", "dense", "both"}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "arma_predict: " << e.what() << "\n";
    return kUsage;
  }

  std::string text;
  int code = kPass;
  try {
    if (cfg.grid < 256 || (cfg.grid & (cfg.grid - 1)) != 0)
      throw UsageError("--grid must be a power of two >= 256");
    if (*validate) code = cmd_validate(cfg, text);
    if (*factorize) code = cmd_factorize(cfg, text);
    if (*predict_cmd) code = cmd_predict(cfg, text);
    if (*compare_cmd) code = cmd_compare(cfg, text);
    if (*asym) code = cmd_asymptotics(cfg, text);
  } catch (const UsageError& e) {
    err << "arma_predict: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "arma_predict: " << e.what() << "\n";
    return e.kind() == ErrorKind::Parse ? kUsage : kFailure;
  } catch (const std::exception& e) {
    err << "arma_predict: " << e.what() << "\n";
    return kFailure;
  }

  if (cfg.out_path.empty()) {
    out << text;
  } else {
    std::ofstream file(cfg.out_path, std::ios::binary);
    if (!file || !(file << text)) {
      err << "arma_predict: cannot write " << cfg.out_path << "\n";
      return kUsage;
    }
  }
  return code;
}

}  // namespace armapred::cli

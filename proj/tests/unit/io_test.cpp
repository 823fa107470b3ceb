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

#include <gtest/gtest.h>

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "armapred/model_io.hpp"
#include "armapred/parallel.hpp"
#include "armapred/report.hpp"
#include "json.hpp"
#include "test_models.hpp"

namespace armapred {
namespace {

ErrorKind parse_error_kind(const std::string& text) {
  try {
    parse_model(text);
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::InvalidArgument;  // sentinel: no error at all
}

TEST(ModelIo, ParsesPolynomialForm) {
  const ModelSpec s = parse_model(R"({"name": "m", "psi": [[[1]], [[[0.5, 0.25]]]]})");
  EXPECT_EQ(s.name, "m");
  ASSERT_TRUE(s.psi);
  EXPECT_FALSE(s.phi);
  EXPECT_EQ(s.psi->degree(), 1);
  EXPECT_EQ(s.psi->coefficient(1)(0, 0), Complex(0.5, 0.25));
  EXPECT_TRUE(s.polynomial_form());
}

TEST(ModelIo, RejectsBadInput) {
  EXPECT_EQ(parse_error_kind("{\"psi\": [[[1]]"), ErrorKind::Parse);
  EXPECT_EQ(parse_error_kind("[]"), ErrorKind::Parse);
  EXPECT_EQ(parse_error_kind("{}"), ErrorKind::Parse);
  EXPECT_EQ(parse_error_kind(R"({"phi": [[[1]]]})"), ErrorKind::Parse);
  EXPECT_EQ(parse_error_kind(R"({"psi": [[[1, 2, 3]]]})"), ErrorKind::Parse);
  EXPECT_EQ(parse_error_kind(R"({"psi": [[[1]]], "h_inverse_poledata": {}})"), ErrorKind::Parse);
  // Pole outside the unit disk.
  EXPECT_EQ(parse_error_kind(
                R"({"h_inverse_poledata": {"d": 1, "rho0": [[0]], "poles": [{"p": 1.5, "rho": [[[1]]]}]}})"),
            ErrorKind::Parse);
}

TEST(ModelIo, FilesOnDisk) {
  EXPECT_NO_THROW(load_model(testing::model_path("ma1")));
  EXPECT_NO_THROW(load_model(testing::model_path("triangular")));
  for (const char* name : {"malformed.json", "bad_shape.json", "does_not_exist.json"}) {
    try {
      load_model(std::string(ARMAPRED_TEST_DATA_DIR) + "/" + name);
      FAIL() << name;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::Parse) << name;
    }
  }
}

TEST(ModelIo, BundledFilesMatchBuilders) {
  const RationalMatrixFunction a = build_h(load_model(testing::model_path("ma1")));
  const RationalMatrixFunction b = build_h(testing::ma1_spec());
  const RationalMatrixFunction c = build_h(load_model(testing::model_path("triangular")));
  const RationalMatrixFunction e = build_h(testing::triangular_spec(0.4));
  for (Complex z : {Complex(0.1, 0.2), Complex(-0.5, 0.7)}) {
    EXPECT_LT(max_abs(a(z) - b(z)), 1e-15);
    EXPECT_LT(max_abs(c(z) - e(z)), 1e-15);
  }
}

TEST(ModelIo, SerializeRoundTrip) {
  for (const ModelSpec& s :
       {testing::random_model_spec(1003, 2), testing::triangular_spec(0.4), testing::arma_m0_spec()}) {
    const std::string text = serialize_model(s);
    const ModelSpec back = parse_model(text);
    EXPECT_EQ(serialize_model(back), text);
    const RationalMatrixFunction h1 = build_h(s), h2 = build_h(back);
    EXPECT_TRUE((h1(Complex(0.3, 0.4)).array() == h2(Complex(0.3, 0.4)).array()).all());
  }
}

TEST(Report, CheckHelpers) {
  EXPECT_TRUE(check_close("a", 1.0 + 1e-13, 1.0, 1e-12).pass);
  EXPECT_FALSE(check_close("a", 1.1, 1.0, 1e-12).pass);
  EXPECT_TRUE(check_close("small", 1e-13, 0.0, 1e-12).pass);
  EXPECT_TRUE(check_bound("b", 0.5, 1.0).pass);
  EXPECT_FALSE(check_bound("b", std::nan(""), 1.0).pass);
  const CheckRow r = check_ratio("r", 1.02, 1.0, 0.05);
  EXPECT_TRUE(r.pass);
  EXPECT_NEAR(r.ratio, 1.02, 1e-15);
  EXPECT_FALSE(check_ratio("r", 0.5, 1.0, 0.05).pass);
  EXPECT_FALSE(check_true("t", false, 0.0, 0.0).pass);
}

TEST(Report, Emitters) {
  Report rep;
  rep.title = "t";
  rep.add(check_close("x", 0.1, 0.1, 1e-12));
  rep.add(check_bound("y", INFINITY, 1.0));
  EXPECT_FALSE(rep.pass());
  const std::string csv = to_csv(rep);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "name,lhs,rhs,ratio,tol,pass");
  EXPECT_NE(csv.find("x,0.10000000000000001,0.10000000000000001,1,"), std::string::npos);
  const nlohmann::json j = nlohmann::json::parse(to_json(rep));
  EXPECT_EQ(j["title"], "t");
  EXPECT_EQ(j["pass"], false);
  ASSERT_EQ(j["rows"].size(), 2u);
  EXPECT_EQ(j["rows"][1]["lhs"], "inf");
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
  Report other;
  other.add(check_bound("z", 0.0, 1.0));
  rep.append(other);
  EXPECT_EQ(rep.rows.size(), 3u);
}

TEST(Parallel, EveryIndexOnce) {
  std::vector<std::atomic<int>> hits(1000);
  parallel_for(1000, [&](long i) { hits[i]++; });
  for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
  EXPECT_GE(thread_count(), 1);
}

TEST(Parallel, RethrowsFromWorker) {
  EXPECT_THROW(parallel_for(50,
                            [](long i) {
                              if (i == 17) throw std::runtime_error("boom");
                            }),
               std::runtime_error);
}

TEST(Parallel, ThreadCapFromEnvironment) {
  setenv("ARMA_PREDICT_THREADS", "1", 1);
  EXPECT_EQ(thread_count(), 1);
  setenv("ARMA_PREDICT_THREADS", "garbage", 1);
  EXPECT_GE(thread_count(), 1);
  unsetenv("ARMA_PREDICT_THREADS");
}

}  // namespace
}  // namespace armapred

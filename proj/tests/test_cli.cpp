// Copyright 2026 The qcyc Authors
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

#include <sstream>

#include "qcyc/cli.hpp"

using namespace qcyc;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

bool has(const std::string& text, const std::string& needle) { return text.find(needle) != std::string::npos; }

}  // namespace

TEST(CurveJson, Forms) {
  Curve a = parse_curve_json(R"({"D": -3, "coeffs": ["0","-1","1","217","-282"]})", std::nullopt);
  EXPECT_EQ(a.D(), -3);
  EXPECT_EQ(a.a4(), QuadElem(Rational(217), -3));
  Curve b = parse_curve_json(R"({"D": -1, "short": ["-87/20","-421/100"]})", -1);
  EXPECT_EQ(b.a6(), parse_quad("-421/100", -1));
  Curve c = parse_curve_json(R"({"coeffs": [0, 1, 1, 0, -7]})", -3);
  EXPECT_EQ(c.a2(), QuadElem(Rational(1), -3));
  Curve d = parse_short_json(R"(["1+w", "1/2*w"])", -1);
  EXPECT_EQ(d.a4(), parse_quad("1+w", -1));
  EXPECT_EQ(to_json(a).dump(), R"({"D":-3,"coeffs":["0","-1","1","217","-282"]})");
}

TEST(CurveJson, Rejects) {
  EXPECT_THROW(parse_curve_json("{", -1), InputError);
  EXPECT_THROW(parse_curve_json(R"({"coeffs": [0, 1]})", -1), InputError);
  EXPECT_THROW(parse_curve_json(R"({"coeffs": [0, 0, 0, 0, 1]})", std::nullopt), InputError);
  EXPECT_THROW(parse_curve_json(R"({"D": -3, "coeffs": [0, 0, 0, 0, 1]})", -1), InputError);
  EXPECT_THROW(parse_curve_json(R"({"D": 4, "coeffs": [0, 0, 0, 0, 1]})", std::nullopt), InputError);
  EXPECT_THROW(parse_curve_json(R"({"D": -1, "coeffs": [0, 0, 0, 0, 0]})", std::nullopt), InputError);
  EXPECT_THROW(parse_curve_json(R"({"D": -1, "coeffs": ["x", 0, 0, 0, 1]})", std::nullopt), InputError);
  EXPECT_THROW(parse_curve_json(R"({"D": -1, "coeffs": [0.5, 0, 0, 0, 1]})", std::nullopt), InputError);
  EXPECT_THROW(parse_short_json(R"([1, 2, 3])", -1), InputError);
  EXPECT_THROW(parse_poly_json(R"([1])", -1), InputError);
}

TEST(Cli, TorsionExample) {
  Result r = call({"torsion", "--D", "-3", "--curve", R"({"coeffs":["0","0","1","0","-7"]})"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(has(r.out, "E(K)_tors = C3 x C3")) << r.out;

  r = call({"torsion", "--D", "-3", "--curve", R"({"coeffs":["0","0","1","0","-7"]})", "--json"});
  ASSERT_EQ(r.code, 0);
  json doc = json::parse(r.out);
  EXPECT_EQ(doc["torsion"]["structure"], "C3 x C3");
  EXPECT_EQ(doc["torsion"]["points"].size(), 9u);
}

TEST(Cli, GrowExample) {
  Result r = call({"grow", "--D", "-1", "--short", R"(["-87/20","-421/100"])", "--twist", "-6", "--ext", "5"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(has(r.out, "E(L)_tors = C15")) << r.out;
}

TEST(Cli, WitnessExample) {
  Result r = call({"witness", "--j", "0", "--q", "5"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(has(r.out, "p = 11\n")) << r.out;
  EXPECT_TRUE(has(r.out, "p = 2 mod 3, p + 1 = 2 mod 5")) << r.out;

  r = call({"witness", "--j", "0", "--q", "5", "--json"});
  json doc = json::parse(r.out);
  EXPECT_EQ(doc["p"], 11);
  EXPECT_EQ(doc["congruences"]["p mod 3"], 2);
  EXPECT_EQ(doc["congruences"]["(p + 1) mod q"], 2);
  EXPECT_EQ(doc["q_divides_count"], false);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(call({}).code, 1);
  EXPECT_EQ(call({"frobnicate"}).code, 1);
  EXPECT_EQ(call({"torsion", "--D", "-3"}).code, 1);
  EXPECT_EQ(call({"torsion", "--D", "-3", "--curve", "{oops"}).code, 1);
  EXPECT_EQ(call({"torsion", "--D", "-3", "--curve", R"({"coeffs":[0,0,0,0,0]})"}).code, 1);
  EXPECT_EQ(call({"x35", "--D", "-7"}).code, 1);
  EXPECT_EQ(call({"isogeny-report", "--D", "5"}).code, 1);
  EXPECT_EQ(call({"witness", "--j", "5", "--q", "5"}).code, 1);
  EXPECT_EQ(call({"witness", "--j", "0", "--q", "3"}).code, 1);
  EXPECT_EQ(call({"verify-tables"}).code, 1);
  EXPECT_EQ(call({"verify-tables", "--level", "24"}).code, 1);
  Result r = call({"witness", "--j", "0", "--q", "47", "--prime-bound", "20"});
  EXPECT_EQ(r.code, 1);
  EXPECT_TRUE(has(r.err, "bound exceeded")) << r.err;
  EXPECT_EQ(call({"--help"}).code, 0);
}

TEST(Cli, CountRecords) {
  Result r = call({"count", "--D", "-1", "--curve", R"({"coeffs":[0,0,0,0,1]})", "--max-p", "30", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  json rows = json::parse(r.out);
  ASSERT_FALSE(rows.empty());
  for (const auto& row : rows) {
    std::uint64_t p = row["p"];
    EXPECT_LE(p, 30u);
    // y^2 = x^3 + 1 is supersingular at p = 2 mod 3.
    if (p % 3 == 2 && row["degree"] == 1) {
      EXPECT_EQ(row["count"], p + 1);
    }
    if (p % 3 == 2 && row["degree"] == 2) {
      EXPECT_EQ(row["count"], (p + 1) * (p + 1));
    }
  }
}

TEST(Cli, FactorPrinted) {
  Result r = call({"factor", "--D", "-1", "--poly", R"(["-139/20", "1", "1"])", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  json doc = json::parse(r.out);
  EXPECT_EQ(doc["profile"], json::array({2}));
  EXPECT_EQ(square_class_reduce(parse_quad(doc["splitting_class"].get<std::string>(), -1), -1),
            square_class_reduce(QuadElem(Rational(5), -1), -1));
}

TEST(Cli, TwistSpectrum) {
  Result r = call({"twist", "--D", "-3", "--curve", R"({"coeffs":[0,-1,1,-10,-20]})", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  json doc = json::parse(r.out);
  EXPECT_TRUE(doc["spectrum"]["conformant"].get<bool>());

  r = call({"twist", "--D", "-1", "--short", R"(["-87/20","-421/100"])", "--twist", "-6"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(has(r.out, "E^d(K)_tors = C3")) << r.out;
}

TEST(Cli, X35) {
  Result r = call({"x35", "--D", "-1", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  json doc = json::parse(r.out);
  EXPECT_TRUE(doc["quotient_identity"].get<bool>());
  EXPECT_EQ(doc["nonregular_locus"], json::parse(R"([["0","1","0"]])"));
  EXPECT_EQ(doc["fibers"].size(), 3u);
}

TEST(Cli, VerifyTablesDeterministic) {
  Result a = call({"verify-tables", "--level", "21", "--json"});
  Result b = call({"verify-tables", "--level", "21", "--json"});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  std::istringstream lines(a.out);
  std::string line;
  int rows = 0, derived = 0;
  while (std::getline(lines, line)) {
    json rec = json::parse(line);
    for (const char* k : {"level", "K", "point", "expected_profile", "computed_profile", "match", "provenance"}) {
      EXPECT_TRUE(rec.contains(k)) << k;
    }
    EXPECT_EQ(rec["assumption"], "rank-0 from paper");
    EXPECT_TRUE(rec["match"].get<bool>());
    derived += rec["provenance"] == "derived";
    ++rows;
  }
  EXPECT_GE(rows, 8);
  EXPECT_EQ(derived, 8);
}

TEST(Cli, VerifyTablesAll) {
  Result r = call({"verify-tables", "--all"});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_TRUE(has(r.out, "verification passed")) << r.out;
  EXPECT_FALSE(has(r.out, "FAIL")) << r.out;
}

TEST(Cli, IsogenyReportLevel) {
  Result r = call({"isogeny-report", "--D", "-3", "--level", "24", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  json doc = json::parse(r.out);
  ASSERT_EQ(doc["levels"].size(), 1u);
  EXPECT_EQ(doc["levels"][0]["verdict"], "no isogeny");
  EXPECT_EQ(doc["levels"][0]["assumption"], "rank-0 from paper");
}

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

#include <set>

#include "qcyc/modular.hpp"

using namespace qcyc;

namespace {

QuadElem qr(const char* s, long D) { return parse_quad(s, D); }

SquareClass cls(const char* s, long D) { return SquareClass(qr(s, D), D); }

ProjPoint pp(const char* x, const char* y, const char* z, long D) { return ProjPoint{qr(x, D), qr(y, D), qr(z, D)}; }

// y^2 + a1 xy + a3 y - (x^3 + a2 x^2 + a4 x + a6), written out.
QuadElem weierstrass_residual(const std::array<long, 5>& a, const QuadElem& x, const QuadElem& y) {
  QuadElem a1(a[0]), a2(a[1]), a3(a[2]), a4(a[3]), a6(a[4]);
  return y * y + a1 * x * y + a3 * y - x * x * x - a2 * x * x - a4 * x - a6;
}

// Affine X0(35) equation evaluated term by term.
QuadElem x35_residual(const QuadElem& x, const QuadElem& y) {
  QuadElem x2 = x * x, x3 = x2 * x, x4 = x3 * x, x5 = x4 * x, x6 = x5 * x, x7 = x6 * x;
  return y * y + (-x4 - x2 - QuadElem(1)) * y -
         (-x7 - QuadElem(2) * x6 - x5 - QuadElem(3) * x4 + x3 - QuadElem(2) * x2 + x);
}

QuadElem j_from_short(const QuadElem& A, const QuadElem& B) {
  QuadElem a3 = QuadElem(4) * A * A * A;
  return QuadElem(1728) * a3 / (a3 + QuadElem(27) * B * B);
}

bool contains_class(const std::vector<SquareClass>& v, const SquareClass& c) {
  return std::find(v.begin(), v.end(), c) != v.end();
}

}  // namespace

TEST(Models, CuspsLieOnModels) {
  for (int level : x0_levels()) {
    const X0Model& M = x0_model(level);
    for (long D : {-1L, -3L}) {
      for (const auto& P : M.cusps(D)) {
        if (P.inf) continue;
        EXPECT_TRUE(weierstrass_residual(M.a, P.x, P.y).is_zero()) << level << " " << to_string(P);
      }
    }
  }
  EXPECT_THROW(x0_model(11), std::invalid_argument);
}

TEST(Models, CuspCounts) {
  EXPECT_EQ(x0_model(20).cusps(-1).size(), 6u);
  EXPECT_EQ(x0_model(20).cusps(-3).size(), 6u);
  EXPECT_EQ(x0_model(24).cusps(-1).size(), 8u);
  EXPECT_EQ(x0_model(24).cusps(-3).size(), 8u);
  EXPECT_EQ(x0_model(27).cusps(-1).size(), 2u);
  EXPECT_EQ(x0_model(27).cusps(-3).size(), 6u);
  EXPECT_EQ(x0_model(21).cusps(-3).size(), 4u);
  EXPECT_EQ(x0_model(15).cusps(-1).size(), 4u);
}

TEST(Models, TorsionSplitsIntoCuspsAndRows) {
  struct Split {
    int level;
    long D;
  };
  for (const auto& s : {Split{21, -3}, Split{15, -1}, Split{20, -1}}) {
    const X0Model& M = x0_model(s.level);
    TorsionGroupK T = torsion_subgroup(M.curve(s.D));
    std::vector<PointK> cusps = M.cusps(s.D);
    std::vector<TableRow> rows = table_rows(s.level, s.D);
    EXPECT_EQ(cusps.size() + rows.size(), static_cast<size_t>(T.order())) << s.level;
    for (const auto& P : T.points) {
      bool is_cusp = std::find(cusps.begin(), cusps.end(), P) != cusps.end();
      bool is_row = std::any_of(rows.begin(), rows.end(), [&](const TableRow& r) { return r.point == P; });
      EXPECT_NE(is_cusp, is_row) << s.level << " " << to_string(P);
    }
  }
}

TEST(Models, TwentyOneCuspsFormOneSymmetryOrbit) {
  // The cusps of X0(21) form one orbit under four maps P -> +-P + c, the
  // printed row point (5, 13) is off the model and (5, -13) is on it.
  const X0Model& M = x0_model(21);
  Curve E = M.curve(-3);
  std::vector<PointK> cusps = M.cusps(-3);
  TorsionGroupK T = torsion_subgroup(E);
  int symmetries = 0;
  for (const auto& c : T.points) {
    for (int sign : {1, -1}) {
      bool ok = true;
      for (const auto& P : cusps) {
        PointK img = E.add(sign > 0 ? P : E.neg(P), c);
        if (std::find(cusps.begin(), cusps.end(), img) == cusps.end()) ok = false;
      }
      if (ok) ++symmetries;
    }
  }
  EXPECT_EQ(symmetries, 4);
  EXPECT_FALSE(weierstrass_residual(M.a, QuadElem(5), QuadElem(13)).is_zero());
  EXPECT_TRUE(weierstrass_residual(M.a, QuadElem(5), QuadElem(-13)).is_zero());
}

TEST(Tables, RowsLieOnModelsWithMatchingJ) {
  struct Table {
    int level;
    long D;
    size_t rows, special;
  };
  for (const auto& t : {Table{21, -3, 12, 4}, Table{15, -1, 12, 0}, Table{20, -1, 6, 2}}) {
    const X0Model& M = x0_model(t.level);
    std::vector<TableRow> rows = table_rows(t.level, t.D);
    ASSERT_EQ(rows.size(), t.rows);
    size_t special = 0;
    for (const auto& r : rows) {
      EXPECT_TRUE(weierstrass_residual(M.a, r.point.x, r.point.y).is_zero()) << to_string(r.point);
      if (r.j_special) {
        ++special;
        EXPECT_FALSE(r.curve.has_value());
        EXPECT_TRUE(r.j == QuadElem(0) || r.j == QuadElem(1728));
        EXPECT_THROW(kernel_factor_profile(r), std::invalid_argument);
        continue;
      }
      ASSERT_TRUE(r.curve.has_value());
      auto [A, B] = r.curve->short_coefficients();
      EXPECT_EQ(j_from_short(A, B), r.j) << to_string(r.point);
    }
    EXPECT_EQ(special, t.special);
  }
  EXPECT_TRUE(table_rows(21, -1).empty());
}

TEST(Tables, TwentyOneProfiles) {
  int triple = 0, six = 0;
  for (const auto& r : table_rows(21, -3)) {
    if (r.j_special) continue;
    KernelProfile kp = kernel_factor_profile(r);
    EXPECT_TRUE(kp.match) << to_string(r.point);
    EXPECT_EQ(kp.profile, r.expected_profile);
    EXPECT_EQ(kp.provenance, "derived");
    ASSERT_TRUE(kp.kernel_poly.has_value());
    EXPECT_EQ(kp.kernel_poly->degree(), 10);
    int sum = 0;
    for (int d : kp.profile) sum += d;
    EXPECT_EQ(sum, 10);
    if (kp.profile == std::vector<int>{1, 3, 3, 3}) ++triple;
    if (kp.profile == std::vector<int>{1, 3, 6}) ++six;
    EXPECT_FALSE(cycle_quadratic_analysis(r).has_value());
  }
  EXPECT_EQ(triple, 2);
  EXPECT_EQ(six, 6);
}

TEST(Tables, FifteenPrintedKernels) {
  std::vector<TableRow> rows = table_rows(15, -1);
  ASSERT_TRUE(rows[0].kernel_poly && rows[1].kernel_poly);
  for (int i : {0, 1}) {
    KernelProfile kp = kernel_factor_profile(rows[i]);
    EXPECT_EQ(kp.provenance, "printed");
    EXPECT_EQ(kp.profile, (std::vector<int>{1, 1, 1, 2, 2}));
    EXPECT_TRUE(kp.match);
  }
  auto c0 = splits_over_quadratic(*rows[0].kernel_poly, -1);
  auto c1 = splits_over_quadratic(*rows[1].kernel_poly, -1);
  ASSERT_TRUE(c0 && c1);
  EXPECT_EQ(*c0, cls("5", -1));
  EXPECT_EQ(*c1, cls("-15", -1));
}

TEST(Tables, PrintedKernelsAreDerivedCycles) {
  for (int i : {0, 1}) {
    TableRow r = table_rows(15, -1)[static_cast<size_t>(i)];
    std::vector<PolyK> cycles = cycle_kernel_polys(*r.curve, 15);
    PolyK printed = r.kernel_poly->monic();
    EXPECT_NE(std::find(cycles.begin(), cycles.end(), printed), cycles.end()) << i;
  }
}

TEST(Tables, DerivedCyclesAreCyclicFifteenTorsion) {
  TableRow r = table_rows(15, -1)[2];
  PolyK f15 = division_poly(*r.curve, 15);
  for (const auto& f : cycle_kernel_polys(*r.curve, 15)) {
    EXPECT_EQ(f.degree(), 7);
    EXPECT_TRUE((f15 % f).is_zero());
    EXPECT_TRUE(stable_under_multiplication(*r.curve, f, 2));
    EXPECT_TRUE(stable_under_multiplication(*r.curve, f, 4));
  }
}

TEST(Tables, FifteenAndTwentyProfiles) {
  for (auto [level, D] : {std::pair<int, long>{15, -1}, std::pair<int, long>{20, -1}}) {
    for (const auto& r : table_rows(level, D)) {
      if (r.j_special) continue;
      KernelProfile kp = kernel_factor_profile(r);
      EXPECT_TRUE(kp.match) << level << " " << to_string(r.point);
      EXPECT_EQ(kp.profile, r.expected_profile);
    }
  }
}

TEST(Tables, TwentyRowsHaveFourCycleStructure) {
  TableRow r = table_rows(20, -1)[0];
  for (const auto& f : cycle_kernel_polys(*r.curve, 20)) {
    EXPECT_EQ(f.degree(), 10);
    EXPECT_TRUE(stable_under_multiplication(*r.curve, f, 3));
  }
}

TEST(CycleAnalysis, FifteenRows) {
  const long D = -1;
  std::vector<TableRow> rows = table_rows(15, D);
  auto a = cycle_quadratic_analysis(rows[0]);
  ASSERT_TRUE(a.has_value());
  EXPECT_EQ(a->d0, cls("5", D));
  ASSERT_EQ(a->candidates.size(), 2u);
  EXPECT_TRUE(contains_class(a->candidates, cls("-6", D)));
  EXPECT_TRUE(contains_class(a->candidates, cls("-30", D)));
  EXPECT_EQ(a->designated.x, ExtElem(qr("-1/2", D)));
  EXPECT_TRUE(rows[0].curve->model_L().contains(a->designated));
  // y^2 = -54/25, so y = (3/5) sqrt(-6).
  EXPECT_EQ(rel_norm(a->designated.y), QuadElem(Rational(54, 25)));

  auto b = cycle_quadratic_analysis(rows[1]);
  ASSERT_TRUE(b.has_value());
  EXPECT_EQ(b->d0, cls("-15", D));
  EXPECT_TRUE(contains_class(b->candidates, cls("26", D)));
  EXPECT_TRUE(contains_class(b->candidates, cls("-390", D)));
  EXPECT_EQ(b->designated.x, ExtElem(qr("3/104", D)));

  for (size_t i = 2; i < rows.size(); ++i) EXPECT_FALSE(cycle_quadratic_analysis(rows[i]).has_value());
}

TEST(CycleAnalysis, CandidatesIndependentOfChosenRoot) {
  const long D = -1;
  for (size_t i : {0u, 1u}) {
    TableRow r = table_rows(15, D)[i];
    auto a = cycle_quadratic_analysis(r);
    ASSERT_TRUE(a.has_value());
    for (const auto& x : roots_in_K(*r.kernel_poly, D)) {
      SquareClass e = square_class_reduce(r.curve->two_division()(x), D);
      EXPECT_TRUE(contains_class(a->candidates, e));
    }
  }
}

TEST(Growth, FourCurvesReachFifteen) {
  struct Case {
    const char* A;
    const char* B;
    const char* d0;
    std::vector<const char*> ds;
  };
  std::vector<Case> cases = {{"-87/20", "-421/100", "5", {"-6", "-30"}},
                             {"633/54080", "239/1081600", "-15", {"26", "-390"}}};
  for (long D : {-1L, -3L}) {
    for (const auto& c : cases) {
      Curve E = Curve::short_form(qr(c.A, D), qr(c.B, D), D);
      for (const char* d : c.ds) {
        Curve Ed = quadratic_twist(E, qr(d, D));
        TorsionGroupL TL = torsion_over_quadratic_ext(Ed, qr(c.d0, D));
        EXPECT_EQ(TL.n, 1) << c.A << " " << d << " D=" << D;
        EXPECT_EQ(TL.m, 15) << c.A << " " << d << " D=" << D;
      }
    }
  }
}

TEST(X35, QuotientIdentity) { EXPECT_TRUE(x35::quotient_identity_holds()); }

TEST(X35, EvaluationExamples) {
  const long D = -1;
  auto a = x35::eval_quotient_map(pp("0", "0", "1", D));
  ASSERT_TRUE(a.has_value());
  EXPECT_EQ(*a, pp("1", "3", "1", D));
  auto b = x35::eval_quotient_map(pp("0", "1", "1", D));
  ASSERT_TRUE(b.has_value());
  EXPECT_EQ(*b, pp("1", "-4", "1", D));
  EXPECT_FALSE(x35::eval_quotient_map(pp("0", "1", "0", D)).has_value());
  EXPECT_THROW(x35::eval_quotient_map(pp("1", "1", "1", D)), std::invalid_argument);
  EXPECT_TRUE(x35_residual(QuadElem(0), QuadElem(0)).is_zero());
  EXPECT_TRUE(x35_residual(QuadElem(0), QuadElem(1)).is_zero());
}

TEST(X35, FibersOverTorsion) {
  for (long D : {-1L, -3L}) {
    auto f1 = x35::fiber_over(pp("1", "3", "1", D), D);
    ASSERT_EQ(f1.size(), 1u);
    EXPECT_EQ(f1[0], pp("0", "0", "1", D));
    auto f2 = x35::fiber_over(pp("1", "-4", "1", D), D);
    ASSERT_EQ(f2.size(), 1u);
    EXPECT_EQ(f2[0], pp("0", "1", "1", D));
    EXPECT_TRUE(x35::fiber_over(pp("0", "1", "0", D), D).empty());
  }
  const long D = -3;
  std::vector<ProjPoint> extra = {
      pp("(5w-1)/2", "(-5w+9)/2", "1", D), pp("(-5w-1)/2", "(5w+9)/2", "1", D),
      pp("(5w-1)/2", "(5w-11)/2", "1", D), pp("(-5w-1)/2", "(-5w-11)/2", "1", D),
      pp("-4/3", "(35w-9)/18", "1", D),    pp("-4/3", "(-35w-9)/18", "1", D),
  };
  for (const auto& Q : extra) {
    EXPECT_TRUE(x35::on_target(Q)) << to_string(Q);
    EXPECT_TRUE(x35::fiber_over(Q, D).empty()) << to_string(Q);
  }
  EXPECT_THROW(x35::fiber_over(pp("0", "0", "1", D), D), std::invalid_argument);
}

TEST(X35, TargetTorsionPoints) {
  const long D = -3;
  TorsionGroupK T = torsion_subgroup(x35::target(D));
  std::vector<ProjPoint> listed = {
      pp("0", "1", "0", D),          pp("1", "3", "1", D),
      pp("1", "-4", "1", D),         pp("(5w-1)/2", "(-5w+9)/2", "1", D),
      pp("(-5w-1)/2", "(5w+9)/2", "1", D), pp("(5w-1)/2", "(5w-11)/2", "1", D),
      pp("(-5w-1)/2", "(-5w-11)/2", "1", D), pp("-4/3", "(35w-9)/18", "1", D),
      pp("-4/3", "(-35w-9)/18", "1", D),
  };
  ASSERT_EQ(T.points.size(), listed.size());
  for (const auto& P : T.points) {
    ProjPoint Q = x35::from_affine(P);
    EXPECT_NE(std::find(listed.begin(), listed.end(), Q), listed.end()) << to_string(Q);
  }
}

TEST(X35, NonRegularLocus) {
  for (long D : {-1L, -3L}) {
    auto nr = x35::nonregular_locus(D);
    ASSERT_EQ(nr.size(), 1u);
    EXPECT_EQ(nr[0], pp("0", "1", "0", D));
  }
  // Over Q(sqrt 5) the affine part is x^2 + x - 1 = 0 with y = 3 -+ sqrt 5.
  const long D = 5;
  auto nr = x35::nonregular_locus(D);
  ASSERT_EQ(nr.size(), 3u);
  for (size_t i = 1; i < nr.size(); ++i) {
    const ProjPoint& P = nr[i];
    EXPECT_TRUE((P.x * P.x + P.x - QuadElem(1)).is_zero());
    EXPECT_TRUE((P.y * P.y - QuadElem(6) * P.y + QuadElem(4)).is_zero());
    EXPECT_TRUE(x35_residual(P.x, P.y).is_zero());
    EXPECT_FALSE(x35::eval_quotient_map(P).has_value());
  }
}

TEST(X35, FiberContainsEverySmallPoint) {
  // Search x in a box, solve for y, and push every K-point through f and back.
  for (long D : {-1L, -3L}) {
    int regular = 0;
    for (long a = -4; a <= 4; ++a) {
      for (long b = -2; b <= 2; ++b) {
        QuadElem x(Rational(a), Rational(b), D);
        QuadElem x2 = x * x, x4 = x2 * x2;
        QuadElem c1 = -x4 - x2 - QuadElem(1);
        QuadElem c0 = -x4 * x2 * x - QuadElem(2) * x4 * x2 - x4 * x - QuadElem(3) * x4 + x2 * x -
                      QuadElem(2) * x2 + x;
        PolyK quad({-c0, c1, QuadElem(1, 0, D)});
        for (const auto& y : roots_in_K(quad, D)) {
          ProjPoint P{x, y, QuadElem(1, 0, D)};
          ASSERT_TRUE(x35::on_model(P));
          auto Q = x35::eval_quotient_map(P);
          if (!Q) continue;
          ++regular;
          EXPECT_TRUE(x35::on_target(*Q));
          auto fib = x35::fiber_over(*Q, D);
          EXPECT_NE(std::find(fib.begin(), fib.end(), P), fib.end()) << to_string(P);
        }
      }
    }
    EXPECT_EQ(regular, 2) << D;
  }
}

TEST(TwistSpectrum, FifteenCurveOverEisenstein) {
  const long D = -3;
  Curve E = quadratic_twist(Curve::short_form(qr("-87/20", D), qr("-421/100", D), D), qr("-6", D));
  TwistSpectrum S = twist_spectrum(E, default_twist_classes(E));
  EXPECT_TRUE(S.in_scope);
  EXPECT_TRUE(S.conformant);
  std::multiset<std::string> nontrivial;
  for (const auto& e : S.entries) {
    if (e.torsion.order() > 1) nontrivial.insert(e.torsion.structure());
  }
  EXPECT_EQ(nontrivial, (std::multiset<std::string>{"C3", "C5"}));
  EXPECT_LE(S.growth_extensions, 1);
}

TEST(TwistSpectrum, SevenTorsionNeverGrows) {
  const long D = -3;
  Curve E(std::array<QuadElem, 5>{QuadElem(1, 0, D), QuadElem(-1, 0, D), QuadElem(1, 0, D), QuadElem(-3, 0, D),
                                  QuadElem(3, 0, D)},
          D);
  TwistSpectrum S = twist_spectrum(E, default_twist_classes(E));
  EXPECT_EQ(S.base, "C7");
  EXPECT_TRUE(S.conformant);
  for (const auto& e : S.entries) {
    if (!e.d.is_trivial()) EXPECT_EQ(e.torsion.order(), 1) << to_string(e.d);
  }
}

TEST(TwistSpectrum, SquareClassOnly) {
  const long D = -1;
  Curve E(std::array<QuadElem, 5>{QuadElem(0, 0, D), QuadElem(1, 0, D), QuadElem(1, 0, D), QuadElem(9, 0, D),
                                  QuadElem(1, 0, D)},
          D);
  TwistSpectrum S = twist_spectrum(E, {cls("1", D), cls("4", D)});
  ASSERT_EQ(S.entries.size(), 1u);
  EXPECT_EQ(S.entries[0].torsion.structure(), "C3");
  EXPECT_FALSE(S.in_scope);
}

TEST(TwistSpectrum, CorpusConformsOverEisenstein) {
  const long D = -3;
  std::vector<std::array<long, 5>> corpus = {{0, 0, 1, 0, -7}, {0, 1, 1, 9, 1}, {0, -1, 1, -10, -20},
                                             {0, -1, 1, 0, 0}, {1, 0, 1, 4, -6}, {0, -1, 1, 217, -282}};
  for (const auto& a : corpus) {
    std::array<QuadElem, 5> c;
    for (size_t i = 0; i < 5; ++i) c[i] = QuadElem(Rational(a[i]), D);
    Curve E(c, D);
    TwistSpectrum S = twist_spectrum(E, default_twist_classes(E, 6));
    EXPECT_TRUE(S.conformant) << E.to_string() << " " << (S.violations.empty() ? "" : S.violations.front());
  }
}

TEST(IsogenyReport, BothFields) {
  for (long D : {-1L, -3L}) {
    IsogenyReport R = isogeny_report(D);
    ASSERT_EQ(R.fifteen.size(), 4u);
    for (const auto& c : R.fifteen) {
      EXPECT_EQ(c.torsion_over_L, "C15");
      EXPECT_EQ(c.two_torsion_over_L, 1);
      EXPECT_EQ(c.nine_torsion_over_L, 3);
    }
    std::vector<int> levels;
    for (const auto& l : R.levels) {
      levels.push_back(l.level);
      if (l.level == 15) {
        EXPECT_EQ(l.verdict, "four curves");
      } else if (l.level == 21 && D == -1) {
        EXPECT_EQ(l.verdict, "open");
      } else {
        EXPECT_EQ(l.verdict, "no isogeny") << l.level << " D=" << D;
      }
      EXPECT_FALSE(l.certificates.empty());
    }
    EXPECT_EQ(levels, (std::vector<int>{15, 20, 21, 24, 27, 30, 35, 45}));
    bool rank_flag = false;
    for (const auto& l : R.levels) {
      for (const auto& a : l.assumptions) rank_flag |= a.rfind("rank-0 from paper", 0) == 0;
    }
    EXPECT_TRUE(rank_flag);
  }
  EXPECT_THROW(isogeny_report(-7), std::invalid_argument);
}

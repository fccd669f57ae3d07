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

// Acceptance harness: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "qcyc/factor_k.hpp"
#include "qcyc/modular.hpp"
#include "qcyc/reduction.hpp"
#include "qcyc/torsion.hpp"

using namespace qcyc;

namespace {

QuadElem q(const char* s, long D) { return parse_quad(s, D); }

Curve long_curve(const std::array<long, 5>& a, long D) {
  std::array<QuadElem, 5> c;
  for (size_t i = 0; i < 5; ++i) c[i] = QuadElem(Rational(a[i]), D);
  return Curve(c, D);
}

PolyK lin(const char* r, long D) { return PolyK{-q(r, D), QuadElem(Rational(1), D)}; }
PolyK quad(const char* b, const char* c, long D) { return PolyK{q(c, D), q(b, D), QuadElem(Rational(1), D)}; }

std::string profile_string(const std::vector<int>& p) {
  std::string s = "(";
  for (size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + std::to_string(p[i]);
  return s + ")";
}

// Collects failure notes for one criterion.
struct Check {
  std::vector<std::string> notes;
  void expect(bool ok, const std::string& what) {
    if (!ok) notes.push_back(what);
  }
  bool passed() const { return notes.empty(); }
};

const std::vector<std::array<long, 5>>& corpus() {
  static const std::vector<std::array<long, 5>> c = {
      {0, 0, 1, 0, -7},    {1, 0, 0, -4, -1},   {0, -1, 0, -4, 4}, {0, 1, 1, 9, 1},   {0, 1, 0, 4, 4},
      {0, -1, 1, 217, -282}, {1, 1, 1, -10, -10}, {0, -1, 1, -10, -20}, {0, -1, 1, 0, 0}, {0, 0, 0, 0, 1},
      {1, 0, 1, 4, -6},    {1, -1, 1, -3, 3},   {0, 0, 0, 1, 0},   {1, -1, 1, -14, 29}};
  return c;
}

// ---------------------------------------------------------------------------

Check table_one() {
  Check c;
  int a = 0, b = 0, rows = 0;
  for (const auto& r : table_rows(21, -3)) {
    if (r.j_special) continue;
    ++rows;
    KernelProfile kp = kernel_factor_profile(r);
    c.expect(kp.match && kp.profile == r.expected_profile, "row " + to_string(r.point) + " gives " + profile_string(kp.profile));
    c.expect(!kp.provenance.empty(), "row " + to_string(r.point) + " lacks a provenance flag");
    if (kp.profile == std::vector<int>{1, 3, 3, 3}) ++a;
    if (kp.profile == std::vector<int>{1, 3, 6}) ++b;
  }
  c.expect(rows == 8, std::to_string(rows) + " rows");
  c.expect(a == 2 && b == 6, "profile counts " + std::to_string(a) + "/" + std::to_string(b));
  return c;
}

Check table_two() {
  Check c;
  const long D = -1;
  PolyK f1 = lin("7/10", D) * lin("-1/2", D) * lin("-17/10", D) * quad("1", "-139/20", D) * quad("13", "269/20", D);
  PolyK f2 = lin("3/104", D) * lin("-17/520", D) * lin("-113/520", D) * quad("-11/52", "2333/54080", D) *
             quad("1/52", "437/54080", D);
  std::vector<TableRow> rows = table_rows(15, D);
  c.expect(rows.size() >= 2 && rows[0].kernel_poly && *rows[0].kernel_poly == f1, "stored f_C of (8,-27) differs");
  c.expect(rows.size() >= 2 && rows[1].kernel_poly && *rows[1].kernel_poly == f2, "stored f_C of (-2,-2) differs");
  const std::vector<int> prof{1, 1, 1, 2, 2};
  c.expect(factor_profile(f1, D) == prof, "(8,-27) profile " + profile_string(factor_profile(f1, D)));
  c.expect(factor_profile(f2, D) == prof, "(-2,-2) profile " + profile_string(factor_profile(f2, D)));
  auto s1 = splits_over_quadratic(f1, D);
  auto s2 = splits_over_quadratic(f2, D);
  c.expect(s1 && *s1 == SquareClass(q("5", D), D), "(8,-27) splitting class");
  c.expect(s2 && *s2 == SquareClass(q("-15", D), D), "(-2,-2) splitting class");
  return c;
}

Check growth() {
  Check c;
  std::vector<TableRow> rows = table_rows(15, -1);
  auto [A2, B2] = rows.at(1).curve->short_coefficients();
  struct G {
    Rational A, B;
    std::vector<const char*> ds;
    const char* ext;
  };
  std::vector<G> cases = {{Rational(-87, 20), Rational(-421, 100), {"-6", "-30"}, "5"},
                          {A2.a(), B2.a(), {"26", "-390"}, "-15"}};
  for (long D : {-1L, -3L}) {
    for (const auto& g : cases) {
      Curve E = Curve::short_form(QuadElem(g.A, D), QuadElem(g.B, D), D);
      for (const char* d : g.ds) {
        TorsionGroupL TL = torsion_over_quadratic_ext(quadratic_twist(E, q(d, D)), q(g.ext, D));
        c.expect(TL.n == 1 && TL.m == 15, std::string("d = ") + d + " D = " + std::to_string(D) + ": " + TL.structure());
      }
    }
  }
  return c;
}

Check table_three() {
  Check c;
  int rows = 0;
  for (const auto& r : table_rows(20, -1)) {
    if (r.j_special) continue;
    ++rows;
    KernelProfile kp = kernel_factor_profile(r);
    c.expect(kp.profile == std::vector<int>{1, 1, 2, 2, 4}, "row " + to_string(r.point) + " gives " + profile_string(kp.profile));
  }
  c.expect(rows == 4, std::to_string(rows) + " rows");
  return c;
}

Check torsion_regressions() {
  Check c;
  auto structure = [](const Curve& E) { return torsion_subgroup(E); };
  {
    const X0Model& M = x0_model(21);
    TorsionGroupK T = structure(M.curve(-3));
    auto cusps = M.cusps(-3);
    long nc = std::count_if(T.points.begin(), T.points.end(),
                            [&](const PointK& P) { return std::find(cusps.begin(), cusps.end(), P) == cusps.end(); });
    c.expect(T.n == 2 && T.m == 8 && T.points.size() == 16 && nc == 12, "X0(21): " + T.structure());
  }
  {
    TorsionGroupK T3 = structure(x0_model(27).curve(-3)), T1 = structure(x0_model(27).curve(-1));
    c.expect(T3.n == 3 && T3.m == 3, "X0(27) over Q(sqrt -3): " + T3.structure());
    c.expect(T1.n == 1 && T1.m == 3, "X0(27) over Q(i): " + T1.structure());
  }
  for (long D : {-1L, -3L}) {
    TorsionGroupK T = structure(x0_model(24).curve(D));
    c.expect(T.n == 2 && T.m == 4, "X0(24): " + T.structure());
  }
  {
    const long D = -1;
    TorsionGroupK T = structure(x35::target(D));
    std::vector<PointK> want = {PointK::infinity(), PointK::affine(q("1", D), q("3", D)),
                                PointK::affine(q("1", D), q("-4", D))};
    bool same = T.points.size() == want.size() &&
                std::all_of(want.begin(), want.end(), [&](const PointK& P) {
                  return std::find(T.points.begin(), T.points.end(), P) != T.points.end();
                });
    c.expect(T.n == 1 && T.m == 3 && same, "E35 over Q(i): " + T.structure());
  }
  {
    const long D = -3;
    TorsionGroupK T = structure(x35::target(D));
    std::vector<std::pair<const char*, const char*>> pts = {
        {"1", "3"},           {"1", "-4"},           {"(5w-1)/2", "(-5w+9)/2"}, {"(-5w-1)/2", "(5w+9)/2"},
        {"(5w-1)/2", "(5w-11)/2"}, {"(-5w-1)/2", "(-5w-11)/2"}, {"-4/3", "(35w-9)/18"}, {"-4/3", "(-35w-9)/18"}};
    bool same = T.points.size() == 9 && T.points.front().inf;
    for (const auto& [x, y] : pts) {
      PointK P = PointK::affine(q(x, D), q(y, D));
      same = same && std::find(T.points.begin(), T.points.end(), P) != T.points.end();
    }
    c.expect(T.n == 3 && T.m == 3 && same, "E35 over Q(sqrt -3): " + T.structure());
  }
  return c;
}

Check fibers() {
  Check c;
  for (long D : {-1L, -3L}) {
    auto pp = [D](long x, long y, long z) { return ProjPoint{QuadElem(Rational(x), D), QuadElem(Rational(y), D), QuadElem(Rational(z), D)}; };
    c.expect(x35::fiber_over(pp(1, 3, 1), D) == std::vector<ProjPoint>{pp(0, 0, 1)}, "fiber over [1,3,1]");
    c.expect(x35::fiber_over(pp(1, -4, 1), D) == std::vector<ProjPoint>{pp(0, 1, 1)}, "fiber over [1,-4,1]");
    c.expect(x35::fiber_over(pp(0, 1, 0), D).empty(), "fiber over [0,1,0]");
    c.expect(x35::nonregular_locus(D) == std::vector<ProjPoint>{pp(0, 1, 0)}, "non-regular locus");
  }
  const long D = -3;
  int extra = 0;
  for (const auto& P : torsion_subgroup(x35::target(D)).points) {
    if (P.inf || P.x == QuadElem(Rational(1), D)) continue;
    ++extra;
    c.expect(x35::fiber_over(x35::from_affine(P), D).empty(), "fiber over " + to_string(P));
  }
  c.expect(extra == 6, std::to_string(extra) + " extra points");
  return c;
}

Check closed_counts() {
  Check c;
  for (std::uint64_t p = 5; p <= 100; p = next_prime_u64(p)) {
    for (int j : {0, 1728}) {
      if (j == 0 ? p % 3 != 2 : p % 4 != 3) continue;
      for (long v : {1L, 2L, -1L}) {
        QuadElem a(Rational(v), -1), z(Rational(0), -1);
        Curve E = j == 0 ? Curve::short_form(z, a, -1) : Curve::short_form(a, z, -1);
        std::uint64_t n1 = count_points(reduce_curve(E, prime_field(p)));
        std::uint64_t n2 = count_points(reduce_curve(E, quadratic_extension_field(p)));
        c.expect(n1 == p + 1 && n2 == (p + 1) * (p + 1),
                 "p = " + std::to_string(p) + " j = " + std::to_string(j) + " c = " + std::to_string(v));
      }
    }
  }
  return c;
}

Check witnesses() {
  Check c;
  for (long D : {-1L, -3L}) {
    QuadElem z(Rational(0), D), one(Rational(1), D);
    Curve E0 = Curve::short_form(z, one, D), E1728 = Curve::short_form(one, z, D);
    for (std::uint64_t qq = 3; qq <= 50; qq = next_prime_u64(qq)) {
      if (qq >= 5) {
        WitnessCertificate w = witness_prime(0, qq, E0);
        c.expect(w.p % 3 == 2 && (w.p + 1) % qq == 2 % qq && !w.q_divides_count, "j = 0, q = " + std::to_string(qq));
      }
      WitnessCertificate w = witness_prime(1728, qq, E1728);
      c.expect(w.p % 4 == 3 && (w.p + 1) % qq == 2 % qq && !w.q_divides_count, "j = 1728, q = " + std::to_string(qq));
    }
    ReducedCurve R = reduce_curve(E0, residue_field(11, D));
    if (R.good) c.expect(witness_prime(0, 5, E0).p == 11, "p = 11 for (0, 5)");
  }
  return c;
}

bool isomorphic_short(const Curve& E, const Curve& F) {
  auto [A, B] = E.short_coefficients();
  auto [A2, B2] = F.short_coefficients();
  if (A.is_zero() != A2.is_zero() || B.is_zero() != B2.is_zero()) return false;
  // u^2 with A2 = u^4 A and B2 = u^6 B.
  std::optional<QuadElem> u2;
  if (!A.is_zero() && !B.is_zero()) {
    u2 = (B2 / B) / (A2 / A);
  } else if (!A.is_zero()) {
    u2 = is_square(A2 / A, E.D());
  } else {
    auto r = B2 / B;
    for (const auto& cand : roots_in_K(PolyK{-r, 0, 0, QuadElem(Rational(1), E.D())}, E.D())) {
      u2 = cand;
    }
  }
  if (!u2) return false;
  return u2->is_zero() ? false : (*u2 * *u2 * A == A2 && *u2 * *u2 * *u2 * B == B2);
}

Check properties() {
  Check c;
  // Odd-part decomposition against direct root counting over L.
  struct Pair {
    std::array<long, 5> a;
    long D;
    const char* d;
  };
  std::vector<Pair> pairs = {
      {{0, 0, 1, 0, -7}, -3, "-1"},     {{0, 0, 1, 0, -7}, -1, "-3"},    {{0, 0, 1, 0, -7}, -1, "2"},
      {{1, 0, 0, -4, -1}, -3, "-1"},    {{1, 0, 0, -4, -1}, -3, "2"},    {{0, 1, 1, 9, 1}, -1, "-3"},
      {{0, 1, 1, 9, 1}, -1, "5"},       {{0, 1, 1, 9, 1}, -3, "-1"},     {{0, 1, 0, 4, 4}, -1, "-3"},
      {{0, 1, 0, 4, 4}, -3, "5"},       {{0, -1, 0, -4, 4}, -1, "-3"},   {{0, -1, 0, -4, 4}, -3, "-1"},
      {{1, 1, 1, -10, -10}, -1, "-15"}, {{1, 1, 1, -10, -10}, -3, "5"},  {{0, -1, 1, 217, -282}, -3, "-1"},
      {{0, -1, 1, -10, -20}, -1, "5"},  {{0, -1, 1, -10, -20}, -3, "5"}, {{0, -1, 1, 0, 0}, -1, "-11"},
      {{0, 0, 0, 0, 1}, -1, "-3"},      {{0, 0, 0, 0, 1}, -1, "3"},      {{1, 0, 1, 4, -6}, -3, "-7"},
  };
  int decomposed = 0;
  for (const auto& pr : pairs) {
    Curve E = long_curve(pr.a, pr.D);
    QuadElem d = q(pr.d, pr.D);
    TorsionGroupK TK = torsion_subgroup(E), TD = torsion_subgroup(quadratic_twist(E, d));
    bool ok = true;
    for (long n : {3L, 5L, 7L, 9L, 15L}) {
      ok = ok && count_torsion_over_L(E, d, n) == static_cast<std::uint64_t>(TK.torsion_count(n) * TD.torsion_count(n));
    }
    c.expect(ok, "decomposition fails for " + E.to_string() + " d = " + pr.d);
    decomposed += ok;
  }
  c.expect(decomposed >= 20, "only " + std::to_string(decomposed) + " decomposition pairs");

  // Growth rules and admissible structures across the corpus.
  for (long D : {-1L, -3L}) {
    for (const auto& a : corpus()) {
      Curve E = long_curve(a, D);
      TorsionGroupK TK = torsion_subgroup(E);
      c.expect(is_admissible(TK.n, TK.m, D), E.to_string() + " has " + TK.structure());
      for (const char* ds : {"-1", "2", "-2", "3", "5", "-15", "1+w"}) {
        QuadElem d = q(ds, D);
        auto v = check_growth_rules(E, d, TK, torsion_over_quadratic_ext(E, d));
        c.expect(v.empty(), E.to_string() + " d = " + ds + ": " + (v.empty() ? "" : v.front()));
      }
    }
  }

  // Random twists: j unchanged, twisting twice by d gives back E.
  std::mt19937_64 rng(20260101);
  std::uniform_int_distribution<long> coeff(-9, 9);
  int twists = 0;
  while (twists < 100) {
    long D = (twists % 2) ? -1 : -3;
    const auto& a = corpus()[rng() % corpus().size()];
    QuadElem d(Rational(coeff(rng)), Rational(coeff(rng)), D);
    if (d.is_zero()) continue;
    Curve E = long_curve(a, D);
    Curve Ed = quadratic_twist(E, d);
    c.expect(Ed.j_invariant() == E.j_invariant(), "j changes under twist by " + to_string(d));
    c.expect(isomorphic_short(quadratic_twist(Ed, d), E), "double twist by " + to_string(d));
    ++twists;
  }

  // Reduction keeps the order of every torsion point.
  for (long D : {-1L, -3L}) {
    for (const auto& a : corpus()) {
      Curve E = long_curve(a, D);
      TorsionGroupK T = torsion_subgroup(E);
      int used = 0;
      for (std::uint64_t p = 5; used < 3 && p < 500; p = next_prime_u64(p)) {
        ResidueField F = residue_field(p, D);
        if (!F.usable() || T.order() % static_cast<long>(p) == 0) continue;
        ReducedCurve R = reduce_curve(E, F);
        if (!R.good) continue;
        bool integral = true, ok = true;
        for (const auto& P : T.points) {
          auto RP = reduce_point(E, R, P);
          if (!RP) {
            integral = false;
            break;
          }
          ok = ok && R.model.order(*RP, 64) == E.order(P, 64);
        }
        if (!integral) continue;
        ++used;
        c.expect(ok, E.to_string() + " at p = " + std::to_string(p));
      }
      c.expect(used == 3, E.to_string() + ": " + std::to_string(used) + " usable primes");
    }
  }
  return c;
}

Check report() {
  Check c;
  const long D = -3;
  Curve E = quadratic_twist(Curve::short_form(QuadElem(Rational(-87, 20), D), QuadElem(Rational(-421, 100), D), D),
                            q("-6", D));
  TwistSpectrum S = twist_spectrum(E, default_twist_classes(E));
  std::vector<std::string> nontrivial;
  for (const auto& e : S.entries) {
    if (e.torsion.order() > 1) nontrivial.push_back(e.torsion.structure());
  }
  std::sort(nontrivial.begin(), nontrivial.end());
  c.expect(nontrivial == std::vector<std::string>{"C3", "C5"}, "twist spectrum has " + std::to_string(nontrivial.size()) + " nontrivial entries");

  for (long DD : {-3L, -1L}) {
    IsogenyReport R = isogeny_report(DD);
    c.expect(R.fifteen.size() == 4, "fifteen-curve list of size " + std::to_string(R.fifteen.size()));
    for (const auto& f : R.fifteen) c.expect(f.torsion_over_L == "C15", f.label + ": " + f.torsion_over_L);
    for (const auto& l : R.levels) {
      if (l.level == 15) {
        c.expect(l.verdict == "four curves", "n = 15: " + l.verdict);
        continue;
      }
      if (l.level == 45) continue;
      bool open_case = DD == -1 && l.level == 21;
      c.expect(l.verdict == (open_case ? "open" : "no isogeny"), "n = " + std::to_string(l.level) + ": " + l.verdict);
      c.expect(!l.certificates.empty(), "n = " + std::to_string(l.level) + " lacks a certificate");
      bool flagged = l.level == 30 ||
                     std::any_of(l.assumptions.begin(), l.assumptions.end(), [](const std::string& a) {
                       return a.find("rank") != std::string::npos;
                     });
      c.expect(flagged, "n = " + std::to_string(l.level) + " lacks a rank flag");
    }
  }
  return c;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    std::function<Check()> run;
  };
  std::vector<Criterion> criteria = {
      {1, "X0(21) over Q(sqrt -3): eight kernel profiles", table_one},
      {2, "X0(15) printed kernels: profiles and splitting classes", table_two},
      {3, "torsion growth to C15 over both fields", growth},
      {4, "X0(20) over Q(i): four kernel profiles", table_three},
      {5, "torsion of the modular curves and E35", torsion_regressions},
      {6, "X0(35) fibers and non-regular locus", fibers},
      {7, "supersingular point counts over F_p and F_p^2", closed_counts},
      {8, "witness primes", witnesses},
      {9, "property suites", properties},
      {10, "twist spectrum and isogeny report", report},
  };
  int failed = 0;
  for (const auto& cr : criteria) {
    Check c;
    try {
      c = cr.run();
    } catch (const std::exception& e) {
      c.notes.push_back(std::string("exception: ") + e.what());
    }
    std::printf("criterion %d: %s  %s\n", cr.id, c.passed() ? "PASS" : "FAIL", cr.title);
    for (const auto& n : c.notes) std::printf("    %s\n", n.c_str());
    std::fflush(stdout);
    failed += !c.passed();
  }
  return failed == 0 ? 0 : 1;
}

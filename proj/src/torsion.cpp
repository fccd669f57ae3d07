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

#include "qcyc/torsion.hpp"

#include <algorithm>
#include <climits>
#include <numeric>
#include <optional>
#include <sstream>

#include "qcyc/factor_k.hpp"
#include "qcyc/reduction.hpp"

namespace qcyc {

namespace {

bool point_less(const PointK& a, const PointK& b) {
  if (a.inf || b.inf) return a.inf && !b.inf;
  if (a.x != b.x) return lex_less(a.x, b.x);
  return lex_less(a.y, b.y);
}

bool point_less(const PointL& a, const PointL& b) {
  if (a.inf || b.inf) return a.inf && !b.inf;
  if (a.x != b.x) return lex_less(a.x, b.x);
  return lex_less(a.y, b.y);
}

long ipow(long b, int e) {
  long r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

int valuation(long n, long ell) {
  int v = 0;
  while (n != 0 && n % ell == 0) {
    n /= ell;
    ++v;
  }
  return v;
}

std::vector<long> prime_divisors(long n) {
  std::vector<long> ps;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      ps.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) ps.push_back(n);
  return ps;
}

template <class Pt>
bool contains_point(const std::vector<Pt>& pts, const Pt& P) {
  return std::find(pts.begin(), pts.end(), P) != pts.end();
}

struct KOps {
  using Pt = PointK;
  const Curve& E;
  DivisionPolynomials& dp;

  const Weierstrass<QuadElem>& W() const { return E.model(); }

  std::vector<Pt> seeds(long ell) {
    const PolyK& g = ell == 2 ? E.two_division() : dp.f(static_cast<int>(ell));
    std::vector<Pt> out;
    for (const auto& x : roots_in_K(g, E.D())) {
      for (auto& P : E.points_with_x(x)) out.push_back(std::move(P));
    }
    return out;
  }

  std::vector<Pt> preimages(const Pt& P, long ell) {
    int l = static_cast<int>(ell);
    PolyK g = dp.phi(l) - PolyK::constant(P.x) * dp.psi_squared(l);
    std::vector<Pt> out;
    for (const auto& x : roots_in_K(g, E.D())) {
      for (auto& Q : E.points_with_x(x)) {
        if (E.model().mul(ell, Q) == P) out.push_back(std::move(Q));
      }
    }
    return out;
  }
};

struct LOps {
  using Pt = PointL;
  const Curve& E;
  DivisionPolynomials& dp;
  QuadElem d;
  Weierstrass<ExtElem> WL;

  const Weierstrass<ExtElem>& W() const { return WL; }

  std::vector<Pt> seeds(long ell) {
    const PolyK& g = ell == 2 ? E.two_division() : dp.f(static_cast<int>(ell));
    std::vector<Pt> out;
    for (const auto& x : roots_in_L(to_L(g), d, E.D())) {
      for (auto& P : E.points_with_x(x, d)) out.push_back(std::move(P));
    }
    return out;
  }

  std::vector<Pt> preimages(const Pt& P, long ell) {
    int l = static_cast<int>(ell);
    PolyL g = to_L(dp.phi(l)) - PolyL::constant(P.x) * to_L(dp.psi_squared(l));
    std::vector<Pt> out;
    for (const auto& x : roots_in_L(g, d, E.D())) {
      for (auto& Q : E.points_with_x(x, d)) {
        if (WL.mul(ell, Q) == P) out.push_back(std::move(Q));
      }
    }
    return out;
  }
};

// All points of l-power order reachable by repeated division, stopping at
// max_size points or at points of order l^max_exp.
template <class Ops>
std::vector<typename Ops::Pt> primary_points(Ops& ops, long ell, long max_size, int max_exp) {
  using Pt = typename Ops::Pt;
  std::vector<Pt> pts{Pt::infinity()};
  std::vector<Pt> frontier;
  for (auto& P : ops.seeds(ell)) {
    if (!contains_point(pts, P)) {
      pts.push_back(P);
      frontier.push_back(P);
    }
  }
  for (int level = 1; level < max_exp && !frontier.empty(); ++level) {
    if (static_cast<long>(pts.size()) >= max_size) break;
    std::vector<Pt> next;
    for (const auto& P : frontier) {
      for (auto& Q : ops.preimages(P, ell)) {
        if (!contains_point(pts, Q)) {
          pts.push_back(Q);
          next.push_back(std::move(Q));
        }
      }
    }
    frontier = std::move(next);
  }
  return pts;
}

template <class Pt>
struct Primary {
  long ell = 1;
  int a = 0;  // |G| = ell^a
  int e = 0;  // exponent ell^e
  Pt g1;
  std::optional<Pt> g2;
  std::vector<Pt> pts;
};

template <class Pt, class Wt>
long point_order(const Wt& W, const Pt& P, long cap) {
  auto o = W.order(P, cap);
  if (!o) throw std::logic_error("torsion: point order exceeds the group size");
  return *o;
}

template <class Pt, class Wt>
Primary<Pt> analyse(const Wt& W, std::vector<Pt> pts, long ell) {
  std::sort(pts.begin(), pts.end(), [](const Pt& a, const Pt& b) { return point_less(a, b); });
  Primary<Pt> r;
  r.ell = ell;
  long size = static_cast<long>(pts.size());
  r.a = valuation(size, ell);
  if (ipow(ell, r.a) != size) throw std::logic_error("torsion: primary part has non prime-power size");
  std::vector<long> orders;
  for (const auto& P : pts) orders.push_back(point_order(W, P, size));
  auto it = std::max_element(orders.begin(), orders.end());
  r.e = valuation(*it, ell);
  r.g1 = pts[static_cast<size_t>(it - orders.begin())];
  r.pts = pts;
  int f = r.a - r.e;
  if (f > 0) {
    std::vector<Pt> cyc{Pt::infinity()};
    for (Pt Q = r.g1; !Q.inf; Q = W.add(Q, r.g1)) cyc.push_back(Q);
    long want = ipow(ell, f);
    for (size_t i = 0; i < pts.size(); ++i) {
      if (orders[i] != want) continue;
      Pt low = W.mul(ipow(ell, f - 1), pts[i]);
      if (!contains_point(cyc, low)) {
        r.g2 = pts[i];
        break;
      }
    }
    if (!r.g2) throw std::logic_error("torsion: no complementary generator");
  }
  return r;
}

template <class Pt, class Wt>
TorsionGroup<Pt> assemble(const Wt& W, const std::vector<Primary<Pt>>& parts) {
  TorsionGroup<Pt> G;
  Pt g1 = Pt::infinity(), g2 = Pt::infinity();
  std::vector<Pt> pts{Pt::infinity()};
  for (const auto& part : parts) {
    G.m *= ipow(part.ell, part.e);
    G.n *= ipow(part.ell, part.a - part.e);
    g1 = W.add(g1, part.g1);
    if (part.g2) g2 = W.add(g2, *part.g2);
    std::vector<Pt> next;
    for (const auto& P : pts) {
      for (const auto& Q : part.pts) next.push_back(W.add(P, Q));
    }
    pts = std::move(next);
  }
  std::sort(pts.begin(), pts.end(), [](const Pt& a, const Pt& b) { return point_less(a, b); });
  G.points = std::move(pts);
  if (G.m > 1) G.generators.push_back(g1);
  if (G.n > 1) G.generators.push_back(g2);
  return G;
}

template <class Pt, class Wt>
std::vector<Pt> primary_subset(const Wt& W, const std::vector<Pt>& pts, long ell, long cap) {
  std::vector<Pt> out;
  for (const auto& P : pts) {
    long o = point_order(W, P, cap);
    while (o % ell == 0) o /= ell;
    if (o == 1) out.push_back(P);
  }
  return out;
}

PointL embed(const PointK& P, const QuadElem& d) {
  if (P.inf) return PointL::infinity();
  QuadElem z(0, 0, d.D());
  return PointL::affine(ExtElem(P.x, z, d), ExtElem(P.y, z, d));
}

long ell_part(long n, long ell) { return ipow(ell, valuation(n, ell)); }

}  // namespace

template <class P>
long TorsionGroup<P>::torsion_count(long k) const {
  return std::gcd(k, n) * std::gcd(k, m);
}

template <class P>
long TorsionGroup<P>::primary_order(long ell) const {
  return ell_part(m * n, ell);
}

template <class P>
std::string TorsionGroup<P>::structure() const {
  return structure_string(n, m);
}

template struct TorsionGroup<PointK>;
template struct TorsionGroup<PointL>;

std::string structure_string(long n, long m) {
  std::ostringstream os;
  if (n > 1) os << "C" << n << " x ";
  os << "C" << m;
  return os.str();
}

std::vector<std::pair<long, long>> admissible_structures(long D) {
  std::vector<std::pair<long, long>> out;
  if (D != -1 && D != -3) return out;
  for (long k : {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12}) out.emplace_back(1, k);
  for (long k : {1, 2, 3, 4}) out.emplace_back(2, 2 * k);
  if (D == -1) out.emplace_back(4, 4);
  if (D == -3) {
    out.emplace_back(3, 3);
    out.emplace_back(3, 6);
  }
  return out;
}

bool is_admissible(long n, long m, long D) {
  auto list = admissible_structures(D);
  if (list.empty()) return true;
  return std::find(list.begin(), list.end(), std::make_pair(n, m)) != list.end();
}

TorsionGroupK torsion_subgroup(const Curve& E) {
  TorsionBound tb = torsion_bound(E, 5);
  auto list = admissible_structures(E.D());
  DivisionPolynomials dp(E);
  KOps ops{E, dp};
  std::vector<Primary<PointK>> parts;
  for (const auto& [ell_z, v_z] : factor_integer(tb.M)) {
    long ell = ell_z.get_si();
    int v = v_z;
    if (!list.empty()) {
      int cap = 0;
      for (const auto& [n, m] : list) cap = std::max(cap, valuation(n * m, ell));
      v = std::min(v, cap);
    }
    if (v == 0) continue;
    auto pts = primary_points(ops, ell, ipow(ell, v), INT_MAX);
    if (pts.size() > 1) parts.push_back(analyse(E.model(), std::move(pts), ell));
  }
  TorsionGroupK G = assemble(E.model(), parts);
  if (!is_admissible(G.n, G.m, E.D())) {
    throw std::logic_error("torsion_subgroup: " + G.structure() + " is not an admissible structure");
  }
  return G;
}

TorsionGroupL torsion_over_quadratic_ext(const Curve& E, const QuadElem& d_in) {
  if (d_in.is_zero()) throw std::invalid_argument("torsion_over_quadratic_ext: d = 0");
  QuadElem d = d_in.in_field(E.D());
  TorsionGroupK TK = torsion_subgroup(E);
  Weierstrass<ExtElem> WL = E.model_L();
  if (is_square(d, E.D())) {
    TorsionGroupL G;
    G.m = TK.m;
    G.n = TK.n;
    for (const auto& P : TK.generators) G.generators.push_back(embed(P, d));
    for (const auto& P : TK.points) G.points.push_back(embed(P, d));
    return G;
  }
  Curve Ed = quadratic_twist(E, d);
  TorsionGroupK TD = torsion_subgroup(Ed);

  std::vector<Primary<PointL>> parts;
  DivisionPolynomials dp(E);
  LOps ops{E, dp, d, WL};
  auto two = primary_points(ops, 2, LONG_MAX, 4);
  if (two.size() > 1) parts.push_back(analyse(WL, std::move(two), 2));

  std::vector<long> odd;
  for (long p : prime_divisors(TK.order() * TD.order())) {
    if (p != 2) odd.push_back(p);
  }
  for (long ell : odd) {
    auto a = primary_subset(E.model(), TK.points, ell, TK.order());
    auto b = primary_subset(Ed.model(), TD.points, ell, TD.order());
    std::vector<PointL> pts;
    for (const auto& P : a) {
      for (const auto& Q : b) pts.push_back(WL.add(embed(P, d), twist_transport(E, d, Q)));
    }
    if (pts.size() > 1) parts.push_back(analyse(WL, std::move(pts), ell));
  }
  return assemble(WL, parts);
}

std::uint64_t count_torsion_over_K(const Curve& E, long n) {
  if (n < 1 || n % 2 == 0) throw std::invalid_argument("count_torsion_over_K: n must be odd and positive");
  if (n == 1) return 1;
  auto ps = prime_divisors(n);
  if (ps.size() > 1) {
    std::uint64_t r = 1;
    for (long p : ps) r *= count_torsion_over_K(E, ell_part(n, p));
    return r;
  }
  std::uint64_t count = 1;
  for (const auto& x : roots_in_K(division_poly(E, static_cast<int>(n)), E.D())) {
    count += E.points_with_x(x).size();
  }
  return count;
}

std::uint64_t count_torsion_over_L(const Curve& E, const QuadElem& d_in, long n) {
  if (n < 1 || n % 2 == 0) throw std::invalid_argument("count_torsion_over_L: n must be odd and positive");
  if (d_in.is_zero()) throw std::invalid_argument("count_torsion_over_L: d = 0");
  QuadElem d = d_in.in_field(E.D());
  if (n == 1) return 1;
  if (is_square(d, E.D())) return count_torsion_over_K(E, n);
  auto ps = prime_divisors(n);
  if (ps.size() > 1) {
    std::uint64_t r = 1;
    for (long p : ps) r *= count_torsion_over_L(E, d, ell_part(n, p));
    return r;
  }
  std::uint64_t count = 1;
  for (const auto& x : roots_in_L(to_L(division_poly(E, static_cast<int>(n))), d, E.D())) {
    count += E.points_with_x(x, d).size();
  }
  return count;
}

bool has_root_of_unity(long p, long D) { return p == 3 && D == -3; }

std::vector<std::string> check_growth_rules(const Curve& E, const QuadElem& d, const TorsionGroupK& TK,
                                            const TorsionGroupL& TL) {
  std::vector<std::string> v;
  auto fail = [&](int rule, const std::string& what) {
    v.push_back("rule " + std::to_string(rule) + ": " + what);
  };
  long k2 = TK.torsion_count(2), l2 = TL.torsion_count(2);
  if (k2 == 1 && l2 != 1) fail(1, "E(K)[2] trivial but E(L)[2] has order " + std::to_string(l2));

  Curve Ed = quadratic_twist(E, d);
  long ed2 = 1 + static_cast<long>(roots_in_K(Ed.two_division(), E.D()).size());
  if (ed2 != k2) fail(2, "|E^d(K)[2]| = " + std::to_string(ed2) + " but |E(K)[2]| = " + std::to_string(k2));

  for (long p : prime_divisors(TK.order() * TL.order())) {
    if (p == 2) continue;
    long kp = TK.torsion_count(p), lp = TL.torsion_count(p);
    long kinf = TK.primary_order(p), linf = TL.primary_order(p);
    bool mu = has_root_of_unity(p, E.D());
    std::string ps = std::to_string(p);
    if (kp == 1 && lp == p * p && !mu) fail(3, "E(L)[" + ps + "] full without a primitive " + ps + "th root in K");
    if (kp == p && linf != kinf && lp != p * p) fail(4, ps + "-primary growth without full " + ps + "-torsion");
    if (kp == p && lp == p * p && mu) fail(5, "full " + ps + "-torsion over L although K has a primitive root");
    if (kp == p * p && linf != kinf) fail(6, ps + "-primary part grew from full " + ps + "-torsion");
  }
  return v;
}

FullTorsion full_torsion_obstruction(std::uint64_t n, long D) {
  auto pp = prime_power(n);
  if (!pp || pp->first == 2) throw std::invalid_argument("full_torsion_obstruction: n must be an odd prime power");
  if (euler_phi(n) > 4) return FullTorsion::forbidden;
  if (pp->first == 5 && (D == -1 || D == -3)) return FullTorsion::forbidden;
  return FullTorsion::allowed;
}

}  // namespace qcyc

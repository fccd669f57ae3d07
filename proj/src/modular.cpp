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

#include "qcyc/modular.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include "qcyc/reduction.hpp"

namespace qcyc {

namespace {

QuadElem qe(const char* s, long D) { return parse_quad(s, D); }

PointK affine(const char* x, const char* y, long D) { return PointK::affine(qe(x, D), qe(y, D)); }

Curve long_curve(const std::array<long, 5>& a, long D) {
  std::array<QuadElem, 5> c;
  for (size_t i = 0; i < 5; ++i) c[i] = QuadElem(Rational(a[i]), D);
  return Curve(c, D);
}

std::string profile_string(const std::vector<int>& p) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < p.size(); ++i) os << (i ? "," : "") << p[i];
  os << ")";
  return os.str();
}

struct CuspList {
  int level;
  long D;
  std::vector<std::pair<const char*, const char*>> pts;  // affine cusps; O is implicit
};

const std::vector<CuspList>& cusp_data() {
  static const std::vector<CuspList> data = {
      {15, -1, {{"-2", "3"}, {"-1", "0"}, {"8", "18"}}},
      {15, -3, {{"-2", "3"}, {"-1", "0"}, {"8", "18"}}},
      {20, -1, {{"-1", "0"}, {"0", "-2"}, {"0", "2"}, {"4", "-10"}, {"4", "10"}}},
      {20, -3, {{"-1", "0"}, {"0", "-2"}, {"0", "2"}, {"4", "-10"}, {"4", "10"}}},
      {21, -1, {{"-2", "1"}, {"-1", "-1"}, {"5", "8"}}},
      {21, -3, {{"-2", "1"}, {"-1", "-1"}, {"5", "8"}}},
      {24, -1, {{"-2", "0"}, {"0", "-2"}, {"0", "2"}, {"1", "0"}, {"2", "0"}, {"4", "-6"}, {"4", "6"}}},
      {24, -3, {{"-2", "0"}, {"0", "-2"}, {"0", "2"}, {"1", "0"}, {"2", "0"}, {"4", "-6"}, {"4", "6"}}},
      {27, -1, {{"3", "4"}}},
      {27, -3, {{"3", "4"}, {"(-3+3w)/2", "4"}, {"(-3-3w)/2", "4"}, {"0", "(-1+3w)/2"}, {"0", "(-1-3w)/2"}}},
  };
  return data;
}

// ---------------------------------------------------------------------------
// Small linear algebra over K.

using Matrix = std::vector<std::vector<QuadElem>>;

Matrix identity(size_t n) {
  Matrix m(n, std::vector<QuadElem>(n, QuadElem(0)));
  for (size_t i = 0; i < n; ++i) m[i][i] = QuadElem(1);
  return m;
}

Matrix mat_mul(const Matrix& a, const Matrix& b) {
  size_t n = a.size();
  Matrix r(n, std::vector<QuadElem>(n, QuadElem(0)));
  for (size_t i = 0; i < n; ++i) {
    for (size_t k = 0; k < n; ++k) {
      if (a[i][k].is_zero()) continue;
      for (size_t j = 0; j < n; ++j) r[i][j] += a[i][k] * b[k][j];
    }
  }
  return r;
}

Matrix mat_lin(const std::vector<std::pair<QuadElem, const Matrix*>>& terms, size_t n) {
  Matrix r(n, std::vector<QuadElem>(n, QuadElem(0)));
  for (const auto& [c, m] : terms) {
    for (size_t i = 0; i < n; ++i) {
      for (size_t j = 0; j < n; ++j) r[i][j] += c * (*m)[i][j];
    }
  }
  return r;
}

QuadElem det(Matrix m) {
  size_t n = m.size();
  QuadElem d(1);
  for (size_t c = 0; c < n; ++c) {
    size_t piv = c;
    while (piv < n && m[piv][c].is_zero()) ++piv;
    if (piv == n) return QuadElem(0);
    if (piv != c) {
      std::swap(m[piv], m[c]);
      d = -d;
    }
    d *= m[c][c];
    QuadElem inv = m[c][c].inverse();
    for (size_t r = c + 1; r < n; ++r) {
      if (m[r][c].is_zero()) continue;
      QuadElem f = m[r][c] * inv;
      for (size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return d;
}

// Companion matrix of a monic polynomial; its eigenvalues are the roots.
Matrix companion(const PolyK& f) {
  size_t k = static_cast<size_t>(f.degree());
  Matrix c(k, std::vector<QuadElem>(k, QuadElem(0)));
  for (size_t i = 0; i + 1 < k; ++i) c[i + 1][i] = QuadElem(1);
  for (size_t i = 0; i < k; ++i) c[i][k - 1] = -f.coeff(i);
  return c;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  size_t n = a.size(), m = b.size();
  Matrix r(n * m, std::vector<QuadElem>(n * m, QuadElem(0)));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      if (a[i][j].is_zero()) continue;
      for (size_t k = 0; k < m; ++k) {
        for (size_t l = 0; l < m; ++l) r[i * m + k][j * m + l] = a[i][j] * b[k][l];
      }
    }
  }
  return r;
}

// Polynomial through (i, ys[i]) for i = 0, 1, ...
PolyK interpolate(const std::vector<QuadElem>& ys) {
  size_t n = ys.size();
  std::vector<QuadElem> dd = ys;
  for (size_t k = 1; k < n; ++k) {
    for (size_t i = n - 1; i >= k; --i) {
      dd[i] = (dd[i] - dd[i - 1]) / QuadElem(static_cast<long>(k));
      if (i == k) break;
    }
  }
  PolyK acc = PolyK::constant(dd[n - 1]);
  for (size_t i = n - 1; i-- > 0;) {
    acc = acc * PolyK({QuadElem(-static_cast<long>(i)), QuadElem(1)}) + PolyK::constant(dd[i]);
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Kernel polynomials of cycles.

// sum g_i phi^i psi2^(d - i)
PolyK compose_homogeneous(const PolyK& g, const PolyK& phi, const PolyK& psi2) {
  int d = g.degree();
  PolyK acc = PolyK::constant(g.coeff(d));
  PolyK pw = PolyK::constant(QuadElem(1));
  for (int k = 1; k <= d; ++k) {
    pw = pw * psi2;
    acc = acc * phi + pw.scaled(g.coeff(d - k));
  }
  return acc;
}

// x(P + Q) and x(P - Q) are the roots of this quadratic in X, s = x(P), t = x(Q),
// on y^2 = x^3 + A x + B. Product over root pairs of fA, fB via commuting
// companion matrices, sampled at integer X and interpolated.
PolyK mixed_poly(const PolyK& fA, const PolyK& fB, const QuadElem& A, const QuadElem& B) {
  Matrix S = kron(companion(fA), identity(fB.degree()));
  Matrix T = kron(identity(fA.degree()), companion(fB));
  size_t n = S.size();
  Matrix I = identity(n);
  Matrix diff = mat_lin({{QuadElem(1), &S}, {QuadElem(-1), &T}}, n);
  Matrix c2 = mat_mul(diff, diff);
  Matrix sum = mat_lin({{QuadElem(1), &S}, {QuadElem(1), &T}}, n);
  Matrix st = mat_mul(S, T);
  Matrix stA = mat_lin({{QuadElem(1), &st}, {A, &I}}, n);
  Matrix t1 = mat_mul(sum, stA);
  Matrix c1 = mat_lin({{QuadElem(-2), &t1}, {QuadElem(-4) * B, &I}}, n);
  Matrix stmA = mat_lin({{QuadElem(1), &st}, {-A, &I}}, n);
  Matrix sq = mat_mul(stmA, stmA);
  Matrix c0 = mat_lin({{QuadElem(1), &sq}, {QuadElem(-4) * B, &sum}}, n);
  std::vector<QuadElem> ys;
  for (size_t k = 0; k <= 2 * n; ++k) {
    QuadElem X(static_cast<long>(k));
    ys.push_back(det(mat_lin({{X * X, &c2}, {X, &c1}, {QuadElem(1), &c0}}, n)));
  }
  return interpolate(ys).monic();
}

// Sets of distinct factors with the given total degree.
void degree_subsets(const std::vector<PolyK>& fs, size_t start, int need, PolyK cur,
                    std::vector<PolyK>& out) {
  if (need == 0) {
    out.push_back(cur);
    return;
  }
  for (size_t i = start; i < fs.size(); ++i) {
    if (fs[i].degree() <= need) degree_subsets(fs, i + 1, need - fs[i].degree(), cur * fs[i], out);
  }
}

// Cycles of order ell^k as lists of layers: layer j holds the x-coordinates
// of the points of exact order ell^j.
std::vector<std::vector<PolyK>> prime_power_cycles(const Curve& S, long ell, int k) {
  const long D = S.D();
  DivisionPolynomials dp(S);
  std::vector<std::vector<PolyK>> cycles;
  if (ell == 2) {
    for (const auto& r : roots_in_K(S.two_division(), D)) cycles.push_back({PolyK({-r, QuadElem(1)})});
  } else {
    int size = static_cast<int>((ell - 1) / 2);
    PolyK f = squarefree_part(in_field(dp.f(static_cast<int>(ell)), D));
    std::vector<PolyK> cands;
    degree_subsets(small_factors_over_K(f, D, size), 0, size, PolyK::constant(QuadElem(1)), cands);
    for (auto& g : cands) {
      if (size == 1 || stable_under_multiplication(S, g, 2)) cycles.push_back({g.monic()});
    }
  }
  const int m = ell == 2 ? 3 : 2;
  PolyK phi = dp.phi(static_cast<int>(ell));
  PolyK psi2 = dp.psi_squared(static_cast<int>(ell));
  long lower = ell;
  for (int j = 2; j <= k; ++j) {
    long upper = lower * ell;
    int size = static_cast<int>(ell == 2 ? upper / 4 : (upper - lower) / 2);
    std::vector<std::vector<PolyK>> next;
    for (const auto& c : cycles) {
      PolyK H = squarefree_part(compose_homogeneous(c.back(), phi, psi2));
      std::vector<PolyK> cands;
      degree_subsets(small_factors_over_K(H, D, size), 0, size, PolyK::constant(QuadElem(1)), cands);
      for (auto& g : cands) {
        if (size > 1 && !stable_under_multiplication(S, g, m)) continue;
        auto layers = c;
        layers.push_back(g.monic());
        next.push_back(std::move(layers));
      }
    }
    cycles = std::move(next);
    lower = upper;
  }
  return cycles;
}

}  // namespace

bool stable_under_multiplication(const Curve& E, const PolyK& g_in, int m) {
  PolyK g = in_field(g_in, E.D()).monic();
  if (g.degree() <= 0) return true;
  DivisionPolynomials dp(E);
  PolyK phi = dp.phi(m) % g;
  PolyK psi2 = dp.psi_squared(m) % g;
  int d = g.degree();
  PolyK acc = PolyK::constant(g.coeff(d));
  PolyK pw = PolyK::constant(QuadElem(1));
  for (int k = 1; k <= d; ++k) {
    pw = (pw * psi2) % g;
    acc = (acc * phi + pw.scaled(g.coeff(d - k))) % g;
  }
  return acc.is_zero();
}

std::vector<PolyK> cycle_kernel_polys(const Curve& E, long n) {
  if (n < 2) throw std::invalid_argument("cycle_kernel_polys: n must be at least 2");
  const long D = E.D();
  auto [A, B] = E.short_coefficients();
  Curve S = Curve::short_form(A, B, D);
  std::vector<PolyK> acc = {PolyK::constant(QuadElem(1))};
  for (const auto& [p, e] : factor_integer(Integer(n))) {
    long ell = p.get_si();
    if (ell == 2 && e > 3) throw std::invalid_argument("cycle_kernel_polys: 2-part above 8");
    std::vector<PolyK> part;
    for (const auto& layers : prime_power_cycles(S, ell, e)) {
      PolyK f = PolyK::constant(QuadElem(1));
      for (const auto& l : layers) f *= l;
      part.push_back(f);
    }
    std::vector<PolyK> next;
    for (const auto& fa : acc) {
      for (const auto& fb : part) {
        if (fa.degree() == 0) {
          next.push_back(fb);
        } else {
          next.push_back(squarefree_part(fa * fb * mixed_poly(fa, fb, A, B)));
        }
      }
    }
    acc = std::move(next);
  }
  if (E.is_short()) return acc;
  // back from the short model: x' = 36 x + 3 b2
  std::vector<PolyK> out;
  for (const auto& f : acc) out.push_back(in_field(f.compose_linear(QuadElem(36), QuadElem(3) * E.b2()), D).monic());
  return out;
}

// ---------------------------------------------------------------------------
// Models and tables.

Curve X0Model::curve(long D) const { return long_curve(a, D); }

std::string X0Model::equation() const { return long_curve(a, -1).to_string(); }

std::vector<PointK> X0Model::cusps(long D) const {
  for (const auto& c : cusp_data()) {
    if (c.level != level || c.D != D) continue;
    std::vector<PointK> out = {PointK::infinity()};
    for (const auto& [x, y] : c.pts) out.push_back(affine(x, y, D));
    return out;
  }
  throw std::invalid_argument("X0Model::cusps: no cusp data for D = " + std::to_string(D));
}

const X0Model& x0_model(int level) {
  static const std::vector<X0Model> models = {
      {15, {1, 1, 1, -10, -10}, 1}, {20, {0, 1, 0, 4, 4}, 1},   {21, {1, 0, 0, -4, -1}, 1},
      {24, {0, -1, 0, -4, 4}, 1},   {27, {0, 0, 1, 0, -7}, 1},
  };
  for (const auto& m : models) {
    if (m.level == level) return m;
  }
  throw std::invalid_argument("x0_model: no model for level " + std::to_string(level));
}

std::vector<int> x0_levels() { return {15, 20, 21, 24, 27}; }

namespace {

struct RowSpec {
  const char* x;
  const char* y;
  const char* j;
  const char* A;  // nullptr for j-special rows
  const char* B;
  std::vector<int> profile;
};

TableRow make_row(int level, long D, const RowSpec& s) {
  TableRow r;
  r.level = level;
  r.D = D;
  r.point = affine(s.x, s.y, D);
  r.j = qe(s.j, D);
  if (s.A) {
    r.curve = Curve::short_form(qe(s.A, D), qe(s.B, D), D);
    r.expected_profile = s.profile;
  } else {
    r.j_special = true;
  }
  return r;
}

PolyK linear(const char* root, long D) { return PolyK({-qe(root, D), QuadElem(1, 0, D)}); }

PolyK quadratic(const char* b, const char* c, long D) { return PolyK({qe(c, D), qe(b, D), QuadElem(1, 0, D)}); }

}  // namespace

std::vector<TableRow> table_rows(int level, long D) {
  std::vector<TableRow> rows;
  if (level == 21 && D == -3) {
    const std::vector<RowSpec> specs = {
        {"-1/4", "1/8", "3375/2", "20/441", "-16/27783", {1, 3, 3, 3}},
        {"2", "-1", "-189613868625/128", "-1915/36", "-48383/324", {1, 3, 6}},
        {"-1", "2", "-1159088625/2097152", "-505/192", "-23053/6912", {1, 3, 6}},
        {"5", "-13", "-140625/8", "-1600/147", "-134144/9261", {1, 3, 3, 3}},
        {"(w+1)/2", "w-1", "-12288000", "(40w+10)/49", "(-2530w-6831)/12348", {1, 3, 6}},
        {"(-w+1)/2", "-w-1", "-12288000", "(-40w+10)/49", "(2530w-6831)/12348", {1, 3, 6}},
        {"(w+1)/2", "(-3w+1)/2", "54000", "(-135w-585)/98", "(-660w-1782)/343", {1, 3, 6}},
        {"(-w+1)/2", "(3w+1)/2", "54000", "(135w-585)/98", "(660w-1782)/343", {1, 3, 6}},
        {"(-3w-5)/2", "8", "0", nullptr, nullptr, {}},
        {"(3w-5)/2", "8", "0", nullptr, nullptr, {}},
        {"(-3w-5)/2", "(3w-11)/2", "0", nullptr, nullptr, {}},
        {"(3w-5)/2", "(-3w-11)/2", "0", nullptr, nullptr, {}},
    };
    for (const auto& s : specs) rows.push_back(make_row(level, D, s));
  } else if (level == 15 && D == -1) {
    const std::vector<RowSpec> specs = {
        {"8", "-27", "-121945/32", "-87/20", "-421/100", {1, 1, 1, 2, 2}},
        {"-2", "-2", "46969655/32768", "633/54080", "239/1081600", {1, 1, 1, 2, 2}},
        {"-13/4", "9/8", "-25/2", "-12/25", "-944/625", {1, 2, 4}},
        {"3", "-2", "-349938025/8", "-46272/4225", "-1473536/105625", {1, 2, 4}},
        {"1/2", "(-15w-3)/4", "(-198261w-62613)/2", "(6846w+9528)/105625", "(-22652w+30164)/2640625", {1, 2, 4}},
        {"1/2", "(15w-3)/4", "(198261w-62613)/2", "(-6846w+9528)/105625", "(22652w+30164)/2640625", {1, 2, 4}},
        {"3w-1", "-6w+6", "(15363w-47709)/256", "(-3w+96)/200", "(3989w-373)/10000", {1, 2, 4}},
        {"-3w-1", "6w+6", "(-15363w-47709)/256", "(3w+96)/200", "(-3989w-373)/10000", {1, 2, 4}},
        {"3w-1", "3w-6", "(-13670181w+19928133)/8", "(2583w+9444)/8450", "(-93373w+39511)/211250", {1, 2, 4}},
        {"-3w-1", "-3w-6", "(13670181w+19928133)/8", "(-2583w+9444)/8450", "(93373w+39511)/211250", {1, 2, 4}},
        {"-7", "15w+3", "(-86643w-1971)/4", "(216w-2688)/625", "(8608w-53344)/15625", {1, 2, 4}},
        {"-7", "-15w+3", "(86643w-1971)/4", "(-216w-2688)/625", "(-8608w-53344)/15625", {1, 2, 4}},
    };
    for (const auto& s : specs) rows.push_back(make_row(level, D, s));
    rows[0].kernel_poly = linear("7/10", D) * linear("-1/2", D) * linear("-17/10", D) *
                          quadratic("1", "-139/20", D) * quadratic("13", "269/20", D);
    rows[1].kernel_poly = linear("3/104", D) * linear("-17/520", D) * linear("-113/520", D) *
                          quadratic("-11/52", "2333/54080", D) * quadratic("1/52", "437/54080", D);
  } else if (level == 20 && D == -1) {
    const std::vector<RowSpec> specs = {
        {"-2w", "0", "287496", "(264w+77)/625", "(616w+1638)/15625", {1, 1, 2, 2, 4}},
        {"2w", "0", "287496", "(-264w+77)/625", "(-616w+1638)/15625", {1, 1, 2, 2, 4}},
        {"2w-2", "-2w-4", "287496", "(264w+77)/625", "(616w+1638)/15625", {1, 1, 2, 2, 4}},
        {"-2w-2", "2w-4", "287496", "(-264w+77)/625", "(-616w+1638)/15625", {1, 1, 2, 2, 4}},
        {"2w-2", "2w+4", "1728", nullptr, nullptr, {}},
        {"-2w-2", "-2w+4", "1728", nullptr, nullptr, {}},
    };
    for (const auto& s : specs) rows.push_back(make_row(level, D, s));
  }
  return rows;
}

KernelProfile kernel_factor_profile(const TableRow& row) {
  if (row.j_special || !row.curve) {
    throw std::invalid_argument("kernel_factor_profile: j-special row has no curve data");
  }
  KernelProfile out;
  if (row.kernel_poly) {
    out.kernel_poly = row.kernel_poly;
    out.profile = factor_profile(*row.kernel_poly, row.D);
    out.provenance = "printed";
    out.match = out.profile == row.expected_profile;
    return out;
  }
  out.provenance = "derived";
  std::vector<PolyK> polys = cycle_kernel_polys(*row.curve, row.level);
  for (const auto& f : polys) {
    std::vector<int> p = factor_profile(f, row.D);
    if (!out.match && p == row.expected_profile) {
      out.match = true;
      out.profile = p;
      out.kernel_poly = f;
    }
    out.derived_profiles.push_back(std::move(p));
  }
  if (!out.match && !polys.empty()) {
    out.profile = out.derived_profiles.front();
    out.kernel_poly = polys.front();
  }
  return out;
}

namespace {

size_t height(const QuadElem& x) {
  auto bits = [](const Rational& r) {
    return std::max(mpz_sizeinbase(r.get_num_mpz_t(), 2), mpz_sizeinbase(r.get_den_mpz_t(), 2));
  };
  return std::max(bits(x.a()), bits(x.b()));
}

}  // namespace

std::optional<CycleAnalysis> cycle_quadratic_analysis(const Curve& E, const PolyK& f_C) {
  const long D = E.D();
  auto d0 = splits_over_quadratic(f_C, D);
  if (!d0) return std::nullopt;
  std::vector<QuadElem> roots = roots_in_K(f_C, D);
  if (roots.empty()) return std::nullopt;
  auto best = std::min_element(roots.begin(), roots.end(), [](const QuadElem& a, const QuadElem& b) {
    size_t ha = height(a), hb = height(b);
    if (ha != hb) return ha < hb;
    return lex_less(a, b);
  });
  const QuadElem& x = *best;
  QuadElem v = E.two_division()(x);
  SquareClass e = v.is_zero() ? SquareClass(QuadElem(1, 0, D), D) : square_class_reduce(v, D);
  auto pts = E.points_with_x(ExtElem(x), e.rep());
  if (pts.empty()) throw std::logic_error("cycle_quadratic_analysis: designated point not found");
  std::vector<SquareClass> cands = {e};
  if (!d0->is_trivial()) cands.push_back(e * *d0);
  return CycleAnalysis{*d0, pts.front(), e, cands};
}

std::optional<CycleAnalysis> cycle_quadratic_analysis(const TableRow& row) {
  if (row.j_special || !row.curve) return std::nullopt;
  KernelProfile kp = kernel_factor_profile(row);
  if (!kp.kernel_poly) return std::nullopt;
  return cycle_quadratic_analysis(*row.curve, *kp.kernel_poly);
}

// ---------------------------------------------------------------------------
// X0(35).

ProjPoint ProjPoint::normalized() const {
  QuadElem s;
  if (!z.is_zero()) {
    s = z;
  } else if (!y.is_zero()) {
    s = y;
  } else if (!x.is_zero()) {
    s = x;
  } else {
    throw std::invalid_argument("ProjPoint: all coordinates zero");
  }
  return ProjPoint{x / s, y / s, z / s};
}

bool operator==(const ProjPoint& a, const ProjPoint& b) {
  ProjPoint p = a.normalized(), q = b.normalized();
  return p.x == q.x && p.y == q.y && p.z == q.z;
}

std::string to_string(const ProjPoint& P) {
  ProjPoint n = P.normalized();
  return "[" + to_string(n.x) + ", " + to_string(n.y) + ", " + to_string(n.z) + "]";
}

namespace x35 {

namespace {

PolyQ pq(std::vector<long> c) {
  std::vector<Rational> r;
  for (long v : c) r.emplace_back(v);
  return PolyQ(std::move(r));
}

// Affine chart z = 1: y^2 + c1(x) y = c0(x).
const PolyQ& c1() {
  static const PolyQ p = pq({-1, 0, -1, 0, -1});
  return p;
}
const PolyQ& c0() {
  static const PolyQ p = pq({0, 1, -2, 1, -3, -1, -2, -1});
  return p;
}
// p1, p3 and the y-free part of p2 on z = 1; p2 = p2x - 7 y.
const PolyQ& p1x() {
  static const PolyQ p = pq({1, 5, -8, -5, 1});
  return p;
}
const PolyQ& p2x() {
  static const PolyQ p = pq({3, 1, 4, -1, 3});
  return p;
}
const PolyQ& p3x() {
  static const PolyQ p = pq({1, -2, -1, 2, 1});
  return p;
}

QuadElem pw(const QuadElem& a, int e) {
  QuadElem r(1);
  for (int i = 0; i < e; ++i) r *= a;
  return r;
}

std::array<QuadElem, 3> forms(const ProjPoint& P) {
  const QuadElem &x = P.x, &y = P.y, &z = P.z;
  QuadElem p1 = pw(x, 4) - QuadElem(5) * pw(x, 3) * z - QuadElem(8) * pw(x, 2) * pw(z, 2) + QuadElem(5) * x * pw(z, 3) +
                pw(z, 4);
  QuadElem p2 = QuadElem(3) * pw(x, 4) - pw(x, 3) * z + QuadElem(4) * pw(x, 2) * pw(z, 2) + x * pw(z, 3) -
                QuadElem(7) * y * pw(z, 3) + QuadElem(3) * pw(z, 4);
  QuadElem p3 = pw(x, 4) + QuadElem(2) * pw(x, 3) * z - pw(x, 2) * pw(z, 2) - QuadElem(2) * x * pw(z, 3) + pw(z, 4);
  return {p1, p2, p3};
}

PolyK to_field(const PolyQ& f, long D) { return to_K(f, D); }

}  // namespace

std::string model_equation() { return "y^2 + (-x^4 - x^2 - 1)*y = -x^7 - 2*x^6 - x^5 - 3*x^4 + x^3 - 2*x^2 + x"; }

bool on_model(const ProjPoint& P) {
  const QuadElem &x = P.x, &y = P.y, &z = P.z;
  QuadElem f = pw(y, 2) * pw(z, 5) - pw(x, 4) * y * pw(z, 2) - pw(x, 2) * y * pw(z, 4) - y * pw(z, 6) + pw(x, 7) +
               QuadElem(2) * pw(x, 6) * z + pw(x, 5) * pw(z, 2) + QuadElem(3) * pw(x, 4) * pw(z, 3) -
               pw(x, 3) * pw(z, 4) + QuadElem(2) * pw(x, 2) * pw(z, 5) - x * pw(z, 6);
  return f.is_zero();
}

bool on_target(const ProjPoint& Q) {
  const QuadElem &X = Q.x, &Y = Q.y, &Z = Q.z;
  QuadElem f = Y * Y * Z + Y * Z * Z - pw(X, 3) - X * X * Z - QuadElem(9) * X * Z * Z - pw(Z, 3);
  return f.is_zero();
}

Curve target(long D) { return long_curve({0, 1, 1, 9, 1}, D); }

ProjPoint from_affine(const PointK& P) {
  if (P.inf) return ProjPoint{QuadElem(0), QuadElem(1), QuadElem(0)};
  return ProjPoint{P.x, P.y, QuadElem(1)};
}

std::optional<ProjPoint> eval_quotient_map(const ProjPoint& P) {
  if (!on_model(P)) throw std::invalid_argument("eval_quotient_map: " + to_string(P) + " is not on the model");
  auto [a, b, c] = forms(P);
  if (a.is_zero() && b.is_zero() && c.is_zero()) return std::nullopt;
  ProjPoint Q = ProjPoint{a, b, c}.normalized();
  if (!on_target(Q)) throw std::logic_error("eval_quotient_map: image is off the target curve");
  return Q;
}

std::vector<ProjPoint> fiber_over(const ProjPoint& Q_in, long D) {
  if (!on_target(Q_in)) throw std::invalid_argument("fiber_over: " + to_string(Q_in) + " is not on E35");
  ProjPoint Q = Q_in.normalized();
  PolyK C1 = to_field(c1(), D), C0 = to_field(c0(), D);
  PolyK P1 = to_field(p1x(), D), P2 = to_field(p2x(), D), P3 = to_field(p3x(), D);
  std::vector<ProjPoint> out;
  auto keep = [&](const ProjPoint& P) {
    if (!on_model(P)) return;
    auto img = eval_quotient_map(P);
    if (img && *img == Q && std::find(out.begin(), out.end(), P) == out.end()) out.push_back(P);
  };
  if (!Q.z.is_zero()) {
    // p1 = X p3 is free of y; p2 = Y p3 gives 7 y = p2x - Y p3.
    PolyK e1 = P1 - P3.scaled(Q.x);
    PolyK N = P2 - P3.scaled(Q.y);
    PolyK R = N * N + (C1 * N).scaled(QuadElem(7)) - C0.scaled(QuadElem(49));
    PolyK g = e1.is_zero() ? R : gcd(e1, R);
    if (g.is_zero()) throw std::logic_error("fiber_over: elimination degenerated");
    for (const auto& x : roots_in_K(g, D)) keep(ProjPoint{x, N(x) / QuadElem(7), QuadElem(1, 0, D)});
  } else {
    for (const auto& x : roots_in_K(gcd(P1, P3), D)) {
      PolyK quad({-C0(x), C1(x), QuadElem(1, 0, D)});
      for (const auto& y : roots_in_K(quad, D)) keep(ProjPoint{x, y, QuadElem(1, 0, D)});
    }
  }
  return out;
}

std::vector<ProjPoint> nonregular_locus(long D) {
  std::vector<ProjPoint> out = {ProjPoint{QuadElem(0, 0, D), QuadElem(1, 0, D), QuadElem(0, 0, D)}};
  PolyK P1 = to_field(p1x(), D), P2 = to_field(p2x(), D), P3 = to_field(p3x(), D);
  for (const auto& x : roots_in_K(gcd(P1, P3), D)) {
    ProjPoint P{x, P2(x) / QuadElem(7), QuadElem(1, 0, D)};
    if (on_model(P)) out.push_back(P);
  }
  return out;
}

bool quotient_identity_holds() {
  // Elements A + B y of Q[x][y] / (y^2 + c1 y - c0).
  using Elt = std::pair<PolyQ, PolyQ>;
  auto mul = [](const Elt& u, const Elt& v) {
    PolyQ bb = u.second * v.second;
    return Elt{u.first * v.first + bb * c0(), u.first * v.second + u.second * v.first - bb * c1()};
  };
  auto add = [](const Elt& u, const Elt& v, long s) {
    Rational r(s);
    return Elt{u.first + v.first.scaled(r), u.second + v.second.scaled(r)};
  };
  Elt X{p1x(), PolyQ()};
  Elt Y{p2x(), PolyQ::constant(Rational(-7))};
  Elt Z{p3x(), PolyQ()};
  Elt f = mul(mul(Y, Y), Z);
  f = add(f, mul(Y, mul(Z, Z)), 1);
  f = add(f, mul(X, mul(X, X)), -1);
  f = add(f, mul(mul(X, X), Z), -1);
  f = add(f, mul(X, mul(Z, Z)), -9);
  f = add(f, mul(Z, mul(Z, Z)), -1);
  return f.first.is_zero() && f.second.is_zero();
}

}  // namespace x35

// ---------------------------------------------------------------------------
// Twists.

std::vector<SquareClass> default_twist_classes(const Curve& E, int max_generators) {
  const long D = E.D();
  if (!has_canonical_square_classes(D)) {
    throw std::domain_error("default_twist_classes: square classes need a norm-Euclidean field");
  }
  std::vector<QuadElem> gens;
  for (const auto& u : unit_class_representatives(D)) {
    if (!is_square(u, D)) gens.push_back(u);
  }
  Rational nd = norm(E.discriminant()) * Rational(6);
  std::vector<Integer> primes;
  for (const Integer& part : {Integer(nd.get_num()), Integer(nd.get_den())}) {
    if (part == 1 || part == -1) continue;
    for (const auto& [p, e] : factor_integer(part)) {
      (void)e;
      if (std::find(primes.begin(), primes.end(), p) == primes.end()) primes.push_back(p);
    }
  }
  std::sort(primes.begin(), primes.end());
  for (const auto& p : primes) {
    for (const auto& pi : primes_above(p.get_si(), D)) gens.push_back(pi);
  }
  if (static_cast<int>(gens.size()) > max_generators) gens.resize(static_cast<size_t>(max_generators));
  std::vector<SquareClass> out;
  for (size_t mask = 0; mask < (size_t{1} << gens.size()); ++mask) {
    QuadElem d(1, 0, D);
    for (size_t i = 0; i < gens.size(); ++i) {
      if (mask >> i & 1) d *= gens[i];
    }
    SquareClass c = square_class_reduce(d, D);
    if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
  }
  return out;
}

TwistSpectrum twist_spectrum(const Curve& E, const std::vector<SquareClass>& ds) {
  const long D = E.D();
  TwistSpectrum out;
  TorsionGroupK base = torsion_subgroup(E);
  out.base = base.structure();
  out.in_scope = D == -3 && base.order() % 2 == 1;
  std::vector<SquareClass> seen;
  for (const auto& d : ds) {
    if (d.D() != D) throw std::invalid_argument("twist_spectrum: square class from another field");
    if (std::find(seen.begin(), seen.end(), d) != seen.end()) continue;
    seen.push_back(d);
    TorsionGroupK T = d.is_trivial() ? base : torsion_subgroup(quadratic_twist(E, d.rep()));
    out.entries.push_back(TwistEntry{d, T});
  }
  if (!out.in_scope) return out;

  using S = std::pair<long, long>;
  std::map<S, std::pair<std::vector<S>, int>> rules = {
      {{1, 7}, {{{1, 1}}, 0}},
      {{1, 9}, {{{1, 1}}, 0}},
      {{3, 3}, {{{1, 1}}, 0}},
      {{1, 3}, {{{1, 1}, {1, 5}}, 1}},
      {{1, 5}, {{{1, 1}, {1, 3}}, 1}},
      {{1, 1}, {{{1, 1}, {1, 3}, {1, 5}, {1, 7}, {1, 9}, {3, 3}}, 2}},
  };
  auto it = rules.find({base.n, base.m});
  if (it == rules.end()) {
    out.conformant = false;
    out.violations.push_back("E(K)_tors = " + out.base + " is not an odd structure over K");
    return out;
  }
  const auto& [allowed, bound] = it->second;
  for (const auto& e : out.entries) {
    if (e.d.is_trivial()) continue;
    S s{e.torsion.n, e.torsion.m};
    if (std::find(allowed.begin(), allowed.end(), s) == allowed.end()) {
      out.violations.push_back("d = " + to_string(e.d) + ": " + out.base + " -> " + e.torsion.structure());
    }
    if (e.torsion.order() > 1) ++out.growth_extensions;
  }
  if (out.growth_extensions > bound) {
    out.violations.push_back(out.base + " grows in " + std::to_string(out.growth_extensions) +
                             " extensions, more than " + std::to_string(bound));
  }
  out.conformant = out.violations.empty();
  return out;
}

// ---------------------------------------------------------------------------
// Isogeny report.

namespace {

std::string point_label(const PointK& P) { return "(" + to_string(P.x) + ", " + to_string(P.y) + ")"; }

std::vector<PointK> non_cusps(const X0Model& M, long D, const TorsionGroupK& T) {
  std::vector<PointK> cusps = M.cusps(D), out;
  for (const auto& P : T.points) {
    if (std::find(cusps.begin(), cusps.end(), P) == cusps.end()) out.push_back(P);
  }
  return out;
}

bool all_cusps(const X0Model& M, long D, const TorsionGroupK& T) { return non_cusps(M, D, T).empty(); }

QuadElem recast(const QuadElem& x, long D) {
  if (!x.is_rational()) throw std::invalid_argument("recast: irrational value " + to_string(x));
  return QuadElem(x.a(), D);
}

// Rows of the rational part of X0(15) recast over another field.
std::vector<TableRow> fifteen_rows(long D) {
  std::vector<TableRow> rows = table_rows(15, -1);
  if (D == -1) return rows;
  std::vector<TableRow> out;
  for (auto r : rows) {
    if (!r.point.x.is_rational() || !r.point.y.is_rational()) continue;
    r.D = D;
    r.point = PointK::affine(recast(r.point.x, D), recast(r.point.y, D));
    r.j = recast(r.j, D);
    auto [A, B] = r.curve->short_coefficients();
    r.curve = Curve::short_form(recast(A, D), recast(B, D), D);
    if (r.kernel_poly) {
      r.kernel_poly = map_coeffs<QuadElem, QuadElem>(*r.kernel_poly, [D](const QuadElem& c) { return recast(c, D); });
    }
    std::vector<int> expected = r.expected_profile;
    r.expected_profile.clear();
    KernelProfile kp = kernel_factor_profile(r);
    r.expected_profile = kp.provenance == "printed" ? expected : kp.profile;
    out.push_back(std::move(r));
  }
  return out;
}

std::string blocked_row(const TableRow& r, const KernelProfile& kp) {
  int top = kp.profile.empty() ? 0 : kp.profile.back();
  std::string s = point_label(r.point) + ": f_C profile " + profile_string(kp.profile) + " (" + kp.provenance + ")";
  if (top >= 3) s += ", factor of degree " + std::to_string(top) + " blocks quadratic rationality";
  return s;
}

std::string witness_line(int j_case, std::uint64_t q, long D) {
  Curve E = j_case == 0 ? Curve::short_form(QuadElem(0, 0, D), QuadElem(1, 0, D), D)
                        : Curve::short_form(QuadElem(1, 0, D), QuadElem(0, 0, D), D);
  WitnessCertificate c = witness_prime(j_case, q, E);
  std::ostringstream os;
  os << "j = " << j_case << " rows: witness prime p = " << c.p << " for q = " << q << ", residue degree " << c.degree
     << ", |E| = " << c.count << (c.q_divides_count ? " divisible by " : " prime to ") << q
     << ", so no twist has a K-point of order " << q;
  return os.str();
}

}  // namespace

IsogenyReport isogeny_report(long D) {
  if (D != -1 && D != -3) throw std::invalid_argument("isogeny_report: D must be -1 or -3");
  IsogenyReport rep;
  rep.D = D;
  const std::string rank0 = "rank-0 from paper";

  // n = 15
  LevelReport l15{15, "four curves", {}, {}};
  for (const auto& r : fifteen_rows(D)) {
    KernelProfile kp = kernel_factor_profile(r);
    auto ca = kp.kernel_poly ? cycle_quadratic_analysis(*r.curve, *kp.kernel_poly) : std::nullopt;
    if (!ca) {
      l15.certificates.push_back(blocked_row(r, kp));
      continue;
    }
    std::string line = point_label(r.point) + ": f_C profile " + profile_string(kp.profile) + " (" + kp.provenance +
                       "), K(f_C) = K(sqrt " + to_string(ca->d0) + "), candidate twists";
    for (const auto& e : ca->candidates) {
      Curve Ed = quadratic_twist(*r.curve, e.rep());
      TorsionGroupL TL = torsion_over_quadratic_ext(Ed, ca->d0.rep());
      rep.fifteen.push_back(FifteenCurve{point_label(r.point) + " twisted by " + to_string(e), Ed, ca->d0,
                                         TL.structure(), TL.torsion_count(9), TL.torsion_count(2)});
      line += " " + to_string(e) + " -> " + TL.structure();
    }
    l15.certificates.push_back(line);
  }
  for (const auto& c : rep.fifteen) {
    if (c.torsion_over_L != "C15") l15.verdict = "mismatch";
  }
  if (rep.fifteen.size() != 4) l15.verdict = "mismatch";
  l15.assumptions.push_back(rank0 + ": X0(15)(K) is finite, its torsion points are all K-points");
  {
    const X0Model& M = x0_model(15);
    TorsionGroupK T = torsion_subgroup(M.curve(D));
    l15.certificates.push_back("X0(15)(K)_tors = " + T.structure() + " with " + std::to_string(M.cusps(D).size()) +
                               " cusps");
  }

  // n = 20
  LevelReport l20{20, "no isogeny", {}, {rank0}};
  {
    const X0Model& M = x0_model(20);
    TorsionGroupK T = torsion_subgroup(M.curve(D));
    if (D == -3) {
      l20.certificates.push_back("X0(20)(K)_tors = " + T.structure() + ", all points are cusps");
      if (!all_cusps(M, D, T)) l20.verdict = "mismatch";
    } else {
      for (const auto& r : table_rows(20, D)) {
        if (r.j_special) continue;
        KernelProfile kp = kernel_factor_profile(r);
        l20.certificates.push_back(blocked_row(r, kp));
        if (kp.profile.empty() || kp.profile.back() < 3) l20.verdict = "mismatch";
      }
      l20.certificates.push_back(witness_line(1728, 5, D));
    }
  }

  // n = 21
  LevelReport l21{21, "no isogeny", {}, {}};
  if (D == -3) {
    for (const auto& r : table_rows(21, D)) {
      if (r.j_special) continue;
      KernelProfile kp = kernel_factor_profile(r);
      l21.certificates.push_back(blocked_row(r, kp));
      if (kp.profile.empty() || kp.profile.back() < 3) l21.verdict = "mismatch";
    }
    l21.certificates.push_back(witness_line(0, 7, D));
    l21.assumptions.push_back(rank0);
  } else {
    l21.verdict = "open";
    TorsionGroupK T = torsion_subgroup(x0_model(21).curve(D));
    l21.certificates.push_back("X0(21)(K)_tors = " + T.structure() + "; only torsion points are classified");
    l21.assumptions.push_back("X0(21) has rank 1 over K (assumed); no point search is performed");
  }

  // n = 24
  LevelReport l24{24, "no isogeny", {}, {rank0}};
  {
    const X0Model& M = x0_model(24);
    TorsionGroupK T = torsion_subgroup(M.curve(D));
    l24.certificates.push_back("X0(24)(K)_tors = " + T.structure() + ", all " + std::to_string(T.order()) +
                               " points are cusps");
    if (!all_cusps(M, D, T)) l24.verdict = "mismatch";
  }

  // n = 27
  LevelReport l27{27, "no isogeny", {}, {rank0}};
  {
    const X0Model& M = x0_model(27);
    TorsionGroupK T = torsion_subgroup(M.curve(D));
    auto nc = non_cusps(M, D, T);
    std::string pts;
    for (const auto& P : nc) pts += (pts.empty() ? "" : ", ") + point_label(P);
    l27.certificates.push_back("X0(27)(K)_tors = " + T.structure() + ", non-cuspidal: " + pts);
    // A representative with j = -12288000; every quadratic twist has the same profiles.
    QuadElem j(Rational(-12288000), D), k = QuadElem(1728) - j;
    Curve E = Curve::short_form(QuadElem(3) * j * k, QuadElem(2) * j * k * k, D);
    std::vector<std::string> profs;
    bool blocked = true;
    for (const auto& f : cycle_kernel_polys(E, 27)) {
      std::vector<int> p = factor_profile(f, D);
      if (p.back() < 3) blocked = false;
      profs.push_back(profile_string(p));
    }
    std::string list;
    for (const auto& p : profs) list += (list.empty() ? "" : ", ") + p;
    l27.certificates.push_back("j = -12288000: f_C profiles of the K-rational 27-cycles " + list + " (derived)");
    if (profs.empty() || !blocked) l27.verdict = "mismatch";
    l27.assumptions.push_back("the non-cuspidal points have j = -12288000 (assumed)");
  }

  // n = 30
  LevelReport l30{30, "no isogeny", {}, {}};
  for (const auto& c : rep.fifteen) {
    l30.certificates.push_back(c.label + ": E(L)[2] of order " + std::to_string(c.two_torsion_over_L));
    if (c.two_torsion_over_L != 1) l30.verdict = "mismatch";
  }
  l30.certificates.push_back("a 30-cycle contains a unique 15-cycle, so only the four curves above can occur");

  // n = 35
  LevelReport l35{35, "no isogeny", {}, {rank0}};
  {
    std::vector<ProjPoint> kpts = x35::nonregular_locus(D);
    TorsionGroupK T = torsion_subgroup(x35::target(D));
    for (const auto& Q : T.points) {
      for (const auto& P : x35::fiber_over(x35::from_affine(Q), D)) {
        if (std::find(kpts.begin(), kpts.end(), P) == kpts.end()) kpts.push_back(P);
      }
    }
    std::string pts;
    for (const auto& P : kpts) pts += (pts.empty() ? "" : ", ") + to_string(P);
    l35.certificates.push_back("E35(K)_tors = " + T.structure() + "; K-points of X0(35): " + pts);
    l35.assumptions.push_back("the K-points of X0(35) found are cusps (assumed)");
    if (kpts.size() != 3) l35.verdict = "mismatch";
  }

  // n = 45
  LevelReport l45{45, "no isogeny", {}, {"45 handled through its unique 15-cycle (inferred)"}};
  for (const auto& c : rep.fifteen) {
    l45.certificates.push_back(c.label + ": E(L)[9] of order " + std::to_string(c.nine_torsion_over_L));
    if (c.nine_torsion_over_L % 9 == 0) l45.verdict = "mismatch";
  }

  rep.levels = {l15, l20, l21, l24, l27, l30, l35, l45};
  return rep;
}

}  // namespace qcyc

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

#ifndef QCYC_POLY_HPP
#define QCYC_POLY_HPP

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qcyc/quad.hpp"
#include "qcyc/rational.hpp"

namespace qcyc {

namespace poly_detail {
template <class C>
bool coeff_zero(const C& c) {
  return is_zero(c);
}
}  // namespace poly_detail

// Dense univariate polynomial over a coefficient type C, lowest degree first.
// C needs ring operations, construction from long, and a free is_zero(C).
// Division-based members (divmod, gcd, monic, ...) additionally need '/'.
template <class C>
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<C> coeffs) : c_(std::move(coeffs)) { trim(); }
  Poly(std::initializer_list<C> coeffs) : c_(coeffs) { trim(); }

  static Poly constant(const C& c) { return Poly(std::vector<C>{c}); }
  static Poly monomial(const C& c, size_t k) {
    std::vector<C> v(k + 1, C(0));
    v[k] = c;
    return Poly(std::move(v));
  }
  static Poly x() { return monomial(C(1), 1); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const C& lead() const { return c_.back(); }
  const std::vector<C>& coeffs() const { return c_; }
  C coeff(size_t i) const { return i < c_.size() ? c_[i] : C(0); }
  size_t size() const { return c_.size(); }

  Poly operator-() const {
    Poly r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }

  Poly& operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), C(0));
    for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), C(0));
    for (size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }

  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<C> r(a.c_.size() + b.c_.size() - 1, C(0));
    for (size_t i = 0; i < a.c_.size(); ++i) {
      if (poly_detail::coeff_zero(a.c_[i])) continue;
      for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return Poly(std::move(r));
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  Poly scaled(const C& s) const {
    Poly r = *this;
    for (auto& x : r.c_) x *= s;
    r.trim();
    return r;
  }

  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  template <class V>
  V eval(const V& v) const {
    V acc = V(0);
    for (size_t i = c_.size(); i-- > 0;) acc = acc * v + V(c_[i]);
    return acc;
  }
  C operator()(const C& v) const { return eval<C>(v); }

  Poly derivative() const {
    if (c_.size() <= 1) return Poly();
    std::vector<C> r(c_.size() - 1, C(0));
    for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * C(static_cast<long>(i));
    return Poly(std::move(r));
  }

  /// Quotient and remainder; divisor must be nonzero with invertible lead.
  std::pair<Poly, Poly> divmod(const Poly& d) const {
    if (d.is_zero()) throw std::domain_error("Poly: division by zero polynomial");
    if (degree() < d.degree()) return {Poly(), *this};
    std::vector<C> rem = c_;
    std::vector<C> q(c_.size() - d.c_.size() + 1, C(0));
    C inv_lead = C(1) / d.lead();
    for (size_t k = q.size(); k-- > 0;) {
      C t = rem[k + d.c_.size() - 1] * inv_lead;
      q[k] = t;
      if (poly_detail::coeff_zero(t)) continue;
      for (size_t j = 0; j < d.c_.size(); ++j) rem[k + j] -= t * d.c_[j];
    }
    rem.resize(d.c_.size() - 1);
    return {Poly(std::move(q)), Poly(std::move(rem))};
  }
  friend Poly operator/(const Poly& a, const Poly& b) { return a.divmod(b).first; }
  friend Poly operator%(const Poly& a, const Poly& b) { return a.divmod(b).second; }

  Poly monic() const {
    if (is_zero()) return *this;
    return scaled(C(1) / lead());
  }

  /// f(a*x + b)
  Poly compose_linear(const C& a, const C& b) const {
    Poly lin({b, a});
    Poly acc;
    for (size_t i = c_.size(); i-- > 0;) acc = acc * lin + constant(c_[i]);
    return acc;
  }

  Poly compose(const Poly& g) const {
    Poly acc;
    for (size_t i = c_.size(); i-- > 0;) acc = acc * g + constant(c_[i]);
    return acc;
  }

  Poly pow(unsigned e) const {
    Poly r = constant(C(1)), b = *this;
    while (e) {
      if (e & 1) r *= b;
      b *= b;
      e >>= 1;
    }
    return r;
  }

 private:
  void trim() {
    while (!c_.empty() && poly_detail::coeff_zero(c_.back())) c_.pop_back();
  }

  std::vector<C> c_;
};

template <class C>
bool is_zero(const Poly<C>& p) {
  return p.is_zero();
}

/// Monic gcd over a field; gcd(0, 0) = 0.
template <class C>
Poly<C> gcd(Poly<C> a, Poly<C> b) {
  while (!b.is_zero()) {
    Poly<C> r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

/// Exact division (throws if the remainder is nonzero).
template <class C>
Poly<C> exact_div(const Poly<C>& a, const Poly<C>& b) {
  auto [q, r] = a.divmod(b);
  if (!r.is_zero()) throw std::domain_error("exact_div: nonzero remainder");
  return q;
}

/// f / gcd(f, f'), monic.
template <class C>
Poly<C> squarefree_part(const Poly<C>& f) {
  if (f.degree() <= 0) return f.is_zero() ? f : Poly<C>::constant(C(1));
  Poly<C> g = gcd(f, f.derivative());
  return exact_div(f.monic(), g);
}

/// Yun's algorithm: f = lc * prod_i a_i^i with a_i squarefree, pairwise coprime.
/// Returns (a_i, i) for nonconstant a_i.
template <class C>
std::vector<std::pair<Poly<C>, int>> squarefree_decomposition(const Poly<C>& f) {
  std::vector<std::pair<Poly<C>, int>> out;
  if (f.degree() <= 0) return out;
  Poly<C> fm = f.monic();
  Poly<C> d = fm.derivative();
  Poly<C> a = gcd(fm, d);
  Poly<C> b = exact_div(fm, a);
  Poly<C> e = exact_div(d, a) - b.derivative();
  int i = 1;
  while (b.degree() > 0) {
    Poly<C> g = gcd(b, e);
    if (g.degree() > 0) out.emplace_back(g, i);
    b = exact_div(b, g);
    e = exact_div(e, g) - b.derivative();
    ++i;
  }
  return out;
}

template <class C, class D, class Fn>
Poly<D> map_coeffs(const Poly<C>& f, Fn fn) {
  std::vector<D> out;
  out.reserve(f.size());
  for (const auto& c : f.coeffs()) out.push_back(fn(c));
  return Poly<D>(std::move(out));
}

using PolyQ = Poly<Rational>;
using PolyK = Poly<QuadElem>;

std::string to_string(const PolyQ& f, const std::string& var = "x");
std::string to_string(const PolyK& f, const std::string& var = "x");
std::ostream& operator<<(std::ostream& os, const PolyQ& f);
std::ostream& operator<<(std::ostream& os, const PolyK& f);

/// Coefficients of f after tagging them with field D.
PolyK in_field(const PolyK& f, long D);
PolyK to_K(const PolyQ& f, long D);

/// Parses a coefficient list (lowest degree first) of field elements.
PolyK parse_poly(const std::vector<std::string>& coeffs, long D);

}  // namespace qcyc

#endif  // QCYC_POLY_HPP

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

#ifndef QCYC_CURVE_HPP
#define QCYC_CURVE_HPP

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qcyc/ext.hpp"
#include "qcyc/poly.hpp"
#include "qcyc/quad.hpp"

namespace qcyc {

template <class F>
struct Point {
  F x{};
  F y{};
  bool inf = true;

  static Point infinity() { return Point(); }
  static Point affine(F px, F py) {
    Point p;
    p.x = std::move(px);
    p.y = std::move(py);
    p.inf = false;
    return p;
  }

  friend bool operator==(const Point& a, const Point& b) {
    if (a.inf || b.inf) return a.inf == b.inf;
    return a.x == b.x && a.y == b.y;
  }
  friend bool operator!=(const Point& a, const Point& b) { return !(a == b); }
};

/// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over a field F.
template <class F>
struct Weierstrass {
  F a1, a2, a3, a4, a6;

  bool contains(const Point<F>& P) const {
    if (P.inf) return true;
    const F& x = P.x;
    const F& y = P.y;
    return y * y + a1 * x * y + a3 * y == x * x * x + a2 * x * x + a4 * x + a6;
  }

  Point<F> neg(const Point<F>& P) const {
    if (P.inf) return P;
    return Point<F>::affine(P.x, -P.y - a1 * P.x - a3);
  }

  Point<F> add(const Point<F>& P, const Point<F>& Q) const {
    if (P.inf) return Q;
    if (Q.inf) return P;
    F lambda, nu;
    if (P.x == Q.x) {
      if (is_zero(P.y + Q.y + a1 * Q.x + a3)) return Point<F>::infinity();
      F den = F(2) * P.y + a1 * P.x + a3;
      lambda = (F(3) * P.x * P.x + F(2) * a2 * P.x + a4 - a1 * P.y) / den;
      nu = (-P.x * P.x * P.x + a4 * P.x + F(2) * a6 - a3 * P.y) / den;
    } else {
      F dx = Q.x - P.x;
      lambda = (Q.y - P.y) / dx;
      nu = (P.y * Q.x - Q.y * P.x) / dx;
    }
    F x3 = lambda * lambda + a1 * lambda - a2 - P.x - Q.x;
    F y3 = -(lambda + a1) * x3 - nu - a3;
    return Point<F>::affine(std::move(x3), std::move(y3));
  }

  Point<F> sub(const Point<F>& P, const Point<F>& Q) const { return add(P, neg(Q)); }

  Point<F> mul(long k, const Point<F>& P) const {
    if (k < 0) return mul(-k, neg(P));
    Point<F> acc = Point<F>::infinity(), base = P;
    while (k > 0) {
      if (k & 1) acc = add(acc, base);
      k >>= 1;
      if (k > 0) base = add(base, base);
    }
    return acc;
  }

  /// Least k >= 1 with kP = O, if k <= cap.
  std::optional<long> order(const Point<F>& P, long cap = 32) const {
    Point<F> Q = P;
    for (long k = 1; k <= cap; ++k) {
      if (Q.inf) return k;
      Q = add(Q, P);
    }
    return std::nullopt;
  }

  template <class G, class Fn>
  Weierstrass<G> map(Fn fn) const {
    return Weierstrass<G>{fn(a1), fn(a2), fn(a3), fn(a4), fn(a6)};
  }
};

using PointK = Point<QuadElem>;
using PointL = Point<ExtElem>;

/// Elliptic curve over K = Q(sqrt(D)) in long Weierstrass form.
class Curve {
 public:
  /// Throws std::invalid_argument for a singular model.
  Curve(std::array<QuadElem, 5> a, long D);
  static Curve short_form(const QuadElem& A, const QuadElem& B, long D);

  long D() const { return D_; }
  const std::array<QuadElem, 5>& coeffs() const { return a_; }
  const QuadElem& a1() const { return a_[0]; }
  const QuadElem& a2() const { return a_[1]; }
  const QuadElem& a3() const { return a_[2]; }
  const QuadElem& a4() const { return a_[3]; }
  const QuadElem& a6() const { return a_[4]; }

  QuadElem b2() const;
  QuadElem b4() const;
  QuadElem b6() const;
  QuadElem b8() const;
  QuadElem c4() const;
  QuadElem c6() const;
  QuadElem discriminant() const;
  QuadElem j_invariant() const;

  bool is_short() const;
  /// [A, B] of the isomorphic short model y^2 = x^3 - 27 c4 x - 54 c6, or the
  /// curve's own [a4, a6] when it is already short.
  std::pair<QuadElem, QuadElem> short_coefficients() const;

  const Weierstrass<QuadElem>& model() const { return w_; }
  Weierstrass<ExtElem> model_L() const;

  bool contains(const PointK& P) const { return w_.contains(P); }

  /// Group law on E(K); off-curve input throws std::invalid_argument.
  PointK add(const PointK& P, const PointK& Q) const;
  PointK neg(const PointK& P) const;
  PointK mul(long k, const PointK& P) const;
  std::optional<long> order(const PointK& P, long cap = 32) const;

  /// 4x^3 + b2 x^2 + 2 b4 x + b6, the square of 2y + a1 x + a3.
  PolyK two_division() const;

  /// Points of E(K) with the given x-coordinate.
  std::vector<PointK> points_with_x(const QuadElem& x) const;
  std::vector<PointL> points_with_x(const ExtElem& x, const QuadElem& d) const;

  std::string to_string() const;

 private:
  std::array<QuadElem, 5> a_;
  long D_;
  Weierstrass<QuadElem> w_;
};

/// Twist [d^2 A, d^3 B] of the short model. Throws for d = 0.
Curve quadratic_twist(const Curve& E, const QuadElem& d);

/// Image in E(K(sqrt(d))) of a K-point of quadratic_twist(E, d).
PointL twist_transport(const Curve& E, const QuadElem& d, const PointK& P);

/// Division polynomials in x alone: f_n = psi_n for odd n, psi_n / psi_2 for even n.
class DivisionPolynomials {
 public:
  explicit DivisionPolynomials(const Curve& E) : E_(E) {}

  const PolyK& f(int n);
  /// psi_n^2 as a polynomial in x.
  PolyK psi_squared(int n);
  /// phi_n with x(nP) = phi_n(x) / psi_n(x)^2.
  PolyK phi(int n);

 private:
  void extend(int n);
  const Curve& E_;
  std::vector<PolyK> f_;
};

/// f_n of E (see DivisionPolynomials).
PolyK division_poly(const Curve& E, int n);

std::string to_string(const PointK& P);
std::string to_string(const PointL& P);

}  // namespace qcyc

#endif  // QCYC_CURVE_HPP

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

#include "qcyc/curve.hpp"

#include <sstream>

namespace qcyc {

Curve::Curve(std::array<QuadElem, 5> a, long D) : a_(std::move(a)), D_(D) {
  for (auto& c : a_) c = c.in_field(D);
  w_ = Weierstrass<QuadElem>{a_[0], a_[1], a_[2], a_[3], a_[4]};
  if (discriminant().is_zero()) throw std::invalid_argument("singular Weierstrass model: " + to_string());
}

Curve Curve::short_form(const QuadElem& A, const QuadElem& B, long D) {
  QuadElem z(0, 0, D);
  return Curve({z, z, z, A, B}, D);
}

QuadElem Curve::b2() const { return a1() * a1() + QuadElem(4) * a2(); }
QuadElem Curve::b4() const { return QuadElem(2) * a4() + a1() * a3(); }
QuadElem Curve::b6() const { return a3() * a3() + QuadElem(4) * a6(); }
QuadElem Curve::b8() const {
  return a1() * a1() * a6() + QuadElem(4) * a2() * a6() - a1() * a3() * a4() + a2() * a3() * a3() - a4() * a4();
}
QuadElem Curve::c4() const { return b2() * b2() - QuadElem(24) * b4(); }
QuadElem Curve::c6() const {
  QuadElem B2 = b2();
  return -B2 * B2 * B2 + QuadElem(36) * B2 * b4() - QuadElem(216) * b6();
}

QuadElem Curve::discriminant() const {
  QuadElem B2 = b2(), B4 = b4(), B6 = b6(), B8 = b8();
  return -B2 * B2 * B8 - QuadElem(8) * B4 * B4 * B4 - QuadElem(27) * B6 * B6 + QuadElem(9) * B2 * B4 * B6;
}

QuadElem Curve::j_invariant() const {
  QuadElem C4 = c4();
  return (C4 * C4 * C4 / discriminant()).in_field(D_);
}

bool Curve::is_short() const { return a1().is_zero() && a2().is_zero() && a3().is_zero(); }

std::pair<QuadElem, QuadElem> Curve::short_coefficients() const {
  if (is_short()) return {a4(), a6()};
  return {(QuadElem(-27) * c4()).in_field(D_), (QuadElem(-54) * c6()).in_field(D_)};
}

Weierstrass<ExtElem> Curve::model_L() const {
  return w_.map<ExtElem>([](const QuadElem& c) { return ExtElem(c); });
}

namespace {

void require_on(const Curve& E, const PointK& P) {
  if (!E.contains(P)) throw std::invalid_argument("point " + to_string(P) + " is not on " + E.to_string());
}

}  // namespace

PointK Curve::add(const PointK& P, const PointK& Q) const {
  require_on(*this, P);
  require_on(*this, Q);
  return w_.add(P, Q);
}

PointK Curve::neg(const PointK& P) const {
  require_on(*this, P);
  return w_.neg(P);
}

PointK Curve::mul(long k, const PointK& P) const {
  require_on(*this, P);
  return w_.mul(k, P);
}

std::optional<long> Curve::order(const PointK& P, long cap) const {
  require_on(*this, P);
  return w_.order(P, cap);
}

PolyK Curve::two_division() const {
  return in_field(PolyK({b6(), QuadElem(2) * b4(), b2(), QuadElem(4)}), D_);
}

std::vector<PointK> Curve::points_with_x(const QuadElem& x) const {
  std::vector<PointK> out;
  QuadElem disc = two_division().eval(x);
  auto s = is_square(disc, D_);
  if (!s) return out;
  QuadElem h = a1() * x + a3();
  QuadElem y1 = ((-h + *s) / QuadElem(2)).in_field(D_);
  out.push_back(PointK::affine(x.in_field(D_), y1));
  if (!s->is_zero()) out.push_back(PointK::affine(x.in_field(D_), ((-h - *s) / QuadElem(2)).in_field(D_)));
  return out;
}

std::vector<PointL> Curve::points_with_x(const ExtElem& x_in, const QuadElem& d) const {
  std::vector<PointL> out;
  ExtElem x(x_in.u(), x_in.v(), d);
  ExtElem disc = to_L(two_division()).eval(x);
  auto s = sqrt_in_L(disc, d, D_);
  if (!s) return out;
  ExtElem h = ExtElem(a1()) * x + ExtElem(a3());
  out.push_back(PointL::affine(x, (-h + *s) / ExtElem(2)));
  if (!s->is_zero()) out.push_back(PointL::affine(x, (-h - *s) / ExtElem(2)));
  return out;
}

std::string Curve::to_string() const {
  std::ostringstream os;
  if (is_short()) {
    os << "[" << qcyc::to_string(a4()) << ", " << qcyc::to_string(a6()) << "]";
    return os.str();
  }
  os << "[";
  for (size_t i = 0; i < 5; ++i) os << (i ? ", " : "") << qcyc::to_string(a_[i]);
  os << "]";
  return os.str();
}

Curve quadratic_twist(const Curve& E, const QuadElem& d_in) {
  if (d_in.is_zero()) throw std::invalid_argument("quadratic_twist: d = 0");
  QuadElem d = d_in.in_field(E.D());
  auto [A, B] = E.short_coefficients();
  return Curve::short_form(d * d * A, d * d * d * B, E.D());
}

PointL twist_transport(const Curve& E, const QuadElem& d_in, const PointK& P) {
  QuadElem d = d_in.in_field(E.D());
  Curve Ed = quadratic_twist(E, d);
  if (!Ed.contains(P)) throw std::invalid_argument("twist_transport: point is not on the twist");
  if (P.inf) return PointL::infinity();
  // (X, Y) on Y^2 = X^3 + d^2 A X + d^3 B  ->  (X/d, Y sqrt(d) / d^2) on y^2 = x^3 + A x + B
  ExtElem xs(P.x / d);
  ExtElem ys(QuadElem(0, 0, E.D()), P.y / (d * d), d);
  if (E.is_short()) return PointL::affine(xs, ys);
  ExtElem x = (xs - ExtElem(QuadElem(3) * E.b2())) / ExtElem(36);
  ExtElem y = (ys / ExtElem(108) - ExtElem(E.a1()) * x - ExtElem(E.a3())) / ExtElem(2);
  return PointL::affine(x, y);
}

void DivisionPolynomials::extend(int n) {
  const long D = E_.D();
  if (f_.empty()) {
    QuadElem b2 = E_.b2(), b4 = E_.b4(), b6 = E_.b6(), b8 = E_.b8();
    QuadElem one(1, 0, D);
    f_.push_back(PolyK());
    f_.push_back(PolyK::constant(one));
    f_.push_back(PolyK::constant(one));
    f_.push_back(in_field(PolyK({b8, QuadElem(3) * b6, QuadElem(3) * b4, b2, QuadElem(3)}), D));
    f_.push_back(in_field(PolyK({b4 * b8 - b6 * b6, b2 * b8 - b4 * b6, QuadElem(10) * b8, QuadElem(10) * b6,
                                 QuadElem(5) * b4, b2, QuadElem(2)}),
                          D));
  }
  PolyK F = E_.two_division();
  PolyK F2 = F * F;
  while (static_cast<int>(f_.size()) <= n) {
    int k = static_cast<int>(f_.size());
    int m = k / 2;
    PolyK next;
    if (k % 2 == 1) {
      const PolyK& fm = f_[m];
      PolyK fm3 = fm * fm * fm;
      PolyK fp1 = f_[m + 1];
      PolyK fp13 = fp1 * fp1 * fp1;
      if (m % 2 == 0) {
        next = F2 * f_[m + 2] * fm3 - f_[m - 1] * fp13;
      } else {
        next = f_[m + 2] * fm3 - F2 * f_[m - 1] * fp13;
      }
    } else {
      next = f_[m] * (f_[m + 2] * f_[m - 1] * f_[m - 1] - f_[m - 2] * f_[m + 1] * f_[m + 1]);
    }
    f_.push_back(in_field(next, D));
  }
}

const PolyK& DivisionPolynomials::f(int n) {
  if (n < 0) throw std::invalid_argument("division polynomial index must be >= 0");
  extend(n);
  return f_[static_cast<size_t>(n)];
}

PolyK DivisionPolynomials::psi_squared(int n) {
  PolyK fn = f(n);
  PolyK sq = fn * fn;
  if (n % 2 == 0) sq *= E_.two_division();
  return sq;
}

PolyK DivisionPolynomials::phi(int n) {
  if (n < 1) throw std::invalid_argument("phi_n needs n >= 1");
  PolyK x = in_field(PolyK::x(), E_.D());
  PolyK prod = f(n + 1) * f(n - 1);
  if (n % 2 == 1) prod *= E_.two_division();
  return x * psi_squared(n) - prod;
}

PolyK division_poly(const Curve& E, int n) {
  if (n < 1) throw std::invalid_argument("division_poly: n must be >= 1");
  DivisionPolynomials dp(E);
  return dp.f(n);
}

std::string to_string(const PointK& P) {
  if (P.inf) return "[0, 1, 0]";
  return "[" + to_string(P.x) + ", " + to_string(P.y) + ", 1]";
}

std::string to_string(const PointL& P) {
  if (P.inf) return "[0, 1, 0]";
  return "[" + to_string(P.x) + ", " + to_string(P.y) + ", 1]";
}

}  // namespace qcyc

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

#include "qcyc/quad.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace qcyc {

QuadElem::QuadElem(Rational a, Rational b, long D) : a_(std::move(a)), b_(std::move(b)), D_(D) {
  a_.canonicalize();
  b_.canonicalize();
  if (D_ == 0 && sgn(b_) != 0) throw std::domain_error("QuadElem: irrational part without field");
}

QuadElem QuadElem::in_field(long D) const {
  QuadElem r = *this;
  if (D_ != 0 && D_ != D) throw std::domain_error("QuadElem: field mismatch");
  r.D_ = D;
  return r;
}

long QuadElem::merged_D(const QuadElem& o) const {
  if (D_ == o.D_ || o.D_ == 0) return D_;
  if (D_ == 0) return o.D_;
  throw std::domain_error("QuadElem: mixing Q(sqrt(" + std::to_string(D_) + ")) and Q(sqrt(" +
                          std::to_string(o.D_) + "))");
}

QuadElem QuadElem::operator-() const {
  QuadElem r = *this;
  r.a_ = -r.a_;
  r.b_ = -r.b_;
  return r;
}

QuadElem& QuadElem::operator+=(const QuadElem& o) {
  D_ = merged_D(o);
  a_ += o.a_;
  b_ += o.b_;
  return *this;
}

QuadElem& QuadElem::operator-=(const QuadElem& o) {
  D_ = merged_D(o);
  a_ -= o.a_;
  b_ -= o.b_;
  return *this;
}

QuadElem& QuadElem::operator*=(const QuadElem& o) {
  D_ = merged_D(o);
  if (sgn(b_) == 0 && sgn(o.b_) == 0) {
    a_ *= o.a_;
    return *this;
  }
  Rational na = a_ * o.a_ + Rational(D_) * b_ * o.b_;
  Rational nb = a_ * o.b_ + b_ * o.a_;
  a_ = std::move(na);
  b_ = std::move(nb);
  return *this;
}

QuadElem QuadElem::inverse() const {
  if (is_zero()) throw std::domain_error("QuadElem: division by zero");
  if (sgn(b_) == 0) return QuadElem(Rational(1) / a_, D_);
  Rational n = a_ * a_ - Rational(D_) * b_ * b_;
  return QuadElem(a_ / n, -b_ / n, D_);
}

QuadElem& QuadElem::operator/=(const QuadElem& o) {
  if (o.is_zero()) throw std::domain_error("QuadElem: division by zero");
  if (sgn(o.b_) == 0) {
    D_ = merged_D(o);
    a_ /= o.a_;
    b_ /= o.a_;
    return *this;
  }
  return *this *= o.inverse();
}

QuadElem conj(const QuadElem& x) { return QuadElem(x.a(), -x.b(), x.D()); }

Rational norm(const QuadElem& x) { return x.a() * x.a() - Rational(x.D()) * x.b() * x.b(); }

Rational trace(const QuadElem& x) { return 2 * x.a(); }

std::optional<QuadElem> is_square(const QuadElem& x) { return is_square(x, x.D()); }

std::optional<QuadElem> is_square(const QuadElem& x, long D) {
  if (x.is_zero()) return QuadElem(0, 0, D);
  if (x.is_rational()) {
    if (auto r = rational_sqrt(x.a())) return QuadElem(*r, 0, D);
    if (D == 0) return std::nullopt;
    // a = D c^2  =>  sqrt = c*w
    if (auto c = rational_sqrt(x.a() / Rational(D))) return QuadElem(0, *c, D);
    return std::nullopt;
  }
  if (x.D() != 0 && x.D() != D) throw std::domain_error("is_square: field mismatch");
  auto n = rational_sqrt(norm(x.in_field(D)));
  if (!n) return std::nullopt;
  // (u + v w)^2 = u^2 + D v^2 + 2uv w
  for (int sign : {1, -1}) {
    Rational u2 = (x.a() + sign * *n) / 2;
    auto u = rational_sqrt(u2);
    if (!u || sgn(*u) == 0) continue;
    Rational v = x.b() / (2 * *u);
    QuadElem s(*u, v, D);
    if (s * s == x) return s;
  }
  return std::nullopt;
}

bool lex_less(const QuadElem& x, const QuadElem& y) {
  if (x.a() != y.a()) return x.a() < y.a();
  return x.b() < y.b();
}

std::string to_string(const QuadElem& x) {
  if (x.is_rational()) return x.a().get_str();
  std::string bpart;
  Rational b = abs(x.b());
  bpart = (b == 1) ? "w" : b.get_str() + "*w";
  if (sgn(x.a()) == 0) return (sgn(x.b()) < 0 ? "-" : "") + bpart;
  return x.a().get_str() + (sgn(x.b()) < 0 ? " - " : " + ") + bpart;
}

std::ostream& operator<<(std::ostream& os, const QuadElem& x) { return os << to_string(x); }

namespace {

QuadElem parse_sum(std::string_view s, long D, const std::string& whole) {
  QuadElem acc(0, 0, D);
  size_t i = 0;
  auto skip = [&] {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  };
  skip();
  if (i == s.size()) throw std::invalid_argument("empty field element");
  while (i < s.size()) {
    int sign = 1;
    skip();
    while (i < s.size() && (s[i] == '+' || s[i] == '-')) {
      if (s[i] == '-') sign = -sign;
      ++i;
      skip();
    }
    size_t start = i;
    while (i < s.size() && s[i] != '+' && s[i] != '-') ++i;
    std::string term(s.substr(start, i - start));
    while (!term.empty() && std::isspace(static_cast<unsigned char>(term.back()))) term.pop_back();
    if (term.empty()) throw std::invalid_argument("malformed field element: '" + whole + "'");
    QuadElem value;
    if (term.back() == 'w') {
      std::string coeff = term.substr(0, term.size() - 1);
      while (!coeff.empty() && (std::isspace(static_cast<unsigned char>(coeff.back())) || coeff.back() == '*')) {
        coeff.pop_back();
      }
      Rational c = coeff.empty() ? Rational(1) : parse_rational(coeff);
      if (D == 0) throw std::invalid_argument("'w' used without a field parameter");
      value = QuadElem(0, c, D);
    } else {
      value = QuadElem(parse_rational(term), 0, D);
    }
    acc += sign > 0 ? value : -value;
  }
  return acc;
}

}  // namespace

QuadElem parse_quad(std::string_view text, long D) {
  std::string whole(text);
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (!s.empty() && s.front() == '(') {
    auto close = s.find(')');
    if (close == std::string_view::npos) throw std::invalid_argument("unbalanced parenthesis: '" + whole + "'");
    QuadElem inner = parse_sum(s.substr(1, close - 1), D, whole);
    std::string_view rest = s.substr(close + 1);
    while (!rest.empty() && std::isspace(static_cast<unsigned char>(rest.front()))) rest.remove_prefix(1);
    if (rest.empty()) return inner;
    if (rest.front() != '/') throw std::invalid_argument("malformed field element: '" + whole + "'");
    rest.remove_prefix(1);
    Rational den = parse_rational(rest);
    if (sgn(den) == 0) throw std::invalid_argument("zero denominator: '" + whole + "'");
    return inner / QuadElem(den, 0, D);
  }
  return parse_sum(s, D, whole);
}

bool valid_field_parameter(long D) {
  if (D == 0 || D == 1) return false;
  Integer n(D);
  return squarefree_part(n) == n;
}

bool is_integral(const QuadElem& x, long D) {
  long m = ((D % 4) + 4) % 4;
  if (m != 1) return x.a().get_den() == 1 && x.b().get_den() == 1;
  Rational a2 = 2 * x.a(), b2 = 2 * x.b();
  if (a2.get_den() != 1 || b2.get_den() != 1) return false;
  Integer diff = a2.get_num() - b2.get_num();
  return mpz_even_p(diff.get_mpz_t()) != 0;
}

}  // namespace qcyc

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

#ifndef QCYC_QUAD_HPP
#define QCYC_QUAD_HPP

#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "qcyc/rational.hpp"

namespace qcyc {

/// Element a + b*w of Q(w), w^2 = D.
///
/// D == 0 marks a context-free rational (b == 0) that adopts the field of
/// whatever it is combined with. Mixing two different nonzero D throws
/// std::domain_error.
class QuadElem {
 public:
  QuadElem() = default;
  QuadElem(long n) : a_(n) {}  // NOLINT: integer literals embed implicitly
  QuadElem(const Rational& a) : a_(a) { a_.canonicalize(); }  // NOLINT
  QuadElem(Rational a, long D) : a_(std::move(a)), D_(D) { a_.canonicalize(); }
  QuadElem(Rational a, Rational b, long D);

  static QuadElem w(long D) { return QuadElem(0, 1, D); }

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  long D() const { return D_; }

  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
  bool is_rational() const { return sgn(b_) == 0; }

  /// Same value, tagged with field parameter D.
  QuadElem in_field(long D) const;

  QuadElem operator-() const;
  QuadElem& operator+=(const QuadElem& o);
  QuadElem& operator-=(const QuadElem& o);
  QuadElem& operator*=(const QuadElem& o);
  QuadElem& operator/=(const QuadElem& o);

  friend QuadElem operator+(QuadElem x, const QuadElem& y) { return x += y; }
  friend QuadElem operator-(QuadElem x, const QuadElem& y) { return x -= y; }
  friend QuadElem operator*(QuadElem x, const QuadElem& y) { return x *= y; }
  friend QuadElem operator/(QuadElem x, const QuadElem& y) { return x /= y; }
  friend bool operator==(const QuadElem& x, const QuadElem& y) { return x.a_ == y.a_ && x.b_ == y.b_; }
  friend bool operator!=(const QuadElem& x, const QuadElem& y) { return !(x == y); }

  QuadElem inverse() const;

 private:
  long merged_D(const QuadElem& o) const;

  Rational a_{0};
  Rational b_{0};
  long D_ = 0;
};

inline bool is_zero(const QuadElem& x) { return x.is_zero(); }

/// Galois conjugate a - b*w.
QuadElem conj(const QuadElem& x);

/// x * conj(x) = a^2 - D b^2.
Rational norm(const QuadElem& x);
Rational trace(const QuadElem& x);

/// s with s^2 == x, if x is a square in Q(sqrt(D)). D taken from x unless given.
std::optional<QuadElem> is_square(const QuadElem& x);
std::optional<QuadElem> is_square(const QuadElem& x, long D);

/// Total order on (a, b); used for deterministic output and tie-breaking.
bool lex_less(const QuadElem& x, const QuadElem& y);

/// Text form "a", "b*w", "a + b*w", "a - b*w" with rational a, b.
std::string to_string(const QuadElem& x);
std::ostream& operator<<(std::ostream& os, const QuadElem& x);

/// Parses the text form above. Accepts terms separated by + / -, each term a
/// rational, "w", or "rational*w"; also "(p + q*w)/r".
QuadElem parse_quad(std::string_view text, long D);

/// True when D is a squarefree integer different from 0 and 1.
bool valid_field_parameter(long D);

/// Ring of integers membership: Z[w] for D = 2,3 mod 4, Z[(1+w)/2] for D = 1 mod 4.
bool is_integral(const QuadElem& x, long D);

}  // namespace qcyc

#endif  // QCYC_QUAD_HPP

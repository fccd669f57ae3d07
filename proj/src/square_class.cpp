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

#include "qcyc/square_class.hpp"

#include <algorithm>
#include <stdexcept>

namespace qcyc {

namespace {

bool one_mod_four(long D) { return ((D % 4) + 4) % 4 == 1; }

Integer round_nearest(const Rational& r) {
  Rational s = r + Rational(1, 2);
  Integer f;
  mpz_fdiv_q(f.get_mpz_t(), s.get_num_mpz_t(), s.get_den_mpz_t());
  return f;
}

// Nearest element of O_K to q, chosen so that N(q - result) < 1 in the
// norm-Euclidean fields.
QuadElem round_to_integral(const QuadElem& q, long D) {
  if (one_mod_four(D)) {
    Integer y = round_nearest(2 * q.b());
    Integer x = round_nearest(q.a() - Rational(y, 2));
    return QuadElem(Rational(x) + Rational(y, 2), Rational(y, 2), D);
  }
  return QuadElem(Rational(round_nearest(q.a())), Rational(round_nearest(q.b())), D);
}

QuadElem integral_gcd(QuadElem a, QuadElem b, long D) {
  while (!b.is_zero()) {
    QuadElem q = round_to_integral(a / b, D);
    QuadElem r = a - q * b;
    if (norm(r) >= norm(b)) throw std::logic_error("integral_gcd: field is not norm-Euclidean");
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

std::vector<QuadElem> units(long D) {
  std::vector<QuadElem> u{QuadElem(1, 0, D), QuadElem(-1, 0, D)};
  if (D == -1) {
    u.push_back(QuadElem(0, 1, D));
    u.push_back(QuadElem(0, -1, D));
  } else if (D == -3) {
    for (int sa : {1, -1}) {
      for (int sb : {1, -1}) u.push_back(QuadElem(Rational(sa, 2), Rational(sb, 2), D));
    }
  }
  return u;
}

// Associate with the largest rational part, ties broken by larger w-part.
QuadElem normalize_associate(const QuadElem& x, long D) {
  QuadElem best = x;
  for (const auto& u : units(D)) {
    QuadElem c = u * x;
    if (lex_less(best, c)) best = c;
  }
  return best;
}

}  // namespace

bool has_canonical_square_classes(long D) {
  return D == -1 || D == -2 || D == -3 || D == -7 || D == -11;
}

std::vector<QuadElem> unit_class_representatives(long D) {
  if (D == -1) return {QuadElem(1, 0, D), QuadElem(0, 1, D)};
  return {QuadElem(1, 0, D), QuadElem(-1, 0, D)};
}

std::vector<QuadElem> primes_above(long p, long D) {
  if (!has_canonical_square_classes(D)) throw std::domain_error("primes_above: unsupported field");
  if (p < 2 || !is_prime_u64(static_cast<std::uint64_t>(p))) throw std::invalid_argument("primes_above: p not prime");
  // omega = w or (1 + w)/2 with minimal polynomial t^2 - D or t^2 - t + (1 - D)/4
  bool half = one_mod_four(D);
  long c = half ? (1 - D) / 4 : -D;
  QuadElem omega = half ? QuadElem(Rational(1, 2), Rational(1, 2), D) : QuadElem(0, 1, D);
  std::vector<long> roots;
  for (long r = 0; r < p; ++r) {
    long v = (r * r - (half ? r : 0) + c) % p;
    if (v == 0) roots.push_back(r);
  }
  if (roots.empty()) return {QuadElem(Rational(p), 0, D)};
  std::vector<QuadElem> out;
  for (long r : roots) {
    QuadElem pi = integral_gcd(QuadElem(Rational(p), 0, D), omega - QuadElem(Rational(r), 0, D), D);
    if (norm(pi) != p) throw std::logic_error("primes_above: gcd is not prime");
    pi = normalize_associate(pi, D);
    if (std::find(out.begin(), out.end(), pi) == out.end()) out.push_back(pi);
  }
  std::sort(out.begin(), out.end(), [](const QuadElem& x, const QuadElem& y) { return lex_less(y, x); });
  return out;
}

SquareClass square_class_reduce(const QuadElem& d_in, long D) {
  if (d_in.is_zero()) throw std::invalid_argument("square_class_reduce: zero has no square class");
  QuadElem d = d_in.in_field(D);
  Integer den = lcm_denominators({d.a(), d.b()});
  if (!has_canonical_square_classes(D)) {
    Integer a = Integer(d.a() * den * den), b = Integer(d.b() * den * den);
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    Integer s = squarefree_part(g);
    Integer m2 = g / s;
    return SquareClass(QuadElem(Rational(a / m2), Rational(b / m2), D), D);
  }
  den *= 2;
  d *= QuadElem(Rational(den * den), 0, D);
  QuadElem primes(1, 0, D);
  Integer n = Integer(norm(d));
  for (const auto& [p, e] : factor_integer(n)) {
    (void)e;
    for (const auto& pi : primes_above(p.get_si(), D)) {
      int v = 0;
      for (;;) {
        QuadElem q = d / pi;
        if (!is_integral(q, D)) break;
        d = q;
        ++v;
      }
      if (v % 2 == 1) primes *= pi;
    }
  }
  if (abs(norm(d)) != 1) throw std::logic_error("square_class_reduce: leftover is not a unit");
  for (const auto& u : unit_class_representatives(D)) {
    if (is_square(d / u, D)) return SquareClass(u * primes, D);
  }
  throw std::logic_error("square_class_reduce: unit class not found");
}

bool SquareClass::is_trivial() const { return is_square(rep_, D_).has_value(); }

SquareClass SquareClass::operator*(const SquareClass& o) const {
  if (o.D_ != D_) throw std::domain_error("SquareClass: field mismatch");
  return square_class_reduce(rep_ * o.rep_, D_);
}

bool operator==(const SquareClass& x, const SquareClass& y) {
  if (x.D_ != y.D_) return false;
  return is_square(x.rep_ / y.rep_, x.D_).has_value();
}

std::string to_string(const SquareClass& c) { return to_string(c.rep()); }

}  // namespace qcyc

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

#include "qcyc/reduction.hpp"

#include <cstdlib>
#include <map>
#include <set>

namespace qcyc {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }

u64 powmod(u64 a, u64 e, u64 p) {
  u64 r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

u64 mod_of(long v, u64 p) {
  long r = v % static_cast<long>(p);
  return static_cast<u64>(r < 0 ? r + static_cast<long>(p) : r);
}

bool is_qr(u64 a, u64 p) { return a % p == 0 || powmod(a, (p - 1) / 2, p) == 1; }

// Tonelli-Shanks; a must be a nonzero residue.
u64 sqrt_mod(u64 a, u64 p) {
  a %= p;
  if (a == 0) return 0;
  if (p % 4 == 3) return powmod(a, (p + 1) / 4, p);
  u64 q = p - 1;
  int s = 0;
  while (q % 2 == 0) {
    q /= 2;
    ++s;
  }
  u64 z = 2;
  while (is_qr(z, p)) ++z;
  u64 m = static_cast<u64>(s), c = powmod(z, q, p), t = powmod(a, q, p), r = powmod(a, (q + 1) / 2, p);
  while (t != 1) {
    u64 i = 0, tt = t;
    while (tt != 1) {
      tt = mulmod(tt, tt, p);
      ++i;
    }
    u64 b = c;
    for (u64 j = 0; j + 1 < m - i; ++j) b = mulmod(b, b, p);
    m = i;
    c = mulmod(b, b, p);
    t = mulmod(t, c, p);
    r = mulmod(r, b, p);
  }
  return r;
}

std::optional<u64> rational_mod(const Rational& x, u64 p) {
  Integer P(static_cast<unsigned long>(p));
  Integer den = x.get_den();
  Integer num = x.get_num();
  if (mpz_divisible_p(den.get_mpz_t(), P.get_mpz_t())) return std::nullopt;
  Integer inv, r;
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), P.get_mpz_t());
  r = num * inv;
  mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), P.get_mpz_t());
  return r.get_ui();
}

Fq discriminant_of(const Weierstrass<Fq>& w) {
  Fq b2 = w.a1 * w.a1 + Fq(4) * w.a2;
  Fq b4 = Fq(2) * w.a4 + w.a1 * w.a3;
  Fq b6 = w.a3 * w.a3 + Fq(4) * w.a6;
  Fq b8 = w.a1 * w.a1 * w.a6 + Fq(4) * w.a2 * w.a6 - w.a1 * w.a3 * w.a4 + w.a2 * w.a3 * w.a3 - w.a4 * w.a4;
  return -b2 * b2 * b8 - Fq(8) * b4 * b4 * b4 - Fq(27) * b6 * b6 + Fq(9) * b2 * b4 * b6;
}

}  // namespace

std::uint64_t default_prime_bound() {
  if (const char* env = std::getenv("QCYC_PRIME_BOUND")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return 1000000;
}

ResidueField residue_field(std::uint64_t p, long D) {
  if (p < 2 || !is_prime_u64(p)) throw std::invalid_argument("residue_field: p must be prime");
  ResidueField F;
  F.p = p;
  u64 d = mod_of(D, p);
  if (p == 2 || d == 0) return F;  // ramified or 2: unusable
  if (is_qr(d, p)) {
    F.degree = 1;
    F.sqrt_D = sqrt_mod(d, p);
  } else {
    F.degree = 2;
    F.nonresidue = d;
  }
  return F;
}

ResidueField prime_field(std::uint64_t p) {
  if (p < 3 || !is_prime_u64(p)) throw std::invalid_argument("prime_field: p must be an odd prime");
  ResidueField F;
  F.p = p;
  F.degree = 1;
  return F;
}

ResidueField quadratic_extension_field(std::uint64_t p) {
  if (p < 3 || !is_prime_u64(p)) throw std::invalid_argument("quadratic_extension_field: p must be an odd prime");
  ResidueField F;
  F.p = p;
  F.degree = 2;
  u64 n = 2;
  while (is_qr(n, p)) ++n;
  F.nonresidue = n;
  return F;
}

Fq::Fq(std::uint64_t a, std::uint64_t b, const ResidueField& F)
    : a_(a % F.p), b_(F.degree == 2 ? b % F.p : 0), p_(F.p), n_(F.degree == 2 ? F.nonresidue : 0) {
  if (F.degree == 1 && b % F.p != 0) throw std::domain_error("Fq: t-part in a prime field");
}

void Fq::bind(std::uint64_t p, std::uint64_t n) {
  a_ = mod_of(raw_, p);
  b_ = 0;
  p_ = p;
  n_ = n;
}

void Fq::adopt(const Fq& o) {
  if (p_ == 0 && o.p_ != 0) bind(o.p_, o.n_);
  if (p_ != 0 && o.p_ != 0 && (p_ != o.p_ || n_ != o.n_)) throw std::domain_error("Fq: mixing residue fields");
}

bool Fq::is_zero() const { return p_ == 0 ? raw_ == 0 : (a_ == 0 && b_ == 0); }

Fq Fq::operator-() const {
  Fq r = *this;
  if (p_ == 0) {
    r.raw_ = -raw_;
    return r;
  }
  r.a_ = a_ == 0 ? 0 : p_ - a_;
  r.b_ = b_ == 0 ? 0 : p_ - b_;
  return r;
}

Fq& Fq::operator+=(const Fq& o_in) {
  adopt(o_in);
  Fq o = o_in;
  if (p_ == 0) {
    raw_ += o.raw_;
    return *this;
  }
  o.adopt(*this);
  a_ = (a_ + o.a_) % p_;
  b_ = (b_ + o.b_) % p_;
  return *this;
}

Fq& Fq::operator-=(const Fq& o) { return *this += -o; }

Fq& Fq::operator*=(const Fq& o_in) {
  adopt(o_in);
  Fq o = o_in;
  if (p_ == 0) {
    raw_ *= o.raw_;
    return *this;
  }
  o.adopt(*this);
  u64 na = (mulmod(a_, o.a_, p_) + mulmod(mulmod(b_, o.b_, p_), n_, p_)) % p_;
  u64 nb = (mulmod(a_, o.b_, p_) + mulmod(b_, o.a_, p_)) % p_;
  a_ = na;
  b_ = nb;
  return *this;
}

Fq Fq::inverse() const {
  if (p_ == 0) throw std::domain_error("Fq: inverse of an unbound integer");
  if (is_zero()) throw std::domain_error("Fq: division by zero");
  // (a + b t)^-1 = (a - b t) / (a^2 - n b^2)
  u64 nrm = (mulmod(a_, a_, p_) + p_ - mulmod(mulmod(b_, b_, p_), n_, p_)) % p_;
  u64 inv = powmod(nrm, p_ - 2, p_);
  Fq r = *this;
  r.a_ = mulmod(a_, inv, p_);
  r.b_ = mulmod((p_ - b_) % p_, inv, p_);
  return r;
}

Fq& Fq::operator/=(const Fq& o_in) {
  adopt(o_in);
  Fq o = o_in;
  o.adopt(*this);
  return *this *= o.inverse();
}

bool operator==(const Fq& x, const Fq& y) {
  if (x.p_ == 0 && y.p_ == 0) return x.raw_ == y.raw_;
  Fq a = x, b = y;
  a.adopt(b);
  b.adopt(a);
  return a.a_ == b.a_ && a.b_ == b.b_;
}

std::optional<Fq> reduce_elem(const QuadElem& x, const ResidueField& F) {
  if (!F.usable()) throw std::invalid_argument("reduce_elem: ramified prime");
  auto a = rational_mod(x.a(), F.p);
  auto b = rational_mod(x.b(), F.p);
  if (!a || !b) return std::nullopt;
  if (F.degree == 1) {
    if (*b != 0 && F.sqrt_D == 0) throw std::domain_error("reduce_elem: irrational value in a plain prime field");
    return Fq((*a + mulmod(*b, F.sqrt_D, F.p)) % F.p, 0, F);
  }
  return Fq(*a, *b, F);
}

ReducedCurve reduce_curve(const Curve& E, const ResidueField& F) {
  if (!F.usable()) throw std::invalid_argument("reduce_curve: prime " + std::to_string(F.p) + " is ramified");
  std::vector<Rational> parts;
  for (const auto& c : E.coeffs()) {
    parts.push_back(c.a());
    parts.push_back(c.b());
  }
  ReducedCurve R;
  R.field = F;
  R.scale = lcm_denominators(parts);
  static const int weights[5] = {1, 2, 3, 4, 6};
  std::array<Fq, 5> red;
  for (size_t i = 0; i < 5; ++i) {
    Integer s;
    mpz_pow_ui(s.get_mpz_t(), R.scale.get_mpz_t(), static_cast<unsigned long>(weights[i]));
    auto r = reduce_elem(E.coeffs()[i] * QuadElem(Rational(s)), F);
    if (!r) throw std::logic_error("reduce_curve: scaled model is not integral");
    red[i] = *r;
  }
  R.model = Weierstrass<Fq>{red[0], red[1], red[2], red[3], red[4]};
  Integer P(static_cast<unsigned long>(F.p));
  bool p_in_scale = mpz_divisible_p(R.scale.get_mpz_t(), P.get_mpz_t()) != 0;
  R.good = !p_in_scale && !discriminant_of(R.model).is_zero();
  return R;
}

std::optional<Point<Fq>> reduce_point(const Curve& E, const ReducedCurve& R, const PointK& P) {
  (void)E;
  if (P.inf) return Point<Fq>::infinity();
  Rational u(R.scale);
  auto x = reduce_elem(P.x * QuadElem(u * u), R.field);
  auto y = reduce_elem(P.y * QuadElem(u * u * u), R.field);
  if (!x || !y) return std::nullopt;
  return Point<Fq>::affine(*x, *y);
}

std::uint64_t count_points(const ReducedCurve& R, std::uint64_t bound) {
  if (bound == 0) bound = default_prime_bound();
  const ResidueField& F = R.field;
  u64 q = F.size();
  if (q > bound) {
    throw BoundExceeded("count_points: field size " + std::to_string(q) + " exceeds bound " + std::to_string(bound));
  }
  if (!R.good) throw std::invalid_argument("count_points: bad reduction");
  const u64 p = F.p;
  const u64 tdeg = F.degree == 2 ? p : 1;
  std::vector<char> square(q, 0);
  for (u64 b = 0; b < tdeg; ++b) {
    for (u64 a = 0; a < p; ++a) {
      Fq s(a, b, F);
      Fq s2 = s * s;
      square[s2.a() + s2.b() * p] = 1;
    }
  }
  const auto& w = R.model;
  u64 total = 1;
  for (u64 b = 0; b < tdeg; ++b) {
    for (u64 a = 0; a < p; ++a) {
      Fq x(a, b, F);
      Fq h = w.a1 * x + w.a3;
      Fq disc = h * h + Fq(4) * (((x + w.a2) * x + w.a4) * x + w.a6);
      if (disc.is_zero()) {
        total += 1;
      } else if (square[disc.a() + disc.b() * p]) {
        total += 2;
      }
    }
  }
  return total;
}

std::pair<std::uint64_t, std::uint64_t> closed_count(int j_case, std::uint64_t p) {
  if (p <= 3 || !is_prime_u64(p)) throw std::invalid_argument("closed_count: p must be a prime > 3");
  if (j_case == 0) {
    if (p % 3 != 2) throw std::invalid_argument("closed_count: j = 0 needs p = 2 mod 3");
  } else if (j_case == 1728) {
    if (p % 4 != 3) throw std::invalid_argument("closed_count: j = 1728 needs p = 3 mod 4");
  } else {
    throw std::invalid_argument("closed_count: j must be 0 or 1728");
  }
  return {p + 1, (p + 1) * (p + 1)};
}

std::vector<PrimeCount> reduction_counts(const Curve& E, std::uint64_t max_p) {
  std::vector<PrimeCount> out;
  for (u64 p = 5; p <= max_p; p = next_prime_u64(p)) {
    ResidueField F = residue_field(p, E.D());
    if (!F.usable()) continue;
    ReducedCurve R = reduce_curve(E, F);
    if (!R.good) continue;
    out.push_back({p, F.degree, count_points(R)});
  }
  return out;
}

TorsionBound torsion_bound(const Curve& E, int nprimes) {
  if (nprimes < 2) throw std::invalid_argument("torsion_bound: at least two primes are needed");
  TorsionBound tb;
  u64 bound = default_prime_bound();
  for (u64 p = 5; static_cast<int>(tb.used.size()) < nprimes; p = next_prime_u64(p)) {
    ResidueField F = residue_field(p, E.D());
    if (!F.usable()) continue;
    if (F.size() > bound) throw BoundExceeded("torsion_bound: no usable primes below the bound");
    ReducedCurve R = reduce_curve(E, F);
    if (!R.good) continue;
    tb.used.push_back({p, F.degree, count_points(R, bound)});
  }
  std::set<Integer> ells;
  for (const auto& pc : tb.used) {
    for (const auto& [ell, e] : factor_integer(Integer(static_cast<unsigned long>(pc.count)))) ells.insert(ell);
  }
  tb.M = 1;
  for (const auto& ell : ells) {
    int best = -1;
    for (const auto& pc : tb.used) {
      if (Integer(static_cast<unsigned long>(pc.p)) == ell) continue;
      Integer n(static_cast<unsigned long>(pc.count));
      int v = 0;
      while (mpz_divisible_p(n.get_mpz_t(), ell.get_mpz_t())) {
        n /= ell;
        ++v;
      }
      best = best < 0 ? v : std::min(best, v);
    }
    for (int i = 0; i < best; ++i) tb.M *= ell;
  }
  return tb;
}

WitnessCertificate witness_prime(int j_case, std::uint64_t q, const Curve& E, std::uint64_t bound) {
  if (bound == 0) bound = default_prime_bound();
  if (j_case != 0 && j_case != 1728) throw std::invalid_argument("witness_prime: j must be 0 or 1728");
  if (!is_prime_u64(q)) throw std::invalid_argument("witness_prime: q must be prime");
  if (j_case == 0 && q <= 3) throw std::invalid_argument("witness_prime: j = 0 needs q > 3");
  if (j_case == 1728 && q <= 2) throw std::invalid_argument("witness_prime: j = 1728 needs q > 2");
  QuadElem j = E.j_invariant();
  if (j != QuadElem(j_case)) throw std::invalid_argument("witness_prime: curve has j = " + to_string(j));
  const u64 m = j_case == 0 ? 3 : 4;
  const u64 r = m - 1;
  for (u64 p = 5; p <= bound; p = next_prime_u64(p)) {
    if (p % m != r || p % q != 1) continue;
    ResidueField F = residue_field(p, E.D());
    if (!F.usable()) continue;
    ReducedCurve R = reduce_curve(E, F);
    if (!R.good) continue;
    WitnessCertificate c;
    c.p = p;
    c.j_case = j_case;
    c.q = q;
    c.degree = F.degree;
    auto [n1, n2] = closed_count(j_case, p);
    c.closed_form = F.degree == 1 ? n1 : n2;
    if (F.size() <= bound) {
      c.count = count_points(R, bound);
      c.count_matches = c.count == c.closed_form;
      c.q_divides_count = c.count % q == 0;
    }
    return c;
  }
  throw BoundExceeded("witness_prime: no prime below " + std::to_string(bound));
}

}  // namespace qcyc

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

#ifndef QCYC_REDUCTION_HPP
#define QCYC_REDUCTION_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qcyc/curve.hpp"

namespace qcyc {

/// Thrown when a search or enumeration exceeds its configured bound.
class BoundExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Default bound on field sizes and prime searches; QCYC_PRIME_BOUND overrides it.
std::uint64_t default_prime_bound();

/// O_K / beta for a prime beta over p: F_p (split, w -> sqrt_D) or F_p[t]/(t^2 - D) (inert).
struct ResidueField {
  std::uint64_t p = 0;
  int degree = 0;              // 0 marks a ramified (unusable) prime
  std::uint64_t sqrt_D = 0;    // split case
  std::uint64_t nonresidue = 0;  // inert case: t^2 = nonresidue

  bool usable() const { return degree != 0; }
  std::uint64_t size() const { return degree == 2 ? p * p : p; }
};

ResidueField residue_field(std::uint64_t p, long D);
/// F_p and F_{p^2} = F_p[t]/(t^2 - n) for the least nonresidue n, independent of K.
ResidueField prime_field(std::uint64_t p);
ResidueField quadratic_extension_field(std::uint64_t p);

/// Element a + b t of a residue field. Integers built without a field adopt the
/// field of the element they meet.
class Fq {
 public:
  Fq() = default;
  Fq(long n) : raw_(n) {}  // NOLINT
  Fq(std::uint64_t a, std::uint64_t b, const ResidueField& F);

  std::uint64_t a() const { return a_; }
  std::uint64_t b() const { return b_; }
  bool is_zero() const;

  Fq operator-() const;
  Fq& operator+=(const Fq& o);
  Fq& operator-=(const Fq& o);
  Fq& operator*=(const Fq& o);
  Fq& operator/=(const Fq& o);
  friend Fq operator+(Fq x, const Fq& y) { return x += y; }
  friend Fq operator-(Fq x, const Fq& y) { return x -= y; }
  friend Fq operator*(Fq x, const Fq& y) { return x *= y; }
  friend Fq operator/(Fq x, const Fq& y) { return x /= y; }
  friend bool operator==(const Fq& x, const Fq& y);
  friend bool operator!=(const Fq& x, const Fq& y) { return !(x == y); }

 private:
  void bind(std::uint64_t p, std::uint64_t n);
  void adopt(const Fq& o);
  Fq inverse() const;

  long raw_ = 0;  // value before a field is known
  std::uint64_t a_ = 0, b_ = 0;
  std::uint64_t p_ = 0;  // 0: unbound integer
  std::uint64_t n_ = 0;  // t^2 = n_ in degree 2, 0 in degree 1
};

inline bool is_zero(const Fq& x) { return x.is_zero(); }

struct ReducedCurve {
  ResidueField field;
  Weierstrass<Fq> model;
  Integer scale;  // u with (a_i) -> (u^i a_i) integral
  bool good = false;
};

/// Reduction of the (u^i a_i)-scaled integral model. Throws for ramified p.
ReducedCurve reduce_curve(const Curve& E, const ResidueField& F);

/// Image of a K-rational value in the residue field; nullopt if not p-integral.
std::optional<Fq> reduce_elem(const QuadElem& x, const ResidueField& F);

/// Reduction of a point of E(K) on the scaled model; nullopt when not p-integral.
std::optional<Point<Fq>> reduce_point(const Curve& E, const ReducedCurve& R, const PointK& P);

/// |E(F_q)| by enumeration. Throws BoundExceeded when q > bound.
std::uint64_t count_points(const ReducedCurve& R, std::uint64_t bound = 0);

/// Closed forms (p + 1, (p + 1)^2) for j = 0 (p = 2 mod 3) and
/// j = 1728 (p = 3 mod 4). Throws std::invalid_argument if the precondition fails.
std::pair<std::uint64_t, std::uint64_t> closed_count(int j_case, std::uint64_t p);

struct PrimeCount {
  std::uint64_t p;
  int degree;
  std::uint64_t count;
};

struct TorsionBound {
  Integer M;
  std::vector<PrimeCount> used;
};

/// M with |E(K)_tors| dividing M, from reduced orders at the first `nprimes`
/// usable good primes p > 3. Prime-to-p parts only.
TorsionBound torsion_bound(const Curve& E, int nprimes = 2);

/// Usable good primes p > 3 with their point counts, up to p <= max_p.
std::vector<PrimeCount> reduction_counts(const Curve& E, std::uint64_t max_p);

struct WitnessCertificate {
  std::uint64_t p = 0;
  int j_case = 0;
  std::uint64_t q = 0;
  int degree = 0;                 // residue degree of the prime used
  std::uint64_t count = 0;        // |E mod beta| by enumeration
  std::uint64_t closed_form = 0;  // p + 1 or (p + 1)^2
  bool count_matches = false;
  bool q_divides_count = false;
};

/// Least good unramified prime p with p = 2 mod 3 (j = 0) or p = 3 mod 4
/// (j = 1728) and p + 1 = 2 mod q. Throws BoundExceeded past `bound`.
WitnessCertificate witness_prime(int j_case, std::uint64_t q, const Curve& E, std::uint64_t bound = 0);

}  // namespace qcyc

#endif  // QCYC_REDUCTION_HPP

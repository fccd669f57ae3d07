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

#ifndef QCYC_TORSION_HPP
#define QCYC_TORSION_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qcyc/curve.hpp"

namespace qcyc {

/// C_n + C_m with n | m, its generators and every element.
template <class P>
struct TorsionGroup {
  long m = 1;
  long n = 1;
  std::vector<P> generators;
  std::vector<P> points;  // identity first, then sorted

  long order() const { return m * n; }
  /// Size of the k-torsion subgroup.
  long torsion_count(long k) const;
  /// Size of the l-primary part.
  long primary_order(long ell) const;
  std::string structure() const;
};

using TorsionGroupK = TorsionGroup<PointK>;
using TorsionGroupL = TorsionGroup<PointL>;

/// E(K)_tors: orders bounded by reduction at five primes, points built from
/// division polynomials and repeated division.
TorsionGroupK torsion_subgroup(const Curve& E);

/// E(K(sqrt d))_tors. Odd part from E(K) and the transported E^d(K); 2-primary
/// part by division over L, up to points of order 16.
TorsionGroupL torsion_over_quadratic_ext(const Curve& E, const QuadElem& d);

/// |E(K(sqrt d))[n]| for odd n, counted from the roots of f_n in L.
std::uint64_t count_torsion_over_L(const Curve& E, const QuadElem& d, long n);

/// |E(K)[n]| for odd n, counted from the roots of f_n in K.
std::uint64_t count_torsion_over_K(const Curve& E, long n);

/// Violated growth rules (empty when consistent) for E over K and L = K(sqrt d).
std::vector<std::string> check_growth_rules(const Curve& E, const QuadElem& d, const TorsionGroupK& TK,
                                            const TorsionGroupL& TL);

/// Does K = Q(sqrt D) contain a primitive p-th root of unity (p odd prime)?
bool has_root_of_unity(long p, long D);

enum class FullTorsion { allowed, forbidden };

/// Can C_n + C_n (n an odd prime power) sit inside E(L), [L : K] = 2?
/// Throws std::invalid_argument if n is not an odd prime power.
FullTorsion full_torsion_obstruction(std::uint64_t n, long D);

/// Possible (n, m) structures of E(K)_tors for D in {-1, -3}; empty otherwise.
std::vector<std::pair<long, long>> admissible_structures(long D);
bool is_admissible(long n, long m, long D);

std::string structure_string(long n, long m);

}  // namespace qcyc

#endif  // QCYC_TORSION_HPP

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

#ifndef QCYC_FACTOR_K_HPP
#define QCYC_FACTOR_K_HPP

#include <optional>
#include <utility>
#include <vector>

#include "qcyc/poly.hpp"
#include "qcyc/square_class.hpp"

namespace qcyc {

struct KFactorization {
  QuadElem unit;
  std::vector<std::pair<PolyK, int>> factors;  // monic irreducible, sorted by degree
};

/// f(x) * conj(f)(x), a polynomial over Q.
PolyQ norm_poly(const PolyK& f);

/// Complete factorization over K = Q(sqrt(D)) by the norm method.
KFactorization factor_over_K(const PolyK& f, long D);

/// Monic irreducible factors of degree <= max_degree of squarefree f.
std::vector<PolyK> small_factors_over_K(const PolyK& f, long D, int max_degree);

/// Distinct roots of f in K.
std::vector<QuadElem> roots_in_K(const PolyK& f, long D);

/// Sorted irreducible-factor degrees of f over K (with multiplicity).
std::vector<int> factor_profile(const PolyK& f, long D);

/// The class d with f splitting completely over K(sqrt(d)); trivial when f
/// splits over K, empty when no single quadratic extension suffices.
std::optional<SquareClass> splits_over_quadratic(const PolyK& f, long D);

/// Discriminant b^2 - 4ac of a quadratic.
QuadElem quadratic_discriminant(const PolyK& q);

}  // namespace qcyc

#endif  // QCYC_FACTOR_K_HPP

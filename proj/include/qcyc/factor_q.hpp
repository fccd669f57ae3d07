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

#ifndef QCYC_FACTOR_Q_HPP
#define QCYC_FACTOR_Q_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "qcyc/poly.hpp"

namespace qcyc {

// Factorization in Q[x]: modular factorization (Cantor-Zassenhaus), quadratic
// Hensel lifting, and exhaustive recombination of lifted factors.

/// Complete factorization of nonzero f into monic irreducibles with multiplicity.
std::vector<std::pair<PolyQ, int>> factor_over_Q(const PolyQ& f);

/// For squarefree f: every monic irreducible factor of degree <= max_degree.
/// Recombination only visits subsets within the degree budget, so this stays
/// cheap for large f when max_degree is small.
std::vector<PolyQ> small_factors_over_Q(const PolyQ& f, int max_degree);

bool is_squarefree(const PolyQ& f);

namespace detail {

using ModPoly = std::vector<std::uint64_t>;

/// Monic irreducible factors of squarefree monic f mod p (p odd prime < 2^31).
std::vector<ModPoly> factor_mod_p(const ModPoly& f, std::uint64_t p);

}  // namespace detail

}  // namespace qcyc

#endif  // QCYC_FACTOR_Q_HPP

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

#ifndef QCYC_RATIONAL_HPP
#define QCYC_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qcyc {

using Integer = mpz_class;
using Rational = mpq_class;

/// Parses "p", "-p/q" (surrounding blanks allowed). Throws std::invalid_argument.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& x);
std::string to_string(const Integer& x);

inline bool is_zero(const Rational& x) { return sgn(x) == 0; }

/// Exact square root of a rational, when one exists.
std::optional<Rational> rational_sqrt(const Rational& x);

bool is_probable_prime(const Integer& n);

/// Prime factorization of |n| (n != 0), primes ascending.
std::vector<std::pair<Integer, int>> factor_integer(const Integer& n);

/// Signed squarefree kernel: n = s * m^2 with s squarefree.
Integer squarefree_part(const Integer& n);

Integer lcm_denominators(const std::vector<Rational>& xs);

bool is_prime_u64(std::uint64_t n);
std::uint64_t next_prime_u64(std::uint64_t n);

/// Euler phi for small n.
std::uint64_t euler_phi(std::uint64_t n);

/// If n = p^t with p prime, returns (p, t).
std::optional<std::pair<std::uint64_t, int>> prime_power(std::uint64_t n);

}  // namespace qcyc

#endif  // QCYC_RATIONAL_HPP

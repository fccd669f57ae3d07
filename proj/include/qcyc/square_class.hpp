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

#ifndef QCYC_SQUARE_CLASS_HPP
#define QCYC_SQUARE_CLASS_HPP

#include <string>
#include <vector>

#include "qcyc/quad.hpp"

namespace qcyc {

/// An element of K^* / (K^*)^2, K = Q(sqrt(D)).
class SquareClass {
 public:
  SquareClass(QuadElem rep, long D) : rep_(std::move(rep)), D_(D) {}

  const QuadElem& rep() const { return rep_; }
  long D() const { return D_; }

  /// True for the class of squares.
  bool is_trivial() const;

  SquareClass operator*(const SquareClass& o) const;

  /// Equality is decided by whether the quotient of representatives is a square.
  friend bool operator==(const SquareClass& x, const SquareClass& y);
  friend bool operator!=(const SquareClass& x, const SquareClass& y) { return !(x == y); }

 private:
  QuadElem rep_;
  long D_;
};

/// Canonical representative of d modulo squares. For the norm-Euclidean
/// imaginary fields (D = -1, -2, -3, -7, -11) d is factored into prime elements
/// and the result is a fixed unit representative times a product of distinct
/// normalized primes; elsewhere only rational square factors are stripped.
/// Throws std::invalid_argument for d = 0.
SquareClass square_class_reduce(const QuadElem& d, long D);

/// Prime elements of O_K (normalized associates) lying over the rational prime p.
/// Inert p yields {p}. Only for the norm-Euclidean imaginary fields.
std::vector<QuadElem> primes_above(long p, long D);

/// Representatives of O_K^* / (O_K^*)^2.
std::vector<QuadElem> unit_class_representatives(long D);

bool has_canonical_square_classes(long D);

std::string to_string(const SquareClass& c);

}  // namespace qcyc

#endif  // QCYC_SQUARE_CLASS_HPP

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

#ifndef QCYC_EXT_HPP
#define QCYC_EXT_HPP

#include <optional>
#include <string>
#include <vector>

#include "qcyc/poly.hpp"
#include "qcyc/quad.hpp"

namespace qcyc {

/// Element u + v*sqrt(d) of L = K(sqrt(d)), u, v in K, d a nonsquare of K.
///
/// As with QuadElem, an element built from a K-value carries no d and adopts
/// the d of the element it is combined with.
class ExtElem {
 public:
  ExtElem() = default;
  ExtElem(long n) : u_(n) {}              // NOLINT
  ExtElem(const QuadElem& u) : u_(u) {}  // NOLINT
  ExtElem(QuadElem u, QuadElem v, QuadElem d);

  const QuadElem& u() const { return u_; }
  const QuadElem& v() const { return v_; }
  const QuadElem& d() const { return d_; }

  bool is_zero() const { return u_.is_zero() && v_.is_zero(); }
  bool in_K() const { return v_.is_zero(); }

  ExtElem operator-() const;
  ExtElem& operator+=(const ExtElem& o);
  ExtElem& operator-=(const ExtElem& o);
  ExtElem& operator*=(const ExtElem& o);
  ExtElem& operator/=(const ExtElem& o);

  friend ExtElem operator+(ExtElem x, const ExtElem& y) { return x += y; }
  friend ExtElem operator-(ExtElem x, const ExtElem& y) { return x -= y; }
  friend ExtElem operator*(ExtElem x, const ExtElem& y) { return x *= y; }
  friend ExtElem operator/(ExtElem x, const ExtElem& y) { return x /= y; }
  friend bool operator==(const ExtElem& x, const ExtElem& y) { return x.u_ == y.u_ && x.v_ == y.v_; }
  friend bool operator!=(const ExtElem& x, const ExtElem& y) { return !(x == y); }

 private:
  void merge(const ExtElem& o);

  QuadElem u_;
  QuadElem v_;
  QuadElem d_;  // zero when unset
};

inline bool is_zero(const ExtElem& x) { return x.is_zero(); }

/// u - v*sqrt(d)
ExtElem conj(const ExtElem& x);

/// Relative norm u^2 - d v^2 in K.
QuadElem rel_norm(const ExtElem& x);

bool lex_less(const ExtElem& x, const ExtElem& y);
std::string to_string(const ExtElem& x);

using PolyL = Poly<ExtElem>;

/// Square root in L when one exists.
std::optional<ExtElem> sqrt_in_L(const ExtElem& x, const QuadElem& d, long D);

/// Distinct roots in L of a nonzero polynomial with coefficients in L.
std::vector<ExtElem> roots_in_L(const PolyL& g, const QuadElem& d, long D);

PolyL to_L(const PolyK& f);

}  // namespace qcyc

#endif  // QCYC_EXT_HPP

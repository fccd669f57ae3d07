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

#include "qcyc/factor_k.hpp"

#include <algorithm>
#include <stdexcept>

#include "qcyc/factor_q.hpp"

namespace qcyc {

namespace {

bool poly_less(const PolyK& f, const PolyK& g) {
  if (f.degree() != g.degree()) return f.degree() < g.degree();
  for (size_t i = f.size(); i-- > 0;) {
    if (f.coeffs()[i] != g.coeffs()[i]) return lex_less(f.coeffs()[i], g.coeffs()[i]);
  }
  return false;
}

}  // namespace

PolyQ norm_poly(const PolyK& f) {
  PolyK fc = map_coeffs<QuadElem, QuadElem>(f, [](const QuadElem& c) { return conj(c); });
  PolyK n = f * fc;
  return map_coeffs<QuadElem, Rational>(n, [](const QuadElem& c) {
    if (!c.is_rational()) throw std::logic_error("norm_poly: irrational coefficient");
    return c.a();
  });
}

std::vector<PolyK> small_factors_over_K(const PolyK& f_in, long D, int max_degree) {
  std::vector<PolyK> out;
  PolyK f = in_field(f_in, D).monic();
  if (f.degree() <= 0 || max_degree <= 0) return out;
  if (f.degree() == 1) {
    out.push_back(f);
    return out;
  }
  for (long t = 0;; ++t) {
    QuadElem shift(0, Rational(-t), D);
    PolyK g = t == 0 ? f : f.compose_linear(QuadElem(1, 0, D), shift);
    PolyQ n = norm_poly(g);
    if (!is_squarefree(n)) {
      if (t > 64) throw std::logic_error("small_factors_over_K: no squarefree norm (input not squarefree?)");
      continue;
    }
    std::vector<PolyQ> qf;
    if (max_degree >= f.degree()) {
      for (const auto& [h, e] : factor_over_Q(n)) qf.push_back(h);
    } else {
      qf = small_factors_over_Q(n, 2 * max_degree);
    }
    QuadElem unshift(0, Rational(t), D);
    for (const auto& G : qf) {
      PolyK h = gcd(g, to_K(G, D));
      if (h.degree() < 1 || h.degree() > max_degree) continue;
      if (t != 0) h = h.compose_linear(QuadElem(1, 0, D), unshift);
      out.push_back(in_field(h, D));
    }
    break;
  }
  std::sort(out.begin(), out.end(), poly_less);
  return out;
}

KFactorization factor_over_K(const PolyK& f_in, long D) {
  if (f_in.is_zero()) throw std::invalid_argument("factor_over_K: zero polynomial");
  PolyK f = in_field(f_in, D);
  KFactorization r{f.lead().in_field(D), {}};
  for (const auto& [part, mult] : squarefree_decomposition(f)) {
    for (auto& h : small_factors_over_K(part, D, part.degree())) r.factors.emplace_back(std::move(h), mult);
  }
  std::sort(r.factors.begin(), r.factors.end(), [](const auto& a, const auto& b) {
    if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
    return poly_less(a.first, b.first);
  });
  return r;
}

std::vector<QuadElem> roots_in_K(const PolyK& f, long D) {
  std::vector<QuadElem> roots;
  if (f.degree() <= 0) return roots;
  for (const auto& h : small_factors_over_K(squarefree_part(in_field(f, D)), D, 1)) {
    roots.push_back((-h.coeff(0)).in_field(D));
  }
  std::sort(roots.begin(), roots.end(), lex_less);
  return roots;
}

std::vector<int> factor_profile(const PolyK& f, long D) {
  std::vector<int> degs;
  for (const auto& [h, e] : factor_over_K(f, D).factors) {
    for (int i = 0; i < e; ++i) degs.push_back(h.degree());
  }
  std::sort(degs.begin(), degs.end());
  return degs;
}

QuadElem quadratic_discriminant(const PolyK& q) {
  if (q.degree() != 2) throw std::invalid_argument("quadratic_discriminant: degree is not 2");
  return q.coeff(1) * q.coeff(1) - QuadElem(4) * q.coeff(2) * q.coeff(0);
}

std::optional<SquareClass> splits_over_quadratic(const PolyK& f, long D) {
  if (f.is_zero()) throw std::invalid_argument("splits_over_quadratic: zero polynomial");
  std::optional<SquareClass> cls;
  PolyK sf = squarefree_part(in_field(f, D));
  for (const auto& [h, e] : factor_over_K(sf, D).factors) {
    if (h.degree() >= 3) return std::nullopt;
    if (h.degree() < 2) continue;
    SquareClass c = square_class_reduce(quadratic_discriminant(h), D);
    if (cls && *cls != c) return std::nullopt;
    if (!cls) cls = c;
  }
  if (!cls) return SquareClass(QuadElem(1, 0, D), D);
  return cls;
}

}  // namespace qcyc

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

#include "qcyc/ext.hpp"

#include <algorithm>
#include <stdexcept>

#include "qcyc/factor_k.hpp"

namespace qcyc {

ExtElem::ExtElem(QuadElem u, QuadElem v, QuadElem d) : u_(std::move(u)), v_(std::move(v)), d_(std::move(d)) {
  if (d_.is_zero() && !v_.is_zero()) throw std::domain_error("ExtElem: sqrt(d) part without d");
}

void ExtElem::merge(const ExtElem& o) {
  if (o.d_.is_zero()) return;
  if (d_.is_zero()) {
    d_ = o.d_;
    return;
  }
  if (d_ != o.d_) throw std::domain_error("ExtElem: mixing different extensions");
}

ExtElem ExtElem::operator-() const {
  ExtElem r = *this;
  r.u_ = -r.u_;
  r.v_ = -r.v_;
  return r;
}

ExtElem& ExtElem::operator+=(const ExtElem& o) {
  merge(o);
  u_ += o.u_;
  v_ += o.v_;
  return *this;
}

ExtElem& ExtElem::operator-=(const ExtElem& o) {
  merge(o);
  u_ -= o.u_;
  v_ -= o.v_;
  return *this;
}

ExtElem& ExtElem::operator*=(const ExtElem& o) {
  merge(o);
  if (v_.is_zero() && o.v_.is_zero()) {
    u_ *= o.u_;
    return *this;
  }
  QuadElem nu = u_ * o.u_ + d_ * v_ * o.v_;
  QuadElem nv = u_ * o.v_ + v_ * o.u_;
  u_ = std::move(nu);
  v_ = std::move(nv);
  return *this;
}

ExtElem& ExtElem::operator/=(const ExtElem& o) {
  if (o.is_zero()) throw std::domain_error("ExtElem: division by zero");
  merge(o);
  if (o.v_.is_zero()) {
    u_ /= o.u_;
    v_ /= o.u_;
    return *this;
  }
  QuadElem n = o.u_ * o.u_ - o.d_ * o.v_ * o.v_;
  if (n.is_zero()) throw std::domain_error("ExtElem: zero divisor (d is a square)");
  *this *= conj(o);
  u_ /= n;
  v_ /= n;
  return *this;
}

ExtElem conj(const ExtElem& x) { return ExtElem(x.u(), -x.v(), x.d()); }

QuadElem rel_norm(const ExtElem& x) { return x.u() * x.u() - x.d() * x.v() * x.v(); }

bool lex_less(const ExtElem& x, const ExtElem& y) {
  if (x.u() != y.u()) return lex_less(x.u(), y.u());
  return lex_less(x.v(), y.v());
}

std::string to_string(const ExtElem& x) {
  if (x.in_K()) return to_string(x.u());
  std::string v = "(" + to_string(x.v()) + ")*sqrt(" + to_string(x.d()) + ")";
  if (x.u().is_zero()) return v;
  return "(" + to_string(x.u()) + ") + " + v;
}

std::optional<ExtElem> sqrt_in_L(const ExtElem& x, const QuadElem& d, long D) {
  if (x.is_zero()) return ExtElem(0);
  const QuadElem& A = x.u();
  const QuadElem& B = x.v();
  auto check = [&](const QuadElem& s, const QuadElem& t) -> std::optional<ExtElem> {
    ExtElem r(s, t, d);
    if (r * r == x) return r;
    return std::nullopt;
  };
  if (B.is_zero()) {
    if (auto s = is_square(A, D)) return check(*s, QuadElem(0, 0, D));
    if (auto t = is_square(A / d, D)) return check(QuadElem(0, 0, D), *t);
    return std::nullopt;
  }
  // (s + t sqrt(d))^2 = A + B sqrt(d): s^2 + d t^2 = A, 2 s t = B.
  auto n = is_square(A * A - d * B * B, D);
  if (!n) return std::nullopt;
  for (const QuadElem& sign : {QuadElem(1), QuadElem(-1)}) {
    auto s = is_square((A + sign * *n) / QuadElem(2), D);
    if (!s || s->is_zero()) continue;
    if (auto r = check(*s, B / (QuadElem(2) * *s))) return r;
  }
  return std::nullopt;
}

PolyL to_L(const PolyK& f) {
  return map_coeffs<QuadElem, ExtElem>(f, [](const QuadElem& c) { return ExtElem(c); });
}

std::vector<ExtElem> roots_in_L(const PolyL& g_in, const QuadElem& d, long D) {
  std::vector<ExtElem> roots;
  if (g_in.degree() <= 0) return roots;
  // Put every coefficient in L proper so that conjugation is meaningful.
  PolyL g = map_coeffs<ExtElem, ExtElem>(g_in, [&](const ExtElem& c) { return ExtElem(c.u(), c.v(), d); });
  PolyL gc = map_coeffs<ExtElem, ExtElem>(g, [](const ExtElem& c) { return conj(c); });
  bool over_K = std::all_of(g.coeffs().begin(), g.coeffs().end(), [](const ExtElem& c) { return c.in_K(); });
  PolyL n = over_K ? g : g * gc;
  PolyK nk = map_coeffs<ExtElem, QuadElem>(n, [](const ExtElem& c) {
    if (!c.in_K()) throw std::logic_error("roots_in_L: relative norm left L");
    return c.u();
  });
  nk = squarefree_part(in_field(nk, D));
  std::vector<ExtElem> cand;
  for (const auto& h : small_factors_over_K(nk, D, 2)) {
    if (h.degree() == 1) {
      cand.emplace_back(-h.coeff(0));
      continue;
    }
    QuadElem disc = quadratic_discriminant(h);
    auto s = is_square(disc / d, D);
    if (!s) continue;
    QuadElem half = QuadElem(1, 0, D) / QuadElem(2, 0, D);
    cand.emplace_back(-h.coeff(1) * half, *s * half, d);
    cand.emplace_back(-h.coeff(1) * half, -*s * half, d);
  }
  for (auto& c : cand) {
    ExtElem r(c.u(), c.v(), d);
    if (g.eval(r).is_zero() && std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
  }
  std::sort(roots.begin(), roots.end(), [](const ExtElem& a, const ExtElem& b) { return lex_less(a, b); });
  return roots;
}

}  // namespace qcyc

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

#include "qcyc/factor_q.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

namespace qcyc {

namespace detail {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

struct Fp {
  u64 p;
  u64 add(u64 a, u64 b) const {
    u64 r = a + b;
    return r >= p ? r - p : r;
  }
  u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + p - b; }
  u64 mul(u64 a, u64 b) const { return static_cast<u64>(static_cast<u128>(a) * b % p); }
  u64 pow(u64 a, u64 e) const {
    u64 r = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  u64 inv(u64 a) const {
    if (a == 0) throw std::domain_error("Fp: inverse of zero");
    return pow(a, p - 2);
  }
};

void trim(ModPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

int deg(const ModPoly& f) { return static_cast<int>(f.size()) - 1; }

ModPoly mp_sub(const ModPoly& a, const ModPoly& b, const Fp& F) {
  ModPoly r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] = F.sub(r[i], b[i]);
  trim(r);
  return r;
}

ModPoly mp_mul(const ModPoly& a, const ModPoly& b, const Fp& F) {
  if (a.empty() || b.empty()) return {};
  std::vector<u128> acc(a.size() + b.size() - 1, 0);
  const u128 cap = static_cast<u128>(1) << 120;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) {
      acc[i + j] += static_cast<u128>(a[i]) * b[j];
      if (acc[i + j] >= cap) acc[i + j] %= F.p;
    }
  }
  ModPoly r(acc.size());
  for (size_t i = 0; i < acc.size(); ++i) r[i] = static_cast<u64>(acc[i] % F.p);
  trim(r);
  return r;
}

void mp_divmod(const ModPoly& a, const ModPoly& b, const Fp& F, ModPoly* q, ModPoly* r) {
  if (b.empty()) throw std::domain_error("mod p division by zero");
  ModPoly rem = a;
  trim(rem);
  if (rem.size() < b.size()) {
    if (q) q->clear();
    if (r) *r = rem;
    return;
  }
  ModPoly quo(rem.size() - b.size() + 1, 0);
  u64 il = F.inv(b.back());
  for (size_t k = quo.size(); k-- > 0;) {
    u64 t = F.mul(rem[k + b.size() - 1], il);
    quo[k] = t;
    if (t == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) rem[k + j] = F.sub(rem[k + j], F.mul(t, b[j]));
  }
  rem.resize(b.size() - 1);
  trim(rem);
  trim(quo);
  if (q) *q = std::move(quo);
  if (r) *r = std::move(rem);
}

ModPoly mp_mod(const ModPoly& a, const ModPoly& b, const Fp& F) {
  ModPoly r;
  mp_divmod(a, b, F, nullptr, &r);
  return r;
}

ModPoly mp_div(const ModPoly& a, const ModPoly& b, const Fp& F) {
  ModPoly q;
  mp_divmod(a, b, F, &q, nullptr);
  return q;
}

ModPoly mp_monic(ModPoly f, const Fp& F) {
  trim(f);
  if (f.empty()) return f;
  u64 il = F.inv(f.back());
  for (auto& c : f) c = F.mul(c, il);
  return f;
}

ModPoly mp_gcd(ModPoly a, ModPoly b, const Fp& F) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    ModPoly r = mp_mod(a, b, F);
    a = std::move(b);
    b = std::move(r);
  }
  return mp_monic(a, F);
}

// s*a + t*b = 1 for coprime a, b.
void mp_xgcd(const ModPoly& a, const ModPoly& b, const Fp& F, ModPoly* s, ModPoly* t) {
  ModPoly r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
  trim(r0);
  trim(r1);
  while (!r1.empty()) {
    ModPoly q, r;
    mp_divmod(r0, r1, F, &q, &r);
    ModPoly s2 = mp_sub(s0, mp_mul(q, s1, F), F);
    ModPoly t2 = mp_sub(t0, mp_mul(q, t1, F), F);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.size() != 1) throw std::logic_error("mp_xgcd: inputs not coprime");
  u64 il = F.inv(r0[0]);
  for (auto& c : s0) c = F.mul(c, il);
  for (auto& c : t0) c = F.mul(c, il);
  *s = s0;
  *t = t0;
}

ModPoly mp_powmod(ModPoly base, const Integer& e, const ModPoly& m, const Fp& F) {
  ModPoly r{1};
  base = mp_mod(base, m, F);
  size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (size_t i = bits; i-- > 0;) {
    r = mp_mod(mp_mul(r, r, F), m, F);
    if (mpz_tstbit(e.get_mpz_t(), i)) r = mp_mod(mp_mul(r, base, F), m, F);
  }
  return r;
}

ModPoly mp_derivative(const ModPoly& f, const Fp& F) {
  if (f.size() <= 1) return {};
  ModPoly r(f.size() - 1);
  for (size_t i = 1; i < f.size(); ++i) r[i - 1] = F.mul(f[i], i % F.p);
  trim(r);
  return r;
}

void equal_degree_split(const ModPoly& g, int d, const Fp& F, std::mt19937_64& rng, std::vector<ModPoly>& out) {
  if (deg(g) == d) {
    out.push_back(g);
    return;
  }
  Integer e = 1;
  Integer pp(static_cast<unsigned long>(F.p));
  mpz_pow_ui(e.get_mpz_t(), pp.get_mpz_t(), static_cast<unsigned long>(d));
  e = (e - 1) / 2;
  std::uniform_int_distribution<u64> dist(0, F.p - 1);
  for (;;) {
    ModPoly a(g.size() - 1);
    for (auto& c : a) c = dist(rng);
    trim(a);
    if (deg(a) < 1) continue;
    ModPoly b = mp_powmod(a, e, g, F);
    if (b.empty()) continue;
    b[0] = F.sub(b[0], 1);
    trim(b);
    ModPoly c = mp_gcd(b, g, F);
    if (deg(c) > 0 && deg(c) < deg(g)) {
      equal_degree_split(c, d, F, rng, out);
      equal_degree_split(mp_div(g, c, F), d, F, rng, out);
      return;
    }
  }
}

}  // namespace

std::vector<ModPoly> factor_mod_p(const ModPoly& f_in, std::uint64_t p) {
  Fp F{p};
  ModPoly f = mp_monic(f_in, F);
  std::vector<ModPoly> out;
  if (deg(f) <= 0) return out;
  std::mt19937_64 rng(0x5eed ^ p);
  ModPoly x{0, 1};
  ModPoly h = x;
  ModPoly rest = f;
  int i = 0;
  Integer pz(static_cast<unsigned long>(p));
  while (deg(rest) >= 2 * (i + 1)) {
    ++i;
    h = mp_powmod(h, pz, rest, F);
    ModPoly g = mp_gcd(mp_sub(h, x, F), rest, F);
    if (deg(g) > 0) {
      equal_degree_split(g, i, F, rng, out);
      rest = mp_div(rest, g, F);
      h = mp_mod(h, rest, F);
    }
  }
  if (deg(rest) > 0) out.push_back(rest);
  std::sort(out.begin(), out.end(), [](const ModPoly& a, const ModPoly& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
  });
  return out;
}

namespace {

using ZPoly = std::vector<Integer>;

void ztrim(ZPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

void zreduce(ZPoly& f, const Integer& m) {
  for (auto& c : f) mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
  ztrim(f);
}

ZPoly zmul(const ZPoly& a, const ZPoly& b, const Integer& m) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) mpz_addmul(r[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
  }
  zreduce(r, m);
  return r;
}

ZPoly zadd(const ZPoly& a, const ZPoly& b, const Integer& m) {
  ZPoly r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  zreduce(r, m);
  return r;
}

ZPoly zsub(const ZPoly& a, const ZPoly& b, const Integer& m) {
  ZPoly r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  zreduce(r, m);
  return r;
}

// Division by a monic polynomial modulo m.
void zdivmod_monic(const ZPoly& a, const ZPoly& b, const Integer& m, ZPoly* q, ZPoly* r) {
  ZPoly rem = a;
  ztrim(rem);
  if (rem.size() < b.size()) {
    q->clear();
    *r = rem;
    return;
  }
  ZPoly quo(rem.size() - b.size() + 1, 0);
  for (size_t k = quo.size(); k-- > 0;) {
    Integer t = rem[k + b.size() - 1];
    mpz_fdiv_r(t.get_mpz_t(), t.get_mpz_t(), m.get_mpz_t());
    quo[k] = t;
    if (t == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) mpz_submul(rem[k + j].get_mpz_t(), t.get_mpz_t(), b[j].get_mpz_t());
  }
  rem.resize(b.size() - 1);
  zreduce(rem, m);
  zreduce(quo, m);
  *q = std::move(quo);
  *r = std::move(rem);
}

ZPoly from_mod(const ModPoly& f) {
  ZPoly r;
  r.reserve(f.size());
  for (u64 c : f) r.emplace_back(static_cast<unsigned long>(c));
  return r;
}

ModPoly to_mod(const ZPoly& f, u64 p) {
  ModPoly r(f.size());
  Integer pz(static_cast<unsigned long>(p)), t;
  for (size_t i = 0; i < f.size(); ++i) {
    mpz_fdiv_r(t.get_mpz_t(), f[i].get_mpz_t(), pz.get_mpz_t());
    r[i] = t.get_ui();
  }
  trim(r);
  return r;
}

// One quadratic Hensel step: f = g h mod m, s g + t h = 1 mod m, h monic;
// results hold modulo m^2.
void hensel_step(const ZPoly& f, ZPoly& g, ZPoly& h, ZPoly& s, ZPoly& t, const Integer& mm) {
  ZPoly e = zsub(f, zmul(g, h, mm), mm);
  ZPoly q, r;
  zdivmod_monic(zmul(s, e, mm), h, mm, &q, &r);
  ZPoly g2 = zadd(g, zadd(zmul(t, e, mm), zmul(q, g, mm), mm), mm);
  ZPoly h2 = zadd(h, r, mm);
  ZPoly b = zsub(zadd(zmul(s, g2, mm), zmul(t, h2, mm), mm), ZPoly{1}, mm);
  ZPoly c, d;
  zdivmod_monic(zmul(s, b, mm), h2, mm, &c, &d);
  s = zsub(s, d, mm);
  t = zsub(t, zadd(zmul(t, b, mm), zmul(c, g2, mm), mm), mm);
  g = std::move(g2);
  h = std::move(h2);
}

// Lifts f = lc(f) * prod(facs) mod p to monic factors mod P = p^(2^k).
void multifactor_lift(const ZPoly& f, const std::vector<ModPoly>& facs, u64 p, const Integer& P,
                      std::vector<ZPoly>& out) {
  Fp F{p};
  if (facs.size() == 1) {
    Integer inv;
    Integer lc = f.back();
    if (mpz_invert(inv.get_mpz_t(), lc.get_mpz_t(), P.get_mpz_t()) == 0) {
      throw std::logic_error("hensel: leading coefficient not invertible");
    }
    ZPoly r = f;
    for (auto& c : r) c *= inv;
    zreduce(r, P);
    out.push_back(std::move(r));
    return;
  }
  size_t mid = facs.size() / 2;
  std::vector<ModPoly> A(facs.begin(), facs.begin() + static_cast<long>(mid));
  std::vector<ModPoly> B(facs.begin() + static_cast<long>(mid), facs.end());
  ModPoly g0 = ModPoly{to_mod(ZPoly{f.back()}, p).empty() ? 0 : to_mod(ZPoly{f.back()}, p)[0]};
  for (const auto& a : A) g0 = mp_mul(g0, a, F);
  ModPoly h0{1};
  for (const auto& b : B) h0 = mp_mul(h0, b, F);
  ModPoly s0, t0;
  mp_xgcd(g0, h0, F, &s0, &t0);
  ZPoly g = from_mod(g0), h = from_mod(h0), s = from_mod(s0), t = from_mod(t0);
  Integer m(static_cast<unsigned long>(p));
  while (m < P) {
    Integer mm = m * m;
    hensel_step(f, g, h, s, t, mm);
    m = mm;
  }
  multifactor_lift(g, A, p, P, out);
  multifactor_lift(h, B, p, P, out);
}

bool zdiv_exact(const ZPoly& a, const ZPoly& b, ZPoly* q) {
  ZPoly rem = a;
  ztrim(rem);
  if (rem.size() < b.size()) return rem.empty();
  ZPoly quo(rem.size() - b.size() + 1, 0);
  Integer t;
  for (size_t k = quo.size(); k-- > 0;) {
    const Integer& top = rem[k + b.size() - 1];
    if (!mpz_divisible_p(top.get_mpz_t(), b.back().get_mpz_t())) return false;
    mpz_divexact(t.get_mpz_t(), top.get_mpz_t(), b.back().get_mpz_t());
    quo[k] = t;
    if (t == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) mpz_submul(rem[k + j].get_mpz_t(), t.get_mpz_t(), b[j].get_mpz_t());
  }
  for (size_t i = 0; i + 1 < b.size(); ++i) {
    if (rem[i] != 0) return false;
  }
  ztrim(quo);
  *q = std::move(quo);
  return true;
}

Integer zcontent(const ZPoly& f) {
  Integer g = 0;
  for (const auto& c : f) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

ZPoly primitive(ZPoly f) {
  ztrim(f);
  if (f.empty()) return f;
  Integer g = zcontent(f);
  if (f.back() < 0) g = -g;
  for (auto& c : f) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  return f;
}

ZPoly to_zpoly(const PolyQ& f) {
  std::vector<Rational> cs(f.coeffs().begin(), f.coeffs().end());
  Integer l = lcm_denominators(cs);
  ZPoly z;
  z.reserve(cs.size());
  for (const auto& c : cs) z.push_back(Integer(c * l));
  return primitive(z);
}

PolyQ to_monic_q(const ZPoly& z) {
  std::vector<Rational> cs;
  cs.reserve(z.size());
  for (const auto& c : z) cs.emplace_back(c, z.back());
  for (auto& c : cs) c.canonicalize();
  return PolyQ(std::move(cs));
}

bool squarefree_mod(const ZPoly& f, u64 p) {
  Fp F{p};
  ModPoly fm = to_mod(f, p);
  if (static_cast<int>(fm.size()) != static_cast<int>(f.size())) return false;
  ModPoly g = mp_gcd(fm, mp_derivative(fm, F), F);
  return g.size() == 1;
}

constexpr u64 kFirstPrime = (1u << 20) + 7;

Integer symmetric(const Integer& x, const Integer& P, const Integer& half) { return x > half ? Integer(x - P) : x; }

// Zassenhaus on primitive squarefree f (lc > 0). max_degree < 0 means no limit.
std::vector<ZPoly> zassenhaus(ZPoly f, int max_degree) {
  std::vector<ZPoly> found;
  if (f.size() <= 1) return found;
  if (f.size() == 2) {
    if (max_degree < 0 || max_degree >= 1) found.push_back(f);
    return found;
  }
  const int n = static_cast<int>(f.size()) - 1;
  const int budget = max_degree < 0 ? n : std::min(max_degree, n);

  // Pick the prime giving the fewest candidate modular factors.
  u64 best_p = 0;
  std::vector<ModPoly> best;
  size_t best_score = ~size_t{0};
  u64 p = kFirstPrime;
  int good = 0;
  for (int tries = 0; tries < 400 && good < 5; ++tries, p = next_prime_u64(p)) {
    if (!squarefree_mod(f, p)) continue;
    ++good;
    auto facs = factor_mod_p(to_mod(f, p), p);
    size_t score = 0;
    for (const auto& m : facs) score += (deg(m) <= budget) ? 1 : 0;
    if (score == 0) return found;  // no factor of degree <= budget can exist
    if (score < best_score) {
      best_score = score;
      best = std::move(facs);
      best_p = p;
    }
  }
  if (best_p == 0) throw std::logic_error("zassenhaus: input is not squarefree");
  if (max_degree < 0 && best.size() == 1) {
    found.push_back(f);
    return found;
  }

  // Coefficient bound for lc(f) * (monic factor of degree <= budget).
  Integer norm2 = 0;
  for (const auto& c : f) norm2 += c * c;
  Integer root;
  mpz_sqrt(root.get_mpz_t(), norm2.get_mpz_t());
  root += 1;
  Integer bound = abs(f.back()) * root;
  mpz_mul_2exp(bound.get_mpz_t(), bound.get_mpz_t(), static_cast<unsigned long>(budget));
  bound = 2 * bound + 1;
  Integer P(static_cast<unsigned long>(best_p));
  while (P <= bound) P = P * P;
  Integer half = P / 2;

  std::vector<ZPoly> lifted;
  multifactor_lift(f, best, best_p, P, lifted);
  std::vector<int> degs;
  for (const auto& u : lifted) degs.push_back(static_cast<int>(u.size()) - 1);

  auto candidate_for = [&](const std::vector<size_t>& idx, ZPoly* out) -> bool {
    const Integer& lc = f.back();
    // constant-term filter
    Integer c0 = lc;
    for (size_t i : idx) {
      c0 *= lifted[i][0];
      mpz_fdiv_r(c0.get_mpz_t(), c0.get_mpz_t(), P.get_mpz_t());
    }
    c0 = symmetric(c0, P, half);
    if (f[0] != 0) {
      if (c0 == 0) return false;
      Integer target = lc * f[0];
      if (!mpz_divisible_p(target.get_mpz_t(), c0.get_mpz_t())) return false;
    }
    ZPoly g{lc};
    for (size_t i : idx) g = zmul(g, lifted[i], P);
    for (auto& c : g) c = symmetric(c, P, half);
    ztrim(g);
    g = primitive(g);
    ZPoly q;
    if (!zdiv_exact(f, g, &q)) return false;
    *out = std::move(g);
    f = std::move(q);
    return true;
  };

  size_t s = 1;
  for (;;) {
    size_t r = lifted.size();
    if (max_degree < 0) {
      if (2 * s > r) break;
    } else {
      if (s > r) break;
      std::vector<int> sorted = degs;
      std::sort(sorted.begin(), sorted.end());
      int smallest = std::accumulate(sorted.begin(), sorted.begin() + static_cast<long>(s), 0);
      if (smallest > budget) break;
    }
    bool hit = false;
    std::vector<size_t> idx(s);
    std::iota(idx.begin(), idx.end(), 0);
    for (;;) {
      int total = 0;
      for (size_t i : idx) total += degs[i];
      if (total <= budget) {
        ZPoly g;
        if (candidate_for(idx, &g)) {
          found.push_back(std::move(g));
          for (size_t k = idx.size(); k-- > 0;) {
            lifted.erase(lifted.begin() + static_cast<long>(idx[k]));
            degs.erase(degs.begin() + static_cast<long>(idx[k]));
          }
          hit = true;
          break;
        }
      }
      // next combination
      long k = static_cast<long>(s) - 1;
      while (k >= 0 && idx[static_cast<size_t>(k)] == r - s + static_cast<size_t>(k)) --k;
      if (k < 0) break;
      ++idx[static_cast<size_t>(k)];
      for (size_t j = static_cast<size_t>(k) + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!hit) ++s;
    if (lifted.empty()) break;
  }
  if (f.size() > 1 && (max_degree < 0 || static_cast<int>(f.size()) - 1 <= budget)) found.push_back(f);
  return found;
}

}  // namespace

}  // namespace detail

bool is_squarefree(const PolyQ& f) {
  if (f.degree() <= 1) return true;
  auto z = detail::to_zpoly(f);
  std::uint64_t p = detail::kFirstPrime;
  for (int i = 0; i < 20; ++i, p = next_prime_u64(p)) {
    if (detail::squarefree_mod(z, p)) return true;
  }
  return gcd(f, f.derivative()).degree() == 0;
}

std::vector<PolyQ> small_factors_over_Q(const PolyQ& f, int max_degree) {
  std::vector<PolyQ> out;
  if (f.degree() <= 0) return out;
  for (const auto& z : detail::zassenhaus(detail::to_zpoly(f), max_degree)) out.push_back(detail::to_monic_q(z));
  return out;
}

std::vector<std::pair<PolyQ, int>> factor_over_Q(const PolyQ& f) {
  if (f.is_zero()) throw std::invalid_argument("factor_over_Q: zero polynomial");
  std::vector<std::pair<PolyQ, int>> out;
  for (const auto& [part, mult] : squarefree_decomposition(f)) {
    for (const auto& z : detail::zassenhaus(detail::to_zpoly(part), -1)) {
      out.emplace_back(detail::to_monic_q(z), mult);
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
    return a.second < b.second;
  });
  return out;
}

}  // namespace qcyc

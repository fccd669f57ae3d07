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

#include "qcyc/poly.hpp"

namespace qcyc {

namespace {

template <class C>
std::string render(const Poly<C>& f, const std::string& var) {
  if (f.is_zero()) return "0";
  std::string out;
  for (size_t i = f.size(); i-- > 0;) {
    const C& c = f.coeffs()[i];
    if (is_zero(c)) continue;
    std::string cs = to_string(c);
    bool compound = cs.find(' ') != std::string::npos;
    if (!out.empty()) out += " + ";
    if (i == 0) {
      out += compound ? "(" + cs + ")" : cs;
      continue;
    }
    std::string mono = var + (i > 1 ? "^" + std::to_string(i) : "");
    if (cs == "1") {
      out += mono;
    } else if (cs == "-1") {
      out += "-" + mono;
    } else {
      out += (compound ? "(" + cs + ")" : cs) + "*" + mono;
    }
  }
  return out;
}

}  // namespace

std::string to_string(const PolyQ& f, const std::string& var) { return render(f, var); }
std::string to_string(const PolyK& f, const std::string& var) { return render(f, var); }

PolyK in_field(const PolyK& f, long D) {
  return map_coeffs<QuadElem, QuadElem>(f, [D](const QuadElem& c) { return c.in_field(D); });
}

PolyK to_K(const PolyQ& f, long D) {
  return map_coeffs<Rational, QuadElem>(f, [D](const Rational& c) { return QuadElem(c, D); });
}

PolyK parse_poly(const std::vector<std::string>& coeffs, long D) {
  std::vector<QuadElem> out;
  out.reserve(coeffs.size());
  for (const auto& c : coeffs) out.push_back(parse_quad(c, D));
  return PolyK(std::move(out));
}

std::ostream& operator<<(std::ostream& os, const PolyQ& f) { return os << to_string(f); }
std::ostream& operator<<(std::ostream& os, const PolyK& f) { return os << to_string(f); }

}  // namespace qcyc

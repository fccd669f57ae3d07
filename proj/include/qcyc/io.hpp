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

#ifndef QCYC_IO_HPP
#define QCYC_IO_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "qcyc/modular.hpp"
#include "qcyc/reduction.hpp"
#include "qcyc/torsion.hpp"

namespace qcyc {

using json = nlohmann::ordered_json;

/// Malformed or inconsistent user input.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Accepts {"D": ..., "coeffs": [a1, a2, a3, a4, a6]}, {"D": ..., "short": [A, B]}
/// or a bare five-element array. Entries are strings in QuadElem syntax or
/// integers. A "D" in the text must agree with `D` when both are present.
Curve parse_curve_json(const std::string& text, std::optional<long> D);

/// [A, B] as a JSON array, or an object as in parse_curve_json.
Curve parse_short_json(const std::string& text, std::optional<long> D);

/// Coefficients lowest degree first, as a JSON array.
PolyK parse_poly_json(const std::string& text, long D);

/// Parses a QuadElem, rethrowing failures as InputError.
QuadElem parse_value(const std::string& text, long D);

json to_json(const QuadElem& x);
json to_json(const PointK& P);
json to_json(const PointL& P);
json to_json(const ProjPoint& P);
json to_json(const Curve& E);
json to_json(const SquareClass& c);
json to_json(const PolyK& f);

template <class P>
json to_json(const TorsionGroup<P>& G) {
  json pts = json::array();
  for (const auto& Q : G.points) pts.push_back(to_json(Q));
  json gens = json::array();
  for (const auto& Q : G.generators) gens.push_back(to_json(Q));
  return json{{"structure", G.structure()}, {"order", G.order()}, {"generators", gens}, {"points", pts}};
}

json to_json(const WitnessCertificate& c);
json to_json(const TwistSpectrum& s);
json to_json(const IsogenyReport& r);
json to_json(const CycleAnalysis& a);

std::string field_name(long D);

}  // namespace qcyc

#endif  // QCYC_IO_HPP

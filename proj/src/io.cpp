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

#include "qcyc/io.hpp"

namespace qcyc {

namespace {

std::string entry_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return v.dump();
  throw InputError("coefficient must be a string or an integer, got " + v.dump());
}

std::vector<QuadElem> entries(const json& arr, size_t expected, long D, const char* what) {
  if (!arr.is_array() || arr.size() != expected) {
    throw InputError(std::string(what) + ": expected an array of " + std::to_string(expected) + " entries");
  }
  std::vector<QuadElem> out;
  for (const auto& v : arr) out.push_back(parse_value(entry_text(v), D));
  return out;
}

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed curve JSON: ") + e.what());
  }
}

long resolve_D(const json& doc, std::optional<long> D) {
  std::optional<long> inner;
  if (doc.is_object() && doc.contains("D")) {
    if (!doc["D"].is_number_integer()) throw InputError("\"D\" must be an integer");
    inner = doc["D"].get<long>();
  }
  if (inner && D && *inner != *D) throw InputError("curve JSON has D = " + std::to_string(*inner) + ", expected " + std::to_string(*D));
  long out = inner ? *inner : D ? *D : 0;
  if (!inner && !D) throw InputError("no field given: pass --D or include \"D\"");
  if (!valid_field_parameter(out)) throw InputError("unsupported D = " + std::to_string(out));
  return out;
}

Curve build(const json& doc, long D) {
  try {
    if (doc.is_array()) {
      if (doc.size() == 2) {
        auto c = entries(doc, 2, D, "short");
        return Curve::short_form(c[0], c[1], D);
      }
      auto c = entries(doc, 5, D, "coeffs");
      return Curve({c[0], c[1], c[2], c[3], c[4]}, D);
    }
    if (!doc.is_object()) throw InputError("curve JSON must be an object or an array");
    if (doc.contains("coeffs") && doc.contains("short")) throw InputError("give either \"coeffs\" or \"short\", not both");
    if (doc.contains("coeffs")) {
      auto c = entries(doc["coeffs"], 5, D, "coeffs");
      return Curve({c[0], c[1], c[2], c[3], c[4]}, D);
    }
    if (doc.contains("short")) {
      auto c = entries(doc["short"], 2, D, "short");
      return Curve::short_form(c[0], c[1], D);
    }
    throw InputError("curve JSON needs \"coeffs\" or \"short\"");
  } catch (const InputError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
}

}  // namespace

QuadElem parse_value(const std::string& text, long D) {
  try {
    return parse_quad(text, D);
  } catch (const std::exception& e) {
    throw InputError("cannot parse \"" + text + "\": " + e.what());
  }
}

Curve parse_curve_json(const std::string& text, std::optional<long> D) {
  json doc = parse_text(text);
  return build(doc, resolve_D(doc, D));
}

Curve parse_short_json(const std::string& text, std::optional<long> D) {
  json doc = parse_text(text);
  if (doc.is_array() && doc.size() != 2) throw InputError("short: expected [A, B]");
  return build(doc, resolve_D(doc, D));
}

PolyK parse_poly_json(const std::string& text, long D) {
  json doc = parse_text(text);
  if (!doc.is_array() || doc.empty()) throw InputError("polynomial: expected a nonempty coefficient array");
  std::vector<QuadElem> c;
  for (const auto& v : doc) c.push_back(parse_value(entry_text(v), D));
  PolyK f(std::move(c));
  if (f.degree() < 1) throw InputError("polynomial must have positive degree");
  return f;
}

json to_json(const QuadElem& x) { return to_string(x); }

json to_json(const PointK& P) {
  if (P.inf) return "O";
  return json::array({to_string(P.x), to_string(P.y)});
}

json to_json(const PointL& P) {
  if (P.inf) return "O";
  return json::array({to_string(P.x), to_string(P.y)});
}

json to_json(const ProjPoint& P) { return json::array({to_string(P.x), to_string(P.y), to_string(P.z)}); }

json to_json(const Curve& E) {
  json c = json::array();
  for (const auto& a : E.coeffs()) c.push_back(to_string(a));
  return json{{"D", E.D()}, {"coeffs", c}};
}

json to_json(const SquareClass& c) { return to_string(c); }

json to_json(const PolyK& f) {
  json c = json::array();
  for (const auto& a : f.coeffs()) c.push_back(to_string(a));
  return c;
}

json to_json(const WitnessCertificate& c) {
  json congr;
  if (c.j_case == 0) {
    congr["p mod 3"] = c.p % 3;
  } else {
    congr["p mod 4"] = c.p % 4;
  }
  congr["(p + 1) mod q"] = (c.p + 1) % c.q;
  return json{{"p", c.p},
              {"j", c.j_case},
              {"q", c.q},
              {"degree", c.degree},
              {"count", c.count},
              {"closed_form", c.closed_form},
              {"congruences", congr},
              {"count_matches", c.count_matches},
              {"q_divides_count", c.q_divides_count}};
}

json to_json(const TwistSpectrum& s) {
  json rows = json::array();
  for (const auto& e : s.entries) rows.push_back(json{{"d", to_json(e.d)}, {"torsion", e.torsion.structure()}});
  return json{{"base", s.base},
              {"in_scope", s.in_scope},
              {"conformant", s.conformant},
              {"growth_extensions", s.growth_extensions},
              {"violations", s.violations},
              {"entries", rows}};
}

json to_json(const IsogenyReport& r) {
  json fifteen = json::array();
  for (const auto& f : r.fifteen) {
    fifteen.push_back(json{{"label", f.label},
                           {"curve", to_json(f.curve)},
                           {"growth", to_json(f.growth)},
                           {"torsion_over_L", f.torsion_over_L},
                           {"nine_torsion_over_L", f.nine_torsion_over_L},
                           {"two_torsion_over_L", f.two_torsion_over_L}});
  }
  json levels = json::array();
  for (const auto& l : r.levels) {
    json entry{{"level", l.level}, {"verdict", l.verdict}, {"certificates", l.certificates}};
    for (const auto& a : l.assumptions) {
      if (a.find("rank-0") != std::string::npos) entry["assumption"] = "rank-0 from paper";
    }
    entry["assumptions"] = l.assumptions;
    levels.push_back(entry);
  }
  return json{{"D", r.D}, {"K", field_name(r.D)}, {"fifteen", fifteen}, {"levels", levels}};
}

json to_json(const CycleAnalysis& a) {
  json cands = json::array();
  for (const auto& c : a.candidates) cands.push_back(to_json(c));
  return json{{"d0", to_json(a.d0)}, {"designated", to_json(a.designated)}, {"e", to_json(a.e)}, {"candidates", cands}};
}

std::string field_name(long D) {
  if (D == -1) return "Q(i)";
  return "Q(sqrt(" + std::to_string(D) + "))";
}

}  // namespace qcyc

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

#ifndef QCYC_MODULAR_HPP
#define QCYC_MODULAR_HPP

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qcyc/factor_k.hpp"
#include "qcyc/torsion.hpp"

namespace qcyc {

/// A genus-one X0(n) given by an integral long Weierstrass equation.
struct X0Model {
  int level = 0;
  std::array<long, 5> a{};
  int genus = 1;

  Curve curve(long D) const;
  std::string equation() const;
  /// Cusps over K = Q(sqrt D), D in {-1, -3}; identity first.
  std::vector<PointK> cusps(long D) const;
};

/// Levels 15, 20, 21, 24, 27. Throws std::invalid_argument otherwise.
const X0Model& x0_model(int level);
std::vector<int> x0_levels();

struct TableRow {
  int level = 0;
  long D = 0;
  PointK point;
  QuadElem j;
  std::optional<Curve> curve;         // absent for j-special rows
  std::optional<PolyK> kernel_poly;   // printed f_C, where available
  std::vector<int> expected_profile;  // empty for j-special rows
  bool j_special = false;
};

/// Non-cuspidal rows for (level, D): 21 over Q(sqrt -3), 15 and 20 over Q(i).
/// Any other pair yields an empty list.
std::vector<TableRow> table_rows(int level, long D);

/// Galois-stable cyclic subgroups of order n of E (n built from odd prime
/// powers and 2, 4, 8), each as the monic polynomial of its x-coordinates.
std::vector<PolyK> cycle_kernel_polys(const Curve& E, long n);

/// Is the root set of g stable under x -> x(mP)?
bool stable_under_multiplication(const Curve& E, const PolyK& g, int m);

struct KernelProfile {
  std::vector<int> profile;
  std::optional<PolyK> kernel_poly;
  std::string provenance;  // "printed" or "derived"
  bool match = false;
  std::vector<std::vector<int>> derived_profiles;  // one per cycle, when derived
};

/// Factor degrees of f_C over K. Printed f_C is factored directly; otherwise
/// every cycle of the row's curve is built and the expected profile looked up.
/// Throws std::invalid_argument for j-special rows.
KernelProfile kernel_factor_profile(const TableRow& row);

struct CycleAnalysis {
  SquareClass d0;          // K(f_C) = K(sqrt d0)
  PointL designated;       // cycle point of smallest height among linear factors
  SquareClass e;           // its y lies in sqrt(e) K
  std::vector<SquareClass> candidates;  // {e, e d0}
};

/// Empty when f_C has an irreducible factor of degree >= 3 over K.
std::optional<CycleAnalysis> cycle_quadratic_analysis(const TableRow& row);
std::optional<CycleAnalysis> cycle_quadratic_analysis(const Curve& E, const PolyK& f_C);

// The genus-three X0(35): y^2 + (-x^4 - x^2 - 1) y = -x^7 - 2x^6 - x^5 - 3x^4 + x^3 - 2x^2 + x,
// with plane closure of degree 7, and its degree-4 quotient map onto
// E35: y^2 + y = x^3 + x^2 + 9x + 1.
struct ProjPoint {
  QuadElem x, y, z;

  /// Scales so that the last nonzero coordinate is 1.
  ProjPoint normalized() const;
  friend bool operator==(const ProjPoint& a, const ProjPoint& b);
  friend bool operator!=(const ProjPoint& a, const ProjPoint& b) { return !(a == b); }
};

std::string to_string(const ProjPoint& P);

namespace x35 {

bool on_model(const ProjPoint& P);
bool on_target(const ProjPoint& Q);
Curve target(long D);
std::string model_equation();

/// (p1, p2, p3) at P, or nothing when all three vanish.
std::optional<ProjPoint> eval_quotient_map(const ProjPoint& P);

/// K-points of the model mapping to Q.
std::vector<ProjPoint> fiber_over(const ProjPoint& Q, long D);

/// K-points where the quotient map is undefined.
std::vector<ProjPoint> nonregular_locus(long D);

/// Does E35's equation at (p1, p2, p3) vanish modulo the model's equation?
bool quotient_identity_holds();

ProjPoint from_affine(const PointK& P);

}  // namespace x35

struct TwistEntry {
  SquareClass d;
  TorsionGroupK torsion;
};

struct TwistSpectrum {
  std::vector<TwistEntry> entries;
  std::string base;               // structure of E(K)_tors
  bool in_scope = false;          // D = -3 and odd torsion
  bool conformant = true;
  int growth_extensions = 0;      // nontrivial classes with nontrivial twist torsion
  std::vector<std::string> violations;
};

/// Square classes of products of -1, unit classes and the primes above the
/// rational primes dividing 6 Norm(disc E), at most max_generators of them.
std::vector<SquareClass> default_twist_classes(const Curve& E, int max_generators = 10);

TwistSpectrum twist_spectrum(const Curve& E, const std::vector<SquareClass>& ds);

struct FifteenCurve {
  std::string label;    // row point and twist
  Curve curve;
  SquareClass growth;   // L = K(sqrt growth)
  std::string torsion_over_L;
  long nine_torsion_over_L = 0;
  long two_torsion_over_L = 0;
};

struct LevelReport {
  int level = 0;
  std::string verdict;  // "no isogeny", "four curves", "open"
  std::vector<std::string> certificates;
  std::vector<std::string> assumptions;
};

struct IsogenyReport {
  long D = 0;
  std::vector<FifteenCurve> fifteen;
  std::vector<LevelReport> levels;  // 15, 20, 21, 24, 27, 30, 35, 45
};

/// Throws std::invalid_argument unless D is -1 or -3.
IsogenyReport isogeny_report(long D);

}  // namespace qcyc

#endif  // QCYC_MODULAR_HPP

// Copyright 2026 The hkcurve Authors
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

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hk/gf.hpp"
#include "hk/poly.hpp"
#include "hk/rational.hpp"

namespace hk {

/// A named curve together with the multiplicity its closed form predicts.
struct FamilyPrediction {
  PlaneCurve curve;
  Rational predicted_hkm;
  std::optional<unsigned> predicted_s;  // absent when no Frobenius pullback destabilizes
  std::optional<unsigned> predicted_l;
  unsigned orbit_degree = 0;  // m(alpha) or d(lambda); 0 when not applicable
  std::string provenance;
};

/// alpha x^2 y^2 + z^4 + x y z^2 + (x^3 + y^3) z in characteristic 2, with
/// predicted multiplicity 3 + 4^-m(alpha), s = m(alpha), l = 4.
FamilyPrediction monsky_char2(const gf::FieldElement& alpha);

/// z^4 - x y (x + y)(x + lambda y) in characteristic 3, with predicted
/// multiplicity 3 + 3^(-2 d(lambda)), s = d(lambda), l = 4.
FamilyPrediction monsky_char3(const gf::FieldElement& lambda);

/// 3d/4 + (2r - d)^2 / 4d for a curve with a point of multiplicity r,
/// d/2 <= r < d.
Rational singular_prediction(unsigned d, unsigned r);

/// y^r z^(d-r) - x^d - x^(d-1) z: irreducible, multiplicity r at (0:0:1)
/// and no point of larger multiplicity.
FamilyPrediction singular_family(const gf::FieldPtr& field, unsigned d, unsigned r);

/// One element per Frobenius orbit of the field, smallest code first,
/// skipping the listed codes.
std::vector<gf::FieldElement> orbit_representatives(const gf::FieldPtr& field, const std::vector<gf::Code>& skip);

}  // namespace hk

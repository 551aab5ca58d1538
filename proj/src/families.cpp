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

#include "hk/families.hpp"

#include <algorithm>
#include <set>

#include "hk/error.hpp"

namespace hk {

namespace {

HomogeneousPoly monomial(const gf::FieldPtr& f, Monomial m, gf::Code c) {
  HomogeneousPoly out(f, m.degree());
  out.add_term(m, c);
  return out;
}

}  // namespace

FamilyPrediction monsky_char2(const gf::FieldElement& alpha) {
  const auto& f = alpha.field();
  if (f->characteristic() != 2) throw DomainError("monsky_char2 needs characteristic 2");
  if (alpha.is_zero()) throw DomainError("monsky_char2 needs alpha != 0");
  const unsigned m = m_alpha(alpha);
  HomogeneousPoly g = monomial(f, {2, 2, 0}, alpha.code()) + monomial(f, {0, 0, 4}, 1) +
                      monomial(f, {1, 1, 2}, 1) + monomial(f, {3, 0, 1}, 1) + monomial(f, {0, 3, 1}, 1);
  return FamilyPrediction{PlaneCurve(std::move(g), true, true), Rational(3) + Rational(Integer(1), ipow(4, m)), m, 4u,
                          m, "char-2 Monsky quartic: 3 + 4^-m(alpha)"};
}

FamilyPrediction monsky_char3(const gf::FieldElement& lambda) {
  const auto& f = lambda.field();
  if (f->characteristic() != 3) throw DomainError("monsky_char3 needs characteristic 3");
  if (lambda.is_zero() || lambda.is_one()) throw DomainError("monsky_char3 needs lambda not in {0, 1}");
  const unsigned dl = d_lambda(lambda);
  const HomogeneousPoly x = monomial(f, {1, 0, 0}, 1);
  const HomogeneousPoly y = monomial(f, {0, 1, 0}, 1);
  const HomogeneousPoly quartic = x * y * (x + y) * (x + y.scaled(lambda.code()));
  HomogeneousPoly g = monomial(f, {0, 0, 4}, 1) - quartic;
  return FamilyPrediction{PlaneCurve(std::move(g), true, true), Rational(3) + Rational(Integer(1), ipow(9, dl)), dl,
                          4u, dl, "char-3 Monsky quartic: 3 + p^-2d(lambda)"};
}

Rational singular_prediction(unsigned d, unsigned r) {
  if (d < 2) throw DomainError("singular_prediction needs d > 1");
  if (2 * r < d) throw DomainError("singular_prediction needs a point of multiplicity r >= d/2");
  if (r >= d) throw DomainError("singular_prediction needs r < d");
  const Integer l = Integer(2 * r) - d;
  return Rational(3 * d, 4) + Rational(l * l, Integer(4 * d));
}

FamilyPrediction singular_family(const gf::FieldPtr& field, unsigned d, unsigned r) {
  const Rational mu = singular_prediction(d, r);
  const gf::Code minus_one = field->neg(1);
  HomogeneousPoly g = monomial(field, {0, r, d - r}, 1) + monomial(field, {d, 0, 0}, minus_one) +
                      monomial(field, {d - 1, 0, 1}, minus_one);
  std::optional<unsigned> s, l;
  if (2 * r > d) {
    s = 0u;
    l = 2 * r - d;
  }
  return FamilyPrediction{PlaneCurve(std::move(g), true, std::nullopt), mu, s, l, 0,
                          "point of multiplicity r >= d/2: 3d/4 + (2r - d)^2 / 4d"};
}

std::vector<gf::FieldElement> orbit_representatives(const gf::FieldPtr& field, const std::vector<gf::Code>& skip) {
  std::set<gf::Code> seen(skip.begin(), skip.end());
  std::vector<gf::FieldElement> out;
  for (gf::Code c = 0; c < field->order(); ++c) {
    if (seen.count(c)) continue;
    out.emplace_back(field, c);
    for (gf::Code b = c;;) {
      seen.insert(b);
      b = field->frobenius(b);
      if (b == c) break;
    }
  }
  return out;
}

}  // namespace hk

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

#include <array>
#include <compare>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hk/gf.hpp"

namespace hk {

enum class Var { X = 0, Y = 1, Z = 2 };

/// x^a y^b z^c.
struct Monomial {
  unsigned a = 0;
  unsigned b = 0;
  unsigned c = 0;

  unsigned degree() const { return a + b + c; }
  unsigned exponent(Var v) const { return v == Var::X ? a : v == Var::Y ? b : c; }
  unsigned& exponent(Var v) { return v == Var::X ? a : v == Var::Y ? b : c; }
  Monomial operator*(const Monomial& o) const { return {a + o.a, b + o.b, c + o.c}; }

  auto operator<=>(const Monomial&) const = default;
};

/// Sparse homogeneous polynomial in x, y, z. Terms are kept in lexicographic
/// (a, b, c) order with no zero coefficients; the zero polynomial keeps a
/// nominal degree so that derivatives stay typed.
class HomogeneousPoly {
 public:
  using Terms = std::map<Monomial, gf::Code>;

  HomogeneousPoly(gf::FieldPtr field, unsigned degree);

  /// Sums duplicate monomials; throws DomainError on mixed degrees or an
  /// empty term list.
  static HomogeneousPoly from_terms(gf::FieldPtr field, const std::vector<std::pair<Monomial, gf::Code>>& terms);

  const gf::FieldPtr& field() const { return field_; }
  const gf::Field& gf() const { return *field_; }
  unsigned degree() const { return degree_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  gf::Code coefficient(const Monomial& m) const;
  void add_term(const Monomial& m, gf::Code c);

  HomogeneousPoly operator+(const HomogeneousPoly& o) const;
  HomogeneousPoly operator-(const HomogeneousPoly& o) const;
  HomogeneousPoly operator*(const HomogeneousPoly& o) const;
  HomogeneousPoly scaled(gf::Code c) const;

  gf::FieldElement evaluate(const std::array<gf::FieldElement, 3>& point) const;

  /// Canonical text: terms in descending lexicographic order, joined by " + ".
  std::string str() const;

  bool operator==(const HomogeneousPoly& o) const {
    return degree_ == o.degree_ && *field_ == *o.field_ && terms_ == o.terms_;
  }

 private:
  gf::FieldPtr field_;
  unsigned degree_;
  Terms terms_;
};

/// Parses +, -, *, ^ and parentheses over x, y, z and field constants.
/// Constants are integers, the field generator t, or bracketed coefficient
/// lists such as [1,0]. Throws ParseError on bad syntax, inhomogeneous input
/// or the zero polynomial.
HomogeneousPoly parse_poly(std::string_view text, const gf::FieldPtr& field);

/// Formal partial derivative; exponents are reduced mod p.
HomogeneousPoly partial(const HomogeneousPoly& f, Var v);

/// f(M v): variable i is replaced by sum_j m[i][j] * var_j.
HomogeneousPoly substitute_linear(const HomogeneousPoly& f, const std::array<std::array<gf::Code, 3>, 3>& m);

/// Renames variables: variable i of f becomes variable perm[i].
HomogeneousPoly permute_variables(const HomogeneousPoly& f, const std::array<Var, 3>& perm);

/// Multiplicity of the curve f = 0 at a projective point, 0 off the curve.
/// Works in the affine chart of the last nonzero coordinate.
unsigned multiplicity_at(const HomogeneousPoly& f, const std::array<gf::FieldElement, 3>& point);

/// A plane curve of degree d > 1. Irreducibility is never tested, only
/// recorded as an assertion made by the caller.
class PlaneCurve {
 public:
  explicit PlaneCurve(HomogeneousPoly f, bool irreducible_asserted = false, std::optional<bool> known_smooth = {});

  const HomogeneousPoly& equation() const { return f_; }
  unsigned degree() const { return f_.degree(); }
  std::uint64_t characteristic() const { return f_.gf().characteristic(); }
  bool irreducible_asserted() const { return irreducible_asserted_; }
  std::optional<bool> known_smooth() const { return known_smooth_; }

 private:
  HomogeneousPoly f_;
  bool irreducible_asserted_;
  std::optional<bool> known_smooth_;
};

}  // namespace hk

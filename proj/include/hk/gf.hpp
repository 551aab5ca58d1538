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

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hk::gf {

/// Dense encoding of an element of GF(p^k): sum of c_i * p^i over the
/// coefficients c_i of its residue polynomial in t (c_0 is the constant term).
using Code = std::uint64_t;

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// GF(p^k) realized as GF(p)[t] / (modulus). Immutable once built; share it
/// through FieldPtr.
class Field {
 public:
  /// GF(p^k) with the built-in modulus for (p, k).
  static FieldPtr make(std::uint64_t p, unsigned k = 1);
  /// GF(p^k) with a caller-supplied monic modulus, most significant
  /// coefficient first. Throws DomainError if it is not irreducible.
  static FieldPtr make(std::uint64_t p, std::vector<std::uint64_t> modulus);

  std::uint64_t characteristic() const { return p_; }
  unsigned degree() const { return k_; }
  std::uint64_t order() const { return order_; }
  /// Modulus coefficients, most significant first (k + 1 entries).
  const std::vector<std::uint64_t>& modulus() const { return modulus_; }

  Code add(Code a, Code b) const;
  Code sub(Code a, Code b) const;
  Code neg(Code a) const;
  Code mul(Code a, Code b) const;
  Code inv(Code a) const;
  Code pow(Code a, std::uint64_t e) const;
  Code frobenius(Code a) const { return pow(a, p_); }

  Code from_int(std::int64_t v) const;
  /// Residue class of t. Only meaningful for k > 1.
  Code generator() const;
  Code from_coeffs(std::span<const std::uint64_t> msf) const;
  /// k coefficients, most significant first.
  std::vector<std::uint64_t> coeffs(Code a) const;
  bool in_prime_field(Code a) const { return a < p_; }

  /// "GF(p)" or "GF(p^k; modulus=c_k,...,c_0)".
  std::string spec() const;
  /// Comma-separated coefficients, most significant first; a bare integer
  /// in a prime field.
  std::string format(Code a) const;
  Code parse_element(std::string_view text) const;

  bool operator==(const Field& other) const {
    return p_ == other.p_ && modulus_ == other.modulus_;
  }

 private:
  Field(std::uint64_t p, std::vector<std::uint64_t> modulus);
  Code mul_slow(Code a, Code b) const;
  void build_tables();

  std::uint64_t p_;
  unsigned k_;
  std::uint64_t order_;
  std::vector<std::uint64_t> modulus_;       // msf
  std::vector<std::uint64_t> reduction_;     // t^k = sum reduction_[i] t^i, low first
  std::vector<std::uint32_t> exp_, log_;     // only for small extension fields
};

/// Parses "GF(p)", "GF(p^k)", "GF(q)" for a prime power q, or
/// "GF(p^k; modulus=c_k,...,c_0)".
FieldPtr parse_field(std::string_view text);

/// Deterministic built-in modulus for GF(p^k): the monic irreducible of
/// degree k whose lower coefficients, read as a base-p number with c_0 as
/// the least significant digit, are smallest.
std::vector<std::uint64_t> default_modulus(std::uint64_t p, unsigned k);

bool is_prime(std::uint64_t n);
bool is_irreducible(std::uint64_t p, std::span<const std::uint64_t> modulus_msf);

/// Value type pairing a code with its field.
class FieldElement {
 public:
  FieldElement(FieldPtr field, Code code);
  static FieldElement from_int(FieldPtr field, std::int64_t v);
  static FieldElement generator(FieldPtr field);

  const FieldPtr& field() const { return field_; }
  Code code() const { return code_; }
  bool is_zero() const { return code_ == 0; }
  bool is_one() const { return code_ == 1; }

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator/(const FieldElement& o) const;
  FieldElement operator-() const;
  FieldElement pow(std::uint64_t e) const;
  FieldElement inverse() const;
  FieldElement frobenius() const;

  bool operator==(const FieldElement& o) const;
  std::string str() const { return field_->format(code_); }

 private:
  const Field& same_field(const FieldElement& o) const;

  FieldPtr field_;
  Code code_;
};

/// Smallest e >= 1 with a^(p^e) = a, the degree of a over GF(p).
unsigned frobenius_orbit_degree(const FieldElement& a);

/// Image of \p a under the embedding of its field into \p target, which must
/// have the same characteristic and a degree divisible by a's field degree.
/// The embedding sends t to the smallest-code root of the source modulus.
FieldElement embed(const FieldElement& a, const FieldPtr& target);

/// A solution of lambda^2 + lambda = alpha in characteristic 2. Solved in
/// alpha's own field when the absolute trace vanishes, otherwise in the
/// quadratic extension (built-in modulus).
FieldElement artin_schreier_solve(const FieldElement& alpha);

/// Degree over GF(2) of a root of lambda^2 + lambda = alpha (alpha != 0).
unsigned m_alpha(const FieldElement& alpha);

/// Degree over GF(3) of lambda, for lambda not in {0, 1}.
unsigned d_lambda(const FieldElement& lambda);

}  // namespace hk::gf

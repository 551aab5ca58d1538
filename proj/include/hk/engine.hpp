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

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "hk/error.hpp"
#include "hk/matrix.hpp"
#include "hk/poly.hpp"

namespace hk {

/// One value of the Hilbert-Kunz function: colength of
/// S / (f, x^q, y^q, z^q) with q = p^n.
struct HKSample {
  unsigned n = 0;
  std::uint64_t q = 1;
  std::uint64_t colength = 0;

  bool operator==(const HKSample&) const = default;
};

/// Monomials of degree n with every exponent below q, in lexicographic order.
std::vector<Monomial> truncated_basis(unsigned n, std::uint64_t q);

/// Degree-n piece of multiplication by f on S / (x^q, y^q, z^q).
struct GradedBlock {
  unsigned degree;
  std::vector<Monomial> domain_basis;    // degree n
  std::vector<Monomial> codomain_basis;  // degree n + d
  la::Matrix matrix;                     // codomain x domain
};

GradedBlock graded_block(const HomogeneousPoly& f, unsigned n, std::uint64_t q);

/// How a graded block's rank is obtained.
///  - Dense: eliminate the full block matrix.
///  - Reduced: when f has a nonzero z^d coefficient (after permuting or
///    linearly changing coordinates), the columns whose z^d term survives
///    truncation are already in echelon form; only the Schur complement on
///    the remaining columns is eliminated. Same rank, blocks of size O(d q).
///  - Auto: Reduced when a suitable coordinate system exists, else Dense.
enum class BlockStrategy { Auto, Dense, Reduced };

struct Progress {
  unsigned n = 0;
  std::uint64_t q = 1;
  std::size_t blocks_done = 0;
  std::size_t blocks_total = 0;
};

struct EngineOptions {
  unsigned threads = 0;  // 0: default_thread_count()
  BlockStrategy strategy = BlockStrategy::Auto;
  std::uint64_t max_q = 0;                           // 0: unbounded
  std::size_t max_block_bytes = std::size_t{1} << 31;  // dense storage guard
  std::function<void(const Progress&)> on_progress;
};

/// HK_THREADS if set to a positive integer, otherwise the hardware concurrency.
unsigned default_thread_count();

/// n with p^n = q; DomainError if q is not a power of p.
unsigned frobenius_exponent(std::uint64_t q, std::uint64_t p);

/// Ranks of the graded blocks for n = 0 .. 3(q-1) - d.
std::vector<std::size_t> block_ranks(const HomogeneousPoly& f, std::uint64_t q, const EngineOptions& opts = {});

/// q^3 minus the sum of the block ranks.
HKSample colength(const HomogeneousPoly& f, std::uint64_t q, const EngineOptions& opts = {});

/// Largest q the ungraded oracle accepts for characteristic p.
std::uint64_t oracle_cutoff(std::uint64_t p);

/// Same value as colength, from one rank of the full q^3 x q^3
/// multiplication matrix. Refuses q above \p cutoff (0: oracle_cutoff(p)).
HKSample colength_naive(const HomogeneousPoly& f, std::uint64_t q, std::uint64_t cutoff = 0);

/// Thrown by hk_sequence when a sample hits a resource bound; carries the
/// samples finished before it.
class SequenceError : public ResourceError {
 public:
  SequenceError(const std::string& what, std::vector<HKSample> partial)
      : ResourceError(what), partial_(std::move(partial)) {}
  const std::vector<HKSample>& partial() const { return partial_; }

 private:
  std::vector<HKSample> partial_;
};

/// Samples for n = 0 .. n_max.
std::vector<HKSample> hk_sequence(const PlaneCurve& curve, unsigned n_max, const EngineOptions& opts = {});

/// True iff (f, f_x, f_y, f_z) contains every form of degree 3d - 3, which
/// happens exactly when the curve has no singular point over the algebraic
/// closure.
bool smooth_check(const PlaneCurve& curve);

}  // namespace hk

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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hk/engine.hpp"
#include "hk/rational.hpp"

namespace hk {

/// Behaviour of the rank-2 kernel bundle of a plane curve under Frobenius.
enum class StabilityCase {
  StronglySemistable,     // every Frobenius pullback semistable
  NotSemistable,          // destabilized already (s = 0)
  SemistableNotStrongly,  // first destabilized by the s-th pullback, s >= 1
};

std::string to_string(StabilityCase c);

/// One admissible multiplicity 3d/4 + l^2 / (4 d p^(2s)). Values reachable
/// through several (case, s, l) readings are stored once; the preferred
/// reading is the candidate itself and the rest go to `alternatives`.
struct Candidate {
  StabilityCase kind = StabilityCase::StronglySemistable;
  std::optional<unsigned> s;
  std::optional<unsigned> l;
  Rational mu;
  std::vector<Candidate> alternatives;
};

/// All candidates with s <= s_cut and mu < d, sorted by mu. Case 2 is left
/// out when the curve is known to be smooth. Among readings of one value the
/// preference is case 1, then case 2, then case 3 with the largest s.
std::vector<Candidate> candidate_set(unsigned d, std::uint64_t p, unsigned s_cut, std::optional<bool> smooth = {});

struct MuEstimate {
  Rational mu;      // successive-difference estimate at the two largest q
  Rational radius;  // error radius
  unsigned n_max = 0;
  std::uint64_t q_max = 1;
};

/// mu = (HK(q') - HK(q)) / (q'^2 - q^2) over the two largest samples with
/// n >= 1. radius = |mu - mu_prev| + slack / q_max, where mu_prev is the
/// same estimate one step earlier (or HK(q_max)/q_max^2 when only two
/// samples are usable).
MuEstimate estimate_mu(std::span<const HKSample> samples, const Rational& slack = 1);

/// Degrees of the destabilizing sub line bundle and of the quotient in the
/// Harder-Narasimhan filtration of the s-th Frobenius pullback.
struct HNSlopes {
  Rational sub;       // -(d/2) p^s + l/2
  Rational quotient;  // -(d/2) p^s - l/2
};

/// Throws DomainError unless l > 0 and l has the parity of d (s = 0) or of
/// p d (s >= 1).
HNSlopes slopes(unsigned s, unsigned l, unsigned d, std::uint64_t p);

/// alpha(V) = 2 d hkm - d^2. Throws DomainError when hkm < 3d/4.
Rational alpha_from_hkm(const Rational& hkm, unsigned d);

enum class ReportStatus { Exact, Ambiguous };

struct HKReport {
  std::string curve_id;
  unsigned d = 0;
  std::uint64_t p = 0;
  std::vector<HKSample> samples;
  std::optional<bool> smooth;
  unsigned s_cut = 0;
  ReportStatus status = ReportStatus::Ambiguous;
  std::optional<Candidate> chosen;     // set when Exact
  std::vector<Candidate> contenders;   // two nearest candidates when Ambiguous
  std::optional<Rational> hkm;
  std::optional<Rational> alpha;
  std::optional<HNSlopes> hn_slopes;
  Rational estimate;
  Rational radius;
  Rational margin;  // (half gap to the nearest other value - distance) / radius; accepted iff > 1
  std::vector<std::string> notes;
};

struct ClassifyOptions {
  Rational slack = 1;
  std::string curve_id;
  bool irreducible_asserted = false;
  /// Deepest Frobenius pullback considered; defaults to the largest sampled n.
  /// Near 3d/4 the case-3 values crowd together like p^{-2 s_cut}, so a
  /// strongly semistable verdict is only reachable with a smaller s_cut.
  std::optional<unsigned> s_cut;
};

/// Snaps the estimated multiplicity to the nearest candidate (s_cut defaults
/// to the largest sample index) and accepts it iff |estimate - mu| + radius is
/// below half the distance to the nearest other candidate, the degree d
/// acting as an upper sentinel. Otherwise the report is Ambiguous.
HKReport snap_classify(std::span<const HKSample> samples, unsigned d, std::uint64_t p, std::optional<bool> smooth,
                       const ClassifyOptions& opts = {});

}  // namespace hk

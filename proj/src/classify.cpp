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

#include "hk/classify.hpp"

#include <algorithm>
#include <map>

#include "hk/error.hpp"

namespace hk {

std::string to_string(StabilityCase c) {
  switch (c) {
    case StabilityCase::StronglySemistable:
      return "StronglySemistable";
    case StabilityCase::NotSemistable:
      return "NotSemistable";
    case StabilityCase::SemistableNotStrongly:
      return "SemistableNotStrongly";
  }
  return "?";
}

namespace {

// Lower rank = preferred reading of a shared value.
std::pair<int, long> preference(const Candidate& c) {
  switch (c.kind) {
    case StabilityCase::StronglySemistable:
      return {0, 0};
    case StabilityCase::NotSemistable:
      return {1, 0};
    case StabilityCase::SemistableNotStrongly:
      return {2, -static_cast<long>(*c.s)};
  }
  return {3, 0};
}

}  // namespace

std::vector<Candidate> candidate_set(unsigned d, std::uint64_t p, unsigned s_cut, std::optional<bool> smooth) {
  if (d < 2) throw DomainError("candidate_set needs d > 1");
  if (!gf::is_prime(p)) throw DomainError("candidate_set needs a prime p");
  const Rational base = Rational(3 * d, 4);
  const Rational ceiling = d;
  std::vector<Candidate> raw;
  raw.push_back({StabilityCase::StronglySemistable, std::nullopt, std::nullopt, base, {}});
  if (smooth != true)
    for (unsigned l = 1; l < d; ++l)
      if (l % 2 == d % 2) raw.push_back({StabilityCase::NotSemistable, 0u, l, base + Rational(l * l, 4 * d), {}});
  const unsigned l_max = d >= 3 ? d * (d - 3) : 0;
  const unsigned parity = static_cast<unsigned>((p * d) % 2);
  for (unsigned s = 1; s <= s_cut; ++s) {
    const Integer denom = Integer(4 * d) * ipow(p, 2 * s);
    for (unsigned l = 1; l <= l_max; ++l)
      if (l % 2 == parity) raw.push_back({StabilityCase::SemistableNotStrongly, s, l, base + Rational(Integer(l) * l, denom), {}});
  }
  std::map<Rational, std::vector<Candidate>> by_mu;
  for (auto& c : raw)
    if (c.mu < ceiling) by_mu[c.mu].push_back(std::move(c));
  std::vector<Candidate> out;
  for (auto& [mu, readings] : by_mu) {
    std::stable_sort(readings.begin(), readings.end(),
                     [](const Candidate& a, const Candidate& b) { return preference(a) < preference(b); });
    Candidate head = readings.front();
    head.alternatives.assign(readings.begin() + 1, readings.end());
    out.push_back(std::move(head));
  }
  return out;
}

MuEstimate estimate_mu(std::span<const HKSample> samples, const Rational& slack) {
  std::vector<HKSample> usable;
  for (const auto& s : samples)
    if (s.n >= 1) usable.push_back(s);
  std::sort(usable.begin(), usable.end(), [](const HKSample& a, const HKSample& b) { return a.n < b.n; });
  usable.erase(std::unique(usable.begin(), usable.end(),
                           [](const HKSample& a, const HKSample& b) { return a.n == b.n; }),
               usable.end());
  if (usable.size() < 2) throw DomainError("estimate_mu needs at least two samples with n >= 1");
  auto diff = [](const HKSample& lo, const HKSample& hi) {
    const Integer num = Integer(hi.colength) - Integer(lo.colength);
    const Integer den = Integer(hi.q) * hi.q - Integer(lo.q) * lo.q;
    return Rational(num, den);
  };
  const std::size_t k = usable.size();
  MuEstimate est;
  est.mu = diff(usable[k - 2], usable[k - 1]);
  est.n_max = usable[k - 1].n;
  est.q_max = usable[k - 1].q;
  const Rational previous = k >= 3 ? diff(usable[k - 3], usable[k - 2])
                                   : Rational(Integer(usable[k - 1].colength), Integer(est.q_max) * est.q_max);
  est.radius = abs(est.mu - previous) + slack / Rational(Integer(est.q_max));
  return est;
}

HNSlopes slopes(unsigned s, unsigned l, unsigned d, std::uint64_t p) {
  if (l == 0) throw DomainError("slopes need l > 0");
  const std::uint64_t pattern = s == 0 ? d : p * d;
  if ((l % 2) != (pattern % 2))
    throw DomainError("l = " + std::to_string(l) + " must be congruent to " + (s == 0 ? std::string("d") : "p d") +
                      " mod 2");
  const Rational center = -Rational(Integer(d) * ipow(p, s), 2);
  return {center + Rational(l, 2), center - Rational(l, 2)};
}

Rational alpha_from_hkm(const Rational& hkm, unsigned d) {
  if (hkm < Rational(3 * d, 4))
    throw DomainError("HK multiplicity " + to_string(hkm) + " is below the floor 3d/4 = " + to_string(Rational(3 * d, 4)));
  return Rational(2 * d) * hkm - Rational(d * d);
}

HKReport snap_classify(std::span<const HKSample> samples, unsigned d, std::uint64_t p, std::optional<bool> smooth,
                       const ClassifyOptions& opts) {
  if (opts.slack <= 0) throw DomainError("slack constant must be positive");
  HKReport rep;
  rep.curve_id = opts.curve_id;
  rep.d = d;
  rep.p = p;
  rep.samples.assign(samples.begin(), samples.end());
  rep.smooth = smooth;
  const MuEstimate est = estimate_mu(samples, opts.slack);
  rep.estimate = est.mu;
  rep.radius = est.radius;
  rep.s_cut = opts.s_cut.value_or(est.n_max);

  const auto cands = candidate_set(d, p, rep.s_cut, smooth);
  std::vector<std::size_t> order(cands.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return abs(est.mu - cands[a].mu) < abs(est.mu - cands[b].mu);
  });
  const Candidate& best = cands[order.front()];
  Rational gap = Rational(d) - best.mu;
  for (const auto& c : cands)
    if (c.mu != best.mu) gap = std::min(gap, abs(c.mu - best.mu));
  const Rational distance = abs(est.mu - best.mu);
  rep.margin = (gap / 2 - distance) / est.radius;

  if (est.mu < Rational(3 * d, 4) - opts.slack / Rational(Integer(est.q_max)))
    rep.notes.push_back("estimate lies below the 3d/4 floor; the curve may be reducible");

  if (distance + est.radius < gap / 2) {
    rep.status = ReportStatus::Exact;
    rep.chosen = best;
    rep.hkm = best.mu;
    rep.alpha = alpha_from_hkm(best.mu, d);
    if (best.kind != StabilityCase::StronglySemistable) rep.hn_slopes = slopes(*best.s, *best.l, d, p);
    if (best.kind == StabilityCase::StronglySemistable)
      rep.notes.push_back("strongly semistable up to s_cut = " + std::to_string(rep.s_cut));
    for (const auto& alt : best.alternatives)
      rep.notes.push_back("same value also read as " + to_string(alt.kind) + " with s = " + std::to_string(*alt.s) +
                          ", l = " + std::to_string(*alt.l));
  } else {
    rep.status = ReportStatus::Ambiguous;
    rep.contenders.push_back(best);
    if (order.size() > 1) rep.contenders.push_back(cands[order[1]]);
  }
  if (!opts.irreducible_asserted) rep.notes.push_back("classification assumes the curve is irreducible");
  return rep;
}

}  // namespace hk

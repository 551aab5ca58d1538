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

#include <algorithm>
#include <set>

#include "doctest.h"
#include "hk/classify.hpp"
#include "hk/error.hpp"

using namespace hk;

namespace {

std::set<Rational> values(const std::vector<Candidate>& cands) {
  std::set<Rational> out;
  for (const auto& c : cands) out.insert(c.mu);
  return out;
}

std::vector<HKSample> synthetic(std::uint64_t p, unsigned n_max, const Rational& mu) {
  std::vector<HKSample> out;
  std::uint64_t q = 1;
  for (unsigned n = 0; n <= n_max; ++n, q *= p) {
    const Rational v = mu * Rational(Integer(q) * q);
    out.push_back({n, q, static_cast<std::uint64_t>(numerator_of(v) / denominator_of(v))});
  }
  return out;
}

}  // namespace

TEST_CASE("quartic candidates in characteristic 3") {
  auto cands = candidate_set(4, 3, 2, true);
  const std::set<Rational> expected{3, Rational(109, 36), Rational(28, 9), Rational(973, 324), Rational(244, 81)};
  CHECK(values(cands) == expected);
  CHECK(cands.size() == expected.size());
}

TEST_CASE("conic and nodal cubic candidates") {
  auto conic = candidate_set(2, 7, 3, true);
  REQUIRE(conic.size() == 1);
  CHECK(conic[0].mu == Rational(3, 2));
  CHECK(conic[0].kind == StabilityCase::StronglySemistable);

  auto cubic = candidate_set(3, 5, 3, false);
  auto it = std::find_if(cubic.begin(), cubic.end(), [](const Candidate& c) { return c.mu == Rational(7, 3); });
  REQUIRE(it != cubic.end());
  CHECK(it->kind == StabilityCase::NotSemistable);
  CHECK(*it->l == 1);
  CHECK(*it->s == 0);
  CHECK(values(candidate_set(3, 5, 3, true)) == std::set<Rational>{Rational(9, 4)});
}

TEST_CASE("candidate set invariants") {
  for (unsigned d = 2; d <= 8; ++d)
    for (std::uint64_t p : {2u, 3u, 5u, 7u})
      for (bool smooth : {true, false}) {
        auto cands = candidate_set(d, p, 3, smooth);
        REQUIRE(!cands.empty());
        CHECK(values(cands).size() == cands.size());
        const Rational floor(3 * d, 4);
        CHECK(cands.front().mu == floor);
        for (std::size_t i = 1; i < cands.size(); ++i) CHECK(cands[i].mu > floor);
        for (const auto& c : cands) {
          CHECK(c.mu < Rational(d));
          if (c.kind == StabilityCase::SemistableNotStrongly) {
            const Rational ps = Rational(ipow(p, *c.s) * ipow(p, *c.s));
            CHECK(Rational(2 * d) * c.mu - Rational(d * d) ==
                  Rational(d * d, 2) + Rational(*c.l * *c.l) / (2 * ps));
            CHECK(*c.l <= d * (d - 3));
          }
        }
      }
}

TEST_CASE("the preferred reading of a shared value") {
  // 3 + 1/16 is both (s = 2, l = 4) and (s = 1, l = 2) in characteristic 2
  auto cands = candidate_set(4, 2, 3, true);
  auto it = std::find_if(cands.begin(), cands.end(), [](const Candidate& c) { return c.mu == Rational(49, 16); });
  REQUIRE(it != cands.end());
  CHECK(*it->s == 2);
  CHECK(*it->l == 4);
  REQUIRE(it->alternatives.size() == 1);
  CHECK(*it->alternatives[0].s == 1);
  CHECK(*it->alternatives[0].l == 2);
}

TEST_CASE("successive-difference estimates") {
  std::vector<HKSample> conic;
  for (std::uint64_t q = 1, n = 0; n <= 4; ++n, q *= 2) conic.push_back({static_cast<unsigned>(n), q, 3 * q * q / 2});
  auto est = estimate_mu(conic);
  CHECK(est.mu == Rational(3, 2));
  CHECK(est.radius == Rational(1, 16));
  CHECK(est.q_max == 16);

  std::vector<HKSample> cube;
  for (std::uint64_t q = 1, n = 0; n <= 3; ++n, q *= 5) cube.push_back({static_cast<unsigned>(n), q, 4 * q * q});
  CHECK(estimate_mu(cube).mu == 4);
  CHECK(estimate_mu(cube, Rational(1, 2)).radius == Rational(1, 250));

  CHECK_THROWS_AS(estimate_mu(std::vector<HKSample>{{0, 1, 1}}), DomainError);
}

TEST_CASE("slopes and alpha") {
  auto a = slopes(1, 4, 4, 3);
  CHECK(a.sub == -4);
  CHECK(a.quotient == -8);
  auto b = slopes(0, 1, 3, 5);
  CHECK(b.sub == -1);
  CHECK(b.quotient == -2);
  CHECK(b.sub + b.quotient == -3);
  CHECK_THROWS_AS(slopes(1, 3, 4, 2), DomainError);

  CHECK(alpha_from_hkm(3, 4) == 8);
  CHECK(alpha_from_hkm(Rational(7, 3), 3) == 5);
  CHECK_THROWS_AS(alpha_from_hkm(1, 4), DomainError);
}

TEST_CASE("exact case-1 data with a shallow s_cut") {
  ClassifyOptions opts;
  opts.s_cut = 1;
  auto rep = snap_classify(synthetic(2, 6, 3), 4, 2, true, opts);
  REQUIRE(rep.status == ReportStatus::Exact);
  CHECK(rep.chosen->kind == StabilityCase::StronglySemistable);
  CHECK(*rep.hkm == 3);
  CHECK(*rep.alpha == 8);
  CHECK_FALSE(rep.hn_slopes.has_value());
  CHECK(std::find(rep.notes.begin(), rep.notes.end(), "strongly semistable up to s_cut = 1") != rep.notes.end());

  // with every pullback up to n_max considered, 3 has neighbours closer than the radius
  auto deep = snap_classify(synthetic(2, 6, 3), 4, 2, true);
  CHECK(deep.status == ReportStatus::Ambiguous);
  CHECK(deep.contenders.size() == 2);
}

TEST_CASE("exact case-3 data") {
  auto rep = snap_classify(synthetic(2, 7, Rational(49, 16)), 4, 2, true);
  REQUIRE(rep.status == ReportStatus::Exact);
  CHECK(*rep.hkm == Rational(49, 16));
  CHECK(*rep.chosen->s == 2);
  CHECK(*rep.chosen->l == 4);
  CHECK(rep.hn_slopes->sub == -6);
  CHECK(rep.hn_slopes->quotient == -10);
  CHECK(rep.margin > 1);
}

TEST_CASE("nodal cubic data") {
  auto rep = snap_classify(synthetic(5, 3, Rational(7, 3)), 3, 5, false);
  REQUIRE(rep.status == ReportStatus::Exact);
  CHECK(rep.chosen->kind == StabilityCase::NotSemistable);
  CHECK(*rep.chosen->l == 1);
  CHECK(*rep.alpha == 5);
}

TEST_CASE("insufficient depth is ambiguous") {
  auto rep = snap_classify(synthetic(2, 2, Rational(49, 16)), 4, 2, true);
  CHECK(rep.status == ReportStatus::Ambiguous);
  CHECK_FALSE(rep.hkm.has_value());
  CHECK(rep.margin <= 1);
}

TEST_CASE("classification is deterministic") {
  auto s = synthetic(3, 4, Rational(28, 9));
  auto a = snap_classify(s, 4, 3, true);
  auto b = snap_classify(s, 4, 3, true);
  CHECK(a.hkm == b.hkm);
  CHECK(a.margin == b.margin);
  CHECK(a.notes == b.notes);
}

TEST_CASE("non-positive slack is rejected") {
  ClassifyOptions opts;
  opts.slack = 0;
  CHECK_THROWS_AS(snap_classify(synthetic(2, 4, 3), 4, 2, true, opts), DomainError);
}

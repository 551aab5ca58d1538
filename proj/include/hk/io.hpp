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
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "json.hpp"

#include "hk/classify.hpp"
#include "hk/engine.hpp"

namespace hk::io {

using nlohmann::json;

/// {"num": n, "den": d, "decimal": "..."}; num and den become strings when
/// they do not fit in 64 bits.
json rational_json(const Rational& r);
Rational rational_from_json(const json& j);

json sample_json(const HKSample& s);
json samples_json(std::span<const HKSample> samples);
/// "n,q,colength" header plus one row per sample.
std::string samples_csv(std::span<const HKSample> samples);

json candidate_json(const Candidate& c);
json report_json(const HKReport& r);

/// Multi-line human-readable summary.
std::string report_summary(const HKReport& r);

std::string report_csv_header();
std::string report_csv_row(const HKReport& r);

/// Columns q, ratio (HK(q)/q^2 as a decimal), then one column per candidate
/// value near the estimate so the convergence can be plotted.
std::string plot_csv(const HKReport& r, std::size_t candidate_lines = 4);

/// Colength cache: one JSON record per line,
/// {"field": ..., "poly": ..., "n": ..., "q": ..., "colength": ...}, keyed by
/// (field spec, canonical polynomial text, q). Re-runs append only new
/// records.
class SampleCache {
 public:
  explicit SampleCache(std::filesystem::path path);

  std::optional<HKSample> lookup(const std::string& field, const std::string& poly, std::uint64_t q) const;
  /// Records in memory and appends to the file.
  void store(const std::string& field, const std::string& poly, const HKSample& s);

 private:
  std::filesystem::path path_;
  std::map<std::tuple<std::string, std::string, std::uint64_t>, HKSample> entries_;
};

}  // namespace hk::io

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

#include "hk/io.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <sstream>

#include "hk/error.hpp"

namespace hk::io {

namespace {

json integer_json(const Integer& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(v);
  return v.str();
}

Integer integer_from_json(const json& j) {
  if (j.is_string()) return Integer(j.get<std::string>());
  return Integer(j.get<std::int64_t>());
}

std::string candidate_label(const Candidate& c) {
  std::string s = to_string(c.kind);
  if (c.s) s += " s=" + std::to_string(*c.s);
  if (c.l) s += " l=" + std::to_string(*c.l);
  return s + " mu=" + to_string(c.mu);
}

}  // namespace

json rational_json(const Rational& r) {
  return json{{"num", integer_json(numerator_of(r))},
              {"den", integer_json(denominator_of(r))},
              {"decimal", to_decimal(r, 12)}};
}

Rational rational_from_json(const json& j) {
  return Rational(integer_from_json(j.at("num")), integer_from_json(j.at("den")));
}

json sample_json(const HKSample& s) { return json{{"n", s.n}, {"q", s.q}, {"colength", s.colength}}; }

json samples_json(std::span<const HKSample> samples) {
  json arr = json::array();
  for (const auto& s : samples) arr.push_back(sample_json(s));
  return arr;
}

std::string samples_csv(std::span<const HKSample> samples) {
  std::ostringstream out;
  out << "n,q,colength\n";
  for (const auto& s : samples) out << s.n << ',' << s.q << ',' << s.colength << '\n';
  return out.str();
}

json candidate_json(const Candidate& c) {
  json j{{"case", to_string(c.kind)}, {"mu", rational_json(c.mu)}};
  j["s"] = c.s ? json(*c.s) : json(nullptr);
  j["l"] = c.l ? json(*c.l) : json(nullptr);
  if (!c.alternatives.empty()) {
    json alts = json::array();
    for (const auto& a : c.alternatives) alts.push_back(candidate_json(a));
    j["alternatives"] = alts;
  }
  return j;
}

json report_json(const HKReport& r) {
  json j;
  j["curve"] = r.curve_id;
  j["d"] = r.d;
  j["p"] = r.p;
  j["smooth"] = r.smooth ? json(*r.smooth) : json(nullptr);
  j["s_cut"] = r.s_cut;
  j["status"] = r.status == ReportStatus::Exact ? "exact" : "ambiguous";
  j["samples"] = samples_json(r.samples);
  j["estimate"] = rational_json(r.estimate);
  j["radius"] = rational_json(r.radius);
  j["margin"] = rational_json(r.margin);
  j["chosen"] = r.chosen ? candidate_json(*r.chosen) : json(nullptr);
  json contenders = json::array();
  for (const auto& c : r.contenders) contenders.push_back(candidate_json(c));
  j["contenders"] = contenders;
  j["hkm"] = r.hkm ? rational_json(*r.hkm) : json(nullptr);
  j["alpha"] = r.alpha ? rational_json(*r.alpha) : json(nullptr);
  if (r.hn_slopes)
    j["hn_slopes"] = json{{"deg_L1", rational_json(r.hn_slopes->sub)}, {"deg_M1", rational_json(r.hn_slopes->quotient)}};
  else
    j["hn_slopes"] = nullptr;
  j["notes"] = r.notes;
  return j;
}

std::string report_summary(const HKReport& r) {
  std::ostringstream out;
  if (!r.curve_id.empty()) out << "curve:     " << r.curve_id << '\n';
  out << "degree:    " << r.d << "   characteristic: " << r.p << "   s_cut: " << r.s_cut << '\n';
  out << "estimate:  " << to_decimal(r.estimate, 10) << " +/- " << to_decimal(r.radius, 10) << '\n';
  if (r.status == ReportStatus::Exact) {
    const Candidate& c = *r.chosen;
    out << "status:    exact (margin " << to_decimal(r.margin, 3) << ")\n";
    out << "case:      " << to_string(c.kind) << '\n';
    if (c.s) out << "s:         " << *c.s << '\n';
    if (c.l) out << "l:         " << *c.l << '\n';
    out << "HKM:       " << to_string(*r.hkm) << " = " << to_decimal(*r.hkm, 10) << '\n';
    out << "alpha(V):  " << to_string(*r.alpha) << '\n';
    if (r.hn_slopes)
      out << "HN slopes: deg L1 = " << to_string(r.hn_slopes->sub) << ", deg M1 = " << to_string(r.hn_slopes->quotient)
          << '\n';
  } else {
    out << "status:    ambiguous (margin " << to_decimal(r.margin, 3) << ")\n";
    for (const auto& c : r.contenders) out << "candidate: " << candidate_label(c) << '\n';
  }
  for (const auto& n : r.notes) out << "note:      " << n << '\n';
  return out.str();
}

std::string report_csv_header() { return "curve,d,p,s_cut,status,case,s,l,hkm,hkm_decimal,alpha,estimate,radius"; }

std::string report_csv_row(const HKReport& r) {
  std::ostringstream out;
  std::string curve = r.curve_id;
  std::replace(curve.begin(), curve.end(), '"', '\'');
  out << '"' << curve << "\"," << r.d << ',' << r.p << ',' << r.s_cut << ','
      << (r.status == ReportStatus::Exact ? "exact" : "ambiguous") << ',';
  if (r.chosen) {
    out << to_string(r.chosen->kind) << ',' << (r.chosen->s ? std::to_string(*r.chosen->s) : "") << ','
        << (r.chosen->l ? std::to_string(*r.chosen->l) : "") << ',' << to_string(*r.hkm) << ','
        << to_decimal(*r.hkm, 10) << ',' << to_string(*r.alpha) << ',';
  } else {
    out << ",,,,,,";
  }
  out << to_decimal(r.estimate, 10) << ',' << to_decimal(r.radius, 10);
  return out.str();
}

std::string plot_csv(const HKReport& r, std::size_t candidate_lines) {
  auto cands = candidate_set(r.d, r.p, r.s_cut, r.smooth);
  std::stable_sort(cands.begin(), cands.end(), [&](const Candidate& a, const Candidate& b) {
    return abs(a.mu - r.estimate) < abs(b.mu - r.estimate);
  });
  if (cands.size() > candidate_lines) cands.resize(candidate_lines);
  std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) { return a.mu < b.mu; });
  std::ostringstream out;
  out << "q,ratio";
  for (const auto& c : cands) out << ",mu_" << to_string(c.mu);
  out << '\n';
  for (const auto& s : r.samples) {
    if (s.n == 0) continue;
    out << s.q << ',' << to_decimal(Rational(Integer(s.colength), Integer(s.q) * s.q), 10);
    for (const auto& c : cands) out << ',' << to_decimal(c.mu, 10);
    out << '\n';
  }
  return out.str();
}

SampleCache::SampleCache(std::filesystem::path path) : path_(std::move(path)) {
  std::ifstream in(path_);
  if (!in) return;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      const json j = json::parse(line);
      HKSample s{j.at("n").get<unsigned>(), j.at("q").get<std::uint64_t>(), j.at("colength").get<std::uint64_t>()};
      entries_[{j.at("field").get<std::string>(), j.at("poly").get<std::string>(), s.q}] = s;
    } catch (const json::exception& e) {
      throw ParseError("cache " + path_.string() + " line " + std::to_string(lineno) + ": " + e.what());
    }
  }
}

std::optional<HKSample> SampleCache::lookup(const std::string& field, const std::string& poly, std::uint64_t q) const {
  auto it = entries_.find({field, poly, q});
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void SampleCache::store(const std::string& field, const std::string& poly, const HKSample& s) {
  if (!entries_.emplace(std::make_tuple(field, poly, s.q), s).second) return;
  std::ofstream out(path_, std::ios::app);
  if (!out) throw ResourceError("cannot write cache " + path_.string());
  out << json{{"field", field}, {"poly", poly}, {"n", s.n}, {"q", s.q}, {"colength", s.colength}}.dump() << '\n';
}

}  // namespace hk::io

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

#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "hk/error.hpp"
#include "hk/io.hpp"

using namespace hk;

namespace {

std::filesystem::path temp_file(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("hk_io_" + name);
  std::filesystem::remove(p);
  return p;
}

}  // namespace

TEST_CASE("rational JSON round trip") {
  for (const Rational& r : {Rational(49, 16), Rational(-7, 3), Rational(0), Rational(Integer(1), ipow(3, 60))}) {
    const auto j = io::rational_json(r);
    CHECK(io::rational_from_json(j) == r);
    CHECK(j.contains("decimal"));
  }
  CHECK(io::rational_json(Rational(49, 16))["decimal"] == "3.062500000000");
  CHECK(io::rational_json(Rational(49, 16))["num"] == 49);
}

TEST_CASE("decimal rendering truncates") {
  CHECK(to_decimal(Rational(2, 3), 4) == "0.6666");
  CHECK(to_decimal(Rational(-7, 3), 2) == "-2.33");
  CHECK(to_decimal(Rational(5), 0) == "5");
  CHECK(to_string(Rational(28, 9)) == "28/9");
  CHECK(to_string(Rational(3)) == "3");
}

TEST_CASE("sample CSV") {
  std::vector<HKSample> s{{0, 1, 1}, {1, 2, 4}};
  CHECK(io::samples_csv(s) == "n,q,colength\n0,1,1\n1,2,4\n");
  CHECK(io::samples_json(s)[1]["colength"] == 4);
}

TEST_CASE("report serialisation") {
  std::vector<HKSample> samples;
  for (std::uint64_t q = 1, n = 0; n <= 7; ++n, q *= 2) {
    const Rational v = Rational(49, 16) * Rational(Integer(q * q));
    samples.push_back({static_cast<unsigned>(n), q, static_cast<std::uint64_t>(numerator_of(v) / denominator_of(v))});
  }
  ClassifyOptions opts;
  opts.curve_id = "g1";
  auto rep = snap_classify(samples, 4, 2, true, opts);
  auto j = io::report_json(rep);
  CHECK(j["status"] == "exact");
  CHECK(j["hkm"]["num"] == 49);
  CHECK(j["hkm"]["den"] == 16);
  CHECK(j["chosen"]["s"] == 2);
  CHECK(j["chosen"]["alternatives"][0]["l"] == 2);
  CHECK(j["hn_slopes"]["deg_L1"]["num"] == -6);
  CHECK(j["samples"].size() == 8);
  CHECK(io::report_json(rep).dump() == j.dump());

  const std::string summary = io::report_summary(rep);
  CHECK(summary.find("HKM:       49/16") != std::string::npos);
  CHECK(summary.find("SemistableNotStrongly") != std::string::npos);

  const std::string row = io::report_csv_row(rep);
  CHECK(row.rfind("\"g1\",4,2,7,exact,SemistableNotStrongly,2,4,49/16,", 0) == 0);
  const std::string header = io::report_csv_header();
  CHECK(std::count(row.begin(), row.end(), ',') == std::count(header.begin(), header.end(), ','));

  const std::string plot = io::plot_csv(rep, 3);
  CHECK(plot.rfind("q,ratio,", 0) == 0);
  CHECK(std::count(plot.begin(), plot.end(), '\n') == 8);
  CHECK(plot.find("mu_49/16") != std::string::npos);
}

TEST_CASE("ambiguous reports carry contenders and null fields") {
  std::vector<HKSample> samples{{0, 1, 1}, {1, 2, 12}, {2, 4, 49}};
  auto j = io::report_json(snap_classify(samples, 4, 2, true));
  CHECK(j["status"] == "ambiguous");
  CHECK(j["hkm"].is_null());
  CHECK(j["chosen"].is_null());
  CHECK(j["contenders"].size() == 2);
}

TEST_CASE("sample cache") {
  const auto path = temp_file("cache.jsonl");
  {
    io::SampleCache cache(path);
    CHECK_FALSE(cache.lookup("GF(2)", "x", 4).has_value());
    cache.store("GF(2)", "x", {2, 4, 16});
    cache.store("GF(2)", "x", {2, 4, 16});
  }
  io::SampleCache reopened(path);
  auto hit = reopened.lookup("GF(2)", "x", 4);
  REQUIRE(hit.has_value());
  CHECK(*hit == HKSample{2, 4, 16});
  CHECK_FALSE(reopened.lookup("GF(3)", "x", 4).has_value());
  std::ifstream in(path);
  std::string a, b;
  std::getline(in, a);
  CHECK_FALSE(std::getline(in, b));

  std::ofstream(path, std::ios::app) << "{not json\n";
  CHECK_THROWS_AS(io::SampleCache{path}, ParseError);
  std::filesystem::remove(path);
}

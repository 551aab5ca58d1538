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
#include <sstream>

#include "doctest.h"
#include "hk/cli.hpp"
#include "json.hpp"

using hk::cli::run;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result hk_run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::size_t lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

const std::string kG1 = "x^2*y^2+z^4+x*y*z^2+(x^3+y^3)*z";

}  // namespace

TEST_CASE("compute writes one CSV row per sample") {
  auto r = hk_run({"compute", "--field", "GF(2)", "--poly", kG1, "--nmax", "5", "--quiet"});
  CHECK(r.code == 0);
  CHECK(lines(r.out) == 7);
  CHECK(r.out.rfind("n,q,colength\n", 0) == 0);

  auto line = hk_run({"compute", "--field", "GF(5)", "--poly", "x", "--nmax", "3", "--quiet"});
  CHECK(line.out == "n,q,colength\n0,1,1\n1,5,25\n2,25,625\n3,125,15625\n");
}

TEST_CASE("compute with the oracle cross-check") {
  auto r = hk_run({"compute", "--field", "GF(2)", "--poly", kG1, "--nmax", "4", "--oracle"});
  CHECK(r.code == 0);
  CHECK(r.err.find("oracle agrees at q=8") != std::string::npos);
}

TEST_CASE("input errors exit with 2") {
  CHECK(hk_run({"compute", "--field", "GF(2)", "--poly", "x^2+y^3"}).code == 2);
  CHECK(hk_run({"compute", "--field", "GF(2)", "--poly", "x+*y"}).code == 2);
  CHECK(hk_run({"compute", "--field", "GF(6)", "--poly", "x"}).code == 2);
  CHECK(hk_run({"compute", "--field", "GF(2)", "--poly", "x", "--nmax", "0"}).code == 2);
  CHECK(hk_run({"compute", "--field", "GF(2)", "--poly", "x", "--threads", "0"}).code == 2);
  CHECK(hk_run({"classify", "--field", "GF(2)", "--poly", "x"}).code == 2);
  CHECK(hk_run({"family", "bogus"}).code == 2);
  CHECK(hk_run({"frobnicate"}).code == 2);
  CHECK(hk_run({}).code == 2);
  auto e = hk_run({"compute", "--field", "GF(2)", "--poly", "x^2+y^3"});
  CHECK(e.err.find("inhomogeneous") != std::string::npos);
}

TEST_CASE("resource limits exit with 3") {
  auto r = hk_run({"compute", "--field", "GF(2)", "--poly", kG1, "--nmax", "5", "--max-q", "8", "--quiet"});
  CHECK(r.code == 3);
  CHECK(r.err.find("4 samples finished") != std::string::npos);
}

TEST_CASE("classify reports") {
  auto r = hk_run({"classify", "--field", "GF(5)", "--poly", "y^2*z - x^3 - x^2*z", "--nmax", "3", "--quiet"});
  CHECK(r.code == 0);
  CHECK(r.out.find("NotSemistable") != std::string::npos);
  CHECK(r.out.find("HKM:       7/3") != std::string::npos);

  std::vector<std::string> args{"classify", "--field", "GF(5)", "--poly", "y^2*z - x^3 - x^2*z",
                                "--nmax", "3", "--quiet", "--json", "-", "--no-timestamp"};
  auto a = hk_run(args);
  auto b = hk_run(args);
  CHECK(a.out == b.out);
  auto j = nlohmann::json::parse(a.out);
  CHECK(j["hkm"]["num"] == 7);
  CHECK(j["hkm"]["den"] == 3);
  CHECK(j["chosen"]["l"] == 1);
  CHECK(j["smooth"] == false);
  CHECK_FALSE(j.contains("generated_at"));

  auto stamped = hk_run({"classify", "--field", "GF(5)", "--poly", "y^2*z - x^3 - x^2*z", "--nmax", "3", "--quiet",
                         "--json", "-"});
  CHECK(nlohmann::json::parse(stamped.out).contains("generated_at"));
}

TEST_CASE("classify at insufficient depth is ambiguous") {
  auto r = hk_run({"classify", "--field", "GF(2)", "--poly", kG1, "--nmax", "2", "--quiet"});
  CHECK(r.code == 0);
  CHECK(r.out.find("ambiguous") != std::string::npos);
  CHECK(lines(r.out) >= 4);
}

TEST_CASE("classify writes plot and summary files") {
  const auto dir = std::filesystem::temp_directory_path();
  const auto plot = (dir / "hk_cli_plot.csv").string();
  const auto summary = (dir / "hk_cli_summary.csv").string();
  const auto report = (dir / "hk_cli_report.json").string();
  auto r = hk_run({"classify", "--field", "GF(3)", "--poly", "z^4 - x*y*(x+y)*(x+2*y)", "--nmax", "4", "--quiet",
                   "--plot", plot, "--summary-csv", summary, "--json", report, "--id", "f2"});
  CHECK(r.code == 0);
  std::ifstream p(plot), s(summary), j(report);
  std::stringstream ps, ss;
  ps << p.rdbuf();
  ss << s.rdbuf();
  CHECK(lines(ps.str()) == 5);
  CHECK(ss.str().find("\"f2\",4,3,4,exact,SemistableNotStrongly,1,4,28/9") != std::string::npos);
  CHECK(nlohmann::json::parse(j)["curve"] == "f2");
  for (const auto& f : {plot, summary, report}) std::filesystem::remove(f);
}

TEST_CASE("family sweeps") {
  auto three = hk_run({"family", "monsky3", "--k", "1", "--nmax", "4", "--quiet"});
  CHECK(three.code == 0);
  CHECK(three.out == "param,m-or-d,predicted,measured,agree\n\"2\",1,28/9,28/9,true\n");

  auto two = hk_run({"family", "monsky2", "--k", "1", "--nmax", "7", "--quiet"});
  CHECK(two.out.find("\"1\",2,49/16,49/16,true") != std::string::npos);

  auto shallow = hk_run({"family", "monsky2", "--k", "1", "--nmax", "2", "--quiet"});
  CHECK(shallow.code == 0);
  CHECK(shallow.out.find(",ambiguous") != std::string::npos);

  auto sing = hk_run({"family", "singular(4,3)", "--field", "GF(5)", "--nmax", "3", "--quiet"});
  CHECK(sing.out.find("13/4,13/4,true") != std::string::npos);
}

TEST_CASE("smoothcheck") {
  CHECK(hk_run({"smoothcheck", "--field", "GF(2)", "--poly", kG1}).out == "true\n");
  CHECK(hk_run({"smoothcheck", "--field", "GF(5)", "--poly", "y^2*z-x^3-x^2*z"}).out == "false\n");
}

TEST_CASE("an extended cached run equals a fresh run") {
  const auto cache = (std::filesystem::temp_directory_path() / "hk_cli_cache.jsonl").string();
  std::filesystem::remove(cache);
  const std::vector<std::string> base{"compute", "--field", "GF(3)", "--poly", "z^4 - x*y*(x+y)*(x+2*y)", "--quiet"};
  auto with = [&](std::vector<std::string> extra) {
    auto args = base;
    args.insert(args.end(), extra.begin(), extra.end());
    return hk_run(args).out;
  };
  with({"--nmax", "2", "--cache", cache});
  const auto extended = with({"--nmax", "4", "--cache", cache});
  CHECK(extended == with({"--nmax", "4"}));
  CHECK(with({"--nmax", "4", "--cache", cache}) == extended);
  std::filesystem::remove(cache);
}

TEST_CASE("help exits cleanly") {
  auto r = hk_run({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("compute") != std::string::npos);
}

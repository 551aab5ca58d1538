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

#include "hk/cli.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <regex>
#include <sstream>

#include "CLI11.hpp"
#include "hk/classify.hpp"
#include "hk/engine.hpp"
#include "hk/error.hpp"
#include "hk/families.hpp"
#include "hk/io.hpp"

namespace hk::cli {

namespace {

struct RunConfig {
  std::string field = "GF(2)";
  std::string poly;
  unsigned n_max = 3;
  bool oracle = false;
  std::string smooth = "auto";
  bool irreducible = false;
  std::string slack = "1";
  std::optional<unsigned> s_cut;
  unsigned threads = 0;
  std::uint64_t max_q = 0;
  std::string strategy = "auto";
  std::string csv_path;
  std::string json_path;
  std::string plot_path;
  std::string summary_path;
  std::string cache_path;
  std::string id;
  bool no_timestamp = false;
  bool quiet = false;
  // family
  std::string family;
  unsigned k = 1;
  unsigned d = 3;
  unsigned r = 2;
};

class VerificationFailure : public Error {
 public:
  using Error::Error;
};

Rational parse_rational(const std::string& s) {
  try {
    const auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(Integer(s));
    return Rational(Integer(s.substr(0, slash)), Integer(s.substr(slash + 1)));
  } catch (const std::exception&) {
    throw ParseError("malformed rational '" + s + "'");
  }
}

std::optional<bool> parse_smooth(const std::string& s) {
  if (s == "auto") return std::nullopt;
  if (s == "true" || s == "yes") return true;
  if (s == "false" || s == "no") return false;
  throw ParseError("--smooth takes true, false or auto");
}

BlockStrategy parse_strategy(const std::string& s) {
  if (s == "auto") return BlockStrategy::Auto;
  if (s == "dense") return BlockStrategy::Dense;
  if (s == "reduced") return BlockStrategy::Reduced;
  throw ParseError("--strategy takes auto, dense or reduced");
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw ResourceError("cannot write " + path);
  f << text;
}

std::string timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream s;
  s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return s.str();
}

EngineOptions engine_options(const RunConfig& cfg, std::ostream& err) {
  EngineOptions opts;
  opts.threads = cfg.threads;
  opts.max_q = cfg.max_q;
  opts.strategy = parse_strategy(cfg.strategy);
  if (!cfg.quiet)
    opts.on_progress = [&err](const Progress& p) {
      if (p.blocks_done == p.blocks_total) err << "  n=" << p.n << " q=" << p.q << ": " << p.blocks_total << " blocks\n";
    };
  return opts;
}

// Samples n = 0..n_max, reusing and extending the cache when one is given.
std::vector<HKSample> compute_samples(const PlaneCurve& curve, const RunConfig& cfg, std::ostream& err) {
  const EngineOptions opts = engine_options(cfg, err);
  std::optional<io::SampleCache> cache;
  if (!cfg.cache_path.empty()) cache.emplace(cfg.cache_path);
  const std::string field = curve.equation().gf().spec();
  const std::string poly = curve.equation().str();
  std::vector<HKSample> out;
  std::uint64_t q = 1;
  for (unsigned n = 0; n <= cfg.n_max; ++n, q *= curve.characteristic()) {
    if (cache)
      if (auto hit = cache->lookup(field, poly, q)) {
        out.push_back(*hit);
        continue;
      }
    try {
      out.push_back(colength(curve.equation(), q, opts));
    } catch (const ResourceError& e) {
      throw SequenceError(e.what(), out);
    }
    if (cache) cache->store(field, poly, out.back());
  }
  return out;
}

void oracle_check(const HomogeneousPoly& f, const std::vector<HKSample>& samples, std::ostream& err) {
  const std::uint64_t cutoff = oracle_cutoff(f.gf().characteristic());
  for (const auto& s : samples) {
    if (s.q > cutoff) continue;
    const HKSample naive = colength_naive(f, s.q);
    if (naive.colength != s.colength)
      throw VerificationFailure("oracle mismatch at q = " + std::to_string(s.q) + ": graded " +
                                std::to_string(s.colength) + ", naive " + std::to_string(naive.colength));
    err << "  oracle agrees at q=" << s.q << '\n';
  }
}

PlaneCurve curve_from(const RunConfig& cfg) {
  if (cfg.poly.empty()) throw ParseError("--poly is required");
  auto field = gf::parse_field(cfg.field);
  return PlaneCurve(parse_poly(cfg.poly, field), cfg.irreducible);
}

int cmd_compute(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto field = gf::parse_field(cfg.field);
  const HomogeneousPoly f = parse_poly(cfg.poly, field);
  // Degree-1 input is allowed here: it only feeds the HK function.
  std::vector<HKSample> samples;
  if (f.degree() >= 2) {
    samples = compute_samples(PlaneCurve(f), cfg, err);
  } else {
    const EngineOptions opts = engine_options(cfg, err);
    std::uint64_t q = 1;
    for (unsigned n = 0; n <= cfg.n_max; ++n, q *= field->characteristic()) samples.push_back(colength(f, q, opts));
  }
  if (cfg.oracle) oracle_check(f, samples, err);
  write_text(cfg.csv_path, io::samples_csv(samples), out);
  if (!cfg.json_path.empty()) {
    io::json j{{"field", field->spec()}, {"poly", f.str()}, {"samples", io::samples_json(samples)}};
    write_text(cfg.json_path, j.dump(2) + "\n", out);
  }
  return kOk;
}

HKReport classify_curve(const PlaneCurve& curve, const RunConfig& cfg, std::ostream& err) {
  std::optional<bool> smooth = parse_smooth(cfg.smooth);
  if (!smooth) smooth = smooth_check(curve);
  const auto samples = compute_samples(curve, cfg, err);
  if (cfg.oracle) oracle_check(curve.equation(), samples, err);
  ClassifyOptions copts;
  copts.slack = parse_rational(cfg.slack);
  copts.curve_id = cfg.id.empty() ? curve.equation().str() : cfg.id;
  copts.irreducible_asserted = cfg.irreducible;
  copts.s_cut = cfg.s_cut;
  return snap_classify(samples, curve.degree(), curve.characteristic(), smooth, copts);
}

int cmd_classify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const PlaneCurve curve = curve_from(cfg);
  const HKReport rep = classify_curve(curve, cfg, err);
  io::json j = io::report_json(rep);
  j["field"] = curve.equation().gf().spec();
  j["poly"] = curve.equation().str();
  if (!cfg.no_timestamp) j["generated_at"] = timestamp();
  if (cfg.json_path == "-") {
    out << j.dump(2) << '\n';
  } else {
    out << io::report_summary(rep);
    if (!cfg.json_path.empty()) write_text(cfg.json_path, j.dump(2) + "\n", out);
  }
  if (!cfg.plot_path.empty()) write_text(cfg.plot_path, io::plot_csv(rep), out);
  if (!cfg.summary_path.empty())
    write_text(cfg.summary_path, io::report_csv_header() + "\n" + io::report_csv_row(rep) + "\n", out);
  return kOk;
}

int cmd_smoothcheck(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  out << (smooth_check(curve_from(cfg)) ? "true" : "false") << '\n';
  return kOk;
}

int cmd_family(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::vector<std::pair<std::string, FamilyPrediction>> rows;
  unsigned d = cfg.d, r = cfg.r;
  std::string name = cfg.family;
  std::smatch m;
  static const std::regex with_args(R"(singular\(\s*(\d+)\s*,\s*(\d+)\s*\))");
  if (std::regex_match(cfg.family, m, with_args)) {
    name = "singular";
    d = static_cast<unsigned>(std::stoul(m[1]));
    r = static_cast<unsigned>(std::stoul(m[2]));
  }
  if (name == "monsky2" || name == "monsky3") {
    const bool two = name == "monsky2";
    const auto field = gf::Field::make(two ? 2 : 3, cfg.k);
    const std::vector<gf::Code> skip = two ? std::vector<gf::Code>{0} : std::vector<gf::Code>{0, 1};
    for (const auto& e : orbit_representatives(field, skip)) {
      const std::string label = field->degree() == 1 ? e.str() : "[" + e.str() + "]";
      rows.emplace_back(label, two ? monsky_char2(e) : monsky_char3(e));
    }
  } else if (name == "singular") {
    const auto field = gf::parse_field(cfg.field);
    rows.emplace_back("d=" + std::to_string(d) + " r=" + std::to_string(r), singular_family(field, d, r));
  } else {
    throw ParseError("unknown family '" + cfg.family + "' (expected monsky2, monsky3, singular or singular(d,r))");
  }
  std::ostringstream csv;
  csv << "param,m-or-d,predicted,measured,agree\n";
  bool disagreement = false;
  for (const auto& [param, pred] : rows) {
    if (!cfg.quiet) err << cfg.family << " " << param << ": " << pred.curve.equation().str() << '\n';
    RunConfig local = cfg;
    local.irreducible = true;
    local.id = param;
    const HKReport rep = classify_curve(pred.curve, local, err);
    std::string measured = rep.hkm ? to_string(*rep.hkm) : "~" + to_decimal(rep.estimate, 8);
    std::string agree = "ambiguous";
    if (rep.status == ReportStatus::Exact) {
      const bool ok = *rep.hkm == pred.predicted_hkm;
      agree = ok ? "true" : "false";
      disagreement |= !ok;
    }
    csv << '"' << param << "\"," << pred.orbit_degree << ',' << to_string(pred.predicted_hkm) << ',' << measured << ','
        << agree << '\n';
  }
  write_text(cfg.csv_path, csv.str(), out);
  return disagreement ? kVerificationFailure : kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Hilbert-Kunz functions and multiplicities of plane curves over finite fields", "hk"};
  app.require_subcommand(1);

  auto add_curve_opts = [&cfg](CLI::App* sub) {
    sub->add_option("--field", cfg.field, "GF(p), GF(p^k) or GF(p^k; modulus=c_k,...,c_0)");
    sub->add_option("--poly", cfg.poly, "homogeneous polynomial in x, y, z")->required();
  };
  auto add_engine_opts = [&cfg](CLI::App* sub) {
    sub->add_option("--nmax", cfg.n_max, "largest Frobenius iterate n (q = p^n)")->check(CLI::Range(1u, 40u));
    sub->add_option("--threads", cfg.threads, "worker threads (default: HK_THREADS or all cores)")
        ->check(CLI::Range(1u, 1024u));
    sub->add_option("--max-q", cfg.max_q, "refuse q above this bound");
    sub->add_option("--strategy", cfg.strategy, "block rank strategy: auto, dense or reduced");
    sub->add_option("--cache", cfg.cache_path, "JSON-lines colength cache");
    sub->add_flag("--oracle", cfg.oracle, "cross-check small q against the ungraded oracle");
    sub->add_flag("--quiet", cfg.quiet, "no progress output");
  };
  auto add_classify_opts = [&cfg](CLI::App* sub) {
    sub->add_option("--smooth", cfg.smooth, "true, false or auto (run the smoothness check)");
    sub->add_option("--slack", cfg.slack, "slack constant K of the error radius");
    sub->add_option("--s-cut", cfg.s_cut, "deepest Frobenius pullback considered (default: nmax)");
  };

  auto* compute = app.add_subcommand("compute", "HK function samples as CSV");
  add_curve_opts(compute);
  add_engine_opts(compute);
  compute->add_option("--csv", cfg.csv_path, "CSV output path (default stdout)");
  compute->add_option("--json", cfg.json_path, "JSON output path");

  auto* classify = app.add_subcommand("classify", "exact HKM and stability case");
  add_curve_opts(classify);
  add_engine_opts(classify);
  add_classify_opts(classify);
  classify->add_flag("--irreducible", cfg.irreducible, "assert that the curve is irreducible");
  classify->add_option("--json", cfg.json_path, "JSON report path ('-' prints it instead of the summary)");
  classify->add_option("--plot", cfg.plot_path, "plot data CSV path");
  classify->add_option("--summary-csv", cfg.summary_path, "one-row CSV summary path");
  classify->add_option("--id", cfg.id, "curve identifier used in reports");
  classify->add_flag("--no-timestamp", cfg.no_timestamp, "omit generated_at from the JSON report");

  auto* family = app.add_subcommand("family", "predicted versus measured values for a curve family");
  family->add_option("name", cfg.family, "monsky2, monsky3, singular or singular(d,r)")->required();
  add_engine_opts(family);
  add_classify_opts(family);
  family->add_option("--k", cfg.k, "extension degree of the parameter field")->check(CLI::Range(1u, 16u));
  family->add_option("--field", cfg.field, "field for the singular family");
  family->add_option("--d", cfg.d, "degree for the singular family");
  family->add_option("--r", cfg.r, "multiplicity for the singular family");
  family->add_option("--csv", cfg.csv_path, "sweep CSV path (default stdout)");

  auto* smooth = app.add_subcommand("smoothcheck", "certify that a curve is nonsingular");
  add_curve_opts(smooth);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "hk: " << e.what() << '\n';
    return kInputError;
  }

  try {
    if (*compute) return cmd_compute(cfg, out, err);
    if (*classify) return cmd_classify(cfg, out, err);
    if (*family) return cmd_family(cfg, out, err);
    if (*smooth) return cmd_smoothcheck(cfg, out, err);
  } catch (const ParseError& e) {
    err << "hk: " << e.what() << '\n';
    return kInputError;
  } catch (const DomainError& e) {
    err << "hk: " << e.what() << '\n';
    return kInputError;
  } catch (const SequenceError& e) {
    err << "hk: " << e.what() << " (" << e.partial().size() << " samples finished)\n";
    if (!e.partial().empty()) err << io::samples_csv(e.partial());
    return kResourceError;
  } catch (const ResourceError& e) {
    err << "hk: " << e.what() << '\n';
    return kResourceError;
  } catch (const VerificationFailure& e) {
    err << "hk: " << e.what() << '\n';
    return kVerificationFailure;
  }
  return kInputError;
}

}  // namespace hk::cli

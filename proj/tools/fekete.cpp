// Copyright 2026 The feketelab Authors
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

// Command-line front end.  Five subcommands:
//
//   reproduce <construction>   canonical check bundle for one construction
//   verify                     subadditivity scan over a family and band
//   modulus                    modulus-of-convexity search on a space
//   limit                      growth / direction diagnostics for a family
//   spectral                   matrix spectral-radius demo via norm roots
//
// Exit codes: 0 success, 1 a checked property failed, 2 usage or parse
// error, 3 runtime failure (generator, file I/O).  All output is
// deterministic for a fixed flag set; JSON floats use 17 significant
// digits so byte comparison is meaningful.

#include <cstdio>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "fekete/fekete.hpp"
#include "json.hpp"

namespace {

using fekete::Index;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitRuntime = 3;

enum class Format { Json, Csv, Human };

Format parse_format(const std::string& text) {
  if (text == "json") return Format::Json;
  if (text == "csv") return Format::Csv;
  if (text == "human") return Format::Human;
  throw fekete::ParseError("unknown format '" + text + "' (expected json, csv, or human)");
}

// One shared config shape for every subcommand; unknown keys are rejected
// and explicit command-line flags always win over file values.
struct RunConfig {
  std::optional<std::string> command;
  std::optional<std::string> family;
  std::optional<std::string> band;
  std::optional<std::string> space;
  std::optional<std::string> matrix;
  std::optional<Index> max_sum;
  std::optional<Index> n_cap;  // the "N" key
  std::optional<double> tolerance;
  std::optional<double> eps;
  std::optional<std::vector<double>> eps_grid;
  std::optional<Index> samples;
  std::optional<std::uint64_t> seed;
  std::optional<double> window;
  std::optional<Index> threads;
  std::optional<bool> expect_violation;
  std::optional<bool> criterion;
  std::optional<std::string> output;
  std::optional<std::string> format;

  bool operator==(const RunConfig&) const = default;
};

RunConfig config_from_json(const nlohmann::ordered_json& j) {
  if (!j.is_object()) throw fekete::ParseError("config: top level must be a JSON object");
  RunConfig c;
  for (const auto& [key, value] : j.items()) {
    try {
      if (key == "command") c.command = value.get<std::string>();
      else if (key == "family") c.family = value.get<std::string>();
      else if (key == "band") c.band = value.get<std::string>();
      else if (key == "space") c.space = value.get<std::string>();
      else if (key == "matrix") c.matrix = value.get<std::string>();
      else if (key == "max_sum") c.max_sum = value.get<Index>();
      else if (key == "N") c.n_cap = value.get<Index>();
      else if (key == "tolerance") c.tolerance = value.get<double>();
      else if (key == "eps") c.eps = value.get<double>();
      else if (key == "eps_grid") c.eps_grid = value.get<std::vector<double>>();
      else if (key == "samples") c.samples = value.get<Index>();
      else if (key == "seed") c.seed = value.get<std::uint64_t>();
      else if (key == "window") c.window = value.get<double>();
      else if (key == "threads") c.threads = value.get<Index>();
      else if (key == "expect_violation") c.expect_violation = value.get<bool>();
      else if (key == "criterion") c.criterion = value.get<bool>();
      else if (key == "output") c.output = value.get<std::string>();
      else if (key == "format") c.format = value.get<std::string>();
      else throw fekete::ParseError("config: unknown key '" + key + "'");
    } catch (const nlohmann::json::exception& e) {
      throw fekete::ParseError("config: bad value for key '" + key + "': " + e.what());
    }
  }
  return c;
}

nlohmann::ordered_json config_to_json(const RunConfig& c) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  if (c.command) j["command"] = *c.command;
  if (c.family) j["family"] = *c.family;
  if (c.band) j["band"] = *c.band;
  if (c.space) j["space"] = *c.space;
  if (c.matrix) j["matrix"] = *c.matrix;
  if (c.max_sum) j["max_sum"] = *c.max_sum;
  if (c.n_cap) j["N"] = *c.n_cap;
  if (c.tolerance) j["tolerance"] = *c.tolerance;
  if (c.eps) j["eps"] = *c.eps;
  if (c.eps_grid) j["eps_grid"] = *c.eps_grid;
  if (c.samples) j["samples"] = *c.samples;
  if (c.seed) j["seed"] = *c.seed;
  if (c.window) j["window"] = *c.window;
  if (c.threads) j["threads"] = *c.threads;
  if (c.expect_violation) j["expect_violation"] = *c.expect_violation;
  if (c.criterion) j["criterion"] = *c.criterion;
  if (c.output) j["output"] = *c.output;
  if (c.format) j["format"] = *c.format;
  return j;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw fekete::ParseError("cannot open config file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(buf.str());
  } catch (const nlohmann::json::exception& e) {
    throw fekete::ParseError(std::string("config: ") + e.what());
  }
  return config_from_json(j);
}

void emit(const std::string& text, const std::optional<std::string>& path) {
  if (path) {
    std::ofstream out(*path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + *path);
    out << text << '\n';
    if (!out) throw std::runtime_error("write failed: " + *path);
  } else {
    std::fputs(text.c_str(), stdout);
    std::fputc('\n', stdout);
  }
}

// Holds the per-subcommand flag targets plus which ones the user actually
// typed, so config-file values can fill only the untyped ones.
struct CommonFlags {
  std::string config_path;
  std::string format_text = "human";
  std::string output;
  bool print_config = false;
  CLI::App* sub = nullptr;

  void attach(CLI::App* s) {
    sub = s;
    s->add_option("--config", config_path, "JSON config file; explicit flags win");
    s->add_option("--format", format_text, "output format: json, csv, human");
    s->add_option("--output", output, "write the report here instead of stdout");
    s->add_flag("--print-config", print_config,
                "print the effective config as JSON and exit");
  }

  bool given(const std::string& flag) const { return sub->count(flag) > 0; }

  // Fill from the config file wherever the command line stayed silent.
  void merge(const RunConfig& c, const std::string& command) {
    if (c.command && *c.command != command)
      throw fekete::ParseError("config: command '" + *c.command +
                               "' does not match subcommand '" + command + "'");
    if (!given("--format") && c.format) format_text = *c.format;
    if (!given("--output") && c.output) output = *c.output;
  }

  Format format() const { return parse_format(format_text); }
  std::optional<std::string> output_path() const {
    return output.empty() ? std::nullopt : std::optional<std::string>(output);
  }
};

int finish_config_print(const RunConfig& effective, const CommonFlags& common) {
  emit(config_to_json(effective).dump(), common.output_path());
  return kExitOk;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyArgs {
  std::string family;
  std::string band = "full";
  Index max_sum = 1000;
  double tolerance = 1e-12;
  Index threads = 0;
  bool expect_violation = false;
  CommonFlags common;
};

int run_verify(VerifyArgs& a) {
  if (!a.common.config_path.empty()) {
    RunConfig c = load_config(a.common.config_path);
    a.common.merge(c, "verify");
    if (!a.common.given("--family") && c.family) a.family = *c.family;
    if (!a.common.given("--band") && c.band) a.band = *c.band;
    if (!a.common.given("--max-sum") && c.max_sum) a.max_sum = *c.max_sum;
    if (!a.common.given("--tolerance") && c.tolerance) a.tolerance = *c.tolerance;
    if (!a.common.given("--threads") && c.threads) a.threads = *c.threads;
    if (!a.common.given("--expect-violation") && c.expect_violation)
      a.expect_violation = *c.expect_violation;
  }
  if (a.family.empty()) throw fekete::ParseError("verify: --family is required");
  if (a.common.print_config) {
    RunConfig e;
    e.command = "verify";
    e.family = a.family;
    e.band = a.band;
    e.max_sum = a.max_sum;
    e.tolerance = a.tolerance;
    if (a.threads > 0) e.threads = a.threads;
    if (a.expect_violation) e.expect_violation = true;
    e.format = a.common.format_text;
    if (auto p = a.common.output_path()) e.output = *p;
    return finish_config_print(e, a.common);
  }

  fekete::AnyFamily fam = fekete::parse_family(a.family);
  fekete::ConstraintBand band = fekete::ConstraintBand::parse(a.band);
  fekete::ScanOptions opts;
  opts.threads = a.threads > 0 ? static_cast<std::size_t>(a.threads) : 0;
  opts.stop_at_first = a.expect_violation;
  fekete::SubadditivityReport rep = std::visit(
      [&](const auto& f) {
        return fekete::check_subadditivity(f, band, a.max_sum, a.tolerance, opts);
      },
      fam);

  std::string text;
  switch (a.common.format()) {
    case Format::Json: text = fekete::to_json(rep); break;
    case Format::Csv: text = fekete::to_csv(rep); break;
    case Format::Human: text = fekete::to_human(rep); break;
  }
  emit(text, a.common.output_path());

  bool found = !rep.violations.empty();
  if (a.expect_violation) return found ? kExitOk : kExitViolation;
  return found ? kExitViolation : kExitOk;
}

// ---------------------------------------------------------------------------
// modulus

struct ModulusArgs {
  std::string space;
  double eps = 1.0;
  Index samples = 2000;
  std::uint64_t seed = 0;
  CommonFlags common;
};

int run_modulus(ModulusArgs& a) {
  if (!a.common.config_path.empty()) {
    RunConfig c = load_config(a.common.config_path);
    a.common.merge(c, "modulus");
    if (!a.common.given("--space") && c.space) a.space = *c.space;
    if (!a.common.given("--eps") && c.eps) a.eps = *c.eps;
    if (!a.common.given("--samples") && c.samples) a.samples = *c.samples;
    if (!a.common.given("--seed") && c.seed) a.seed = *c.seed;
  }
  if (a.space.empty()) throw fekete::ParseError("modulus: --space is required");
  if (a.common.print_config) {
    RunConfig e;
    e.command = "modulus";
    e.space = a.space;
    e.eps = a.eps;
    e.samples = a.samples;
    e.seed = a.seed;
    e.format = a.common.format_text;
    if (auto p = a.common.output_path()) e.output = *p;
    return finish_config_print(e, a.common);
  }
  if (a.samples < 1) throw fekete::OutOfRange("modulus: --samples must be >= 1");

  fekete::SpaceSpec spec = fekete::SpaceSpec::parse(a.space);
  fekete::ConvexityEstimate est = fekete::modulus_of_convexity(
      spec, a.eps, static_cast<std::size_t>(a.samples), a.seed);

  fekete::ModulusReport rep;
  rep.space = spec.to_string();
  rep.epsilon = a.eps;
  rep.budget = static_cast<std::size_t>(a.samples);
  rep.seed = a.seed;
  rep.estimate = est;
  bool hilbert = spec.kind() == fekete::SpaceKind::Euclidean ||
                 (spec.kind() == fekete::SpaceKind::LpSequence && spec.p() == 2.0);
  if (hilbert) rep.reference = fekete::hilbert_modulus_closed_form(a.eps);

  std::string text;
  switch (a.common.format()) {
    case Format::Json: text = fekete::to_json(rep); break;
    case Format::Csv: text = fekete::to_csv(rep); break;
    case Format::Human: text = fekete::to_human(rep); break;
  }
  emit(text, a.common.output_path());
  return kExitOk;
}

// ---------------------------------------------------------------------------
// limit

struct LimitArgs {
  std::string family;
  Index n_cap = 200;
  double window = 4.0;
  bool criterion = false;
  std::vector<double> eps_grid;
  CommonFlags common;
};

int run_limit(LimitArgs& a) {
  if (!a.common.config_path.empty()) {
    RunConfig c = load_config(a.common.config_path);
    a.common.merge(c, "limit");
    if (!a.common.given("--family") && c.family) a.family = *c.family;
    if (!a.common.given("--N") && c.n_cap) a.n_cap = *c.n_cap;
    if (!a.common.given("--window") && c.window) a.window = *c.window;
    if (!a.common.given("--criterion") && c.criterion) a.criterion = *c.criterion;
    if (!a.common.given("--eps-grid") && c.eps_grid) a.eps_grid = *c.eps_grid;
  }
  if (a.family.empty()) throw fekete::ParseError("limit: --family is required");
  if (a.eps_grid.empty()) a.eps_grid = {0.25, 0.5, 1.0};
  if (a.common.print_config) {
    RunConfig e;
    e.command = "limit";
    e.family = a.family;
    e.n_cap = a.n_cap;
    if (a.criterion) {
      e.criterion = true;
      e.eps_grid = a.eps_grid;
    } else {
      e.window = a.window;
    }
    e.format = a.common.format_text;
    if (auto p = a.common.output_path()) e.output = *p;
    return finish_config_print(e, a.common);
  }

  fekete::AnyFamily fam = fekete::parse_family(a.family);
  std::string text;
  if (a.criterion) {
    fekete::CriterionReport rep = std::visit(
        [&](const auto& f) {
          return fekete::criterion_check(f, a.n_cap,
                                         std::span<const double>(a.eps_grid));
        },
        fam);
    switch (a.common.format()) {
      case Format::Json: text = fekete::to_json(rep); break;
      case Format::Csv: text = fekete::to_csv(rep); break;
      case Format::Human: text = fekete::to_human(rep); break;
    }
  } else {
    fekete::LimitDiagnostics d = std::visit(
        [&](const auto& f) { return fekete::limit_diagnostics(f, a.n_cap, a.window); },
        fam);
    switch (a.common.format()) {
      case Format::Json: text = fekete::to_json(d); break;
      case Format::Csv: text = fekete::to_csv(d); break;
      case Format::Human: text = fekete::to_human(d); break;
    }
  }
  emit(text, a.common.output_path());
  return kExitOk;
}

// ---------------------------------------------------------------------------
// spectral

struct SpectralArgs {
  std::string matrix;
  Index n_cap = 32;
  double tolerance = 1e-9;
  CommonFlags common;
};

int run_spectral(SpectralArgs& a) {
  if (!a.common.config_path.empty()) {
    RunConfig c = load_config(a.common.config_path);
    a.common.merge(c, "spectral");
    if (!a.common.given("--matrix") && c.matrix) a.matrix = *c.matrix;
    if (!a.common.given("--N") && c.n_cap) a.n_cap = *c.n_cap;
    if (!a.common.given("--tolerance") && c.tolerance) a.tolerance = *c.tolerance;
  }
  if (a.matrix.empty()) throw fekete::ParseError("spectral: --matrix is required");
  if (a.common.print_config) {
    RunConfig e;
    e.command = "spectral";
    e.matrix = a.matrix;
    e.n_cap = a.n_cap;
    e.tolerance = a.tolerance;
    e.format = a.common.format_text;
    if (auto p = a.common.output_path()) e.output = *p;
    return finish_config_print(e, a.common);
  }

  fekete::Matrix m = fekete::Matrix::read_csv(a.matrix);
  fekete::SpectralDemoResult r = fekete::spectral_radius_demo(m, a.n_cap, a.tolerance);

  std::string text;
  switch (a.common.format()) {
    case Format::Json: text = fekete::to_json(r, a.matrix, a.n_cap); break;
    case Format::Csv: text = fekete::to_csv(r); break;
    case Format::Human: text = fekete::to_human(r, a.matrix); break;
  }
  emit(text, a.common.output_path());
  return r.submult_violations.empty() ? kExitOk : kExitViolation;
}

// ---------------------------------------------------------------------------
// reproduce

struct CheckLine {
  std::string name;
  bool passed = false;
  std::vector<std::pair<std::string, double>> metrics;
};

struct Bundle {
  std::string example;
  std::vector<CheckLine> checks;

  void add(std::string name, bool passed,
           std::vector<std::pair<std::string, double>> metrics = {}) {
    checks.push_back({std::move(name), passed, std::move(metrics)});
  }
  bool passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
};

std::string bundle_json(const Bundle& b) {
  fekete::JsonWriter w;
  w.begin_object();
  w.key("example");
  w.value(b.example);
  w.key("passed");
  w.value(b.passed());
  w.key("checks");
  w.begin_array();
  for (const auto& c : b.checks) {
    w.begin_object();
    w.key("name");
    w.value(c.name);
    w.key("passed");
    w.value(c.passed);
    w.key("metrics");
    w.begin_object();
    for (const auto& [k, v] : c.metrics) {
      w.key(k);
      w.value(v);
    }
    w.end_object();
    w.end_object();
  }
  w.end_array();
  w.end_object();
  return w.take();
}

std::string bundle_csv(const Bundle& b) {
  std::ostringstream out;
  out << "check,passed,metric,value\n";
  for (const auto& c : b.checks) {
    if (c.metrics.empty()) {
      out << c.name << ',' << (c.passed ? 1 : 0) << ",,\n";
      continue;
    }
    for (const auto& [k, v] : c.metrics)
      out << c.name << ',' << (c.passed ? 1 : 0) << ',' << k << ','
          << fekete::format_double(v) << '\n';
  }
  out << "overall," << (b.passed() ? 1 : 0) << ",,";
  return out.str();
}

std::string bundle_human(const Bundle& b) {
  std::ostringstream out;
  out << "reproduce " << b.example << "\n"
      << "  construction:  " << fekete::construction_label(b.example) << "\n";
  for (const auto& c : b.checks) {
    out << (c.passed ? "  [PASS] " : "  [FAIL] ") << c.name;
    for (const auto& [k, v] : c.metrics) out << "  " << k << '=' << fekete::format_double(v);
    out << '\n';
  }
  out << "overall: " << (b.passed() ? "PASS" : "FAIL");
  return out.str();
}

Bundle reproduce_spiral2d(const fekete::ScanOptions& opts) {
  Bundle b{"spiral2d", {}};

  fekete::SubadditivityReport rep = fekete::check_subadditivity(
      fekete::spiral_family(), fekete::ConstraintBand::ratio(0.5, 2.0), 2000, 1e-12, opts);
  b.add("band-subadditivity", rep.violations.empty(),
        {{"pairs", static_cast<double>(rep.pairs_checked)},
         {"violations", static_cast<double>(rep.violations.size())}});

  double worst_rn = fekete::kInf;
  for (Index n = 1; n <= 2000; ++n)
    for (Index m = n; m <= 2 * n; ++m)
      worst_rn = std::min(worst_rn, fekete::rn_inequality_check(n, m).margin);
  b.add("radius-inequality", worst_rn >= 0.0, {{"worst_margin", worst_rn}});

  double worst_lo = fekete::kInf, worst_hi = fekete::kInf;
  for (Index n = 1; n <= 100000; ++n) {
    fekete::ThetaBound t = fekete::theta_bound_check(n);
    worst_lo = std::min(worst_lo, t.lower_margin);
    worst_hi = std::min(worst_hi, t.upper_margin);
  }
  b.add("angle-increment-bound", worst_lo >= 0.0 && worst_hi >= 0.0,
        {{"worst_lower", worst_lo}, {"worst_upper", worst_hi}});

  // theta_{2^k} = (k ln 2)^{1/4} / 100, strictly increasing in k.
  double worst_err = 0.0;
  bool monotone = true;
  double prev = fekete::spiral_angle(1);
  for (Index k = 1; k <= 60; ++k) {
    double theta = fekete::spiral_angle(Index{1} << k);
    double closed = std::pow(static_cast<double>(k) * std::numbers::ln2, 0.25) / 100.0;
    worst_err = std::max(worst_err, std::abs(theta - closed));
    if (theta <= prev) monotone = false;
    prev = theta;
  }
  b.add("dyadic-angle-closed-form", worst_err <= 1e-12 && monotone,
        {{"worst_error", worst_err}, {"monotone", monotone ? 1.0 : 0.0}});

  bool chain_ok = true;
  for (Index n = 1; n <= 500 && chain_ok; ++n)
    for (Index m = n; m <= 2 * n; ++m)
      if (!fekete::spiral_cosine_chain_check(n, m).ok) {
        chain_ok = false;
        break;
      }
  b.add("cosine-chain", chain_ok);
  return b;
}

Bundle reproduce_scaled_basis(const fekete::ScanOptions& opts) {
  Bundle b{"scaled-basis", {}};
  fekete::TailFamily fam = fekete::scaled_basis_family();

  fekete::SubadditivityReport rep = fekete::check_subadditivity(
      fam, fekete::ConstraintBand::full(), 300, 1e-12, opts);
  b.add("full-subadditivity", rep.violations.empty(),
        {{"pairs", static_cast<double>(rep.pairs_checked)},
         {"violations", static_cast<double>(rep.violations.size())}});

  // ||n e_n|| = n (1 + 4^{-n}) in the perturbed-l1 norm.
  double worst = 0.0;
  for (Index n = 1; n <= 40; ++n) {
    double got = fekete::norm(fam.space, fam.generate(n));
    double want = static_cast<double>(n) * (1.0 + std::pow(4.0, -static_cast<double>(n)));
    worst = std::max(worst, std::abs(got - want) / want);
  }
  b.add("norm-closed-form", worst <= 1e-12, {{"worst_relative_error", worst}});

  fekete::LimitDiagnostics d = fekete::limit_diagnostics(fam, 200);
  b.add("direction-divergence",
        d.verdict == fekete::LimitVerdict::DivergenceEvidence,
        {{"growth_inf", d.growth_rate.inf},
         {"direction_gap_max", d.direction_gap_max}});
  return b;
}

Bundle reproduce_uc_witness(const fekete::ScanOptions&) {
  Bundle b{"uc-witness", {}};
  fekete::SpaceSpec space = fekete::SpaceSpec::nested_pair_l2();

  double worst_unit = 0.0, worst_pair = 0.0;
  for (Index k = 1; k <= 50; ++k) {
    auto [v, w] = fekete::uc_witness_pair(k);
    double target = std::exp2(1.0 - 1.0 / (static_cast<double>(k) + 1.0));
    worst_unit = std::max(worst_unit, std::abs(fekete::norm(space, v) - 1.0));
    worst_unit = std::max(worst_unit, std::abs(fekete::norm(space, w) - 1.0));
    worst_pair = std::max(worst_pair, std::abs(fekete::norm(space, v + w) - target));
    worst_pair = std::max(worst_pair, std::abs(fekete::norm(space, v - w) - target));
  }
  b.add("unit-norms", worst_unit <= 1e-12, {{"worst_error", worst_unit}});
  b.add("pair-sum-identity", worst_pair <= 1e-12, {{"worst_error", worst_pair}});

  // The probe on {v_k, w_k : k <= 50} cannot report a modulus above the
  // closed-form ceiling 2 - 2^{1 - 1/51} forced by the deepest pair.
  std::vector<fekete::TailVector> points;
  for (Index k = 1; k <= 50; ++k) {
    auto [v, w] = fekete::uc_witness_pair(k);
    points.push_back(v);
    points.push_back(w);
  }
  fekete::ConvexityEstimate est =
      fekete::subset_uniform_convexity_probe(points, space, 1.0);
  double ceiling = 2.0 - std::exp2(1.0 - 1.0 / 51.0);
  b.add("subset-probe-ceiling", est.delta_hat <= ceiling + 1e-12,
        {{"delta_hat", est.delta_hat}, {"ceiling", ceiling}});
  return b;
}

Bundle reproduce_incomplete(const fekete::ScanOptions& opts) {
  Bundle b{"incomplete", {}};
  fekete::TailFamily fam = fekete::incomplete_family();

  fekete::SubadditivityReport rep = fekete::check_subadditivity(
      fam, fekete::ConstraintBand::full(), 512, 1e-9, opts);
  b.add("full-subadditivity", rep.violations.empty(),
        {{"pairs", static_cast<double>(rep.pairs_checked)},
         {"violations", static_cast<double>(rep.violations.size())}});

  // Coordinate m of v_n equals c_n 2^{-2^m}; relative to c_n the pattern
  // is exactly the declared coordinate limit of v_n / n.
  double worst = 0.0;
  for (Index n : {Index{1}, Index{2}, Index{7}, Index{32}, Index{100}, Index{400}}) {
    fekete::TailVector v = fekete::incomplete_space_seq(n);
    double cn = fekete::incomplete_coeff(n);
    for (Index m = 1; m <= std::min(n, Index{10}); ++m) {
      double want = cn * std::pow(2.0, -std::pow(2.0, static_cast<double>(m)));
      double got = v.coord(m);
      if (want != 0.0) worst = std::max(worst, std::abs(got - want) / std::abs(want));
    }
  }
  b.add("coordinate-closed-form", worst <= 1e-12, {{"worst_relative_error", worst}});

  // c_n / n = 1 + 10 / lnln(10n), strictly decreasing toward 1.
  bool decreasing = true;
  double prev_ratio = fekete::kInf;
  double worst_ratio = 0.0;
  for (Index n = 1; n <= 2000; ++n) {
    double ratio = fekete::incomplete_coeff(n) / static_cast<double>(n);
    double want = 1.0 + 10.0 / std::log(std::log(10.0 * static_cast<double>(n)));
    worst_ratio = std::max(worst_ratio, std::abs(ratio - want) / want);
    if (ratio >= prev_ratio) decreasing = false;
    prev_ratio = ratio;
  }
  b.add("coefficient-ratio", worst_ratio <= 1e-12 && decreasing,
        {{"worst_relative_error", worst_ratio}});
  return b;
}

Bundle reproduce_nonconvex_alt(const fekete::ScanOptions& opts) {
  Bundle b{"nonconvex-alt", {}};
  fekete::FiniteFamily fam = fekete::nonconvex_family();

  // The alternating family achieves ||v_n + v_m|| = ||v_{n+m}|| everywhere.
  double worst = 0.0;
  std::vector<fekete::FiniteVector> cache;
  for (Index n = 1; n <= 200; ++n) cache.push_back(fam.generate(n));
  for (Index n = 1; n <= 199; ++n)
    for (Index m = n; n + m <= 200; ++m) {
      double lhs = fekete::norm(fam.space, cache[static_cast<std::size_t>(n + m - 1)]);
      double rhs = fekete::norm(fam.space, cache[static_cast<std::size_t>(n - 1)] +
                                               cache[static_cast<std::size_t>(m - 1)]);
      worst = std::max(worst, std::abs(lhs - rhs));
    }
  b.add("pair-equality", worst <= 1e-12, {{"worst_error", worst}});

  fekete::SubadditivityReport rep = fekete::check_subadditivity(
      fam, fekete::ConstraintBand::full(), 300, 1e-12, opts);
  b.add("full-subadditivity", rep.violations.empty(),
        {{"pairs", static_cast<double>(rep.pairs_checked)},
         {"violations", static_cast<double>(rep.violations.size())}});
  return b;
}

struct ReproduceArgs {
  std::string example;
  Index threads = 0;
  CommonFlags common;
};

int run_reproduce(ReproduceArgs& a) {
  if (!a.common.config_path.empty()) {
    RunConfig c = load_config(a.common.config_path);
    a.common.merge(c, "reproduce");
    if (!a.common.given("--threads") && c.threads) a.threads = *c.threads;
    if (a.example.empty() && c.family) a.example = *c.family;
  }
  if (a.example.empty()) throw fekete::ParseError("reproduce: construction id is required");
  if (a.common.print_config) {
    RunConfig e;
    e.command = "reproduce";
    e.family = a.example;
    if (a.threads > 0) e.threads = a.threads;
    e.format = a.common.format_text;
    if (auto p = a.common.output_path()) e.output = *p;
    return finish_config_print(e, a.common);
  }

  fekete::ScanOptions opts;
  opts.threads = a.threads > 0 ? static_cast<std::size_t>(a.threads) : 0;

  Bundle b;
  if (a.example == "spiral2d") b = reproduce_spiral2d(opts);
  else if (a.example == "scaled-basis") b = reproduce_scaled_basis(opts);
  else if (a.example == "uc-witness") b = reproduce_uc_witness(opts);
  else if (a.example == "incomplete") b = reproduce_incomplete(opts);
  else if (a.example == "nonconvex-alt") b = reproduce_nonconvex_alt(opts);
  else
    throw fekete::ParseError("reproduce: unknown construction '" + a.example +
                             "' (expected spiral2d, scaled-basis, uc-witness, "
                             "incomplete, or nonconvex-alt)");

  std::string text;
  switch (a.common.format()) {
    case Format::Json: text = bundle_json(b); break;
    case Format::Csv: text = bundle_csv(b); break;
    case Format::Human: text = bundle_human(b); break;
  }
  emit(text, a.common.output_path());
  return b.passed() ? kExitOk : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for vector-valued subadditive sequences"};
  app.require_subcommand(1);

  ReproduceArgs rep_args;
  CLI::App* rep = app.add_subcommand(
      "reproduce", "run the canonical check bundle for one construction");
  rep->add_option("construction", rep_args.example,
                  "one of: spiral2d, scaled-basis, uc-witness, incomplete, nonconvex-alt");
  rep->add_option("--threads", rep_args.threads, "worker threads for scans (0 = auto)");
  rep_args.common.attach(rep);

  VerifyArgs ver_args;
  CLI::App* ver = app.add_subcommand("verify", "scan subadditivity over a family and band");
  ver->add_option("--family", ver_args.family,
                  "family spec, e.g. spiral2d or linear:bound=1,seed=7");
  ver->add_option("--band", ver_args.band, "index band: full or ratio:<lo>:<hi>");
  ver->add_option("--max-sum", ver_args.max_sum, "scan all pairs with n + m <= this");
  ver->add_option("--tolerance", ver_args.tolerance, "violation slack");
  ver->add_option("--threads", ver_args.threads, "worker threads (0 = auto)");
  ver->add_flag("--expect-violation", ver_args.expect_violation,
                "stop at the first violation; succeed only if one exists");
  ver_args.common.attach(ver);

  ModulusArgs mod_args;
  CLI::App* mod = app.add_subcommand("modulus", "estimate a modulus of convexity");
  mod->add_option("--space", mod_args.space,
                  "space spec, e.g. euclidean:3, lp:1.5, nested-pair-l2");
  mod->add_option("--eps", mod_args.eps, "separation threshold in (0, 2]");
  mod->add_option("--samples", mod_args.samples, "search budget");
  mod->add_option("--seed", mod_args.seed, "random seed");
  mod_args.common.attach(mod);

  LimitArgs lim_args;
  CLI::App* lim = app.add_subcommand("limit", "growth and direction diagnostics");
  lim->add_option("--family", lim_args.family, "family spec");
  lim->add_option("--N", lim_args.n_cap, "deepest index to scan");
  lim->add_option("--window", lim_args.window, "pair window ratio for the gap scan");
  lim->add_flag("--criterion", lim_args.criterion,
                "run the convergence-criterion probe instead of plain diagnostics");
  lim->add_option("--eps-grid", lim_args.eps_grid,
                  "epsilon grid for --criterion (comma separated)")
      ->delimiter(',');
  lim_args.common.attach(lim);

  SpectralArgs spec_args;
  CLI::App* spec = app.add_subcommand("spectral", "spectral radius via norm roots");
  spec->add_option("--matrix", spec_args.matrix, "CSV matrix file, row-major, no header");
  spec->add_option("--N", spec_args.n_cap, "highest power to take");
  spec->add_option("--tolerance", spec_args.tolerance,
                   "slack for the log-norm subadditivity check");
  spec_args.common.attach(spec);

  int rc = kExitOk;
  rep->callback([&] { rc = run_reproduce(rep_args); });
  ver->callback([&] { rc = run_verify(ver_args); });
  mod->callback([&] { rc = run_modulus(mod_args); });
  lim->callback([&] { rc = run_limit(lim_args); });
  spec->callback([&] { rc = run_spectral(spec_args); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const fekete::ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const fekete::GeneratorFailure& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitRuntime;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitRuntime;
  }
  return rc;
}

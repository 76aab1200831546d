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

/** \file
    Report serialization: JSON, CSV, and human-readable text.

    The JSON writer is deliberately hand-rolled: reports must be byte
    identical across runs and machines, so every float goes through one
    fixed 17-significant-digit formatter and key order is fixed by the
    serializer code, with no library in between.  Timing is never part of
    JSON or CSV output (it cannot be reproducible); human text may show it.
*/

#ifndef FEKETE_REPORT_HPP
#define FEKETE_REPORT_HPP

#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "fekete/analysis.hpp"
#include "fekete/matrix.hpp"
#include "fekete/numeric.hpp"
#include "fekete/spaces.hpp"
#include "fekete/verify.hpp"

namespace fekete {

class JsonWriter {
 public:
  JsonWriter& begin_object() { return open('{', '['); }
  JsonWriter& end_object() { return close('}'); }
  JsonWriter& begin_array() { return open('[', '['); }
  JsonWriter& end_array() { return close(']'); }

  JsonWriter& key(std::string_view k) {
    comma();
    out_ += '"';
    escape(k);
    out_ += "\":";
    key_pending_ = true;
    return *this;
  }

  JsonWriter& value(double x) {
    lead();
    if (std::isfinite(x)) out_ += format_double(x);
    else out_ += "null";  // JSON has no inf/nan
    return *this;
  }
  JsonWriter& value(Index x) {
    lead();
    out_ += std::to_string(x);
    return *this;
  }
  JsonWriter& value(std::uint64_t x) {
    lead();
    out_ += std::to_string(x);
    return *this;
  }
  JsonWriter& value(int x) { return value(static_cast<Index>(x)); }
  JsonWriter& value(bool b) {
    lead();
    out_ += b ? "true" : "false";
    return *this;
  }
  JsonWriter& value(std::string_view s) {
    lead();
    out_ += '"';
    escape(s);
    out_ += '"';
    return *this;
  }
  JsonWriter& value(const char* s) { return value(std::string_view(s)); }
  JsonWriter& null() {
    lead();
    out_ += "null";
    return *this;
  }

  std::string take() { return std::move(out_); }

 private:
  JsonWriter& open(char c, char) {
    lead();
    out_ += c;
    counts_.push_back(0);
    return *this;
  }
  JsonWriter& close(char c) {
    out_ += c;
    counts_.pop_back();
    bump();
    return *this;
  }
  void comma() {
    if (!counts_.empty() && counts_.back() > 0) out_ += ',';
  }
  void lead() {
    if (key_pending_) {
      key_pending_ = false;
      bump();
      return;
    }
    comma();
    bump();
  }
  void bump() {
    if (!counts_.empty()) ++counts_.back();
  }
  void escape(std::string_view s) {
    for (char ch : s) {
      switch (ch) {
        case '"': out_ += "\\\""; break;
        case '\\': out_ += "\\\\"; break;
        case '\n': out_ += "\\n"; break;
        case '\r': out_ += "\\r"; break;
        case '\t': out_ += "\\t"; break;
        default:
          if (static_cast<unsigned char>(ch) < 0x20) {
            char buf[8];
            std::snprintf(buf, sizeof(buf), "\\u%04x", static_cast<unsigned>(ch));
            out_ += buf;
          } else {
            out_ += ch;
          }
      }
    }
  }

  std::string out_;
  std::vector<std::size_t> counts_;
  bool key_pending_ = false;
};

// One-line description of what a family constructs, shown in human output.
inline std::string construction_label(std::string_view family_name) {
  std::string head(family_name.substr(0, family_name.find(':')));
  if (head == "spiral2d")
    return "planar spiral r_n = n + n/sqrt(ln(n+1)), theta_n = (ln n)^(1/4)/100";
  if (head == "spiral2d-general")
    return "planar spiral r_n = n + n (ln n)^(-delta), theta_n = (ln n)^delta, from n = 3";
  if (head == "scaled-basis")
    return "v_n = n e_n in the perturbed-l1 space (strictly convex, not uniformly)";
  if (head == "uc-witness")
    return "interleaved unit pairs (e_{2k-1} +/- e_{2k})/2^(1/(k+1)) in the nested-pair space";
  if (head == "incomplete")
    return "coordinates c_n/2^(2^m) in the finite-support space, c_n = n(1 + 10/lnln(10n))";
  if (head == "nonconvex-alt")
    return "alternating directions n*u, n*v in l1 (norm-subadditive with equality)";
  if (head == "linear")
    return "n*w plus a seeded perturbation of bounded norm (limit exists by construction)";
  if (head == "scalar") return "user-supplied scalar sequence";
  return "user-supplied family";
}

// ---------------------------------------------------------------------------
// Subadditivity reports
// ---------------------------------------------------------------------------

inline void write_violations_json(JsonWriter& w, const std::vector<Violation>& violations) {
  w.begin_array();
  for (const Violation& v : violations) {
    w.begin_object();
    w.key("n").value(v.n);
    w.key("m").value(v.m);
    w.key("lhs").value(v.lhs);
    w.key("rhs").value(v.rhs);
    w.key("margin").value(v.margin);
    w.end_object();
  }
  w.end_array();
}

inline std::string to_json(const SubadditivityReport& r) {
  JsonWriter w;
  w.begin_object();
  w.key("family").value(r.family);
  w.key("band").value(r.band);
  w.key("max_sum").value(r.max_sum);
  w.key("tolerance").value(r.tolerance);
  w.key("pairs_checked").value(r.pairs_checked);
  w.key("violations");
  write_violations_json(w, r.violations);
  w.end_object();
  return w.take();
}

inline std::string violations_csv(const std::vector<Violation>& violations) {
  std::string out = "n,m,lhs,rhs,margin\n";
  for (const Violation& v : violations) {
    out += std::to_string(v.n) + "," + std::to_string(v.m) + "," + format_double(v.lhs) + "," +
           format_double(v.rhs) + "," + format_double(v.margin) + "\n";
  }
  return out;
}

inline std::string to_csv(const SubadditivityReport& r) { return violations_csv(r.violations); }

inline std::string to_human(const SubadditivityReport& r) {
  std::ostringstream o;
  o << "subadditivity check\n"
    << "  family:        " << r.family << "\n"
    << "  construction:  " << construction_label(r.family) << "\n"
    << "  band:          " << r.band << "\n"
    << "  max n+m:       " << r.max_sum << "\n"
    << "  tolerance:     " << format_double(r.tolerance) << "\n"
    << "  pairs checked: " << r.pairs_checked << "\n"
    << "  violations:    " << r.violations.size() << (r.truncated ? " (scan stopped early)" : "")
    << "\n"
    << "  wall time:     " << format_double(r.wall_ms) << " ms\n";
  for (std::size_t i = 0; i < r.violations.size() && i < 10; ++i) {
    const Violation& v = r.violations[i];
    o << "    (" << v.n << ", " << v.m << "): |v[n+m]| = " << format_double(v.lhs)
      << " > |v[n]+v[m]| = " << format_double(v.rhs) << " by " << format_double(v.margin) << "\n";
  }
  if (r.violations.size() > 10)
    o << "    ... " << (r.violations.size() - 10) << " more\n";
  o << "  result:        " << (r.violations.empty() ? "PASS (no violations)" : "FAIL") << "\n";
  return o.str();
}

// ---------------------------------------------------------------------------
// Modulus reports
// ---------------------------------------------------------------------------

struct ModulusReport {
  std::string space;
  double epsilon = 0.0;
  std::size_t budget = 0;
  std::uint64_t seed = 0;
  ConvexityEstimate estimate;
  // Closed-form modulus when the space admits one (Euclidean), as reference.
  std::optional<double> reference;
};

inline void write_vector_json(JsonWriter& w, const FiniteVector& v) {
  w.begin_array();
  for (Index i = 1; i <= v.size(); ++i) w.value(v.coord(i));
  w.end_array();
}

inline std::string to_json(const ModulusReport& r) {
  JsonWriter w;
  w.begin_object();
  w.key("space").value(r.space);
  w.key("epsilon").value(r.epsilon);
  w.key("samples").value(r.budget);
  w.key("seed").value(r.seed);
  w.key("delta_hat").value(r.estimate.delta_hat);
  w.key("gamma").value(r.estimate.gamma);
  w.key("reference_delta");
  if (r.reference) w.value(*r.reference);
  else w.null();
  w.key("witness_u");
  if (r.estimate.witness) write_vector_json(w, r.estimate.witness->first);
  else w.null();
  w.key("witness_v");
  if (r.estimate.witness) write_vector_json(w, r.estimate.witness->second);
  else w.null();
  w.end_object();
  return w.take();
}

inline std::string to_csv(const ModulusReport& r) {
  std::string out = "key,value\n";
  out += "space," + r.space + "\n";
  out += "epsilon," + format_double(r.epsilon) + "\n";
  out += "samples," + std::to_string(r.budget) + "\n";
  out += "seed," + std::to_string(r.seed) + "\n";
  out += "delta_hat," + format_double(r.estimate.delta_hat) + "\n";
  out += "gamma," + format_double(r.estimate.gamma) + "\n";
  if (r.reference) out += "reference_delta," + format_double(*r.reference) + "\n";
  return out;
}

inline std::string to_human(const ModulusReport& r) {
  std::ostringstream o;
  o << "convexity modulus search (upper bound via sampled witnesses)\n"
    << "  space:       " << r.space << "\n"
    << "  epsilon:     " << format_double(r.epsilon) << "\n"
    << "  samples:     " << r.budget << "\n"
    << "  seed:        " << r.seed << "\n"
    << "  delta_hat:   " << format_double(r.estimate.delta_hat) << "\n"
    << "  gamma:       " << format_double(r.estimate.gamma) << "\n";
  if (r.reference)
    o << "  closed form: " << format_double(*r.reference)
      << " (search gap " << format_double(r.estimate.delta_hat - *r.reference) << ")\n";
  if (r.estimate.witness) {
    o << "  witness gap and sum norms are available in the JSON report\n";
  }
  return o.str();
}

// ---------------------------------------------------------------------------
// Limit diagnostics
// ---------------------------------------------------------------------------

inline std::string to_json(const LimitDiagnostics& d) {
  JsonWriter w;
  w.begin_object();
  w.key("family").value(d.family);
  w.key("N").value(d.N);
  w.key("window").value(d.window);
  w.key("growth_inf").value(d.growth_rate.inf);
  w.key("growth_trailing").value(d.growth_rate.trailing);
  w.key("direction_gap_max").value(d.direction_gap_max);
  w.key("gap_argmax");
  if (d.gap_argmax) {
    w.begin_array().value(d.gap_argmax->first).value(d.gap_argmax->second).end_array();
  } else {
    w.null();
  }
  w.key("dyadic_gaps").begin_array();
  for (const auto& g : d.dyadic_gaps) {
    if (g) w.value(*g);
    else w.null();
  }
  w.end_array();
  w.key("limit_estimate").begin_array();
  for (const auto& [i, x] : d.limit_estimate)
    w.begin_array().value(i).value(x).end_array();
  w.end_array();
  w.key("skipped_zero_indices").begin_array();
  for (Index i : d.skipped_zero_indices) w.value(i);
  w.end_array();
  w.key("verdict").value(to_string(d.verdict));
  w.end_object();
  return w.take();
}

inline std::string to_csv(const LimitDiagnostics& d) {
  std::string out = "key,value\n";
  out += "family," + d.family + "\n";
  out += "N," + std::to_string(d.N) + "\n";
  out += "window," + format_double(d.window) + "\n";
  out += "growth_inf," + format_double(d.growth_rate.inf) + "\n";
  out += "growth_trailing," + format_double(d.growth_rate.trailing) + "\n";
  out += "direction_gap_max," + format_double(d.direction_gap_max) + "\n";
  for (std::size_t j = 0; j < d.dyadic_gaps.size(); ++j)
    out += "dyadic_gap_" + std::to_string(j) + "," +
           (d.dyadic_gaps[j] ? format_double(*d.dyadic_gaps[j]) : std::string("")) + "\n";
  out += "verdict," + std::string(to_string(d.verdict)) + "\n";
  return out;
}

inline std::string to_human(const LimitDiagnostics& d) {
  std::ostringstream o;
  o << "limit diagnostics for v_n / n\n"
    << "  family:            " << d.family << "\n"
    << "  construction:      " << construction_label(d.family) << "\n"
    << "  depth N:           " << d.N << "\n"
    << "  growth inf:        " << format_double(d.growth_rate.inf)
    << "  (trailing " << format_double(d.growth_rate.trailing) << ")\n"
    << "  max direction gap: " << format_double(d.direction_gap_max);
  if (d.gap_argmax) o << " at (" << d.gap_argmax->first << ", " << d.gap_argmax->second << ")";
  o << " over m <= " << format_double(d.window) << "n\n"
    << "  dyadic window gaps (newest first):";
  for (const auto& g : d.dyadic_gaps) o << " " << (g ? format_double(*g) : "-");
  o << "\n";
  if (!d.skipped_zero_indices.empty())
    o << "  zero-norm indices skipped: " << d.skipped_zero_indices.size() << "\n";
  o << "  verdict:           " << to_string(d.verdict)
    << "  (cutoffs: converge < " << format_double(kConvergenceGapCut) << ", diverge > "
    << format_double(kDivergenceGapCut) << " across three windows; evidence, not proof)\n";
  return o.str();
}

// ---------------------------------------------------------------------------
// Criterion reports
// ---------------------------------------------------------------------------

inline std::string to_json(const CriterionReport& r) {
  JsonWriter w;
  w.begin_object();
  w.key("family").value(r.family);
  w.key("N").value(r.N);
  w.key("eps_grid").begin_array();
  for (double e : r.eps_grid) w.value(e);
  w.end_array();
  w.key("growth_inf").value(r.growth_inf);
  w.key("growth_trailing").value(r.growth_trailing);
  w.key("prefix_pairs").value(r.prefix_pairs);
  w.key("prefix_violations").value(r.prefix_violations);
  w.key("zero_indices").begin_array();
  for (Index i : r.zero_indices) w.value(i);
  w.end_array();
  w.key("profile").begin_array();
  for (const ConvexityEstimate& est : r.profile) {
    w.begin_object();
    w.key("epsilon").value(est.epsilon);
    w.key("delta_hat").value(est.delta_hat);
    w.key("gamma").value(est.gamma);
    w.key("eligible_pairs").value(est.samples);
    w.key("witness_source");
    if (est.witness_source) {
      w.begin_array()
          .value(static_cast<std::uint64_t>(est.witness_source->first))
          .value(static_cast<std::uint64_t>(est.witness_source->second))
          .end_array();
    } else {
      w.null();
    }
    w.end_object();
  }
  w.end_array();
  w.key("verdict").value(to_string(r.verdict));
  w.key("note").value(r.note);
  w.end_object();
  return w.take();
}

inline std::string to_csv(const CriterionReport& r) {
  std::string out = "epsilon,delta_hat,gamma,eligible_pairs\n";
  for (const ConvexityEstimate& est : r.profile)
    out += format_double(est.epsilon) + "," + format_double(est.delta_hat) + "," +
           format_double(est.gamma) + "," + std::to_string(est.samples) + "\n";
  return out;
}

inline std::string to_human(const CriterionReport& r) {
  std::ostringstream o;
  o << "convergence criterion probe (growth rate + normalized-direction convexity)\n"
    << "  family:        " << r.family << "\n"
    << "  construction:  " << construction_label(r.family) << "\n"
    << "  depth N:       " << r.N << "\n"
    << "  growth inf:    " << format_double(r.growth_inf)
    << "  (trailing " << format_double(r.growth_trailing) << ")\n"
    << "  prefix scan:   " << r.prefix_pairs << " pairs, " << r.prefix_violations
    << " violation(s)\n";
  if (!r.zero_indices.empty()) o << "  zero vectors:  " << r.zero_indices.size() << " indices\n";
  for (const ConvexityEstimate& est : r.profile)
    o << "    eps " << format_double(est.epsilon) << ": delta_hat "
      << format_double(est.delta_hat) << " over " << est.samples << " eligible pairs\n";
  o << "  verdict:       " << to_string(r.verdict) << "\n"
    << "  note:          " << r.note << "\n";
  return o.str();
}

// ---------------------------------------------------------------------------
// Inductive bound traces
// ---------------------------------------------------------------------------

inline std::string to_json(const BoundTrace& t) {
  JsonWriter w;
  w.begin_object();
  w.key("family").value(t.family);
  w.key("n").value(t.n);
  w.key("m").value(t.m);
  w.key("gamma").value(t.gamma);
  w.key("epsilon");
  if (t.epsilon) w.value(*t.epsilon);
  else w.null();
  w.key("k").value(t.k);
  w.key("rows").begin_array();
  for (const BoundTraceRow& row : t.rows) {
    w.begin_object();
    w.key("r").value(row.r);
    w.key("index").value(row.index);
    w.key("actual").value(row.actual);
    w.key("bound").value(row.bound);
    w.key("slack").value(row.slack);
    w.key("direction_gap");
    if (row.direction_gap) w.value(*row.direction_gap);
    else w.null();
    w.key("hypothesis_ok");
    if (row.hypothesis_ok) w.value(*row.hypothesis_ok);
    else w.null();
    w.end_object();
  }
  w.end_array();
  w.end_object();
  return w.take();
}

inline std::string to_csv(const BoundTrace& t) {
  std::string out = "r,index,actual,bound,slack,direction_gap,hypothesis_ok\n";
  for (const BoundTraceRow& row : t.rows) {
    out += std::to_string(row.r) + "," + std::to_string(row.index) + "," +
           format_double(row.actual) + "," + format_double(row.bound) + "," +
           format_double(row.slack) + ",";
    out += row.direction_gap ? format_double(*row.direction_gap) : std::string("");
    out += ",";
    out += row.hypothesis_ok ? (*row.hypothesis_ok ? "true" : "false") : "";
    out += "\n";
  }
  return out;
}

inline std::string to_human(const BoundTrace& t) {
  std::ostringstream o;
  o << "inductive bound chain |v[r n + m]| <= |v[m]| + r gamma |v[n]|\n"
    << "  family: " << t.family << "  base (n, m) = (" << t.n << ", " << t.m << ")"
    << "  gamma = " << format_double(t.gamma) << "  k = " << t.k << "\n";
  for (const BoundTraceRow& row : t.rows) {
    o << "    r=" << row.r << "  index=" << row.index << "  actual=" << format_double(row.actual)
      << "  bound=" << format_double(row.bound) << "  slack=" << format_double(row.slack);
    if (row.hypothesis_ok) o << (*row.hypothesis_ok ? "  [hypothesis ok]" : "  [hypothesis NOT met]");
    o << "\n";
  }
  return o.str();
}

// ---------------------------------------------------------------------------
// Spectral demo reports
// ---------------------------------------------------------------------------

inline std::string to_json(const SpectralDemoResult& r, const std::string& matrix_label, Index n_max) {
  JsonWriter w;
  w.begin_object();
  w.key("matrix").value(matrix_label);
  w.key("N").value(n_max);
  w.key("radius_estimate").value(r.radius_estimate);
  w.key("nilpotent_at");
  if (r.nilpotent_at) w.value(*r.nilpotent_at);
  else w.null();
  w.key("submult_tolerance").value(r.submult_tolerance);
  w.key("submult_violations");
  write_violations_json(w, r.submult_violations);
  w.key("terms").begin_array();
  for (std::size_t i = 0; i < r.terms.size(); ++i) {
    const SpectralTerm& t = r.terms[i];
    w.begin_object();
    w.key("n").value(t.n);
    w.key("norm").value(t.norm);
    w.key("root").value(t.root);
    w.key("running_inf").value(r.running_inf[i]);
    w.end_object();
  }
  w.end_array();
  w.end_object();
  return w.take();
}

inline std::string to_csv(const SpectralDemoResult& r) {
  std::string out = "n,norm,root,running_inf\n";
  for (std::size_t i = 0; i < r.terms.size(); ++i)
    out += std::to_string(r.terms[i].n) + "," + format_double(r.terms[i].norm) + "," +
           format_double(r.terms[i].root) + "," + format_double(r.running_inf[i]) + "\n";
  return out;
}

inline std::string to_human(const SpectralDemoResult& r, const std::string& matrix_label) {
  std::ostringstream o;
  o << "spectral radius via root norms |A^n|^(1/n) (running infimum converges)\n"
    << "  matrix:          " << matrix_label << "\n"
    << "  terms:           " << r.terms.size() << "\n"
    << "  radius estimate: " << format_double(r.radius_estimate) << "\n";
  if (r.nilpotent_at) o << "  powers vanish at: n = " << *r.nilpotent_at << "\n";
  o << "  log-norm submultiplicativity violations: " << r.submult_violations.size() << " (tol "
    << format_double(r.submult_tolerance) << ")\n";
  std::size_t show = std::min<std::size_t>(r.terms.size(), 8);
  for (std::size_t i = 0; i < show; ++i)
    o << "    n=" << r.terms[i].n << "  |A^n|=" << format_double(r.terms[i].norm)
      << "  root=" << format_double(r.terms[i].root)
      << "  inf=" << format_double(r.running_inf[i]) << "\n";
  if (r.terms.size() > show) {
    std::size_t last = r.terms.size() - 1;
    o << "    ...\n"
      << "    n=" << r.terms[last].n << "  |A^n|=" << format_double(r.terms[last].norm)
      << "  root=" << format_double(r.terms[last].root)
      << "  inf=" << format_double(r.running_inf[last]) << "\n";
  }
  return o.str();
}

}  // namespace fekete

#endif

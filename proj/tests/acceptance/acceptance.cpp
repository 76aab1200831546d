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

// End-to-end acceptance gate.  Each check prints exactly one [PASS]/[FAIL]
// line; the process exits nonzero if any check fails.  Everything here is
// deterministic: fixed seeds, fixed depths, fixed tolerances.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fekete/fekete.hpp"

namespace {

using namespace fekete;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int g_failures = 0;

void report(bool ok, const char* name, const std::string& detail) {
  std::printf("[%s] %s (%s)\n", ok ? "PASS" : "FAIL", name, detail.c_str());
  if (!ok) ++g_failures;
}

// Monte Carlo check of the convexity-improved triangle inequality
// ||u+v|| <= ||u|| + gamma ||v||, gamma = 1 - delta(eps)/2, on seeded random
// Euclidean pairs whose unit directions are at least eps apart and with
// ||v|| <= 2 ||u||.
void check_triangle_monte_carlo() {
  auto t0 = Clock::now();
  const int pairs_per_combo = 100000;
  long long bad = 0;
  long long total = 0;
  double worst = -kInf;
  for (Index d : {2, 3, 8}) {
    SpaceSpec spec = SpaceSpec::euclidean(d);
    for (double eps : {0.25, 0.5, 1.0}) {
      double gamma = gamma_from_delta(hilbert_modulus_closed_form(eps));
      Rng rng(static_cast<std::uint64_t>(90000 + 100 * d) +
              static_cast<std::uint64_t>(eps * 100.0));
      for (int i = 0; i < pairs_per_combo; ++i) {
        FiniteVector uhat = random_unit(spec, rng, d);
        FiniteVector vhat = random_unit(spec, rng, d);
        while (norm(spec, uhat - vhat) < eps) vhat = random_unit(spec, rng, d);
        double ru = rng.uniform(0.5, 2.0);
        double rv = rng.uniform(0.0, 2.0 * ru);
        if (rv <= 0.0) rv = 1e-9;  // the checker rejects exactly-zero vectors
        LemmaBoundReport r = check_lemma_bound(spec, ru * uhat, rv * vhat, gamma, 1e-12);
        worst = std::max(worst, r.margin);
        if (!r.satisfied || !r.hypothesis_ok) ++bad;
        ++total;
      }
    }
  }
  double dt = seconds_since(t0);
  report(bad == 0 && dt < 30.0, "improved triangle inequality, Euclidean Monte Carlo",
         std::to_string(total) + " pairs, " + std::to_string(bad) + " violations, worst margin " +
             format_double(worst) + ", " + format_double(dt) + " s");
}

// The planar spiral is subadditive on the half-to-double band, its squared
// radius inequality and angle-increment bounds hold on their stated ranges,
// and the dyadic angles match the closed form (ln 2^k)^(1/4)/100.
void check_spiral_band_and_closed_forms() {
  auto t0 = Clock::now();
  SubadditivityReport scan =
      check_subadditivity(spiral_family(), ConstraintBand::ratio(0.5, 2.0), 5000, 1e-12);
  bool scan_ok = scan.violations.empty() && scan.pairs_checked == 2085833;

  double worst_rn = kInf;
  for (Index n = 1; n <= 10000; ++n)
    for (Index m = n; m <= 2 * n; ++m) worst_rn = std::min(worst_rn, rn_inequality_check(n, m).margin);

  double worst_theta = kInf;
  for (Index n = 1; n <= 10000; ++n) {
    ThetaBound t = theta_bound_check(n);
    worst_theta = std::min({worst_theta, t.lower_margin, t.upper_margin});
  }

  bool dyadic_ok = true;
  double prev = 0.0;
  for (int k = 1; k <= 60; ++k) {
    double angle = spiral_angle(Index{1} << k);
    double closed = std::pow(static_cast<double>(k) * std::numbers::ln2, 0.25) / 100.0;
    if (std::fabs(angle - closed) > 1e-12 || !(angle > prev)) dyadic_ok = false;
    prev = angle;
  }

  report(scan_ok && worst_rn >= 0.0 && worst_theta >= 0.0 && dyadic_ok,
         "planar spiral: band subadditivity and angle closed forms",
         std::to_string(scan.pairs_checked) + " band pairs, " +
             std::to_string(scan.violations.size()) + " violations, min rn margin " +
             format_double(worst_rn) + ", min theta margin " + format_double(worst_theta) + ", " +
             format_double(seconds_since(t0)) + " s");
}

// The scaled basis sequence in the perturbed-l1 space is subadditive on the
// full triangle yet its unit directions stay maximally separated, so v_n/n
// cannot be Cauchy.
void check_scaled_basis_divergent_directions() {
  auto t0 = Clock::now();
  TailFamily fam = scaled_basis_family();
  SubadditivityReport scan =
      check_subadditivity(fam, ConstraintBand::full(), 300, 1e-12);
  bool scan_ok = scan.violations.empty() && scan.pairs_checked == 22500;

  std::vector<FiniteVector> units;
  for (Index n = 10; n <= 150; ++n) {
    TailVector v = scaled_basis(n);
    units.push_back((1.0 / norm(fam.space, v)) * materialize(v));
  }
  double min_gap = kInf;
  for (std::size_t i = 0; i < units.size(); ++i)
    for (std::size_t j = i + 1; j < units.size(); ++j)
      min_gap = std::min(min_gap, norm(fam.space, units[i] - units[j]));

  double dt = seconds_since(t0);
  report(scan_ok && min_gap >= 2.0 - 1e-6 && dt < 10.0,
         "scaled basis: subadditive with non-Cauchy directions",
         std::to_string(scan.pairs_checked) + " pairs, " +
             std::to_string(scan.violations.size()) + " violations, min direction gap " +
             format_double(min_gap) + ", " + format_double(dt) + " s");
}

// The interleaved unit pairs have exact sum and difference norms 2^(1-1/(k+1)),
// and the subset convexity probe over the first K pairs never reports a
// modulus above the ceiling 2 - 2^(1-1/(K+1)).
void check_witness_pairs_and_probe() {
  SpaceSpec space = uc_witness_family().space;
  double worst_dev = 0.0;
  for (Index k = 1; k <= 50; ++k) {
    auto [v, w] = uc_witness_pair(k);
    double want = std::exp2(1.0 - 1.0 / static_cast<double>(k + 1));
    worst_dev = std::max({worst_dev, std::fabs(norm(space, v) - 1.0),
                          std::fabs(norm(space, w) - 1.0),
                          std::fabs(norm(space, v + w) - want),
                          std::fabs(norm(space, v - w) - want)});
  }

  bool probes_ok = true;
  std::string probe_note;
  for (Index cap : {5, 20, 50}) {
    std::vector<TailVector> points;
    for (Index k = 1; k <= cap; ++k) {
      auto [v, w] = uc_witness_pair(k);
      points.push_back(v);
      points.push_back(w);
    }
    ConvexityEstimate est = subset_uniform_convexity_probe(points, space, 1.0);
    double ceiling = 2.0 - std::exp2(1.0 - 1.0 / static_cast<double>(cap + 1));
    if (est.delta_hat > ceiling + 1e-12) probes_ok = false;
    probe_note += " K=" + std::to_string(cap) + ": " + format_double(est.delta_hat);
  }

  report(worst_dev <= 1e-12 && probes_ok, "nested-pair witnesses and probe ceiling",
         "worst norm deviation " + format_double(worst_dev) + ", delta_hat" + probe_note);
}

// The finite-support sequence is subadditive on the full triangle, and the
// averaged coordinates match c_n/n times the limiting profile 2^(-2^m).
void check_finite_support_sequence() {
  SubadditivityReport scan =
      check_subadditivity(incomplete_family(), ConstraintBand::full(), 512, 1e-9);
  bool scan_ok = scan.violations.empty() && scan.pairs_checked == 65536;

  double worst_rel = 0.0;
  for (Index n : {Index{1}, Index{2}, Index{7}, Index{32}, Index{100}, Index{400}}) {
    double c = incomplete_coeff(n);
    TailVector v = incomplete_space_seq(n);
    for (Index m = 1; m <= std::min<Index>(n, 10); ++m) {
      double profile = std::ldexp(1.0, -(1 << m));  // 2^(-2^m), exact
      double avg_want = (c / static_cast<double>(n)) * profile;
      double avg_got = v.coord(m) / static_cast<double>(n);
      worst_rel = std::max(worst_rel, std::fabs(avg_got - avg_want) / avg_want);
      double limit_got = v.coord(m) / c;
      worst_rel = std::max(worst_rel, std::fabs(limit_got - profile) / profile);
    }
  }

  report(scan_ok && worst_rel <= 1e-12, "finite-support sequence: subadditivity and coordinates",
         std::to_string(scan.pairs_checked) + " pairs, " +
             std::to_string(scan.violations.size()) + " violations, worst coordinate rel err " +
             format_double(worst_rel));
}

// Scalar families that pass the band check with positive growth stabilize in
// sign; the alternating family fails the band check and never stabilizes.
void check_sign_stabilization() {
  ConstraintBand band = ConstraintBand::ratio(0.5, 2.0);
  struct Case {
    const char* label;
    std::function<double(Index)> a;
  };
  std::vector<Case> good = {
      {"n", [](Index n) { return static_cast<double>(n); }},
      {"-n", [](Index n) { return -static_cast<double>(n); }},
      {"17n", [](Index n) { return 17.0 * static_cast<double>(n); }},
      {"n+2", [](Index n) { return static_cast<double>(n) + 2.0; }},
      {"2n+1", [](Index n) { return 2.0 * static_cast<double>(n) + 1.0; }},
  };
  bool ok = true;
  std::string note;
  for (const Case& c : good) {
    SubadditivityReport scan = check_scalar_band_subadditivity(c.a, band, 400, 1e-12);
    double growth = kInf;
    for (Index n = 1; n <= 200; ++n)
      growth = std::min(growth, std::fabs(c.a(n)) / static_cast<double>(n));
    std::optional<Index> stab = sign_stabilization_check(c.a, 200);
    if (!scan.violations.empty() || !(growth > 0.0) || !stab) ok = false;
    note += std::string(" ") + c.label + "->" + (stab ? std::to_string(*stab) : "never");
  }

  auto alternating = [](Index n) {
    return (n % 2 == 0 ? 1.0 : -1.0) * static_cast<double>(n);
  };
  SubadditivityReport alt_scan = check_scalar_band_subadditivity(alternating, band, 400, 1e-12);
  std::optional<Index> alt_stab = sign_stabilization_check(alternating, 200);
  bool alt_ok = !alt_scan.violations.empty() && !alt_stab;

  auto late_switch = [](Index n) { return n < 5 ? -1.0 : 1.0; };
  std::optional<Index> late = sign_stabilization_check(late_switch, 50);
  bool late_ok = late.has_value() && *late == 5;

  report(ok && alt_ok && late_ok, "scalar band subadditivity forces sign stabilization",
         "stabilized at" + note + "; alternating: " + std::to_string(alt_scan.violations.size()) +
             " band violations, never stabilizes; switch control locks at 5");
}

// The spectral demo: diagonal, nilpotent, and swap matrices reproduce their
// radii through root norms, and log norms stay submultiplicative throughout.
void check_spectral_matrices() {
  Matrix diag(2, 2);
  diag.at(0, 0) = 2.0;
  diag.at(1, 1) = 1.0;
  SpectralDemoResult d = spectral_radius_demo(diag, 32, 1e-9);
  bool diag_ok = d.submult_violations.empty() && d.radius_estimate == 2.0;
  for (std::size_t i = 0; i < d.terms.size(); ++i)
    if (d.terms[i].root != 2.0 || d.running_inf[i] != 2.0) diag_ok = false;

  Matrix nil(2, 2);
  nil.at(0, 1) = 1.0;
  SpectralDemoResult n = spectral_radius_demo(nil, 8, 1e-9);
  bool nil_ok = n.submult_violations.empty() && n.radius_estimate == 0.0 &&
                n.nilpotent_at.has_value() && *n.nilpotent_at == 2;

  Matrix swap(2, 2);
  swap.at(0, 1) = 2.0;
  swap.at(1, 0) = 1.0;
  SpectralDemoResult s = spectral_radius_demo(swap, 64, 1e-9);
  double err = std::fabs(s.radius_estimate - std::numbers::sqrt2);
  bool swap_ok = s.submult_violations.empty() && err <= 1e-6;

  report(diag_ok && nil_ok && swap_ok, "spectral radius demo matrices",
         "diag radius " + format_double(d.radius_estimate) + ", nilpotent at n=" +
             (n.nilpotent_at ? std::to_string(*n.nilpotent_at) : std::string("?")) +
             ", swap error " + format_double(err));
}

// Reports are byte-identical across reruns and across worker counts.
void check_determinism() {
  ScanOptions serial;
  serial.threads = 1;
  ScanOptions parallel;
  parallel.threads = 4;
  std::string a = to_json(
      check_subadditivity(spiral_family(), ConstraintBand::ratio(0.5, 2.0), 2000, 1e-12, serial));
  std::string b = to_json(
      check_subadditivity(spiral_family(), ConstraintBand::ratio(0.5, 2.0), 2000, 1e-12, parallel));
  std::string c = to_json(
      check_subadditivity(spiral_family(), ConstraintBand::ratio(0.5, 2.0), 2000, 1e-12, parallel));

  auto modulus_json = [] {
    ModulusReport r;
    r.space = "lp:1.5";
    r.epsilon = 1.0;
    r.budget = 4000;
    r.seed = 21;
    r.estimate = modulus_of_convexity(SpaceSpec::lp_sequence(1.5), 1.0, 4000, 21);
    return to_json(r);
  };
  std::string m1 = modulus_json();
  std::string m2 = modulus_json();

  std::string l1 = to_json(limit_diagnostics(spiral_family(), 300));
  std::string l2 = to_json(limit_diagnostics(spiral_family(), 300));

  report(a == b && b == c && m1 == m2 && l1 == l2,
         "byte-identical reports across workers and reruns",
         "scan " + std::to_string(a.size()) + " bytes, modulus " + std::to_string(m1.size()) +
             " bytes, limit " + std::to_string(l1.size()) + " bytes");
}

}  // namespace

int main() {
  check_triangle_monte_carlo();
  check_spiral_band_and_closed_forms();
  check_scaled_basis_divergent_directions();
  check_witness_pairs_and_probe();
  check_finite_support_sequence();
  check_sign_stabilization();
  check_spectral_matrices();
  check_determinism();
  if (g_failures != 0) {
    std::printf("%d acceptance check(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all acceptance checks passed\n");
  return 0;
}

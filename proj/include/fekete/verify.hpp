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
    Inequality checkers.

    check_subadditivity scans ||v_{n+m}|| <= ||v_n + v_m|| over a constraint
    band, anti-diagonal by anti-diagonal (fixed n+m), in parallel blocks with
    a deterministic merge; the scalar variant does the same for |a_{n+m}| <=
    |a_n + a_m|.  check_lemma_bound evaluates the convexity-improved triangle
    inequality ||u+v|| <= ||u|| + gamma ||v||.  The subset probe upper-bounds
    the convexity modulus of a concrete point set, and criterion_check ties
    growth rate and probe together into an evidence verdict for whether
    v_n / n can converge.
*/

#ifndef FEKETE_VERIFY_HPP
#define FEKETE_VERIFY_HPP

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fekete/band.hpp"
#include "fekete/errors.hpp"
#include "fekete/parallel.hpp"
#include "fekete/sequences.hpp"
#include "fekete/spaces.hpp"
#include "fekete/vectors.hpp"

namespace fekete {

struct Violation {
  Index n = 0, m = 0;
  double lhs = 0.0;   // ||v_{n+m}||
  double rhs = 0.0;   // ||v_n + v_m||
  double margin = 0.0;  // lhs - rhs; a violation has margin > tolerance
};

struct SubadditivityReport {
  std::string family;
  std::string band;
  Index max_sum = 0;
  double tolerance = 0.0;
  std::uint64_t pairs_checked = 0;
  std::vector<Violation> violations;  // sorted by (n, m); n <= m orientation
  bool truncated = false;  // a stop-at-first scan ended before max_sum
  double wall_ms = 0.0;
};

namespace detail {

// Vectors and norms for indices 1..max, generated once up front.  Any
// failure while producing element i surfaces as GeneratorFailure(i).
template <class V>
struct SequenceCache {
  std::vector<V> items;
  std::vector<double> norms;

  SequenceCache(const SequenceFamily<V>& family, Index max) {
    items.reserve(static_cast<std::size_t>(max));
    norms.reserve(static_cast<std::size_t>(max));
    for (Index i = 1; i <= max; ++i) {
      try {
        items.push_back(family.generate(i));
        norms.push_back(norm(family.space, items.back()));
      } catch (const GeneratorFailure&) {
        throw;
      } catch (const std::exception& e) {
        throw GeneratorFailure(i, family.name + " failed at index " + std::to_string(i) + ": " + e.what());
      }
    }
  }

  const V& at(Index i) const { return items[static_cast<std::size_t>(i - 1)]; }
  double norm_at(Index i) const { return norms[static_cast<std::size_t>(i - 1)]; }
};

struct ScanBlockResult {
  std::uint64_t pairs = 0;
  std::vector<Violation> violations;
};

inline void sort_violations(std::vector<Violation>& v) {
  std::sort(v.begin(), v.end(), [](const Violation& a, const Violation& b) {
    return a.n != b.n ? a.n < b.n : a.m < b.m;
  });
}

// Shared scan driver: `pair_check(n, m)` returns the (lhs, rhs) of one pair.
// Pairs are enumerated with n <= m over anti-diagonals n + m = s.
template <class PairCheck>
SubadditivityReport scan_pairs(std::string family, std::string band_label,
                               const ConstraintBand& band, Index max_sum, double tolerance,
                               const ScanOptions& opts, PairCheck&& pair_check) {
  if (max_sum < 2) throw OutOfRange("max_sum must be >= 2");
  if (!(tolerance >= 0.0)) throw OutOfRange("tolerance must be >= 0");

  auto t0 = std::chrono::steady_clock::now();
  SubadditivityReport report;
  report.family = std::move(family);
  report.band = std::move(band_label);
  report.max_sum = max_sum;
  report.tolerance = tolerance;

  auto scan_diagonal = [&](Index s, ScanBlockResult& out) {
    for (Index n = 1; 2 * n <= s; ++n) {
      Index m = s - n;
      if (!band.contains_pair(n, m)) continue;
      out.pairs += 1;
      auto [lhs, rhs] = pair_check(n, m);
      double margin = lhs - rhs;
      if (margin > tolerance) out.violations.push_back({n, m, lhs, rhs, margin});
    }
  };

  if (opts.stop_at_first) {
    ScanBlockResult acc;
    for (Index s = 2; s <= max_sum; ++s) {
      scan_diagonal(s, acc);
      if (!acc.violations.empty()) {
        report.truncated = s < max_sum;
        break;
      }
    }
    report.pairs_checked = acc.pairs;
    report.violations = std::move(acc.violations);
  } else {
    std::size_t threads = worker_count(opts.threads);
    Index diagonals = max_sum - 1;
    Index block = std::max<Index>(Index(16), diagonals / static_cast<Index>(threads * 8));
    auto blocks = run_blocks<ScanBlockResult>(
        Index(2), max_sum + 1, threads, block, [&](Index lo, Index hi) {
          ScanBlockResult out;
          for (Index s = lo; s < hi; ++s) scan_diagonal(s, out);
          return out;
        });
    for (auto& b : blocks) {
      report.pairs_checked += b.pairs;
      report.violations.insert(report.violations.end(), b.violations.begin(), b.violations.end());
    }
  }
  sort_violations(report.violations);
  report.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

}  // namespace detail

template <class V>
SubadditivityReport check_subadditivity(const SequenceFamily<V>& family, const ConstraintBand& band,
                                        Index max_sum, double tolerance,
                                        const ScanOptions& opts = {}) {
  if (max_sum < 2) throw OutOfRange("max_sum must be >= 2");
  detail::SequenceCache<V> cache(family, max_sum);
  return detail::scan_pairs(
      family.name, band.to_string(), band, max_sum, tolerance, opts,
      [&](Index n, Index m) -> std::pair<double, double> {
        double lhs = cache.norm_at(n + m);
        double rhs;
        try {
          rhs = norm(family.space, cache.at(n) + cache.at(m));
        } catch (const std::exception& e) {
          throw GeneratorFailure(n, family.name + " failed on pair sum (" + std::to_string(n) +
                                        ", " + std::to_string(m) + "): " + e.what());
        }
        return {lhs, rhs};
      });
}

inline SubadditivityReport check_scalar_band_subadditivity(
    const std::function<double(Index)>& a, const ConstraintBand& band, Index max_sum,
    double tolerance, const ScanOptions& opts = {}, const std::string& name = "scalar") {
  if (max_sum < 2) throw OutOfRange("max_sum must be >= 2");
  std::vector<double> values(static_cast<std::size_t>(max_sum));
  for (Index i = 1; i <= max_sum; ++i) {
    double v = a(i);
    if (!std::isfinite(v))
      throw GeneratorFailure(i, name + " produced a non-finite value at index " + std::to_string(i));
    values[static_cast<std::size_t>(i - 1)] = v;
  }
  auto at = [&](Index i) { return values[static_cast<std::size_t>(i - 1)]; };
  return detail::scan_pairs(name, band.to_string(), band, max_sum, tolerance, opts,
                            [&](Index n, Index m) -> std::pair<double, double> {
                              return {std::fabs(at(n + m)), std::fabs(at(n) + at(m))};
                            });
}

struct LemmaBoundReport {
  double norm_u = 0.0;
  double norm_v = 0.0;
  double gamma = 0.0;
  double lhs = 0.0;       // ||u + v||
  double rhs = 0.0;       // ||u|| + gamma ||v||
  double margin = 0.0;    // lhs - rhs
  double tolerance = 0.0;
  bool hypothesis_ok = false;  // ||v|| <= 2 ||u||, reported rather than enforced
  bool satisfied = false;      // margin <= tolerance
};

// The convexity-improved triangle inequality ||u+v|| <= ||u|| + gamma ||v||.
// The caller picks gamma, typically 1 - delta(eps)/2 for the direction gap
// eps it has established; gamma = 1 recovers the plain triangle inequality.
template <class V>
LemmaBoundReport check_lemma_bound(const SpaceSpec& space, const V& u, const V& v, double gamma,
                                   double tolerance = 1e-12) {
  if (!std::isfinite(gamma) || gamma < 0.0 || gamma > 1.0)
    throw OutOfRange("gamma must lie in [0, 1]");
  if (!(tolerance >= 0.0)) throw OutOfRange("tolerance must be >= 0");
  LemmaBoundReport r;
  r.norm_u = norm(space, u);
  r.norm_v = norm(space, v);
  if (r.norm_u == 0.0 || r.norm_v == 0.0) throw OutOfRange("u and v must be nonzero");
  r.gamma = gamma;
  r.lhs = norm(space, u + v);
  r.rhs = r.norm_u + gamma * r.norm_v;
  r.margin = r.lhs - r.rhs;
  r.tolerance = tolerance;
  r.hypothesis_ok = r.norm_v <= 2.0 * r.norm_u * (1.0 + 1e-12);
  r.satisfied = r.margin <= tolerance;
  return r;
}

namespace detail {

inline FiniteVector densify(const FiniteVector& v) { return v; }
inline FiniteVector densify(const TailVector& v) { return materialize(v); }

struct PairStat {
  std::size_t i, j;
  double gap;  // ||u_i - u_j||
  double sum;  // ||u_i + u_j||
};

template <class V>
std::vector<FiniteVector> normalized_points(const std::vector<V>& points, const SpaceSpec& space) {
  std::vector<FiniteVector> units;
  units.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    FiniteVector f = densify(points[i]);
    double n = norm(space, f);
    if (n == 0.0) throw ZeroVectorInSet(i, "point " + std::to_string(i) + " is the zero vector");
    units.push_back((1.0 / n) * f);
  }
  return units;
}

inline std::vector<PairStat> pairwise_stats(const std::vector<FiniteVector>& units,
                                            const SpaceSpec& space) {
  std::vector<PairStat> stats;
  stats.reserve(units.size() * (units.size()- 1) / 2);
  for (std::size_t i = 0; i + 1 < units.size(); ++i)
    for (std::size_t j = i + 1; j < units.size(); ++j)
      stats.push_back({i, j, norm(space, units[i] - units[j]), norm(space, units[i] + units[j])});
  return stats;
}

inline ConvexityEstimate estimate_from_stats(const std::vector<FiniteVector>& units,
                                             const std::vector<PairStat>& stats, double epsilon) {
  ConvexityEstimate est;
  est.epsilon = epsilon;
  double best = -1.0;
  std::size_t eligible = 0;
  const PairStat* argbest = nullptr;
  for (const PairStat& s : stats) {
    if (s.gap < epsilon) continue;
    ++eligible;
    if (s.sum > best) {
      best = s.sum;
      argbest = &s;
    }
  }
  est.samples = eligible;
  est.delta_hat = best < 0.0 ? 2.0 : std::clamp(2.0 - best, 0.0, 2.0);
  est.gamma = gamma_from_delta(est.delta_hat);
  if (argbest) {
    est.witness = std::make_pair(units[argbest->i], units[argbest->j]);
    est.witness_source = std::make_pair(argbest->i, argbest->j);
  }
  return est;
}

}  // namespace detail

// Exhaustive pairwise probe of a point set: normalize every point, scan all
// pairs with direction gap >= epsilon, and report delta_hat = 2 - max ||u+v||.
// With no eligible pair the set is uniformly convex by default: delta_hat = 2.
// `samples` counts the eligible pairs.
template <class V>
ConvexityEstimate subset_uniform_convexity_probe(const std::vector<V>& points,
                                                 const SpaceSpec& space, double epsilon) {
  if (!std::isfinite(epsilon) || !(epsilon > 0.0) || epsilon > 2.0)
    throw InvalidEpsilon("epsilon must lie in (0, 2]");
  auto units = detail::normalized_points(points, space);
  auto stats = detail::pairwise_stats(units, space);
  return detail::estimate_from_stats(units, stats, epsilon);
}

// Cutoffs behind criterion_check's qualitative verdicts.  A finite scan can
// only gather evidence, so the cutoffs are deliberately conservative and are
// carried in the report.
struct CriterionThresholds {
  // Growth rate at or below this is treated as a vanishing limit.
  double zero_growth = 1e-9;
  // ConvergenceEvidence wants delta_hat >= convexity_floor * eps^2 at every
  // grid epsilon (half the small-eps Hilbert modulus eps^2/4 as a floor).
  double convexity_floor = 0.125;
  // DivergenceEvidence wants delta_hat <= divergence_delta at some grid
  // epsilon >= divergence_min_eps.
  double divergence_delta = 1e-3;
  double divergence_min_eps = 0.5;
  // Tolerance for the subadditivity gate on the scanned prefix.
  double prefix_tolerance = 1e-9;
};

enum class CriterionVerdict { LimitZero, ConvergenceEvidence, DivergenceEvidence, Inconclusive };

inline const char* to_string(CriterionVerdict v) {
  switch (v) {
    case CriterionVerdict::LimitZero: return "limit-zero";
    case CriterionVerdict::ConvergenceEvidence: return "convergence-evidence";
    case CriterionVerdict::DivergenceEvidence: return "divergence-evidence";
    case CriterionVerdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

struct CriterionReport {
  std::string family;
  Index N = 0;
  std::vector<double> eps_grid;
  double growth_inf = 0.0;       // min over n <= N of ||v_n|| / n
  double growth_trailing = 0.0;  // ||v_N|| / N
  std::uint64_t prefix_pairs = 0;
  std::uint64_t prefix_violations = 0;
  std::vector<Index> zero_indices;           // norms exactly zero, skipped by the probe
  std::vector<ConvexityEstimate> profile;    // one probe per grid epsilon
  CriterionVerdict verdict = CriterionVerdict::Inconclusive;
  std::string note;
  CriterionThresholds thresholds;
};

// Growth rate plus normalized-direction probe: the executable form of the
// convergence criterion "positive growth and uniformly convex directions".
// Everything here is evidence, never proof: the probe only upper-bounds the
// modulus, and the scan sees a finite prefix.
template <class V>
CriterionReport criterion_check(const SequenceFamily<V>& family, Index N,
                                std::span<const double> eps_grid,
                                const CriterionThresholds& thresholds = {}) {
  if (N < 2) throw OutOfRange("N must be >= 2");
  if (eps_grid.empty()) throw OutOfRange("epsilon grid must be non-empty");
  for (double e : eps_grid)
    if (!std::isfinite(e) || !(e > 0.0) || e > 2.0)
      throw InvalidEpsilon("epsilon grid entries must lie in (0, 2]");

  CriterionReport report;
  report.family = family.name;
  report.N = N;
  report.eps_grid.assign(eps_grid.begin(), eps_grid.end());
  report.thresholds = thresholds;

  SubadditivityReport prefix =
      check_subadditivity(family, ConstraintBand::full(), N, thresholds.prefix_tolerance);
  report.prefix_pairs = prefix.pairs_checked;
  report.prefix_violations = prefix.violations.size();

  detail::SequenceCache<V> cache(family, N);
  report.growth_inf = kInf;
  for (Index i = 1; i <= N; ++i) {
    double g = cache.norm_at(i) / static_cast<double>(i);
    report.growth_inf = std::min(report.growth_inf, g);
    if (cache.norm_at(i) == 0.0) report.zero_indices.push_back(i);
  }
  report.growth_trailing = cache.norm_at(N) / static_cast<double>(N);

  if (report.growth_inf <= thresholds.zero_growth) {
    report.verdict = CriterionVerdict::LimitZero;
    report.note = "growth infimum is ~0, so v_n/n can only converge to 0; probe skipped";
    return report;
  }

  std::vector<FiniteVector> units;
  units.reserve(static_cast<std::size_t>(N));
  for (Index i = 1; i <= N; ++i) {
    if (cache.norm_at(i) == 0.0) continue;
    units.push_back((1.0 / cache.norm_at(i)) * detail::densify(cache.at(i)));
  }
  auto stats = detail::pairwise_stats(units, family.space);
  for (double eps : eps_grid)
    report.profile.push_back(detail::estimate_from_stats(units, stats, eps));

  bool divergence = false, convergence = true;
  for (const ConvexityEstimate& est : report.profile) {
    if (est.epsilon >= thresholds.divergence_min_eps && est.delta_hat <= thresholds.divergence_delta)
      divergence = true;
    if (est.delta_hat < thresholds.convexity_floor * est.epsilon * est.epsilon) convergence = false;
  }
  if (divergence) {
    report.verdict = CriterionVerdict::DivergenceEvidence;
    report.note = "normalized directions admit near-flat pairs at large separation; "
                  "evidence only, the probe upper-bounds the modulus";
  } else if (convergence) {
    report.verdict = CriterionVerdict::ConvergenceEvidence;
    report.note = "probe modulus stayed above the quadratic floor at every grid epsilon; "
                  "evidence only, the probe upper-bounds the modulus";
  } else {
    report.verdict = CriterionVerdict::Inconclusive;
    report.note = "probe profile neither collapses nor clears the quadratic floor; "
                  "evidence only";
  }
  if (report.prefix_violations > 0)
    report.note += "; CAUTION: the scanned prefix itself violates subadditivity";
  return report;
}

}  // namespace fekete

#endif

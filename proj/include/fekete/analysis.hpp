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
    Growth-rate and direction diagnostics for sequence families, the
    inductive bound chain behind the convexity-improved triangle inequality,
    closed-form inequality checks for the planar spiral, and scalar sign
    stabilization.

    Everything here reports evidence from a finite scan; the verdict
    thresholds are declared constants, not tuned knobs.
*/

#ifndef FEKETE_ANALYSIS_HPP
#define FEKETE_ANALYSIS_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fekete/errors.hpp"
#include "fekete/sequences.hpp"
#include "fekete/spaces.hpp"
#include "fekete/vectors.hpp"
#include "fekete/verify.hpp"

namespace fekete {

// Verdict cutoffs for limit_diagnostics: the newest dyadic window must be
// tighter than this for convergence evidence...
inline constexpr double kConvergenceGapCut = 0.01;
// ...and all three tracked windows must stay above this for divergence
// evidence.  Anything between is inconclusive.
inline constexpr double kDivergenceGapCut = 0.5;

struct GrowthRate {
  double inf = 0.0;       // min over scanned n of ||v_n|| / n
  double trailing = 0.0;  // ||v_N|| / N
};

enum class LimitVerdict { ConvergenceEvidence, DivergenceEvidence, Inconclusive };

inline const char* to_string(LimitVerdict v) {
  switch (v) {
    case LimitVerdict::ConvergenceEvidence: return "convergence-evidence";
    case LimitVerdict::DivergenceEvidence: return "divergence-evidence";
    case LimitVerdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

struct LimitDiagnostics {
  std::string family;
  Index N = 0;
  double window = 0.0;
  GrowthRate growth_rate;
  // Largest normalized direction gap over pairs n < m <= window * n, m <= N.
  double direction_gap_max = 0.0;
  std::optional<std::pair<Index, Index>> gap_argmax;
  // Max gaps inside the dyadic index windows (N/2, N], (N/4, N/2], (N/8, N/4];
  // empty when a window holds fewer than two usable indices.
  std::array<std::optional<double>, 3> dyadic_gaps;
  // Sparse nonzero coordinates of v_N / N.
  std::vector<std::pair<Index, double>> limit_estimate;
  // Indices with ||v_n|| = 0, excluded from every normalized comparison.
  std::vector<Index> skipped_zero_indices;
  LimitVerdict verdict = LimitVerdict::Inconclusive;
};

template <class V>
LimitDiagnostics limit_diagnostics(const SequenceFamily<V>& family, Index N, double window = 4.0) {
  if (N < 2) throw OutOfRange("N must be >= 2");
  if (!std::isfinite(window) || window < 1.0) throw OutOfRange("window ratio must be >= 1");

  detail::SequenceCache<V> cache(family, N);
  LimitDiagnostics d;
  d.family = family.name;
  d.N = N;
  d.window = window;

  d.growth_rate.inf = kInf;
  for (Index i = 1; i <= N; ++i) {
    d.growth_rate.inf = std::min(d.growth_rate.inf, cache.norm_at(i) / static_cast<double>(i));
    if (cache.norm_at(i) == 0.0) d.skipped_zero_indices.push_back(i);
  }
  d.growth_rate.trailing = cache.norm_at(N) / static_cast<double>(N);

  std::vector<std::optional<FiniteVector>> units(static_cast<std::size_t>(N) + 1);
  for (Index i = 1; i <= N; ++i)
    if (cache.norm_at(i) > 0.0)
      units[static_cast<std::size_t>(i)] = (1.0 / cache.norm_at(i)) * detail::densify(cache.at(i));

  auto gap = [&](Index n, Index m) -> std::optional<double> {
    const auto& a = units[static_cast<std::size_t>(n)];
    const auto& b = units[static_cast<std::size_t>(m)];
    if (!a || !b) return std::nullopt;
    return norm(family.space, *a - *b);
  };

  for (Index n = 1; n <= N; ++n) {
    Index m_hi = std::min<Index>(N, static_cast<Index>(std::floor(window * static_cast<double>(n))));
    for (Index m = n + 1; m <= m_hi; ++m) {
      auto g = gap(n, m);
      if (g && *g > d.direction_gap_max) {
        d.direction_gap_max = *g;
        d.gap_argmax = std::make_pair(n, m);
      }
    }
  }

  for (int j = 0; j < 3; ++j) {
    Index hi = N >> j, lo = N >> (j + 1);
    std::optional<double> worst;
    for (Index n = lo + 1; n <= hi; ++n)
      for (Index m = n + 1; m <= hi; ++m) {
        auto g = gap(n, m);
        if (g && (!worst || *g > *worst)) worst = *g;
      }
    d.dyadic_gaps[static_cast<std::size_t>(j)] = worst;
  }

  FiniteVector tail_avg = (1.0 / static_cast<double>(N)) * detail::densify(cache.at(N));
  for (Index i = 1; i <= tail_avg.size(); ++i)
    if (tail_avg.coord(i) != 0.0) d.limit_estimate.emplace_back(i, tail_avg.coord(i));

  const auto& g0 = d.dyadic_gaps[0];
  if (g0 && *g0 < kConvergenceGapCut) {
    d.verdict = LimitVerdict::ConvergenceEvidence;
  } else if (d.dyadic_gaps[0] && d.dyadic_gaps[1] && d.dyadic_gaps[2] &&
             *d.dyadic_gaps[0] > kDivergenceGapCut && *d.dyadic_gaps[1] > kDivergenceGapCut &&
             *d.dyadic_gaps[2] > kDivergenceGapCut) {
    d.verdict = LimitVerdict::DivergenceEvidence;
  } else {
    d.verdict = LimitVerdict::Inconclusive;
  }
  return d;
}

struct GapScanResult {
  Index n_start = 0, n_end = 0;
  double ratio = 0.0;
  double max_gap = 0.0;
  std::optional<std::pair<Index, Index>> argmax;
  std::vector<Index> skipped_zero_indices;
};

// Max normalized direction gap over n_start <= n < m <= min(ratio*n, n_end).
// Small values on deep windows are what make the averaged sequence Cauchy.
template <class V>
GapScanResult proposition_gap_scan(const SequenceFamily<V>& family, Index n_start, Index n_end,
                                   double ratio = 4.0) {
  if (n_start < 1 || n_end < n_start) throw OutOfRange("need 1 <= n_start <= n_end");
  if (!std::isfinite(ratio) || ratio < 1.0) throw OutOfRange("ratio must be >= 1");

  detail::SequenceCache<V> cache(family, n_end);
  GapScanResult r;
  r.n_start = n_start;
  r.n_end = n_end;
  r.ratio = ratio;

  std::vector<std::optional<FiniteVector>> units(static_cast<std::size_t>(n_end) + 1);
  for (Index i = n_start; i <= n_end; ++i) {
    if (cache.norm_at(i) == 0.0) {
      r.skipped_zero_indices.push_back(i);
      continue;
    }
    units[static_cast<std::size_t>(i)] = (1.0 / cache.norm_at(i)) * detail::densify(cache.at(i));
  }
  for (Index n = n_start; n <= n_end; ++n) {
    if (!units[static_cast<std::size_t>(n)]) continue;
    Index m_hi = std::min<Index>(n_end, static_cast<Index>(std::floor(ratio * static_cast<double>(n))));
    for (Index m = n + 1; m <= m_hi; ++m) {
      if (!units[static_cast<std::size_t>(m)]) continue;
      double g = norm(family.space, *units[static_cast<std::size_t>(n)] - *units[static_cast<std::size_t>(m)]);
      if (g > r.max_gap) {
        r.max_gap = g;
        r.argmax = std::make_pair(n, m);
      }
    }
  }
  return r;
}

struct BoundTraceRow {
  Index r = 0;
  Index index = 0;     // r*n + m
  double actual = 0.0; // ||v_{rn+m}||
  double bound = 0.0;  // ||v_m|| + r * gamma * ||v_n||
  double slack = 0.0;  // bound - actual
  // Present when an epsilon was supplied: the step's direction gap
  // ||v_n/||v_n|| - v_prev/||v_prev|||| with prev = (r-1)n + m, and whether
  // the step satisfies the improved inequality's hypotheses (gap >= epsilon
  // and ||v_n|| <= 2 ||v_prev||).
  std::optional<double> direction_gap;
  std::optional<bool> hypothesis_ok;
};

struct BoundTrace {
  std::string family;
  Index n = 0, m = 0;
  double gamma = 0.0;
  std::optional<double> epsilon;
  Index k = 0;  // smallest integer with k*n >= m
  std::vector<BoundTraceRow> rows;
};

// The inductive chain ||v_{rn+m}|| <= ||v_m|| + r*gamma*||v_n|| for r = 1..k.
// With gamma = 1 this is repeated triangle inequality and can never fail;
// smaller gamma encodes the convexity gain and the per-row hypothesis
// annotation shows where that gain is actually justified.
template <class V>
BoundTrace inductive_bound_trace(const SequenceFamily<V>& family, Index n, Index m, double gamma,
                                 std::optional<double> epsilon = {}) {
  if (n < 1 || m <= n) throw OutOfRange("need m > n >= 1");
  if (!std::isfinite(gamma) || !(gamma > 0.0) || gamma > 1.0)
    throw OutOfRange("gamma must lie in (0, 1]");
  if (epsilon && (!std::isfinite(*epsilon) || !(*epsilon > 0.0) || *epsilon > 2.0))
    throw InvalidEpsilon("epsilon must lie in (0, 2]");

  BoundTrace t;
  t.family = family.name;
  t.n = n;
  t.m = m;
  t.gamma = gamma;
  t.epsilon = epsilon;
  t.k = (m + n - 1) / n;

  detail::SequenceCache<V> cache(family, t.k * n + m);
  double norm_n = cache.norm_at(n);
  double norm_m = cache.norm_at(m);
  for (Index r = 1; r <= t.k; ++r) {
    BoundTraceRow row;
    row.r = r;
    row.index = r * n + m;
    row.actual = cache.norm_at(row.index);
    row.bound = norm_m + static_cast<double>(r) * gamma * norm_n;
    row.slack = row.bound - row.actual;
    if (epsilon) {
      Index prev = (r - 1) * n + m;
      double norm_prev = cache.norm_at(prev);
      if (norm_n > 0.0 && norm_prev > 0.0) {
        FiniteVector a = (1.0 / norm_n) * detail::densify(cache.at(n));
        FiniteVector b = (1.0 / norm_prev) * detail::densify(cache.at(prev));
        row.direction_gap = norm(family.space, a - b);
        row.hypothesis_ok =
            *row.direction_gap >= *epsilon && norm_n <= 2.0 * norm_prev * (1.0 + 1e-12);
      } else {
        row.hypothesis_ok = false;
      }
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

struct MarginCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // rhs - lhs, expected nonnegative
};

// Squared-radius inequality for the spiral within the half-to-double band:
// r_{n+m}^2 <= r_n^2 + r_m^2 + 2 (1 - 1/(100 ln(n+1)^{3/2})) r_n r_m.
inline MarginCheck rn_inequality_check(Index n, Index m) {
  if (n < 1 || m < n || m > 2 * n)
    throw BandViolation("rn inequality is stated for 1 <= n <= m <= 2n");
  double rn = spiral_radius(n), rm = spiral_radius(m), rs = spiral_radius(n + m);
  double damp = 1.0 - 1.0 / (100.0 * std::pow(std::log(static_cast<double>(n) + 1.0), 1.5));
  MarginCheck c;
  c.lhs = rs * rs;
  c.rhs = rn * rn + rm * rm + 2.0 * damp * rn * rm;
  c.margin = c.rhs - c.lhs;
  return c;
}

struct ThetaBound {
  double gap = 0.0;           // theta_{2n} - theta_n
  double bound = 0.0;         // ln(n+1)^{-3/4} / 50
  double lower_margin = 0.0;  // gap itself (>= 0 expected)
  double upper_margin = 0.0;  // bound - gap (>= 0 expected)
};

// Angle-increment bound for the spiral: 0 <= theta_{2n} - theta_n <= ln(n+1)^{-3/4}/50.
inline ThetaBound theta_bound_check(Index n) {
  if (n < 1) throw OutOfRange("index must be >= 1");
  ThetaBound t;
  t.gap = spiral_angle(2 * n) - spiral_angle(n);
  t.bound = 1.0 / (50.0 * std::pow(std::log(static_cast<double>(n) + 1.0), 0.75));
  t.lower_margin = t.gap;
  t.upper_margin = t.bound - t.gap;
  return t;
}

struct CosineChain {
  double theta_gap = 0.0;      // theta_m - theta_n
  double cosine = 0.0;         // cos of the gap
  double quad_lower = 0.0;     // 1 - gap^2/2
  double window_lower = 0.0;   // 1 - (theta_{2n} - theta_n)^2 / 2
  double closed_lower = 0.0;   // 1 - ln(n+1)^{-3/2} / 100
  bool ok = false;             // the three lower bounds hold in order
};

// The chain that turns the angle bound into a cosine bound on the band
// n <= m <= 2n: cos(gap) >= 1 - gap^2/2 >= 1 - (theta_{2n}-theta_n)^2/2
// >= 1 - ln(n+1)^{-3/2}/100.
inline CosineChain spiral_cosine_chain_check(Index n, Index m) {
  if (n < 1 || m < n || m > 2 * n)
    throw BandViolation("cosine chain is stated for 1 <= n <= m <= 2n");
  CosineChain c;
  c.theta_gap = spiral_angle(m) - spiral_angle(n);
  c.cosine = std::cos(c.theta_gap);
  c.quad_lower = 1.0 - 0.5 * c.theta_gap * c.theta_gap;
  double wgap = spiral_angle(2 * n) - spiral_angle(n);
  c.window_lower = 1.0 - 0.5 * wgap * wgap;
  c.closed_lower = 1.0 - 1.0 / (100.0 * std::pow(std::log(static_cast<double>(n) + 1.0), 1.5));
  const double slack = 1e-15;
  c.ok = c.cosine >= c.quad_lower - slack && c.quad_lower >= c.window_lower - slack &&
         c.window_lower >= c.closed_lower - slack;
  return c;
}

// Smallest N with a_n * a_{n+1} > 0 for all N <= n < n_max, if any.  The
// vacuous N = n_max does not count: at least one product must be checked.
inline std::optional<Index> sign_stabilization_check(const std::function<double(Index)>& a,
                                                    Index n_max) {
  if (n_max < 2) throw OutOfRange("n_max must be >= 2");
  std::vector<double> v(static_cast<std::size_t>(n_max));
  for (Index i = 1; i <= n_max; ++i) {
    v[static_cast<std::size_t>(i - 1)] = a(i);
    if (!std::isfinite(v[static_cast<std::size_t>(i - 1)]))
      throw GeneratorFailure(i, "scalar sequence produced a non-finite value");
  }
  Index last_bad = 0;
  for (Index i = 1; i < n_max; ++i)
    if (v[static_cast<std::size_t>(i - 1)] * v[static_cast<std::size_t>(i)] <= 0.0) last_bad = i;
  Index candidate = last_bad + 1;
  if (candidate > n_max - 1) return std::nullopt;
  return candidate;
}

}  // namespace fekete

#endif

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
    The five normed spaces and their machinery.

    - Euclidean(d): R^d with the l2 norm.
    - LpSequence(p): finitely supported sequences under the l^p norm.
    - ConvexL1Perturbed: ||a|| = sum |a_i| + sqrt(sum |a_i|^2 / 16^i).  The
      geometric weights underflow past i ~ 130, so the quadratic part runs in
      log domain.
    - NestedPairL2: coordinates are consumed in pairs (2k-1, 2k); pair k is
      measured in l^{k+1} and the resulting block norms in l^2.
    - FiniteSupportL2: eventually-zero sequences with the l2 norm (the space
      itself is incomplete; vectors must carry an explicit support bound).

    Alongside the norms: a closed-form convexity modulus for the Euclidean
    case, the delta -> gamma transfer, and a seeded sampling search that
    upper-bounds the modulus of any of the five spaces.
*/

#ifndef FEKETE_SPACES_HPP
#define FEKETE_SPACES_HPP

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fekete/errors.hpp"
#include "fekete/numeric.hpp"
#include "fekete/random.hpp"
#include "fekete/vectors.hpp"

namespace fekete {

enum class SpaceKind { Euclidean, LpSequence, ConvexL1Perturbed, NestedPairL2, FiniteSupportL2 };

class SpaceSpec {
 public:
  static SpaceSpec euclidean(Index dim) {
    if (dim < 1) throw OutOfRange("euclidean dimension must be >= 1");
    return SpaceSpec(SpaceKind::Euclidean, dim, 2.0);
  }

  static SpaceSpec lp_sequence(double p) {
    if (!std::isfinite(p) || !(p >= 1.0)) throw OutOfRange("lp exponent must be finite and >= 1");
    return SpaceSpec(SpaceKind::LpSequence, 0, p);
  }

  static SpaceSpec convex_l1_perturbed() { return SpaceSpec(SpaceKind::ConvexL1Perturbed, 0, 1.0); }
  static SpaceSpec nested_pair_l2() { return SpaceSpec(SpaceKind::NestedPairL2, 0, 2.0); }
  static SpaceSpec finite_support_l2() { return SpaceSpec(SpaceKind::FiniteSupportL2, 0, 2.0); }

  SpaceKind kind() const { return kind_; }
  Index dim() const { return dim_; }
  double p() const { return p_; }

  std::string to_string() const {
    switch (kind_) {
      case SpaceKind::Euclidean: return "euclidean:" + std::to_string(dim_);
      case SpaceKind::LpSequence: return "lp:" + format_double(p_);
      case SpaceKind::ConvexL1Perturbed: return "convex-l1";
      case SpaceKind::NestedPairL2: return "nested-pair-l2";
      case SpaceKind::FiniteSupportL2: return "finite-support-l2";
    }
    return "?";
  }

  // Accepts "euclidean:<d>" or "euclidean:dim=<d>", "lp:<p>" or "lp:p=<p>",
  // "convex-l1", "nested-pair-l2", "finite-support-l2".
  static SpaceSpec parse(std::string_view text) {
    std::string s(text);
    std::string head = s, arg;
    if (auto pos = s.find(':'); pos != std::string::npos) {
      head = s.substr(0, pos);
      arg = s.substr(pos + 1);
    }
    auto strip_key = [&](const char* key) {
      std::string prefix = std::string(key) + "=";
      if (arg.rfind(prefix, 0) == 0) arg = arg.substr(prefix.size());
    };
    if (head == "euclidean") {
      if (arg.empty()) throw ParseError("euclidean space needs a dimension, e.g. euclidean:3");
      strip_key("dim");
      Index d = parse_index_strict(arg, "euclidean dimension");
      if (d < 1) throw ParseError("euclidean dimension must be >= 1");
      return euclidean(d);
    }
    if (head == "lp") {
      if (arg.empty()) throw ParseError("lp space needs an exponent, e.g. lp:2");
      strip_key("p");
      double p = parse_double_strict(arg, "lp exponent");
      if (!std::isfinite(p) || p < 1.0) throw ParseError("lp exponent must be finite and >= 1");
      return lp_sequence(p);
    }
    if (!arg.empty()) throw ParseError("space '" + head + "' takes no parameter");
    if (head == "convex-l1" || head == "convex-l1-perturbed") return convex_l1_perturbed();
    if (head == "nested-pair-l2") return nested_pair_l2();
    if (head == "finite-support-l2") return finite_support_l2();
    throw ParseError("unknown space: '" + s + "'");
  }

  friend bool operator==(const SpaceSpec&, const SpaceSpec&) = default;

 private:
  SpaceSpec(SpaceKind k, Index d, double p) : kind_(k), dim_(d), p_(p) {}
  SpaceKind kind_;
  Index dim_;
  double p_;
};

namespace detail {

inline constexpr double kLn16 = 4.0 * std::numbers::ln2;

// Shared norm kernel over a 1-based coordinate accessor that is zero past
// `limit`.  Each branch mirrors one space definition.
template <class CoordFn>
double norm_kernel(const SpaceSpec& space, Index limit, CoordFn&& coord) {
  switch (space.kind()) {
    case SpaceKind::Euclidean: {
      if (limit > space.dim()) {
        for (Index i = space.dim() + 1; i <= limit; ++i)
          if (coord(i) != 0.0)
            throw UnsupportedVectorKind("nonzero coordinate " + std::to_string(i) +
                                        " beyond euclidean dimension " + std::to_string(space.dim()));
        limit = space.dim();
      }
      PowerSum acc(2.0);
      for (Index i = 1; i <= limit; ++i) acc.add(coord(i));
      return acc.value();
    }
    case SpaceKind::LpSequence: {
      PowerSum acc(space.p());
      for (Index i = 1; i <= limit; ++i) acc.add(coord(i));
      return acc.value();
    }
    case SpaceKind::ConvexL1Perturbed: {
      double l1 = 0.0;
      std::vector<double> logs;
      for (Index i = 1; i <= limit; ++i) {
        double a = std::fabs(coord(i));
        require_finite(a, "coordinate");
        if (a == 0.0) continue;
        l1 += a;
        // |a_i|^2 / 16^i in log domain; sub-floor terms are exact zeros.
        double t = 2.0 * std::log(a) - static_cast<double>(i) * kLn16;
        if (t >= kLogFloor) logs.push_back(t);
      }
      double lse = log_sum_exp(logs);
      double quad = (lse == -kInf || lse < kLogFloor) ? 0.0 : std::exp(0.5 * lse);
      return l1 + quad;
    }
    case SpaceKind::NestedPairL2: {
      PowerSum acc(2.0);
      for (Index k = 1; 2 * k - 1 <= limit; ++k) {
        double a = std::fabs(coord(2 * k - 1));
        double b = 2 * k <= limit ? std::fabs(coord(2 * k)) : 0.0;
        require_finite(a, "coordinate");
        require_finite(b, "coordinate");
        double hi = std::max(a, b), lo = std::min(a, b);
        double pk = static_cast<double>(k + 1);
        double block = hi == 0.0 ? 0.0
                     : lo == 0.0 ? hi
                                 : hi * std::pow(1.0 + std::pow(lo / hi, pk), 1.0 / pk);
        acc.add(block);
      }
      return acc.value();
    }
    case SpaceKind::FiniteSupportL2: {
      PowerSum acc(2.0);
      for (Index i = 1; i <= limit; ++i) acc.add(coord(i));
      return acc.value();
    }
  }
  throw OutOfRange("unhandled space kind");
}

}  // namespace detail

inline double norm(const SpaceSpec& space, const FiniteVector& x) {
  return detail::norm_kernel(space, x.size(), [&](Index i) { return x.coord(i); });
}

// How far a certificate-backed norm evaluation may sit from the true value.
// Explicit-support vectors evaluate exactly (up to rounding), tolerance 0.
inline double norm_tail_tolerance(const SpaceSpec& space, const TailVector& x) {
  if (x.has_explicit_support()) return 0.0;
  const TailCertificate& c = *x.certificate();
  double abs_ok = std::isfinite(c.tail_abs_sum) ? c.tail_abs_sum : kInf;
  double sq_ok = std::isfinite(c.tail_sq_sum) ? std::sqrt(c.tail_sq_sum) : kInf;
  double tol = kInf;
  switch (space.kind()) {
    case SpaceKind::LpSequence:
      // ||tail||_p <= ||tail||_1 for p >= 1, and <= ||tail||_2 for p >= 2.
      tol = abs_ok;
      if (space.p() >= 2.0) tol = std::min(tol, sq_ok);
      break;
    case SpaceKind::ConvexL1Perturbed:
      // l1 part plus the quadratic part, whose tail is dominated by either bound.
      if (std::isfinite(abs_ok)) tol = abs_ok + std::min(sq_ok, abs_ok);
      break;
    case SpaceKind::NestedPairL2:
      // Perturbing coordinates moves each pair block by at most the l2 mass
      // added to it (l^{k+1} <= l^2 for k >= 1), and the outer stage is l2.
      tol = sq_ok;
      break;
    case SpaceKind::Euclidean:
    case SpaceKind::FiniteSupportL2:
      throw UnsupportedVectorKind(space.to_string() + " cannot consume a tail certificate");
  }
  if (!std::isfinite(tol))
    throw UnsupportedVectorKind("tail certificate lacks the summability bound " +
                                std::string("required by ") + space.to_string());
  return tol;
}

inline double norm(const SpaceSpec& space, const TailVector& x) {
  if (!x.has_explicit_support()) norm_tail_tolerance(space, x);  // admissibility gate
  return detail::norm_kernel(space, x.eval_limit(), [&](Index i) { return x.coord(i); });
}

// Modulus of convexity of any Hilbert-norm space: delta(eps) = 2 - sqrt(4 - eps^2),
// written as eps^2 / (2 + sqrt(4 - eps^2)) so small eps does not cancel.
inline double hilbert_modulus_closed_form(double epsilon) {
  if (!std::isfinite(epsilon) || !(epsilon > 0.0) || epsilon > 2.0)
    throw InvalidEpsilon("epsilon must lie in (0, 2]");
  return epsilon * epsilon / (2.0 + std::sqrt(4.0 - epsilon * epsilon));
}

inline double gamma_from_delta(double delta) {
  if (!std::isfinite(delta) || delta < 0.0 || delta > 2.0)
    throw OutOfRange("delta must lie in [0, 2]");
  return 1.0 - delta / 2.0;
}

struct ConvexityEstimate {
  double epsilon = 0.0;
  // Upper bound on the true modulus: 2 minus the largest ||u+v|| found among
  // eligible unit pairs.  Witness-derived, so never a lower-bound certificate.
  double delta_hat = 2.0;
  double gamma = 0.0;
  std::size_t samples = 0;
  std::optional<std::pair<FiniteVector, FiniteVector>> witness;
  // Positions of the witness pair within the probed point list, when the
  // estimate came from subset_uniform_convexity_probe.
  std::optional<std::pair<std::size_t, std::size_t>> witness_source;
};

struct ModulusSearchOptions {
  // Sampling dimension; 0 picks the space dimension (Euclidean) or 8.
  Index dim = 0;
  // Restrict sampled support to this 1-based inclusive coordinate range.
  std::optional<std::pair<Index, Index>> support_window;
  int refine_rounds = 24;
};

namespace detail {

struct UnitSampler {
  const SpaceSpec& space;
  Index lo, hi;

  FiniteVector operator()(Rng& rng) const {
    for (int attempt = 0; attempt < 64; ++attempt) {
      std::vector<double> c(static_cast<std::size_t>(hi), 0.0);
      for (Index i = lo; i <= hi; ++i) c[static_cast<std::size_t>(i - 1)] = rng.normal();
      FiniteVector v{std::move(c)};
      double n = norm(space, v);
      if (n > 1e-300) return (1.0 / n) * v;
    }
    throw GeneratorFailure(0, "unit sampling kept producing zero vectors");
  }
};

inline Index modulus_sample_dim(const SpaceSpec& space, const ModulusSearchOptions& opts) {
  if (opts.support_window) return opts.support_window->second;
  if (opts.dim > 0) return opts.dim;
  return space.kind() == SpaceKind::Euclidean ? space.dim() : 8;
}

}  // namespace detail

// Seeded search for an upper bound on the modulus of convexity: sample unit
// pairs with direction gap >= epsilon, keep the largest ||u+v||, then refine
// the best pair by coordinate descent.  Half the budget goes to independent
// pairs, half to pairs steered onto the gap boundary, where the constrained
// maximum lives.  Deterministic for a fixed seed.
inline ConvexityEstimate modulus_of_convexity(const SpaceSpec& space, double epsilon,
                                              std::size_t budget, std::uint64_t seed,
                                              const ModulusSearchOptions& opts = {}) {
  if (!std::isfinite(epsilon) || !(epsilon > 0.0) || epsilon > 2.0)
    throw InvalidEpsilon("epsilon must lie in (0, 2]");
  if (budget < 1) throw OutOfRange("sample budget must be >= 1");

  Index hi = detail::modulus_sample_dim(space, opts);
  Index lo = opts.support_window ? opts.support_window->first : 1;
  if (lo < 1 || hi < lo) throw OutOfRange("bad support window");
  detail::UnitSampler sample{space, lo, hi};

  Rng rng = derive_rng(seed, 0xA11CE);
  double best_s = -1.0;
  FiniteVector best_u, best_v;
  auto consider = [&](const FiniteVector& u, const FiniteVector& v) {
    if (norm(space, u - v) < epsilon) return;
    double s = norm(space, u + v);
    if (s > best_s) {
      best_s = s;
      best_u = u;
      best_v = v;
    }
  };

  // An antipodal pair is eligible at every epsilon, so a witness always exists.
  {
    FiniteVector u = sample(rng);
    consider(u, -1.0 * u);
  }

  for (std::size_t k = 0; k < budget; ++k) {
    FiniteVector u = sample(rng);
    FiniteVector w = sample(rng);
    if (k % 2 == 0) {
      consider(u, w);
      continue;
    }
    // Steered sample: walk v(t) = normalize((1-t)u + tw) from u toward w and
    // bisect t so the gap lands just past epsilon.
    auto at = [&](double t) -> std::optional<FiniteVector> {
      FiniteVector m = (1.0 - t) * u + t * w;
      double n = norm(space, m);
      if (n < 1e-12) return std::nullopt;
      return (1.0 / n) * m;
    };
    auto gap_at = [&](double t) -> double {
      auto v = at(t);
      return v ? norm(space, u - *v) : 2.0;
    };
    if (gap_at(1.0) < epsilon) {
      consider(u, w);  // whole segment too close; nothing to steer onto
      continue;
    }
    double t_lo = 0.0, t_hi = 1.0;
    for (int it = 0; it < 50; ++it) {
      double mid = 0.5 * (t_lo + t_hi);
      (gap_at(mid) >= epsilon ? t_hi : t_lo) = mid;
    }
    if (auto v = at(t_hi)) consider(u, *v);
  }

  // Coordinate descent on the winning pair; the step halves when a sweep stalls.
  if (best_s >= 0.0) {
    double step = 0.25;
    for (int round = 0; round < opts.refine_rounds; ++round) {
      bool improved = false;
      for (int which = 0; which < 2; ++which) {
        for (Index i = lo; i <= hi; ++i) {
          for (double sgn : {1.0, -1.0}) {
            FiniteVector cand = (which == 0 ? best_u : best_v) + sgn * step * FiniteVector::basis(i);
            double n = norm(space, cand);
            if (n < 1e-300) continue;
            cand = (1.0 / n) * cand;
            const FiniteVector& u = which == 0 ? cand : best_u;
            const FiniteVector& v = which == 0 ? best_v : cand;
            if (norm(space, u - v) < epsilon) continue;
            double s = norm(space, u + v);
            if (s > best_s) {
              best_s = s;
              best_u = u;
              best_v = v;
              improved = true;
            }
          }
        }
      }
      if (!improved) step *= 0.5;
    }
  }

  ConvexityEstimate est;
  est.epsilon = epsilon;
  est.delta_hat = std::clamp(2.0 - best_s, 0.0, 2.0);
  est.gamma = gamma_from_delta(est.delta_hat);
  est.samples = budget;
  if (best_s >= 0.0) est.witness = std::make_pair(best_u, best_v);
  return est;
}

// Modulus estimates across an ascending epsilon grid, sharing one sample pool
// so the results are monotone by construction: a witness found for a larger
// epsilon is eligible for every smaller one, and the fold below applies it.
inline std::vector<ConvexityEstimate> modulus_profile(const SpaceSpec& space,
                                                      std::span<const double> eps_grid,
                                                      std::size_t budget, std::uint64_t seed,
                                                      const ModulusSearchOptions& opts = {}) {
  std::vector<ConvexityEstimate> out;
  out.reserve(eps_grid.size());
  for (double eps : eps_grid) out.push_back(modulus_of_convexity(space, eps, budget, seed, opts));
  for (std::size_t i = out.size(); i-- > 1;) {
    ConvexityEstimate& lower = out[i - 1];
    const ConvexityEstimate& upper = out[i];
    if (upper.delta_hat < lower.delta_hat) {
      lower.delta_hat = upper.delta_hat;
      lower.gamma = upper.gamma;
      lower.witness = upper.witness;
    }
  }
  return out;
}

// Random unit vector of the given sampling dimension; handy for property tests.
inline FiniteVector random_unit(const SpaceSpec& space, Rng& rng, Index dim) {
  if (dim < 1) throw OutOfRange("dimension must be >= 1");
  return detail::UnitSampler{space, 1, dim}(rng);
}

}  // namespace fekete

#endif

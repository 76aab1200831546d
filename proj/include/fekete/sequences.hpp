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
    Deterministic sequence generators.

    Each construction that the checkers exercise lives here: the planar
    spiral with slowly decaying amplitude excess (exact and generalized
    forms), the scaled basis sequence in the perturbed-l1 space, the
    witness pairs of the nested-pair space, the double-exponential
    sequence of the finite-support space, the alternating two-direction
    family, and a seeded linear-plus-noise positive control.

    A SequenceFamily packages a generator with its ambient space under a
    canonical name; parse_family() maps the command-line grammar onto one.
*/

#ifndef FEKETE_SEQUENCES_HPP
#define FEKETE_SEQUENCES_HPP

#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "fekete/errors.hpp"
#include "fekete/numeric.hpp"
#include "fekete/random.hpp"
#include "fekete/spaces.hpp"
#include "fekete/vectors.hpp"

namespace fekete {

// ---------------------------------------------------------------------------
// Planar spiral
// ---------------------------------------------------------------------------

struct SpiralParams {
  // Decay exponent of the amplitude excess in the generalized form:
  // s_n = (ln n)^{-amplitude_exponent}, theta_n = (ln n)^{amplitude_exponent}.
  double amplitude_exponent = 0.5;
  // true selects the exact instance s_n = ln(n+1)^{-1/2}, theta_n = (ln n)^{1/4}/100.
  bool baseline = true;
  // First index the generalized form accepts (needs ln n comfortably positive).
  Index start = 3;
};

inline double spiral_radius(Index n) {
  if (n < 1) throw OutOfRange("spiral index must be >= 1");
  double nn = static_cast<double>(n);
  return nn + nn / std::sqrt(std::log(nn + 1.0));
}

inline double spiral_angle(Index n) {
  if (n < 1) throw OutOfRange("spiral index must be >= 1");
  return std::pow(std::log(static_cast<double>(n)), 0.25) / 100.0;
}

inline FiniteVector spiral2d(Index n) {
  double r = spiral_radius(n), t = spiral_angle(n);
  return FiniteVector({r * std::cos(t), r * std::sin(t)});
}

namespace detail {
inline void validate_spiral_params(const SpiralParams& p) {
  if (!std::isfinite(p.amplitude_exponent) || !(p.amplitude_exponent > 0.0))
    throw OutOfRange("amplitude exponent must be > 0");
  if (p.start < 2) throw OutOfRange("generalized spiral start index must be >= 2");
}
}  // namespace detail

inline double spiral_general_radius(Index n, const SpiralParams& params) {
  detail::validate_spiral_params(params);
  if (n < params.start) throw IndexBelowStart("index below spiral start");
  if (params.baseline) return spiral_radius(n);
  double nn = static_cast<double>(n);
  return nn + nn * std::pow(std::log(nn), -params.amplitude_exponent);
}

inline double spiral_general_angle(Index n, const SpiralParams& params) {
  detail::validate_spiral_params(params);
  if (n < params.start) throw IndexBelowStart("index below spiral start");
  if (params.baseline) return spiral_angle(n);
  return std::pow(std::log(static_cast<double>(n)), params.amplitude_exponent);
}

inline FiniteVector spiral2d_general(Index n, const SpiralParams& params) {
  double r = spiral_general_radius(n, params);
  double t = spiral_general_angle(n, params);
  return FiniteVector({r * std::cos(t), r * std::sin(t)});
}

// ---------------------------------------------------------------------------
// Scaled basis sequence: v_n = n e_n in the perturbed-l1 space
// ---------------------------------------------------------------------------

inline TailVector scaled_basis(Index n) {
  if (n < 1) throw OutOfRange("index must be >= 1");
  return TailVector::with_support(
      [n](Index i) { return i == n ? static_cast<double>(n) : 0.0; }, n);
}

// ---------------------------------------------------------------------------
// Nested-pair witnesses: v_k = (e_{2k-1}+e_{2k})/2^{1/(k+1)} and the same
// with a minus sign.  Both are unit vectors; their sum and difference have
// norm 2^{1-1/(k+1)}, which creeps up to 2.
// ---------------------------------------------------------------------------

inline std::pair<TailVector, TailVector> uc_witness_pair(Index k) {
  if (k < 1) throw OutOfRange("index must be >= 1");
  double c = std::exp2(-1.0 / static_cast<double>(k + 1));
  TailVector v = TailVector::with_support(
      [k, c](Index i) { return (i == 2 * k - 1 || i == 2 * k) ? c : 0.0; }, 2 * k);
  TailVector w = TailVector::with_support(
      [k, c](Index i) { return i == 2 * k - 1 ? c : (i == 2 * k ? -c : 0.0); }, 2 * k);
  return {std::move(v), std::move(w)};
}

// ---------------------------------------------------------------------------
// Double-exponential sequence in the finite-support space
// ---------------------------------------------------------------------------

struct IncompleteParams {
  // Base used for both logarithms in "log log(10n)"; empty means natural.
  std::optional<double> log_base{};
};

namespace detail {
inline double loglog_10n(Index n, const IncompleteParams& params) {
  double x = 10.0 * static_cast<double>(n);
  if (!params.log_base) return std::log(std::log(x));
  double b = *params.log_base;
  if (!std::isfinite(b) || !(b > 1.0)) throw OutOfRange("log base must be > 1");
  double lb = std::log(b);
  double inner = std::log(x) / lb;
  if (!(inner > 0.0)) throw OutOfRange("log base makes log(10n) nonpositive");
  return std::log(inner) / lb;
}
}  // namespace detail

// c_n = n (1 + 10 / loglog(10n)); c_n/n decreases toward 1.
inline double incomplete_coeff(Index n, const IncompleteParams& params = {}) {
  if (n < 1) throw OutOfRange("index must be >= 1");
  double ll = detail::loglog_10n(n, params);
  if (!(ll > 0.0)) throw OutOfRange("log base makes log log(10n) nonpositive");
  return static_cast<double>(n) * (1.0 + 10.0 / ll);
}

// Coordinate m of the n-th vector is c_n / 2^(2^m) for m <= n, else 0.
// 2^(2^m) leaves double range at m = 11, where the coordinate is an exact 0.
inline TailVector incomplete_space_seq(Index n, const IncompleteParams& params = {}) {
  double c = incomplete_coeff(n, params);
  return TailVector::with_support(
      [n, c](Index m) {
        if (m > n || m > 10) return 0.0;
        return std::ldexp(c, -(1 << m));
      },
      std::min<Index>(n, 10));
}

// ---------------------------------------------------------------------------
// Alternating two-direction family (the convexity-free counterexample)
// ---------------------------------------------------------------------------

inline FiniteVector nonconvex_alternating(Index n, const FiniteVector& u, const FiniteVector& v,
                                          const SpaceSpec& space = SpaceSpec::lp_sequence(1.0)) {
  if (n < 1) throw OutOfRange("index must be >= 1");
  if (std::fabs(norm(space, u) - 1.0) > 1e-12 || std::fabs(norm(space, v) - 1.0) > 1e-12)
    throw NonUnitInput("both directions must be unit vectors in the ambient space");
  if (u == v) throw NonUnitInput("the two directions must differ");
  double s = static_cast<double>(n);
  return n % 2 == 0 ? s * v : s * u;
}

// ---------------------------------------------------------------------------
// Positive control: n w plus a seeded perturbation of norm <= bound
// ---------------------------------------------------------------------------

inline FiniteVector linear_plus_bounded(Index n, const FiniteVector& w, double bound,
                                        std::uint64_t seed) {
  if (n < 1) throw OutOfRange("index must be >= 1");
  if (!std::isfinite(bound) || bound < 0.0) throw OutOfRange("perturbation bound must be >= 0");
  FiniteVector base = static_cast<double>(n) * w;
  if (bound == 0.0) return base;
  Index dim = std::max<Index>(w.last_nonzero(), 2);
  Rng rng = derive_rng(seed, static_cast<std::uint64_t>(n));
  std::vector<double> dir = gaussian_coords(rng, dim);
  double nd = 0.0;
  for (double x : dir) nd += x * x;
  nd = std::sqrt(nd);
  if (nd < 1e-300) return base;
  double radius = bound * rng.uniform();
  std::vector<double> p(dir.size());
  for (std::size_t i = 0; i < dir.size(); ++i) p[i] = dir[i] * (radius / nd);
  return base + FiniteVector(std::move(p));
}

// ---------------------------------------------------------------------------
// Families
// ---------------------------------------------------------------------------

template <class V>
struct SequenceFamily {
  std::string name;       // canonical grammar form; reparsing it reproduces the family
  SpaceSpec space;
  std::function<V(Index)> generate;
};

using FiniteFamily = SequenceFamily<FiniteVector>;
using TailFamily = SequenceFamily<TailVector>;
using AnyFamily = std::variant<FiniteFamily, TailFamily>;

inline FiniteFamily spiral_family() {
  return {"spiral2d", SpaceSpec::euclidean(2), [](Index n) { return spiral2d(n); }};
}

// The generalized spiral is only defined from its start index on; a family
// must be total, so indices below the start ramp up linearly along the
// starting direction, scaled so that the ramp meets the spiral with norm
// equality at the start index.  The ramp is artifact plumbing, not part of
// the construction, and is documented in the README.
inline FiniteFamily spiral_general_family(double delta) {
  SpiralParams params{delta, false, 3};
  detail::validate_spiral_params(params);
  double t0 = spiral_general_angle(params.start, params);
  double slope = spiral_general_radius(params.start, params) / static_cast<double>(params.start);
  auto gen = [params, t0, slope](Index n) {
    if (n >= params.start) return spiral2d_general(n, params);
    double s = slope * static_cast<double>(n);
    return FiniteVector({s * std::cos(t0), s * std::sin(t0)});
  };
  return {"spiral2d-general:delta=" + format_double(delta), SpaceSpec::euclidean(2), gen};
}

inline TailFamily scaled_basis_family() {
  return {"scaled-basis", SpaceSpec::convex_l1_perturbed(), [](Index n) { return scaled_basis(n); }};
}

// Interleaves the witness pairs: odd n gives v_{(n+1)/2}, even n gives w_{n/2}.
inline TailFamily uc_witness_family() {
  auto gen = [](Index n) {
    Index k = (n + 1) / 2;
    auto [v, w] = uc_witness_pair(k);
    return n % 2 == 1 ? v : w;
  };
  return {"uc-witness", SpaceSpec::nested_pair_l2(), gen};
}

inline TailFamily incomplete_family(const IncompleteParams& params = {}) {
  return {"incomplete", SpaceSpec::finite_support_l2(),
          [params](Index n) { return incomplete_space_seq(n, params); }};
}

// Canonical instance of the alternating family: l1 with the first two basis
// directions, where subadditivity even holds with equality.
inline FiniteFamily nonconvex_family() {
  FiniteVector u = FiniteVector::basis(1);
  FiniteVector v = FiniteVector::basis(2);
  SpaceSpec space = SpaceSpec::lp_sequence(1.0);
  return {"nonconvex-alt", space,
          [u, v, space](Index n) { return nonconvex_alternating(n, u, v, space); }};
}

inline FiniteFamily linear_family(const FiniteVector& w, double bound, std::uint64_t seed) {
  if (!std::isfinite(bound) || bound < 0.0) throw OutOfRange("perturbation bound must be >= 0");
  Index dim = std::max<Index>(w.last_nonzero(), 2);
  std::string name = "linear:bound=" + format_double(bound) + ",seed=" + std::to_string(seed);
  return {name, SpaceSpec::euclidean(dim),
          [w, bound, seed](Index n) { return linear_plus_bounded(n, w, bound, seed); }};
}

namespace detail {

inline std::map<std::string, std::string> parse_kv_args(const std::string& args,
                                                        const char* context) {
  std::map<std::string, std::string> kv;
  std::size_t pos = 0;
  while (pos < args.size()) {
    std::size_t comma = args.find(',', pos);
    std::string item = args.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    pos = comma == std::string::npos ? args.size() : comma + 1;
    std::size_t eq = item.find('=');
    if (eq == std::string::npos || eq == 0)
      throw ParseError(std::string(context) + ": expected key=value, got '" + item + "'");
    std::string key = item.substr(0, eq);
    if (kv.count(key)) throw ParseError(std::string(context) + ": duplicate key '" + key + "'");
    kv[key] = item.substr(eq + 1);
  }
  return kv;
}

}  // namespace detail

// Family grammar: spiral2d | spiral2d-general:delta=<real> | scaled-basis |
// uc-witness | incomplete | nonconvex-alt | linear:bound=<real>,seed=<int>.
inline AnyFamily parse_family(std::string_view text) {
  std::string s(text);
  std::string head = s, args;
  if (auto pos = s.find(':'); pos != std::string::npos) {
    head = s.substr(0, pos);
    args = s.substr(pos + 1);
  }
  auto no_args = [&](AnyFamily fam) {
    if (!args.empty()) throw ParseError("family '" + head + "' takes no parameters");
    return fam;
  };
  if (head == "spiral2d") return no_args(spiral_family());
  if (head == "scaled-basis") return no_args(scaled_basis_family());
  if (head == "uc-witness") return no_args(uc_witness_family());
  if (head == "incomplete") return no_args(incomplete_family());
  if (head == "nonconvex-alt") return no_args(nonconvex_family());
  if (head == "spiral2d-general") {
    auto kv = detail::parse_kv_args(args, "spiral2d-general");
    auto it = kv.find("delta");
    if (it == kv.end()) throw ParseError("spiral2d-general requires delta=<real>");
    double delta = parse_double_strict(it->second, "delta");
    kv.erase(it);
    if (!kv.empty()) throw ParseError("spiral2d-general: unknown key '" + kv.begin()->first + "'");
    if (!std::isfinite(delta) || !(delta > 0.0)) throw ParseError("delta must be > 0");
    return spiral_general_family(delta);
  }
  if (head == "linear") {
    auto kv = detail::parse_kv_args(args, "linear");
    auto bit = kv.find("bound");
    auto sit = kv.find("seed");
    if (bit == kv.end() || sit == kv.end())
      throw ParseError("linear requires bound=<real>,seed=<int>");
    double bound = parse_double_strict(bit->second, "bound");
    std::uint64_t seed = parse_u64_strict(sit->second, "seed");
    kv.erase(bit);
    kv.erase(sit);
    if (!kv.empty()) throw ParseError("linear: unknown key '" + kv.begin()->first + "'");
    if (!std::isfinite(bound) || bound < 0.0) throw ParseError("bound must be >= 0");
    return linear_family(FiniteVector::basis(1), bound, seed);
  }
  throw ParseError("unknown family: '" + s + "'");
}

inline const std::string& family_name(const AnyFamily& fam) {
  return std::visit([](const auto& f) -> const std::string& { return f.name; }, fam);
}

inline const SpaceSpec& family_space(const AnyFamily& fam) {
  return std::visit([](const auto& f) -> const SpaceSpec& { return f.space; }, fam);
}

}  // namespace fekete

#endif

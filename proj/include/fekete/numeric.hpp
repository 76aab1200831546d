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
    Scalar helpers shared by the norm and report code: overflow-safe power
    sums, log-domain accumulation for geometrically weighted series, and a
    locale-independent float formatter used everywhere a number is printed.
*/

#ifndef FEKETE_NUMERIC_HPP
#define FEKETE_NUMERIC_HPP

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "fekete/errors.hpp"

namespace fekete {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// exp(x) underflows to subnormal mush near -745; anything below is an exact
// zero for our purposes (the weighted series this guards converge brutally
// fast, so the dropped mass is far below one ulp of the retained part).
inline constexpr double kLogFloor = -745.0;

inline bool is_finite(double x) { return std::isfinite(x); }

inline void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) throw NonFiniteCoordinate(std::string(what) + " is not finite");
}

// (sum_i |x_i|^p)^(1/p) without overflow or underflow, via scaling by the
// running maximum.  Works for any p >= 1; p == 2 is the common case.
class PowerSum {
 public:
  explicit PowerSum(double p) : p_(p) {
    if (!(p >= 1.0) || !std::isfinite(p)) throw OutOfRange("power sum needs finite p >= 1");
  }

  void add(double x) {
    double a = std::fabs(x);
    if (a == 0.0) return;
    if (!std::isfinite(a)) throw NonFiniteCoordinate("power sum fed a non-finite term");
    if (a > scale_) {
      sum_ = sum_ * std::pow(scale_ / a, p_) + 1.0;
      scale_ = a;
    } else {
      sum_ += std::pow(a / scale_, p_);
    }
  }

  double value() const {
    if (scale_ == 0.0) return 0.0;
    if (p_ == 1.0) return scale_ * sum_;
    if (p_ == 2.0) return scale_ * std::sqrt(sum_);
    return scale_ * std::pow(sum_, 1.0 / p_);
  }

  bool empty() const { return scale_ == 0.0; }

 private:
  double p_;
  double scale_ = 0.0;
  double sum_ = 0.0;
};

// log(sum_i exp(t_i)) with the usual max shift; -inf for an empty list.
inline double log_sum_exp(std::span<const double> logs) {
  double hi = -kInf;
  for (double t : logs) hi = std::max(hi, t);
  if (hi == -kInf) return -kInf;
  double acc = 0.0;
  for (double t : logs) acc += std::exp(t - hi);
  return hi + std::log(acc);
}

// exp with the hard underflow floor applied.
inline double exp_or_zero(double logx) {
  return logx < kLogFloor ? 0.0 : std::exp(logx);
}

// Shortest-faithful-ish fixed formatting: 17 significant digits round-trip
// any double, and snprintf with the "C" numeric locale keeps the byte stream
// independent of the host environment.
inline std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return std::string(buf);
}

inline std::string format_index(Index n) { return std::to_string(n); }

// Parse helpers for the tiny textual grammars (family and band expressions).
// Strict: the whole token must be consumed.
inline double parse_double_strict(const std::string& tok, const char* what) {
  try {
    std::size_t used = 0;
    double v = std::stod(tok, &used);
    if (used != tok.size()) throw ParseError(std::string("trailing characters in ") + what + ": '" + tok + "'");
    return v;
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception&) {
    throw ParseError(std::string("cannot parse ") + what + ": '" + tok + "'");
  }
}

inline Index parse_index_strict(const std::string& tok, const char* what) {
  try {
    std::size_t used = 0;
    long long v = std::stoll(tok, &used);
    if (used != tok.size()) throw ParseError(std::string("trailing characters in ") + what + ": '" + tok + "'");
    return static_cast<Index>(v);
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception&) {
    throw ParseError(std::string("cannot parse ") + what + ": '" + tok + "'");
  }
}

inline std::uint64_t parse_u64_strict(const std::string& tok, const char* what) {
  try {
    std::size_t used = 0;
    unsigned long long v = std::stoull(tok, &used);
    if (used != tok.size()) throw ParseError(std::string("trailing characters in ") + what + ": '" + tok + "'");
    return static_cast<std::uint64_t>(v);
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception&) {
    throw ParseError(std::string("cannot parse ") + what + ": '" + tok + "'");
  }
}

}  // namespace fekete

#endif

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

// Constraint bands: which index pairs (n, m) a subadditivity scan covers.
// Full covers everything, a ratio band keeps lo*n <= m <= hi*n, and Custom
// wraps a user predicate.  The inequality being checked is symmetric in
// (n, m), so checkers test a pair when either orientation is a member.

#ifndef FEKETE_BAND_HPP
#define FEKETE_BAND_HPP

#include <cmath>
#include <functional>
#include <string>
#include <string_view>
#include <utility>

#include "fekete/errors.hpp"
#include "fekete/numeric.hpp"

namespace fekete {

class ConstraintBand {
 public:
  enum class Kind { Full, Ratio, Custom };

  static ConstraintBand full() { return ConstraintBand(Kind::Full, 0, 0, nullptr, "full"); }

  static ConstraintBand ratio(double lo, double hi) {
    if (!std::isfinite(lo) || !std::isfinite(hi) || lo < 0.0 || hi < lo || hi <= 0.0)
      throw OutOfRange("ratio band needs 0 <= lo <= hi with hi > 0");
    return ConstraintBand(Kind::Ratio, lo, hi, nullptr,
                          "ratio:" + format_double(lo) + ":" + format_double(hi));
  }

  static ConstraintBand custom(std::function<bool(Index, Index)> member,
                               std::string label = "custom") {
    if (!member) throw OutOfRange("custom band needs a membership predicate");
    return ConstraintBand(Kind::Custom, 0, 0, std::move(member), std::move(label));
  }

  Kind kind() const { return kind_; }
  double lo() const { return lo_; }
  double hi() const { return hi_; }

  // Raw membership of the oriented pair.
  bool member(Index n, Index m) const {
    switch (kind_) {
      case Kind::Full: return true;
      case Kind::Ratio: {
        double nn = static_cast<double>(n), mm = static_cast<double>(m);
        return lo_ * nn <= mm && mm <= hi_ * nn;
      }
      case Kind::Custom: return member_(n, m);
    }
    return false;
  }

  // Symmetrized membership, the form every checker uses.
  bool contains_pair(Index n, Index m) const { return member(n, m) || member(m, n); }

  const std::string& to_string() const { return label_; }

  // Accepts "full" or "ratio:<lo>:<hi>".  Custom bands are code-only.
  static ConstraintBand parse(std::string_view text) {
    std::string s(text);
    if (s == "full") return full();
    if (s.rfind("ratio:", 0) == 0) {
      std::string rest = s.substr(6);
      auto colon = rest.find(':');
      if (colon == std::string::npos) throw ParseError("ratio band needs ratio:<lo>:<hi>");
      double lo = parse_double_strict(rest.substr(0, colon), "band lo");
      double hi = parse_double_strict(rest.substr(colon + 1), "band hi");
      try {
        return ratio(lo, hi);
      } catch (const OutOfRange& e) {
        throw ParseError(e.what());
      }
    }
    throw ParseError("unknown band: '" + s + "' (expected full or ratio:<lo>:<hi>)");
  }

 private:
  ConstraintBand(Kind k, double lo, double hi, std::function<bool(Index, Index)> member,
                 std::string label)
      : kind_(k), lo_(lo), hi_(hi), member_(std::move(member)), label_(std::move(label)) {}

  Kind kind_;
  double lo_, hi_;
  std::function<bool(Index, Index)> member_;
  std::string label_;
};

}  // namespace fekete

#endif

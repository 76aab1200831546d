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

// Exact-arithmetic oracles for the perturbed-l1 norm, independent of every
// floating-point code path in the library.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

#include "fekete/errors.hpp"

namespace oracle {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::rational<BigInt>;

inline BigInt pow16(fekete::Index e) {
  BigInt r = 1;
  for (fekete::Index i = 0; i < e; ++i) r *= 16;
  return r;
}

// Subadditivity of v_n = n e_n under the norm sum|a_i| + sqrt(sum a_i^2/16^i).
//
// For n != m the inequality ||v_{n+m}|| <= ||v_n + v_m|| reduces, after
// cancelling the l1 parts and squaring the nonnegative remainders, to
//
//     (n+m)^2 <= n^2 16^m + m^2 16^n
//
// which is a statement about integers.  For n == m both sides stay rational
// without squaring: it reduces to 16^{-2n} <= 16^{-n}.
inline bool scaled_basis_subadditive_exact(fekete::Index n, fekete::Index m) {
  if (n == m) return true;  // 16^{-2n} <= 16^{-n} for n >= 1
  BigInt lhs = BigInt(n + m) * BigInt(n + m);
  BigInt rhs = BigInt(n) * BigInt(n) * pow16(m) + BigInt(m) * BigInt(m) * pow16(n);
  return lhs <= rhs;
}

// Radicand of the quadratic perturbation for a vector given as exact
// rational coordinates: sum a_i^2 / 16^i.
inline Rational perturbation_radicand(const std::vector<Rational>& coords) {
  Rational sum(0);
  for (std::size_t i = 0; i < coords.size(); ++i)
    sum += coords[i] * coords[i] / Rational(pow16(static_cast<fekete::Index>(i) + 1));
  return sum;
}

}  // namespace oracle

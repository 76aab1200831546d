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
    Two vector representations cover every sequence space in the library.

    FiniteVector is a dense coordinate block, 1-indexed, implicitly zero past
    its stored length.  TailVector wraps a coordinate function together with a
    support bound: either an explicit last nonzero index, or a certificate
    bounding the tail mass beyond a cutoff.  Norm code consumes both; probes
    that need concrete coordinates materialize the explicit-support case and
    reject certificates rather than silently truncate.
*/

#ifndef FEKETE_VECTORS_HPP
#define FEKETE_VECTORS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "fekete/errors.hpp"
#include "fekete/numeric.hpp"

namespace fekete {

class FiniteVector {
 public:
  FiniteVector() = default;

  explicit FiniteVector(std::vector<double> coords) : coords_(std::move(coords)) {
    for (double c : coords_) require_finite(c, "coordinate");
  }

  // Unit basis vector e_i scaled by value; i is 1-based.
  static FiniteVector basis(Index i, double value = 1.0) {
    if (i < 1) throw OutOfRange("basis index must be >= 1");
    require_finite(value, "basis value");
    std::vector<double> c(static_cast<std::size_t>(i), 0.0);
    c.back() = value;
    return FiniteVector(std::move(c));
  }

  // Stored length (coordinates past it are zero).
  Index size() const { return static_cast<Index>(coords_.size()); }

  // 1-based access, total over all of N.
  double coord(Index i) const {
    if (i < 1) throw OutOfRange("coordinate index must be >= 1");
    if (i > size()) return 0.0;
    return coords_[static_cast<std::size_t>(i - 1)];
  }

  Index last_nonzero() const {
    for (Index i = size(); i >= 1; --i)
      if (coords_[static_cast<std::size_t>(i - 1)] != 0.0) return i;
    return 0;
  }

  std::span<const double> raw() const { return coords_; }

  friend bool operator==(const FiniteVector& a, const FiniteVector& b) {
    Index n = std::max(a.size(), b.size());
    for (Index i = 1; i <= n; ++i)
      if (a.coord(i) != b.coord(i)) return false;
    return true;
  }

 private:
  std::vector<double> coords_;
};

inline FiniteVector operator+(const FiniteVector& a, const FiniteVector& b) {
  Index n = std::max(a.size(), b.size());
  std::vector<double> c(static_cast<std::size_t>(n));
  for (Index i = 1; i <= n; ++i) c[static_cast<std::size_t>(i - 1)] = a.coord(i) + b.coord(i);
  return FiniteVector(std::move(c));
}

inline FiniteVector operator-(const FiniteVector& a, const FiniteVector& b) {
  Index n = std::max(a.size(), b.size());
  std::vector<double> c(static_cast<std::size_t>(n));
  for (Index i = 1; i <= n; ++i) c[static_cast<std::size_t>(i - 1)] = a.coord(i) - b.coord(i);
  return FiniteVector(std::move(c));
}

inline FiniteVector operator*(double s, const FiniteVector& a) {
  require_finite(s, "scale factor");
  std::vector<double> c(a.raw().begin(), a.raw().end());
  for (double& x : c) x *= s;
  return FiniteVector(std::move(c));
}

inline FiniteVector operator*(const FiniteVector& a, double s) { return s * a; }

// Bounds the coordinates of a TailVector beyond `cutoff`:
// |coord(i)| <= bound(i) for every i > cutoff, with precomputed upper bounds
// on the absolute and squared tail sums (set to kInf when not available).
struct TailCertificate {
  Index cutoff = 0;
  std::function<double(Index)> bound;
  double tail_abs_sum = kInf;
  double tail_sq_sum = kInf;
};

class TailVector {
 public:
  // Coordinates vanish strictly beyond `last`.
  static TailVector with_support(std::function<double(Index)> coord, Index last) {
    if (last < 0) throw OutOfRange("support bound must be >= 0");
    TailVector v;
    v.coord_ = std::move(coord);
    v.explicit_last_ = last;
    return v;
  }

  static TailVector with_certificate(std::function<double(Index)> coord, TailCertificate cert) {
    if (cert.cutoff < 0) throw OutOfRange("certificate cutoff must be >= 0");
    if (!cert.bound) throw OutOfRange("certificate needs a bound function");
    TailVector v;
    v.coord_ = std::move(coord);
    v.certificate_ = std::move(cert);
    return v;
  }

  double coord(Index i) const {
    if (i < 1) throw OutOfRange("coordinate index must be >= 1");
    if (explicit_last_ && i > *explicit_last_) return 0.0;
    return coord_(i);
  }

  bool has_explicit_support() const { return explicit_last_.has_value(); }

  // Defined only when has_explicit_support().
  Index support_last() const { return *explicit_last_; }

  const std::optional<TailCertificate>& certificate() const { return certificate_; }

  // Last index a norm evaluation must visit exactly.
  Index eval_limit() const {
    return explicit_last_ ? *explicit_last_ : certificate_->cutoff;
  }

 private:
  TailVector() = default;
  std::function<double(Index)> coord_;
  std::optional<Index> explicit_last_;
  std::optional<TailCertificate> certificate_;
};

namespace detail {
inline double tail_bound_at(const TailVector& v, Index i) {
  if (v.has_explicit_support()) return i > v.support_last() ? 0.0 : kInf;
  const TailCertificate& c = *v.certificate();
  return i > c.cutoff ? c.bound(i) : kInf;
}
}  // namespace detail

inline TailVector operator+(const TailVector& a, const TailVector& b) {
  auto coord = [a, b](Index i) { return a.coord(i) + b.coord(i); };
  if (a.has_explicit_support() && b.has_explicit_support())
    return TailVector::with_support(coord, std::max(a.support_last(), b.support_last()));
  TailCertificate cert;
  cert.cutoff = std::max(a.eval_limit(), b.eval_limit());
  cert.bound = [a, b](Index i) { return detail::tail_bound_at(a, i) + detail::tail_bound_at(b, i); };
  double a1 = a.has_explicit_support() ? 0.0 : a.certificate()->tail_abs_sum;
  double b1 = b.has_explicit_support() ? 0.0 : b.certificate()->tail_abs_sum;
  double a2 = a.has_explicit_support() ? 0.0 : a.certificate()->tail_sq_sum;
  double b2 = b.has_explicit_support() ? 0.0 : b.certificate()->tail_sq_sum;
  cert.tail_abs_sum = a1 + b1;
  // sqrt is subadditive on sums of squares, so (sqrt(a2) + sqrt(b2))^2 bounds
  // the squared tail sum of the pointwise sum.
  double s = std::sqrt(a2) + std::sqrt(b2);
  cert.tail_sq_sum = s * s;
  return TailVector::with_certificate(coord, std::move(cert));
}

inline TailVector operator*(double s, const TailVector& a) {
  require_finite(s, "scale factor");
  auto coord = [s, a](Index i) { return s * a.coord(i); };
  if (a.has_explicit_support()) return TailVector::with_support(coord, a.support_last());
  TailCertificate cert = *a.certificate();
  double m = std::fabs(s);
  auto base = cert.bound;
  cert.bound = [m, base](Index i) { return m * base(i); };
  cert.tail_abs_sum *= m;
  cert.tail_sq_sum *= m * m;
  return TailVector::with_certificate(coord, std::move(cert));
}

inline TailVector operator*(const TailVector& a, double s) { return s * a; }

inline TailVector operator-(const TailVector& a, const TailVector& b) { return a + (-1.0 * b); }

// Lift a dense block into the lazy representation.
inline TailVector as_tail(const FiniteVector& v) {
  return TailVector::with_support([v](Index i) { return v.coord(i); }, v.last_nonzero());
}

// Densify a lazily defined vector.  Only explicit support is honest to
// materialize; a certificate merely bounds what lies beyond the cutoff.
inline FiniteVector materialize(const TailVector& v) {
  if (!v.has_explicit_support())
    throw UnsupportedVectorKind("cannot materialize a vector known only through a tail certificate");
  Index n = v.support_last();
  std::vector<double> c(static_cast<std::size_t>(n));
  for (Index i = 1; i <= n; ++i) c[static_cast<std::size_t>(i - 1)] = v.coord(i);
  return FiniteVector(std::move(c));
}

}  // namespace fekete

#endif

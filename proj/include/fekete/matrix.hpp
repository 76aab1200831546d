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
    Dense matrices for the spectral-radius demonstration: CSV input, the
    Euclidean operator norm via power iteration on A^T A, and the sequence
    ||A^n||^{1/n} whose running infimum converges to the spectral radius
    because n -> ln ||A^n|| is subadditive.
*/

#ifndef FEKETE_MATRIX_HPP
#define FEKETE_MATRIX_HPP

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fekete/errors.hpp"
#include "fekete/numeric.hpp"
#include "fekete/random.hpp"
#include "fekete/verify.hpp"

namespace fekete {

// Dense row-major matrix; indices are 0-based, unlike the 1-based sequence
// coordinates, matching how the demo's loops are naturally written.
class Matrix {
 public:
  Matrix(Index rows, Index cols)
      : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows * cols), 0.0) {
    if (rows < 1 || cols < 1) throw OutOfRange("matrix dimensions must be >= 1");
  }

  static Matrix identity(Index d) {
    Matrix m(d, d);
    for (Index i = 0; i < d; ++i) m.at(i, i) = 1.0;
    return m;
  }

  Index rows() const { return rows_; }
  Index cols() const { return cols_; }

  double& at(Index r, Index c) { return a_[static_cast<std::size_t>(r * cols_ + c)]; }
  double at(Index r, Index c) const { return a_[static_cast<std::size_t>(r * cols_ + c)]; }

  bool is_zero() const {
    for (double x : a_)
      if (x != 0.0) return false;
    return true;
  }

  // Row-major CSV, no header; blank lines ignored; all rows must have the
  // same width and every entry must be finite.
  static Matrix read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open matrix file: " + path);
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      bool blank = line.find_first_not_of(" \t") == std::string::npos;
      if (blank) continue;
      std::vector<double> row;
      std::stringstream ss(line);
      std::string cell;
      while (std::getline(ss, cell, ',')) {
        cell.erase(0, cell.find_first_not_of(" \t"));
        cell.erase(cell.find_last_not_of(" \t") + 1);
        double v = parse_double_strict(cell, "matrix entry");
        if (!std::isfinite(v)) throw NonFiniteCoordinate("non-finite matrix entry in " + path);
        row.push_back(v);
      }
      if (!rows.empty() && row.size() != rows.front().size())
        throw ParseError("ragged rows in matrix file: " + path);
      rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError("matrix file is empty: " + path);
    Matrix m(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
    for (Index r = 0; r < m.rows(); ++r)
      for (Index c = 0; c < m.cols(); ++c) m.at(r, c) = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
    return m;
  }

 private:
  Index rows_, cols_;
  std::vector<double> a_;
};

inline Matrix multiply(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw OutOfRange("matrix shapes do not compose");
  Matrix out(a.rows(), b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index k = 0; k < a.cols(); ++k) {
      double aik = a.at(i, k);
      if (aik == 0.0) continue;
      for (Index j = 0; j < b.cols(); ++j) out.at(i, j) += aik * b.at(k, j);
    }
  return out;
}

// Euclidean-induced operator norm: sqrt of the top eigenvalue of A^T A by
// power iteration with Rayleigh-quotient convergence.  Two seeded starts
// guard against an unlucky start orthogonal to the top eigenspace, and five
// extra stable iterations squeeze the residual below one ulp so clean
// spectra (the demo matrices) come out exact.
inline double operator_norm_2(const Matrix& a, std::uint64_t seed = 0x0F1E2D3C4B5A6978ULL) {
  if (a.is_zero()) return 0.0;
  Index d = a.cols();
  Matrix b(d, d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) {
      double s = 0.0;
      for (Index k = 0; k < a.rows(); ++k) s += a.at(k, i) * a.at(k, j);
      b.at(i, j) = s;
    }

  double best = 0.0;
  for (std::uint64_t trial = 0; trial < 2; ++trial) {
    Rng rng = derive_rng(seed, trial);
    std::vector<double> x = gaussian_coords(rng, d);
    double nx = 0.0;
    for (double v : x) nx += v * v;
    nx = std::sqrt(nx);
    if (nx < 1e-300) continue;
    for (double& v : x) v /= nx;

    double prev = 0.0;
    int stable = 0;
    std::vector<double> y(static_cast<std::size_t>(d));
    for (int iter = 0; iter < 600; ++iter) {
      double ray = 0.0, ny = 0.0;
      for (Index i = 0; i < d; ++i) {
        double s = 0.0;
        for (Index j = 0; j < d; ++j) s += b.at(i, j) * x[static_cast<std::size_t>(j)];
        y[static_cast<std::size_t>(i)] = s;
        ray += x[static_cast<std::size_t>(i)] * s;
        ny += s * s;
      }
      ny = std::sqrt(ny);
      if (ny == 0.0) {  // landed exactly in the kernel
        prev = std::max(prev, ray);
        break;
      }
      for (Index i = 0; i < d; ++i) x[static_cast<std::size_t>(i)] = y[static_cast<std::size_t>(i)] / ny;
      stable = std::fabs(ray - prev) <= 1e-12 * std::max(ray, 1.0) ? stable + 1 : 0;
      prev = ray;
      if (stable >= 5) break;
    }
    best = std::max(best, prev);
  }
  return std::sqrt(std::max(best, 0.0));
}

struct SpectralTerm {
  Index n = 0;
  double norm = 0.0;  // ||A^n||
  double root = 0.0;  // ||A^n||^{1/n}, 0 once the powers vanish
};

struct SpectralDemoResult {
  std::vector<SpectralTerm> terms;       // n = 1..N
  std::vector<double> running_inf;       // inf of roots over the prefix
  std::optional<Index> nilpotent_at;     // first n with ||A^n|| = 0
  double radius_estimate = 0.0;          // final running infimum
  // Pairs where ln||A^{n+m}|| exceeded ln||A^n|| + ln||A^m|| beyond the
  // tolerance; lhs/rhs/margin are in log scale.
  std::vector<Violation> submult_violations;
  double submult_tolerance = 0.0;
};

// The scalar shadow of the vector story: a_n = ln ||A^n|| is subadditive, so
// ||A^n||^{1/n} converges to its infimum, the spectral radius.  Roots are
// taken as exp2(log2(norm)/n), which is exact whenever the norm is a power
// of two, as in the demo matrices.
inline SpectralDemoResult spectral_radius_demo(const Matrix& a, Index n_max,
                                               double submult_tolerance = 1e-9) {
  if (a.rows() != a.cols()) throw OutOfRange("spectral demo needs a square matrix");
  if (n_max < 1) throw OutOfRange("N must be >= 1");

  SpectralDemoResult out;
  out.submult_tolerance = submult_tolerance;
  std::vector<double> norms(static_cast<std::size_t>(n_max) + 1, 0.0);

  Matrix p = a;
  for (Index n = 1; n <= n_max; ++n) {
    double nn = p.is_zero() ? 0.0 : operator_norm_2(p);
    norms[static_cast<std::size_t>(n)] = nn;
    if (nn == 0.0) {
      if (!out.nilpotent_at) out.nilpotent_at = n;
      break;  // every later power is zero too
    }
    if (n < n_max) p = multiply(p, a);
  }

  double inf = kInf;
  for (Index n = 1; n <= n_max; ++n) {
    double nn = norms[static_cast<std::size_t>(n)];
    double root = nn > 0.0 ? std::exp2(std::log2(nn) / static_cast<double>(n)) : 0.0;
    inf = std::min(inf, root);
    out.terms.push_back({n, nn, root});
    out.running_inf.push_back(inf);
  }
  out.radius_estimate = out.running_inf.back();

  for (Index n = 1; 2 * n <= n_max; ++n)
    for (Index m = n; n + m <= n_max; ++m) {
      double whole = norms[static_cast<std::size_t>(n + m)];
      double left = norms[static_cast<std::size_t>(n)];
      double right = norms[static_cast<std::size_t>(m)];
      if (whole == 0.0) continue;  // lhs is -inf, never a violation
      if (left == 0.0 || right == 0.0) {
        // a vanished power reappearing is impossible; flag it loudly
        out.submult_violations.push_back({n, m, std::log(whole), -kInf, kInf});
        continue;
      }
      double lhs = std::log(whole);
      double rhs = std::log(left) + std::log(right);
      if (lhs - rhs > submult_tolerance)
        out.submult_violations.push_back({n, m, lhs, rhs, lhs - rhs});
    }
  detail::sort_violations(out.submult_violations);
  return out;
}

}  // namespace fekete

#endif

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

// Self-contained deterministic randomness.  splitmix64 for the raw stream and
// an explicit Box-Muller transform for normals, because std::normal_distribution
// is free to vary across standard library versions and the reports here must be
// byte-identical wherever they run.

#ifndef FEKETE_RANDOM_HPP
#define FEKETE_RANDOM_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "fekete/errors.hpp"

namespace fekete {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform on (0, 1]; never returns 0, so it is safe inside log().
  double uniform_pos() {
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1p-53;
  }

  // Uniform on [0, 1).
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Standard normal via Box-Muller; the second value of each pair is cached.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform_pos();
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

 private:
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Independent child stream: mixes the stream id into the seed so that
// per-index or per-thread generators never overlap.
inline Rng derive_rng(std::uint64_t seed, std::uint64_t stream) {
  Rng mixer(seed ^ (0x6A09E667F3BCC909ULL + stream * 0x9E3779B97F4A7C15ULL));
  return Rng(mixer.next_u64());
}

inline std::vector<double> gaussian_coords(Rng& rng, Index dim) {
  if (dim < 1) throw OutOfRange("dimension must be >= 1");
  std::vector<double> c(static_cast<std::size_t>(dim));
  for (double& x : c) x = rng.normal();
  return c;
}

}  // namespace fekete

#endif

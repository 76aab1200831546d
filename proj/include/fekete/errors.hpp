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

#ifndef FEKETE_ERRORS_HPP
#define FEKETE_ERRORS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace fekete {

using Index = std::int64_t;

// A coordinate or input value was NaN or infinite where a finite number is required.
struct NonFiniteCoordinate : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// The requested operation cannot accept this vector representation,
// e.g. a lazily defined tail where explicit finite support is required.
struct UnsupportedVectorKind : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Convexity parameters must satisfy 0 < epsilon <= 2.
struct InvalidEpsilon : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A numeric argument fell outside its documented range.
struct OutOfRange : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A generator was asked for an index below the first one it defines.
struct IndexBelowStart : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// An input that must lie on the unit sphere does not.
struct NonUnitInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A pair of indices violates the constraint band of the operation.
struct BandViolation : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A probe over a point set met the zero vector, which has no direction.
struct ZeroVectorInSet : std::invalid_argument {
  std::size_t index;
  ZeroVectorInSet(std::size_t i, const std::string& what)
      : std::invalid_argument(what), index(i) {}
};

// A sequence generator failed while producing the element at `index`.
struct GeneratorFailure : std::runtime_error {
  Index index;
  GeneratorFailure(Index i, const std::string& what)
      : std::runtime_error(what), index(i) {}
};

// Malformed textual input: a family or band expression, a config file, a CSV matrix.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace fekete

#endif

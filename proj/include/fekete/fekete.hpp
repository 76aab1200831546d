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

// Umbrella header for the whole library.

#ifndef FEKETE_FEKETE_HPP
#define FEKETE_FEKETE_HPP

#include "fekete/analysis.hpp"
#include "fekete/band.hpp"
#include "fekete/errors.hpp"
#include "fekete/matrix.hpp"
#include "fekete/numeric.hpp"
#include "fekete/parallel.hpp"
#include "fekete/random.hpp"
#include "fekete/report.hpp"
#include "fekete/sequences.hpp"
#include "fekete/spaces.hpp"
#include "fekete/vectors.hpp"
#include "fekete/verify.hpp"

#endif

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

#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "fekete/fekete.hpp"

using namespace fekete;

TEST_CASE("limit diagnostics flag the linear family as convergent", "[analysis]") {
  FiniteFamily fam = linear_family(FiniteVector::basis(1), 1.0, 11);
  LimitDiagnostics d = limit_diagnostics(fam, 400);
  CHECK(d.verdict == LimitVerdict::ConvergenceEvidence);
  CHECK(d.growth_rate.inf > 0.0);
  CHECK(d.growth_rate.inf <= d.growth_rate.trailing + 1e-12);
  // Newest dyadic window must be under the convergence cutoff.
  REQUIRE(d.dyadic_gaps[0].has_value());
  CHECK(*d.dyadic_gaps[0] < 0.01);
  // v_N / N concentrates on the first coordinate.
  REQUIRE_FALSE(d.limit_estimate.empty());
  CHECK(d.limit_estimate.front().first == 1);
  CHECK_THAT(d.limit_estimate.front().second, Catch::Matchers::WithinAbs(1.0, 0.01));
}

TEST_CASE("limit diagnostics flag the scaled basis as divergent", "[analysis]") {
  LimitDiagnostics d = limit_diagnostics(scaled_basis_family(), 200);
  CHECK(d.verdict == LimitVerdict::DivergenceEvidence);
  CHECK(d.direction_gap_max >= 2.0 - 1e-9);
  for (const auto& gap : d.dyadic_gaps) {
    REQUIRE(gap.has_value());
    CHECK(*gap > 0.5);
  }
  REQUIRE(d.gap_argmax.has_value());
  CHECK_THAT(d.growth_rate.trailing, Catch::Matchers::WithinRel(1.0, 1e-12));
}

TEST_CASE("limit diagnostics skip zero norms and validate input", "[analysis]") {
  FiniteFamily holey{"scalar", SpaceSpec::euclidean(2), [](Index n) {
                       double x = (n % 7 == 0) ? 0.0 : static_cast<double>(n);
                       return FiniteVector({x, 0.0});
                     }};
  LimitDiagnostics d = limit_diagnostics(holey, 50);
  CHECK(d.skipped_zero_indices == std::vector<Index>{7, 14, 21, 28, 35, 42, 49});
  CHECK_THROWS_AS(limit_diagnostics(spiral_family(), 1), OutOfRange);
  CHECK_THROWS_AS(limit_diagnostics(spiral_family(), 50, 0.5), OutOfRange);
}

TEST_CASE("gap scan shrinks on deep windows of the spiral", "[analysis]") {
  GapScanResult shallow = proposition_gap_scan(spiral_family(), 10, 100);
  GapScanResult deep = proposition_gap_scan(spiral_family(), 1000, 4000);
  CHECK(shallow.max_gap > 0.0);
  CHECK(deep.max_gap > 0.0);
  CHECK(deep.max_gap < shallow.max_gap);
  REQUIRE(deep.argmax.has_value());
  auto [n, m] = *deep.argmax;
  CHECK(n >= 1000);
  CHECK(m <= 4000);
}

TEST_CASE("inductive trace brackets norms under the plain triangle bound",
          "[analysis]") {
  BoundTrace t = inductive_bound_trace(spiral_family(), 10, 25, 1.0);
  CHECK(t.k == 3);  // ceil((25 + 10 - 1) / 10) steps to pass m + kn >= n + m
  REQUIRE(t.rows.size() == 3);
  for (const BoundTraceRow& row : t.rows) {
    CHECK(row.index == row.r * 10 + 25);
    CHECK(row.slack >= 0.0);  // gamma = 1 is the unconditional bound
    CHECK_THAT(row.bound - row.actual, Catch::Matchers::WithinAbs(row.slack, 1e-12));
    CHECK_FALSE(row.direction_gap.has_value());  // no epsilon supplied
  }
  BoundTrace with_eps = inductive_bound_trace(spiral_family(), 10, 25, 0.999, 0.01);
  for (const BoundTraceRow& row : with_eps.rows) {
    CHECK(row.direction_gap.has_value());
    CHECK(row.hypothesis_ok.has_value());
  }
  CHECK_THROWS_AS(inductive_bound_trace(spiral_family(), 10, 5, 1.0), OutOfRange);
  CHECK_THROWS_AS(inductive_bound_trace(spiral_family(), 10, 25, 0.0), OutOfRange);
}

TEST_CASE("squared-radius inequality margins stay positive on the band",
          "[analysis][oracle]") {
  MarginCheck c11 = rn_inequality_check(1, 1);
  // Frozen reference: rhs = 2 r_1^2 (2 - 1/(100 ln(2)^{3/2})).
  CHECK_THAT(c11.rhs, Catch::Matchers::WithinRel(19.2118480292733, 1e-13));
  CHECK(c11.margin > 0.0);
  for (Index n : {Index{1}, Index{10}, Index{500}})
    for (Index m = n; m <= 2 * n; ++m) CHECK(rn_inequality_check(n, m).margin > 0.0);
  CHECK_THROWS_AS(rn_inequality_check(5, 4), BandViolation);
  CHECK_THROWS_AS(rn_inequality_check(5, 11), BandViolation);
  CHECK_THROWS_AS(rn_inequality_check(0, 0), BandViolation);
}

TEST_CASE("angle increments obey the stated envelope", "[analysis][oracle]") {
  ThetaBound t1 = theta_bound_check(1);
  CHECK_THAT(t1.bound, Catch::Matchers::WithinRel(0.0263275775008398, 1e-13));
  CHECK_THAT(t1.gap, Catch::Matchers::WithinRel(0.0091244430578403, 1e-13));
  CHECK(t1.lower_margin >= 0.0);
  CHECK(t1.upper_margin >= 0.0);
  for (Index n = 1; n <= 100000; ++n) {
    ThetaBound t = theta_bound_check(n);
    CHECK(t.lower_margin >= 0.0);
    CHECK(t.upper_margin >= 0.0);
  }
  CHECK_THROWS_AS(theta_bound_check(0), OutOfRange);
}

TEST_CASE("cosine chain holds across the band", "[analysis]") {
  for (Index n : {Index{1}, Index{3}, Index{50}, Index{1000}})
    for (Index m = n; m <= 2 * n; ++m) {
      CosineChain c = spiral_cosine_chain_check(n, m);
      CHECK(c.ok);
      CHECK(c.cosine >= c.closed_lower - 1e-15);
    }
  CHECK_THROWS_AS(spiral_cosine_chain_check(4, 9), BandViolation);
}

TEST_CASE("sign stabilization finds the last sign change", "[analysis]") {
  auto shifted = [](Index n) { return static_cast<double>(n) - 5.5; };
  CHECK(sign_stabilization_check(shifted, 50) == std::optional<Index>(6));
  auto late_switch = [](Index n) { return n < 5 ? -1.0 : 1.0; };
  CHECK(sign_stabilization_check(late_switch, 50) == std::optional<Index>(5));
  auto all_positive = [](Index n) { return static_cast<double>(n); };
  CHECK(sign_stabilization_check(all_positive, 50) == std::optional<Index>(1));
  auto all_negative = [](Index n) { return -static_cast<double>(n); };
  CHECK(sign_stabilization_check(all_negative, 50) == std::optional<Index>(1));
  auto alternating = [](Index n) {
    return (n % 2 == 0 ? 1.0 : -1.0) * static_cast<double>(n);
  };
  CHECK_FALSE(sign_stabilization_check(alternating, 500).has_value());
}

TEST_CASE("sign stabilization does not accept a vacuous tail", "[analysis]") {
  // Sign flips at the very last index: no product is checked after it.
  auto flip_at_end = [](Index n) { return n < 10 ? 1.0 : -1.0; };
  CHECK_FALSE(sign_stabilization_check(flip_at_end, 10).has_value());
  CHECK_THROWS_AS(sign_stabilization_check(flip_at_end, 1), OutOfRange);
  auto with_nan = [](Index n) {
    return n == 2 ? std::numeric_limits<double>::quiet_NaN() : 1.0;
  };
  CHECK_THROWS_AS(sign_stabilization_check(with_nan, 5), GeneratorFailure);
}

TEST_CASE("stabilization ties into band subadditivity for 1d families",
          "[analysis][property]") {
  // Families passing the band check with positive growth stabilize; the
  // alternating control fails the band check and never stabilizes.
  ConstraintBand band = ConstraintBand::ratio(0.5, 2.0);
  auto passes = [&](const std::function<double(Index)>& a) {
    return check_scalar_band_subadditivity(a, band, 200, 1e-9).violations.empty();
  };
  std::vector<std::function<double(Index)>> good{
      [](Index n) { return static_cast<double>(n); },
      [](Index n) { return -static_cast<double>(n); },
      [](Index n) { return 17.0 * static_cast<double>(n); },
      [](Index n) { return static_cast<double>(n) + 2.0; },
      [](Index n) { return 2.0 * static_cast<double>(n) + 1.0; },
  };
  for (const auto& a : good) {
    CHECK(passes(a));
    CHECK(sign_stabilization_check(a, 400).has_value());
  }
  auto alternating = [](Index n) {
    return (n % 2 == 0 ? 1.0 : -1.0) * static_cast<double>(n);
  };
  CHECK_FALSE(passes(alternating));
  CHECK_FALSE(sign_stabilization_check(alternating, 400).has_value());
}

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
#include <numbers>

#include "fekete/fekete.hpp"

using namespace fekete;

// Reference values below were computed independently with 50-digit
// arithmetic (mpmath) and frozen here at double precision.

TEST_CASE("spiral radius and angle match high-precision references", "[sequences][oracle]") {
  CHECK_THAT(spiral_radius(1), Catch::Matchers::WithinRel(2.2011224087864498, 1e-15));
  CHECK(spiral_angle(1) == 0.0);  // ln 1 = 0
  CHECK_THAT(spiral_angle(2), Catch::Matchers::WithinRel(0.0091244430578403, 1e-13));
  // r_2^2, frozen: (2 + 2/sqrt(ln 3))^2.
  double r2 = spiral_radius(2);
  CHECK_THAT(r2 * r2, Catch::Matchers::WithinRel(15.2734735625074, 1e-13));
}

TEST_CASE("spiral vectors sit at the stated radius and angle", "[sequences]") {
  FiniteVector v1 = spiral2d(1);
  CHECK(v1.coord(1) == spiral_radius(1));  // angle 0, exact cosine
  CHECK(v1.coord(2) == 0.0);
  FiniteVector v100 = spiral2d(100);
  double r = spiral_radius(100), t = spiral_angle(100);
  CHECK_THAT(v100.coord(1), Catch::Matchers::WithinRel(r * std::cos(t), 1e-15));
  CHECK_THAT(v100.coord(2), Catch::Matchers::WithinRel(r * std::sin(t), 1e-15));
  CHECK_THAT(norm(SpaceSpec::euclidean(2), v100), Catch::Matchers::WithinRel(r, 1e-14));
  CHECK_THROWS_AS(spiral2d(0), OutOfRange);
}

TEST_CASE("spiral radius grows superlinearly but sublinearly plus slack", "[sequences][property]") {
  // r_n / n = 1 + 1/sqrt(ln(n+1)) decreases toward 1.
  double prev = kInf;
  for (Index n = 1; n <= 4000; ++n) {
    double ratio = spiral_radius(n) / static_cast<double>(n);
    CHECK(ratio > 1.0);
    CHECK(ratio < prev);
    prev = ratio;
  }
}

TEST_CASE("generalized spiral rejects indices below its start", "[sequences]") {
  SpiralParams params{0.4, false, 3};
  CHECK_THROWS_AS(spiral2d_general(2, params), IndexBelowStart);
  CHECK_THROWS_AS(spiral2d_general(1, params), IndexBelowStart);
  FiniteVector v = spiral2d_general(3, params);
  CHECK(norm(SpaceSpec::euclidean(2), v) > 3.0);
}

TEST_CASE("generalized spiral validates its parameters", "[sequences]") {
  CHECK_THROWS_AS(spiral2d_general(5, SpiralParams{0.0, false, 3}), OutOfRange);
  CHECK_THROWS_AS(spiral2d_general(5, SpiralParams{-0.5, false, 3}), OutOfRange);
  CHECK_THROWS_AS(spiral2d_general(5, SpiralParams{0.4, false, 1}), OutOfRange);
}

TEST_CASE("generalized spiral family ramps linearly up to its start", "[sequences]") {
  FiniteFamily fam = spiral_general_family(0.4);
  SpaceSpec e2 = SpaceSpec::euclidean(2);
  // Below the start the family is linear along the starting direction,
  // scaled to meet the spiral with norm equality at the seam.
  FiniteVector v1 = fam.generate(1), v2 = fam.generate(2), v3 = fam.generate(3);
  CHECK_THAT(norm(e2, v1 + v2), Catch::Matchers::WithinRel(norm(e2, v3), 1e-12));
  CHECK_THAT(norm(e2, v2), Catch::Matchers::WithinRel(2.0 * norm(e2, v1), 1e-12));
  CHECK(v3 == spiral2d_general(3, SpiralParams{0.4, false, 3}));
}

TEST_CASE("scaled basis vectors live on their own coordinate", "[sequences]") {
  TailVector v = scaled_basis(17);
  CHECK(v.coord(17) == 17.0);
  CHECK(v.coord(16) == 0.0);
  CHECK(v.coord(18) == 0.0);
  CHECK(v.support_last() == 17);
  // Norm in the perturbed-l1 space: n (1 + 4^{-n}).
  double got = norm(SpaceSpec::convex_l1_perturbed(), v);
  CHECK_THAT(got, Catch::Matchers::WithinRel(17.0 * (1.0 + std::pow(4.0, -17.0)), 1e-15));
  CHECK_THROWS_AS(scaled_basis(0), OutOfRange);
}

TEST_CASE("witness pairs are unit with exactly computed sums", "[sequences][oracle]") {
  SpaceSpec space = SpaceSpec::nested_pair_l2();
  for (Index k : {Index{1}, Index{2}, Index{10}, Index{50}}) {
    auto [v, w] = uc_witness_pair(k);
    double target = std::exp2(1.0 - 1.0 / (static_cast<double>(k) + 1.0));
    CHECK_THAT(norm(space, v), Catch::Matchers::WithinAbs(1.0, 1e-13));
    CHECK_THAT(norm(space, w), Catch::Matchers::WithinAbs(1.0, 1e-13));
    CHECK_THAT(norm(space, v + w), Catch::Matchers::WithinAbs(target, 1e-13));
    CHECK_THAT(norm(space, v - w), Catch::Matchers::WithinAbs(target, 1e-13));
    CHECK(v.support_last() == 2 * k);
  }
  // k = 1 in closed form: (e1 + e2)/sqrt(2) and (e1 - e2)/sqrt(2) in the
  // first block's l2 norm; the sum is 2 e1 / sqrt(2) with norm sqrt(2).
  auto [v1, w1] = uc_witness_pair(1);
  CHECK_THAT(norm(space, v1 + w1),
             Catch::Matchers::WithinAbs(std::numbers::sqrt2, 1e-15));
}

TEST_CASE("witness family interleaves the pair", "[sequences]") {
  TailFamily fam = uc_witness_family();
  auto [v2, w2] = uc_witness_pair(2);
  CHECK(materialize(fam.generate(3)) == materialize(v2));  // odd index 3 -> v_2
  CHECK(materialize(fam.generate(4)) == materialize(w2));  // even index 4 -> w_2
}

TEST_CASE("incomplete-space coefficients match their formula", "[sequences][oracle]") {
  CHECK_THAT(incomplete_coeff(1), Catch::Matchers::WithinRel(12.9899412270790, 1e-13));
  for (Index n : {Index{2}, Index{50}, Index{1000}}) {
    double want = static_cast<double>(n) *
                  (1.0 + 10.0 / std::log(std::log(10.0 * static_cast<double>(n))));
    CHECK_THAT(incomplete_coeff(n), Catch::Matchers::WithinRel(want, 1e-14));
  }
}

TEST_CASE("incomplete-space vectors decay double-exponentially", "[sequences][oracle]") {
  TailVector v1 = incomplete_space_seq(1);
  // Coordinate 1 of v_1: c_1 / 2^{2^1} = c_1 / 4.
  CHECK_THAT(v1.coord(1), Catch::Matchers::WithinRel(3.2474853067698, 1e-13));
  CHECK(v1.coord(2) == 0.0);  // coordinates beyond n are zero

  TailVector v40 = incomplete_space_seq(40);
  double c40 = incomplete_coeff(40);
  for (Index m = 1; m <= 10; ++m) {
    // ldexp against pow: both must land on c_n 2^{-2^m}.
    double want = c40 * std::pow(2.0, -std::pow(2.0, static_cast<double>(m)));
    CHECK_THAT(v40.coord(m), Catch::Matchers::WithinRel(want, 1e-12));
  }
  // Coordinates past 10 underflow double range by design and are exactly 0.
  CHECK(v40.coord(11) == 0.0);
  CHECK(v40.support_last() == 10);
  CHECK(incomplete_space_seq(7).support_last() == 7);
}

TEST_CASE("incomplete-space log base must keep iterated logs positive", "[sequences]") {
  // Base 2 is fine: log2(log2(10)) > 0.
  CHECK(incomplete_coeff(1, IncompleteParams{2.0}) > 1.0);
  // Base 10 gives log10(log10(10)) = 0 at n = 1.
  CHECK_THROWS_AS(incomplete_coeff(1, IncompleteParams{10.0}), OutOfRange);
  CHECK_THROWS_AS(incomplete_coeff(1, IncompleteParams{1.0}), OutOfRange);
  CHECK_THROWS_AS(incomplete_coeff(1, IncompleteParams{-2.0}), OutOfRange);
}

TEST_CASE("alternating family needs distinct unit directions", "[sequences]") {
  SpaceSpec l1 = SpaceSpec::lp_sequence(1.0);
  FiniteVector e1 = FiniteVector::basis(1), e2 = FiniteVector::basis(2);
  CHECK(nonconvex_alternating(3, e1, e2) == 3.0 * e1);
  CHECK(nonconvex_alternating(4, e1, e2) == 4.0 * e2);
  CHECK_THROWS_AS(nonconvex_alternating(1, 2.0 * e1, e2), NonUnitInput);
  CHECK_THROWS_AS(nonconvex_alternating(1, e1, e1), NonUnitInput);
  // Units are judged in the supplied space: e1 is not unit in the
  // perturbed-l1 norm.
  CHECK_THROWS_AS(nonconvex_alternating(1, e1, e2, SpaceSpec::convex_l1_perturbed()),
                  NonUnitInput);
  CHECK(norm(l1, nonconvex_alternating(7, e1, e2)) == 7.0);
}

TEST_CASE("linear family is linear plus a bounded perturbation", "[sequences]") {
  FiniteVector w = FiniteVector::basis(1);
  SpaceSpec e2 = SpaceSpec::euclidean(2);
  for (Index n : {Index{1}, Index{5}, Index{40}}) {
    FiniteVector v = linear_plus_bounded(n, w, 1.0, 7);
    FiniteVector base = static_cast<double>(n) * w;
    CHECK(norm(e2, v - base) <= 1.0 + 1e-12);
  }
  // Deterministic per (seed, n); different seeds decorrelate.
  CHECK(linear_plus_bounded(9, w, 1.0, 7) == linear_plus_bounded(9, w, 1.0, 7));
  CHECK(linear_plus_bounded(9, w, 1.0, 7) != linear_plus_bounded(9, w, 1.0, 8));
  // Zero bound collapses to the exact line.
  CHECK(linear_plus_bounded(9, w, 0.0, 7) == 9.0 * w);
}

TEST_CASE("family grammar round-trips canonical names", "[sequences]") {
  for (const char* text :
       {"spiral2d", "scaled-basis", "uc-witness", "incomplete", "nonconvex-alt"}) {
    AnyFamily fam = parse_family(text);
    CHECK(family_name(fam) == text);
  }
  AnyFamily gen = parse_family("spiral2d-general:delta=0.5");
  CHECK(family_name(gen) == "spiral2d-general:delta=0.5");
  CHECK(family_name(parse_family(family_name(gen))) == family_name(gen));
  AnyFamily lin = parse_family("linear:bound=1,seed=11");
  CHECK(family_name(lin) == "linear:bound=1,seed=11");
  CHECK(family_space(lin) == SpaceSpec::euclidean(2));
  CHECK(family_space(parse_family("scaled-basis")) == SpaceSpec::convex_l1_perturbed());
  CHECK(family_space(parse_family("uc-witness")) == SpaceSpec::nested_pair_l2());
  CHECK(family_space(parse_family("incomplete")) == SpaceSpec::finite_support_l2());
}

TEST_CASE("family grammar rejects malformed specs", "[sequences]") {
  CHECK_THROWS_AS(parse_family("nosuch"), ParseError);
  CHECK_THROWS_AS(parse_family("spiral2d:delta=0.5"), ParseError);  // takes no args
  CHECK_THROWS_AS(parse_family("spiral2d-general"), ParseError);    // delta required
  CHECK_THROWS_AS(parse_family("spiral2d-general:delta=abc"), ParseError);
  CHECK_THROWS_AS(parse_family("spiral2d-general:gamma=0.5"), ParseError);
  CHECK_THROWS_AS(parse_family("linear:bound=1"), ParseError);  // seed required
  CHECK_THROWS_AS(parse_family("linear:bound=1,seed=2,seed=3"), ParseError);
  CHECK_THROWS_AS(parse_family(""), ParseError);
}

TEST_CASE("generators fold into total families", "[sequences]") {
  FiniteFamily spiral = spiral_family();
  CHECK(spiral.name == "spiral2d");
  CHECK(spiral.generate(3) == spiral2d(3));
  TailFamily scaled = scaled_basis_family();
  CHECK(materialize(scaled.generate(5)) == materialize(scaled_basis(5)));
  FiniteFamily alt = nonconvex_family();
  CHECK(alt.generate(2) == 2.0 * FiniteVector::basis(2));
}

TEST_CASE("random draws are reproducible across streams", "[sequences][random]") {
  Rng a = derive_rng(42, 1), b = derive_rng(42, 1), c = derive_rng(42, 2);
  bool all_equal = true, any_diff = false;
  for (int i = 0; i < 100; ++i) {
    double x = a.normal(), y = b.normal(), z = c.normal();
    all_equal = all_equal && (x == y);
    any_diff = any_diff || (x != z);
  }
  CHECK(all_equal);
  CHECK(any_diff);
  Rng u = derive_rng(7, 0);
  for (int i = 0; i < 1000; ++i) {
    double x = u.uniform();
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
    double y = u.uniform_pos();
    CHECK(y > 0.0);
    CHECK(y <= 1.0);
  }
}

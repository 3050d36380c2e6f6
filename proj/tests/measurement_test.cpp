// Copyright 2026 The qdense Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <random>

#include "test_support.hpp"

using namespace qdense;
using qdense::test::from_oracle;
using qdense::test::is_error;
using qdense::test::require_valid_state;
using Catch::Approx;

TEST_CASE("weak_filter", "[measurement]") {
    CHECK(weak_filter(0.0, 0.0).op() == ComplexMatrix::identity(4));
    CHECK(weak_filter(1.0, 1.0).op() == ComplexMatrix::diagonal({1.0, 0.0, 0.0, 0.0}));
    const auto w = weak_filter(0.9, 0.9).op();
    const double s = std::sqrt(0.1);
    CHECK(max_abs_diff(w, ComplexMatrix::diagonal({1.0, s, s, 0.1})) <= 1e-16);

    // Per-qubit strengths land on the right basis states: diag(1, sqrt(1-p2), sqrt(1-p1), ...).
    const auto asym = weak_filter(0.75, 0.0).op();
    CHECK(max_abs_diff(asym, ComplexMatrix::diagonal({1.0, 1.0, 0.5, 0.5})) <= 1e-16);
    CHECK(weak_filter(0.3, 0.6).kind() == FilterKind::Weak);
    CHECK(weak_filter(0.3, 0.6).strength_b() == 0.6);

    CHECK(is_error(ErrorKind::InvalidParameter, [] { weak_filter(-0.1, 0.0); }));
    CHECK(is_error(ErrorKind::InvalidParameter, [] { weak_filter(0.0, 1.5); }));
}

TEST_CASE("reversal_filter", "[measurement]") {
    CHECK(reversal_filter(0.0, 0.0).op() == ComplexMatrix::identity(4));
    CHECK(reversal_filter(1.0, 1.0).op() == ComplexMatrix::diagonal({0.0, 0.0, 0.0, 1.0}));
    const double s = std::sqrt(0.05);
    CHECK(max_abs_diff(reversal_filter(0.95, 0.95).op(), ComplexMatrix::diagonal({0.05, s, s, 1.0})) <= 1e-15);
    const auto asym = reversal_filter(0.0, 0.75).op();
    CHECK(max_abs_diff(asym, ComplexMatrix::diagonal({0.5, 1.0, 0.5, 1.0})) <= 1e-16);
    CHECK(reversal_filter(0.5).kind() == FilterKind::Reversal);
    CHECK(is_error(ErrorKind::InvalidParameter, [] { reversal_filter(1.01); }));
}

TEST_CASE("apply_filter", "[measurement]") {
    const auto bell = DensityMatrix(from_oracle(oracle::bell()));

    const auto same = apply_filter(bell, weak_filter(0.0));
    CHECK(same.success_prob == 1.0);
    CHECK(same.state == bell);

    const auto collapsed = apply_filter(bell, weak_filter(1.0));
    CHECK(collapsed.success_prob == Approx(0.5).margin(1e-15));
    CHECK(max_abs_diff(collapsed.state.matrix(), ComplexMatrix::diagonal({1.0, 0.0, 0.0, 0.0})) <= 1e-15);

    const auto ground = DensityMatrix(ComplexMatrix::diagonal({1.0, 0.0, 0.0, 0.0}));
    for (double q : {0.0, 0.3, 0.95}) {
        const auto out = apply_filter(ground, reversal_filter(q));
        CHECK(out.success_prob == Approx((1.0 - q) * (1.0 - q)).margin(1e-15));
        CHECK(out.state == ground);
    }

    SECTION("vanishing herald is an error, not a garbage state") {
        CHECK(is_error(ErrorKind::PostSelectionImpossible, [&] { apply_filter(ground, reversal_filter(1.0)); }));
        CHECK(is_error(ErrorKind::PostSelectionImpossible,
                       [&] { apply_filter(collapsed.state, reversal_filter(1.0)); }));
    }
}

TEST_CASE("filter outcomes are valid states with T in [0, 1]", "[measurement][property]") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> unit;
    for (int trial = 0; trial < 1000; ++trial) {
        const auto rho = random_density_matrix(rng, 4);
        const auto f = trial % 2 ? weak_filter(unit(rng), unit(rng)) : reversal_filter(unit(rng), unit(rng));
        const auto out = apply_filter(rho, f);
        REQUIRE(out.success_prob >= 0.0);
        REQUIRE(out.success_prob <= 1.0);
        require_valid_state(out.state);
    }
}

TEST_CASE("T = 1 only for the identity filter or support where the filter is 1", "[measurement][property]") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> unit(0.05, 0.95);
    for (int trial = 0; trial < 100; ++trial) {
        const auto rho = random_density_matrix(rng, 4);
        REQUIRE(apply_filter(rho, weak_filter(unit(rng))).success_prob < 1.0);
        REQUIRE(apply_filter(rho, weak_filter(0.0)).success_prob == Approx(1.0).margin(1e-15));
    }
    const auto ground = DensityMatrix(ComplexMatrix::diagonal({1.0, 0.0, 0.0, 0.0}));
    CHECK(apply_filter(ground, weak_filter(0.7)).success_prob == 1.0);
}

TEST_CASE("weak then reversal filtering keeps X form", "[measurement][property]") {
    std::mt19937_64 rng(10);
    std::uniform_real_distribution<double> unit(0.0, 0.99);
    for (int trial = 0; trial < 500; ++trial) {
        const auto rho = random_xstate(rng);
        const auto a = apply_filter(rho, weak_filter(unit(rng)));
        const auto b = apply_filter(a.state, reversal_filter(unit(rng)));
        REQUIRE(is_xstate(a.state.matrix(), 0.0));
        REQUIRE(is_xstate(b.state.matrix(), 0.0));
    }
}

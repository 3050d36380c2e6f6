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
using qdense::test::to_oracle;
using Catch::Approx;

namespace {

// tests/oracles/frozen_values.py
constexpr double kChi1Half = 0.60952605107342066;

ComplexMatrix apply(const ComplexMatrix& u, double x0, double x1) {
    const Complex v[] = {x0, x1};
    return u * ComplexMatrix::column(v);
}

DensityMatrix damped_bell(double d) {
    const auto e = oracle::damped_bell_entries(d);
    ComplexMatrix m = ComplexMatrix::diagonal({e.a, e.b, e.c, e.e});
    m(0, 3) = m(3, 0) = e.z;
    return DensityMatrix(m);
}

}  // namespace

TEST_CASE("encoding_unitaries", "[coding]") {
    const auto set = encoding_unitaries();
    CHECK(apply(set.u00(), 1, 0) == apply(ComplexMatrix::identity(2), 1, 0));
    CHECK(apply(set.u00(), 0, 1) == apply(ComplexMatrix::identity(2), 0, 1));
    CHECK(apply(set.u10(), 0, 1)(1, 0) == Complex{-1.0});
    CHECK(apply(set.u10(), 1, 0)(0, 0) == Complex{1.0});
    CHECK(apply(set.u01(), 1, 0)(1, 0) == Complex{1.0});
    // U11|0> = |1>, U11|1> = -|0>.
    const auto u11_0 = apply(set.u11(), 1, 0);
    const auto u11_1 = apply(set.u11(), 0, 1);
    CHECK(u11_0(0, 0) == Complex{0.0});
    CHECK(u11_0(1, 0) == Complex{1.0});
    CHECK(u11_1(0, 0) == Complex{-1.0});
    CHECK(u11_1(1, 0) == Complex{0.0});

    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(max_abs_diff(adjoint(set.unitaries[i]) * set.unitaries[i], ComplexMatrix::identity(2)) <= 1e-14);
        for (std::size_t j = 0; j < 4; ++j)
            if (i != j) CHECK(std::abs((adjoint(set.unitaries[i]) * set.unitaries[j]).trace()) <= 1e-14);
    }
}

TEST_CASE("average_encoded_state", "[coding]") {
    const auto mixed = DensityMatrix(0.25 * ComplexMatrix::identity(4));
    CHECK(max_abs_diff(average_encoded_state(mixed).matrix(), mixed.matrix()) <= 1e-16);

    const auto bell = DensityMatrix(from_oracle(oracle::bell()));
    CHECK(max_abs_diff(average_encoded_state(bell).matrix(), 0.25 * ComplexMatrix::identity(4)) <= 1e-16);
    CHECK(von_neumann_entropy(average_encoded_state(bell)) == Approx(2.0).margin(1e-14));

    SECTION("X state with b = c averages to the stated diagonal") {
        const double a = 0.5, b = 0.1, e = 0.3;
        ComplexMatrix m = ComplexMatrix::diagonal({a, b, b, e});
        m(0, 3) = Complex(0.2, 0.1);
        m(3, 0) = std::conj(m(0, 3));
        const auto avg = average_encoded_state(DensityMatrix(m));
        const auto expect = ComplexMatrix::diagonal({(a + b) / 2, (b + e) / 2, (a + b) / 2, (b + e) / 2});
        CHECK(max_abs_diff(avg.matrix(), expect) <= 1e-16);
    }

    SECTION("matches the four-term summation oracle on random states") {
        std::mt19937_64 rng(44);
        for (int trial = 0; trial < 200; ++trial) {
            const auto rho = random_density_matrix(rng, 4);
            REQUIRE(max_abs_diff(average_encoded_state(rho).matrix(),
                                 from_oracle(oracle::dense_coding_average(to_oracle(rho.matrix())))) <= 1e-15);
        }
    }
}

TEST_CASE("average of an X state is exactly diagonal", "[coding][property]") {
    std::mt19937_64 rng(45);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto avg = average_encoded_state(random_xstate(rng));
        for (std::size_t r = 0; r < 4; ++r)
            for (std::size_t c = 0; c < 4; ++c)
                if (r != c) REQUIRE(std::abs(avg(r, c)) <= 1e-14);
    }
}

TEST_CASE("holevo_capacity", "[coding]") {
    CHECK(holevo_capacity(DensityMatrix(from_oracle(oracle::bell()))) == Approx(2.0).margin(1e-12));
    CHECK(holevo_capacity(DensityMatrix(0.25 * ComplexMatrix::identity(4))) == Approx(0.0).margin(1e-14));
    CHECK(holevo_capacity(damped_bell(0.5)) == Approx(kChi1Half).margin(1e-12));
    CHECK(holevo_capacity(damped_bell(0.5)) == Approx(0.61).margin(0.005));
}

TEST_CASE("holevo_capacity stays within [0, 2]", "[coding][property]") {
    std::mt19937_64 rng(46);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto rho = trial % 2 ? random_density_matrix(rng, 4) : random_xstate(rng);
        const double chi = holevo_capacity(rho);
        REQUIRE(chi >= -1e-10);
        REQUIRE(chi <= 2.0 + 1e-10);
    }
}

TEST_CASE("chi1_closed_form", "[coding]") {
    CHECK(chi1_closed_form(DampingParam(0.5)) == Approx(kChi1Half).margin(1e-13));
    CHECK(chi1_closed_form(DampingParam(1.0)) == Approx(1.0).margin(1e-15));
    CHECK(chi1_closed_form(DampingParam(0.0)) == Approx(2.0).margin(1e-15));

    double worst = 0.0;
    for (int i = 0; i <= 100; ++i) {
        const double d = i / 100.0;
        worst = std::max(worst, std::abs(chi1_closed_form(DampingParam(d)) - holevo_capacity(damped_bell(d))));
    }
    CHECK(worst <= 1e-10);
}

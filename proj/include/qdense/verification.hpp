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

/**
 * @file  verification.hpp
 * @brief Self-check suite: channel completeness, dilation vs Kraus,
 *        closed forms vs pipelines, eigen-solver cross-checks.
 */
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "qdense/channel.hpp"
#include "qdense/coding.hpp"
#include "qdense/protocol.hpp"
#include "qdense/qmat.hpp"

namespace qdense {

/// Random two-qubit X state: Dirichlet-like populations, corner bounded by
/// sqrt(a e) with a random phase.
template <class Rng>
DensityMatrix random_xstate(Rng& rng) {
    std::exponential_distribution<double> expo(1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::array<double, 4> w{};
    double total = 0.0;
    for (double& x : w) total += (x = expo(rng));
    for (double& x : w) x /= total;
    const double mag = unit(rng) * std::sqrt(w[0] * w[3]);
    const double phase = 2.0 * std::numbers::pi * unit(rng);
    ComplexMatrix m(4, 4);
    for (std::size_t i = 0; i < 4; ++i) m(i, i) = w[i];
    m(0, 3) = std::polar(mag, phase);
    m(3, 0) = std::conj(m(0, 3));
    return DensityMatrix(std::move(m));
}

/// Random full-rank-ish state G G^dagger / Tr with Gaussian G.
template <class Rng>
DensityMatrix random_density_matrix(Rng& rng, std::size_t dim) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    ComplexMatrix g(dim, dim);
    for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < dim; ++c) g(r, c) = Complex(gauss(rng), gauss(rng));
    ComplexMatrix rho = g * adjoint(g);
    rho *= 1.0 / rho.trace().real();
    // Exact Hermitian symmetry.
    return DensityMatrix(0.5 * (rho + adjoint(rho)));
}

using KrausFactory = std::function<KrausChannel(DampingParam)>;

struct VerifyConfig {
    KrausFactory kraus = [](DampingParam d) { return amplitude_damping_kraus(d); };
    std::uint64_t seed = 20260101;
    std::size_t random_states = 1000;
};

struct CheckResult {
    std::string name;
    double max_deviation = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    std::string detail;  // set when the check aborted with an error
};

struct VerifyReport {
    std::vector<CheckResult> checks;
    bool all_passed() const {
        return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
    }
};

namespace detail {

inline std::vector<double> unit_grid(std::size_t n) { return Grid{0.0, 1.0, n}.values(); }

inline std::vector<double> interior_ninths() {
    std::vector<double> v;
    for (int i = 1; i <= 9; ++i) v.push_back(i / 10.0);
    return v;
}

inline CheckResult run_check(std::string name, double tol, const std::function<double()>& body) {
    CheckResult r{std::move(name), 0.0, tol, false, {}};
    try {
        r.max_deviation = body();
        r.passed = std::isfinite(r.max_deviation) && r.max_deviation <= tol;
    } catch (const std::exception& e) {
        r.max_deviation = HUGE_VAL;
        r.detail = e.what();
    }
    return r;
}

}  // namespace detail

inline VerifyReport run_verification(const VerifyConfig& cfg = {}) {
    VerifyReport report;
    auto add = [&](std::string name, double tol, const std::function<double()>& body) {
        report.checks.push_back(detail::run_check(std::move(name), tol, body));
    };

    add("kraus_completeness", 1e-14, [&] {
        double worst = 0.0;
        for (double d : detail::unit_grid(101)) {
            const KrausChannel ch = cfg.kraus(DampingParam(d));
            worst = std::max({worst, completeness_defect(ch), completeness_defect(ch, ch)});
        }
        return worst;
    });

    add("dilation_vs_kraus", 1e-12, [&] {
        double worst = 0.0;
        for (double d : detail::unit_grid(101)) {
            const KrausChannel ch = cfg.kraus(DampingParam(d));
            const DensityMatrix via_kraus = apply_two_qubit_channel(bell_state(), ch, ch);
            worst = std::max(worst, max_abs_diff(dilated_bell_reduced(DampingParam(d)).matrix(), via_kraus.matrix()));
        }
        return worst;
    });

    add("chi1_closed_form_vs_pipeline", 1e-10, [&] {
        double worst = 0.0;
        for (double d : detail::unit_grid(101)) {
            const DampingParam dp(d);
            const double pipeline = run_plan_a(dp, cfg.kraus(dp)).capacity;
            worst = std::max(worst, std::abs(pipeline - chi1_closed_form(dp)));
        }
        return worst;
    });

    add("rho2_closed_form_vs_pipeline", 1e-12, [&] {
        double worst = 0.0;
        const auto axis = detail::interior_ninths();
        for (double d : axis)
            for (double p : axis)
                for (double q : axis) {
                    const DampingParam dp(d);
                    const PlanResult r = run_plan_b(dp, p, q, cfg.kraus(dp));
                    const Rho2 closed = rho2_closed_form(dp, p, q);
                    worst = std::max({worst, max_abs_diff(r.state.matrix(), closed.state.matrix()),
                                      std::abs(r.success_prob - closed.success_prob)});
                }
        return worst;
    });

    add("optimal_reversal_max_entropy", 1e-9, [&] {
        double worst = 0.0;
        const auto axis = detail::interior_ninths();
        for (double d : axis)
            for (double p : axis) {
                const DampingParam dp(d);
                const double q = optimal_reversal_strength(dp, p).q;
                worst = std::max(worst, std::abs(run_plan_b(dp, p, q, cfg.kraus(dp)).entropy_avg - 2.0));
            }
        return worst;
    });

    add("jacobi_vs_xstate_spectrum", 1e-10, [&] {
        std::mt19937_64 rng(cfg.seed);
        double worst = 0.0;
        for (std::size_t i = 0; i < cfg.random_states; ++i) {
            const DensityMatrix rho = random_xstate(rng);
            const Spectrum a = hermitian_spectrum(rho.matrix());
            const Spectrum b = xstate_spectrum(rho);
            for (std::size_t k = 0; k < 4; ++k) worst = std::max(worst, std::abs(a.values[k] - b.values[k]));
        }
        return worst;
    });

    add("encoding_unitaries", 1e-14, [&] {
        const EncodingSet set = encoding_unitaries();
        const auto id = ComplexMatrix::identity(2);
        double worst = 0.0;
        for (std::size_t i = 0; i < 4; ++i) {
            worst = std::max(worst, max_abs_diff(adjoint(set.unitaries[i]) * set.unitaries[i], id));
            for (std::size_t j = 0; j < 4; ++j)
                if (i != j) worst = std::max(worst, std::abs((adjoint(set.unitaries[i]) * set.unitaries[j]).trace()));
        }
        return worst;
    });

    return report;
}

}  // namespace qdense

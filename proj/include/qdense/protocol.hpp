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
 * @file  protocol.hpp
 * @brief End-to-end dense-coding pipelines.
 *
 * Plan A: Bell pair -> amplitude damping on both qubits -> dense coding.
 * Plan B: Bell pair -> weak filter(p, p) -> amplitude damping ->
 *         reversal filter(q, q) -> dense coding, keeping only the run in
 *         which both filters herald success (probability T).
 */
#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qdense/channel.hpp"
#include "qdense/coding.hpp"
#include "qdense/measurement.hpp"
#include "qdense/numerics.hpp"
#include "qdense/qmat.hpp"

namespace qdense {

/// (|00> + |11>)(<00| + <11|) / 2.
inline DensityMatrix bell_state() {
    ComplexMatrix m(4, 4);
    m(0, 0) = m(0, 3) = m(3, 0) = m(3, 3) = 0.5;
    return DensityMatrix(std::move(m));
}

struct PlanResult {
    double d = 0.0;
    double p = 0.0;
    double q = 0.0;
    DensityMatrix state = bell_state();
    double entropy_state = 0.0;
    double entropy_avg = 0.0;
    double capacity = 0.0;
    double success_prob = 1.0;

    /// Capacity weighted by the heralding probability. Not a Holevo
    /// quantity; reported as a throughput figure only.
    double chi_times_t() const { return capacity * success_prob; }
};

namespace detail {

inline PlanResult make_result(double d, double p, double q, DensityMatrix state, double t) {
    const HolevoTerms h = holevo_terms(state);
    PlanResult r;
    r.d = d;
    r.p = p;
    r.q = q;
    r.state = std::move(state);
    r.entropy_state = h.entropy_state;
    r.entropy_avg = h.entropy_avg;
    r.capacity = h.capacity();
    r.success_prob = t;
    return r;
}

}  // namespace detail

/// Plan A with an explicit channel (same channel on both qubits).
inline PlanResult run_plan_a(DampingParam d, const KrausChannel& channel) {
    return detail::make_result(d.value(), 0.0, 0.0, apply_two_qubit_channel(bell_state(), channel, channel), 1.0);
}

inline PlanResult run_plan_a(DampingParam d) { return run_plan_a(d, amplitude_damping_kraus(d)); }

/// Plan B with an explicit channel. Throws PostSelectionImpossible when the
/// overall heralding probability is <= 1e-12.
inline PlanResult run_plan_b(DampingParam d, double p, double q, const KrausChannel& channel) {
    const LocalFilter weak = weak_filter(p);
    const LocalFilter reversal = reversal_filter(q);
    const FilterOutcome before = apply_filter(bell_state(), weak);
    const DensityMatrix damped = apply_two_qubit_channel(before.state, channel, channel);
    const FilterOutcome after = apply_filter(damped, reversal);
    const double t = before.success_prob * after.success_prob;
    if (t <= kPostSelectionTol) {
        throw Error(ErrorKind::PostSelectionImpossible, "overall success probability " + std::to_string(t));
    }
    return detail::make_result(d.value(), p, q, after.state, t);
}

inline PlanResult run_plan_b(DampingParam d, double p, double q) {
    return run_plan_b(d, p, q, amplitude_damping_kraus(d));
}

struct Rho2 {
    DensityMatrix state;
    double success_prob;
};

/// Closed form of the Plan B state. Unnormalized entries:
///
///   r11 = (1/2 + d^2 (1-p)^2 / 2) (1-q)^2
///   r22 = r33 = (1/2) d (1-d) (1-p)^2 (1-q)
///   r44 = (1/2) (1-p)^2 (1-d)^2
///   r14 = r41 = (1/2) (1-d) (1-p) (1-q)
///
/// and T is their trace. The |11> population picks up (1-p)^2 from the weak
/// filter and nothing from the reversal filter, which leaves |11> untouched.
inline Rho2 rho2_closed_form(DampingParam damping, double p, double q) {
    detail::check_strength(p, "weak strength p");
    detail::check_strength(q, "reversal strength q");
    const double d = damping.value();
    const double wp = 1.0 - p;
    const double wq = 1.0 - q;
    const double r11 = (0.5 + 0.5 * d * d * wp * wp) * wq * wq;
    const double r22 = 0.5 * (1.0 - d) * d * wp * wp * wq;
    const double r44 = 0.5 * wp * wp * (1.0 - d) * (1.0 - d);
    const double r14 = 0.5 * (1.0 - d) * wp * wq;
    const double t = r11 + 2.0 * r22 + r44;
    if (t <= kPostSelectionTol) {
        throw Error(ErrorKind::PostSelectionImpossible, "overall success probability " + std::to_string(t));
    }
    ComplexMatrix m(4, 4);
    m(0, 0) = r11 / t;
    m(1, 1) = r22 / t;
    m(2, 2) = r22 / t;
    m(3, 3) = r44 / t;
    m(0, 3) = r14 / t;
    m(3, 0) = r14 / t;
    return Rho2{DensityMatrix(std::move(m)), t};
}

struct ReversalStrength {
    double q;
    /// Set when p = 1 or d = 1: every q leaves the averaged state short of
    /// I/4, and q = 1 is returned as a placeholder.
    bool degenerate;
};

/// Reversal strength that equalizes the |00> and |11> populations of the
/// Plan B state, which makes the dense-coding average exactly I/4:
/// q* = 1 - (1-p)(1-d) / sqrt(1 + d^2 (1-p)^2).
inline ReversalStrength optimal_reversal_strength(DampingParam damping, double p) {
    detail::check_strength(p, "weak strength p");
    const double d = damping.value();
    if (p == 1.0 || d == 1.0) return ReversalStrength{1.0, true};
    const double wp = 1.0 - p;
    return ReversalStrength{1.0 - wp * (1.0 - d) / std::sqrt(1.0 + d * d * wp * wp), false};
}

inline constexpr double kMinimizeWidthTol = 1e-8;
inline constexpr double kThresholdTol = 1e-10;

/// Minimum of the Plan A capacity over d in [0, 1].
inline numerics::Minimum find_min_chi1() {
    return numerics::golden_section_minimize([](double d) { return chi1_closed_form(DampingParam(d)); }, 0.0, 1.0,
                                             kMinimizeWidthTol);
}

/// Damping coefficient where the Plan A capacity first drops to one bit.
inline double find_capacity_threshold() {
    const double d_min = find_min_chi1().x;
    return numerics::bisect([](double d) { return chi1_closed_form(DampingParam(d)) - 1.0; }, 0.0, d_min,
                            kThresholdTol);
}

// ---------------------------------------------------------------------------
// Sweeps

/// Evenly spaced values start..stop inclusive, steps >= 2, all in [0, 1].
struct Grid {
    double start = 0.0;
    double stop = 1.0;
    std::size_t steps = 2;

    std::vector<double> values() const {
        if (steps < 2) throw Error(ErrorKind::InvalidParameter, "grid needs at least 2 steps");
        detail::check_strength(start, "grid start");
        detail::check_strength(stop, "grid stop");
        std::vector<double> v(steps);
        for (std::size_t i = 0; i < steps; ++i) {
            v[i] = start + (stop - start) * static_cast<double>(i) / static_cast<double>(steps - 1);
        }
        v.back() = stop;
        return v;
    }
};

enum class SweepMode { PlanA, PlanB, PlanBQStar };

/// Values per axis. Plan A reads only `d`; the q* mode ignores `q`.
struct SweepAxes {
    std::vector<double> d{0.0};
    std::vector<double> p{0.0};
    std::vector<double> q{0.0};
};

struct SweepRow {
    double d;
    double p;
    double q;
    std::optional<PlanResult> result;  // empty for degenerate points
    bool degenerate() const { return !result.has_value(); }
};

struct SweepTable {
    SweepMode mode;
    SweepAxes axes;  // as actually swept
    std::vector<SweepRow> rows;
};

/// One row per grid point in d-major, then p, then q order. Points whose
/// post-selection probability vanishes are recorded as degenerate rows.
inline SweepTable sweep(SweepAxes axes, SweepMode mode) {
    if (mode == SweepMode::PlanA) {
        axes.p = {0.0};
        axes.q = {0.0};
    } else if (mode == SweepMode::PlanBQStar) {
        axes.q = {0.0};
    }
    for (const auto* axis : {&axes.d, &axes.p, &axes.q}) {
        if (axis->empty()) throw Error(ErrorKind::InvalidParameter, "empty sweep axis");
        for (double v : *axis) detail::check_strength(v, "sweep value");
    }

    SweepTable table{mode, axes, {}};
    table.rows.reserve(axes.d.size() * axes.p.size() * axes.q.size());
    for (double d : axes.d)
        for (double p : axes.p)
            for (double q_in : axes.q) {
                const DampingParam damping(d);
                double q = q_in;
                if (mode == SweepMode::PlanBQStar) {
                    const ReversalStrength rs = optimal_reversal_strength(damping, p);
                    q = rs.q;
                }
                SweepRow row{d, p, q, std::nullopt};
                try {
                    row.result = mode == SweepMode::PlanA ? run_plan_a(damping) : run_plan_b(damping, p, q);
                } catch (const Error& e) {
                    if (e.kind() != ErrorKind::PostSelectionImpossible) throw;
                }
                table.rows.push_back(std::move(row));
            }
    return table;
}

}  // namespace qdense

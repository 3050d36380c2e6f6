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
 * @file  trajectory.hpp
 * @brief Monte Carlo unraveling of the Plan B pipeline on pure states.
 *
 * Each trial starts from the Bell pair, samples the weak-filter herald,
 * one Kraus branch per qubit and the reversal herald, each with the Born
 * probability of the current normalized state. A trial succeeds only when
 * both heralds fire.
 *
 * Randomness: trial i of seed s draws from a SplitMix64 stream whose state
 * is initialised to mix64(s ^ mix64(i + 0x9e3779b97f4a7c15)), where mix64
 * is the SplitMix64 output finalizer. Uniforms use the top 53 bits. The
 * result therefore depends only on (seed, trial index), not on how trials
 * are partitioned or ordered.
 */
#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>

#include "qdense/channel.hpp"
#include "qdense/errors.hpp"
#include "qdense/measurement.hpp"
#include "qdense/qmat.hpp"

namespace qdense {

/// SplitMix64 (Steele, Lea, Flood 2014).
class SplitMix64 {
public:
    static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

    static constexpr std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    explicit constexpr SplitMix64(std::uint64_t state) : state_(state) {}

    /// Stream dedicated to one trial of one seed.
    static constexpr SplitMix64 for_trial(std::uint64_t seed, std::uint64_t trial) {
        return SplitMix64(mix(seed ^ mix(trial + kGamma)));
    }

    constexpr std::uint64_t next() {
        state_ += kGamma;
        return mix(state_);
    }

    /// Uniform in [0, 1).
    constexpr double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

struct McEstimate {
    std::uint64_t trials = 0;
    std::uint64_t successes = 0;
    double t_hat = 0.0;
    double t_stderr = 0.0;
    std::optional<DensityMatrix> state_hat;  // empty when nothing was accepted
    std::uint64_t seed = 0;

    friend bool operator==(const McEstimate&, const McEstimate&) = default;
};

namespace detail {

using Amps = std::array<Complex, 4>;

inline double norm2(const Amps& v) {
    double s = 0.0;
    for (const auto& a : v) s += std::norm(a);
    return s;
}

inline Amps apply_diag(const ComplexMatrix& diag_op, const Amps& v) {
    Amps out;
    for (std::size_t i = 0; i < 4; ++i) out[i] = diag_op(i, i) * v[i];
    return out;
}

/// Single-qubit operator k on qubit `which` (0 = A, the high bit).
inline Amps apply_local(const ComplexMatrix& k, int which, const Amps& v) {
    Amps out{};
    for (std::size_t idx = 0; idx < 4; ++idx) {
        const std::size_t bit = which == 0 ? (idx >> 1) & 1 : idx & 1;
        for (std::size_t b = 0; b < 2; ++b) {
            const std::size_t src = which == 0 ? (b << 1) | (idx & 1) : (idx & 2) | b;
            out[idx] += k(bit, b) * v[src];
        }
    }
    return out;
}

inline void normalize(Amps& v) {
    const double n = std::sqrt(norm2(v));
    for (auto& a : v) a /= n;
}

}  // namespace detail

/// Raw counts over trials [first, last) of one seed. Tallies of disjoint
/// ranges merge into the tally of their union.
struct McTally {
    std::uint64_t trials = 0;
    std::uint64_t successes = 0;
    ComplexMatrix projector_sum = ComplexMatrix(4, 4);

    McTally& merge(const McTally& other) {
        trials += other.trials;
        successes += other.successes;
        projector_sum += other.projector_sum;
        return *this;
    }
};

inline McTally tally_plan_b(DampingParam d, double p, double q, std::uint64_t first, std::uint64_t last,
                            std::uint64_t seed) {
    if (last < first) throw Error(ErrorKind::InvalidParameter, "empty or reversed trial range");
    const LocalFilter weak = weak_filter(p);
    const LocalFilter reversal = reversal_filter(q);
    const KrausChannel channel = amplitude_damping_kraus(d);

    const double h = 1.0 / std::sqrt(2.0);
    const detail::Amps bell{h, 0.0, 0.0, h};

    McTally tally;
    tally.trials = last - first;
    for (std::uint64_t trial = first; trial < last; ++trial) {
        SplitMix64 rng = SplitMix64::for_trial(seed, trial);

        detail::Amps psi = detail::apply_diag(weak.op(), bell);
        if (rng.uniform() >= detail::norm2(psi)) continue;
        detail::normalize(psi);

        for (int which : {0, 1}) {
            const double u = rng.uniform();
            double cumulative = 0.0;
            // Falls back to the last nonzero branch if round-off leaves u
            // above the accumulated weight.
            std::optional<detail::Amps> chosen;
            detail::Amps fallback{};
            for (const auto& k : channel.ops) {
                detail::Amps branch = detail::apply_local(k, which, psi);
                const double w = detail::norm2(branch);
                if (w == 0.0) continue;
                cumulative += w;
                fallback = branch;
                if (u < cumulative) {
                    chosen = branch;
                    break;
                }
            }
            psi = chosen.value_or(fallback);
            detail::normalize(psi);
        }

        detail::Amps out = detail::apply_diag(reversal.op(), psi);
        if (rng.uniform() >= detail::norm2(out)) continue;
        detail::normalize(out);

        ++tally.successes;
        for (std::size_t r = 0; r < 4; ++r)
            for (std::size_t c = 0; c < 4; ++c) tally.projector_sum(r, c) += out[r] * std::conj(out[c]);
    }
    return tally;
}

inline McEstimate estimate_from_tally(const McTally& tally, std::uint64_t seed) {
    McEstimate est;
    est.trials = tally.trials;
    est.successes = tally.successes;
    est.seed = seed;
    est.t_hat = tally.trials ? static_cast<double>(tally.successes) / static_cast<double>(tally.trials) : 0.0;
    est.t_stderr = tally.trials ? std::sqrt(est.t_hat * (1.0 - est.t_hat) / static_cast<double>(tally.trials)) : 0.0;
    if (tally.successes > 0) {
        // Every accepted projector has unit trace, so the trace of the sum
        // equals the success count up to round-off.
        ComplexMatrix mean = 0.5 * (tally.projector_sum + adjoint(tally.projector_sum));
        mean *= 1.0 / mean.trace().real();
        est.state_hat = DensityMatrix(std::move(mean));
    }
    return est;
}

inline McEstimate simulate_plan_b(DampingParam d, double p, double q, std::uint64_t trials, std::uint64_t seed) {
    if (trials == 0) throw Error(ErrorKind::InvalidParameter, "trials must be at least 1");
    return estimate_from_tally(tally_plan_b(d, p, q, 0, trials, seed), seed);
}

}  // namespace qdense

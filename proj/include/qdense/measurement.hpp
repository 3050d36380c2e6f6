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
 * @file  measurement.hpp
 * @brief Partial-collapse (weak) measurement and its reversal, applied as
 *        heralded filters on two-qubit states.
 *
 * The weak filter attenuates |1> on each qubit by sqrt(1 - p); the reversal
 * attenuates |0> by sqrt(1 - q). Only the successful outcome is kept, and
 * its probability is reported alongside the renormalized state.
 */
#pragma once

#include <cmath>
#include <string>

#include "qdense/errors.hpp"
#include "qdense/qmat.hpp"

namespace qdense {

inline constexpr double kPostSelectionTol = 1e-12;

enum class FilterKind { Weak, Reversal };

class LocalFilter {
public:
    FilterKind kind() const noexcept { return kind_; }
    double strength_a() const noexcept { return s1_; }
    double strength_b() const noexcept { return s2_; }
    /// Diagonal 4x4 operator in the |00>,|01>,|10>,|11> basis.
    const ComplexMatrix& op() const noexcept { return op_; }

    friend LocalFilter weak_filter(double p1, double p2);
    friend LocalFilter reversal_filter(double q1, double q2);

private:
    LocalFilter(FilterKind kind, double s1, double s2, ComplexMatrix op)
        : kind_(kind), s1_(s1), s2_(s2), op_(std::move(op)) {}

    FilterKind kind_;
    double s1_;
    double s2_;
    ComplexMatrix op_;
};

namespace detail {

inline void check_strength(double s, const char* name) {
    if (!(s >= 0.0 && s <= 1.0)) {
        throw Error(ErrorKind::InvalidParameter, std::string(name) + " = " + std::to_string(s) + " outside [0, 1]");
    }
}

}  // namespace detail

/// diag(1, sqrt(1-p1)) (x) diag(1, sqrt(1-p2)).
inline LocalFilter weak_filter(double p1, double p2) {
    detail::check_strength(p1, "weak strength p1");
    detail::check_strength(p2, "weak strength p2");
    const ComplexMatrix a{{1.0, 0.0}, {0.0, std::sqrt(1.0 - p1)}};
    const ComplexMatrix b{{1.0, 0.0}, {0.0, std::sqrt(1.0 - p2)}};
    return LocalFilter(FilterKind::Weak, p1, p2, tensor_product(a, b));
}

inline LocalFilter weak_filter(double p) { return weak_filter(p, p); }

/// diag(sqrt(1-q1), 1) (x) diag(sqrt(1-q2), 1).
inline LocalFilter reversal_filter(double q1, double q2) {
    detail::check_strength(q1, "reversal strength q1");
    detail::check_strength(q2, "reversal strength q2");
    const ComplexMatrix a{{std::sqrt(1.0 - q1), 0.0}, {0.0, 1.0}};
    const ComplexMatrix b{{std::sqrt(1.0 - q2), 0.0}, {0.0, 1.0}};
    return LocalFilter(FilterKind::Reversal, q1, q2, tensor_product(a, b));
}

inline LocalFilter reversal_filter(double q) { return reversal_filter(q, q); }

struct FilterOutcome {
    DensityMatrix state;
    double success_prob;
};

/// Keeps the heralded branch: sigma = M rho M^dagger, T = Tr sigma.
/// Raises PostSelectionImpossible when T <= 1e-12.
inline FilterOutcome apply_filter(const DensityMatrix& rho, const LocalFilter& f) {
    if (rho.dim() != 4) throw Error(ErrorKind::InvalidDimensions, "filters act on two-qubit states");
    ComplexMatrix sigma = f.op() * rho.matrix() * adjoint(f.op());
    const double t = sigma.trace().real();
    if (t <= kPostSelectionTol) {
        throw Error(ErrorKind::PostSelectionImpossible,
                    "heralded branch has probability " + std::to_string(t));
    }
    sigma *= 1.0 / t;
    return FilterOutcome{DensityMatrix(std::move(sigma)), std::min(t, 1.0)};
}

}  // namespace qdense

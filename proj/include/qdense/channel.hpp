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
 * @file  channel.hpp
 * @brief Amplitude damping of |1> -> |0>, as Kraus operators and as the
 *        system+environment dilation of a Bell pair.
 */
#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "qdense/errors.hpp"
#include "qdense/qmat.hpp"

namespace qdense {

/// Damping coefficient d in [0, 1].
class DampingParam {
public:
    explicit DampingParam(double d) : d_(d) {
        if (!(d >= 0.0 && d <= 1.0)) {
            throw Error(ErrorKind::InvalidParameter, "damping coefficient " + std::to_string(d) + " outside [0, 1]");
        }
    }
    double value() const noexcept { return d_; }

private:
    double d_;
};

/// Ordered single-qubit Kraus operators.
struct KrausChannel {
    std::vector<ComplexMatrix> ops;
};

/// {diag(1, sqrt(1-d)), sqrt(d)|0><1|}.
inline KrausChannel amplitude_damping_kraus(DampingParam d) {
    const double g = d.value();
    return KrausChannel{{
        ComplexMatrix{{1.0, 0.0}, {0.0, std::sqrt(1.0 - g)}},
        ComplexMatrix{{0.0, std::sqrt(g)}, {0.0, 0.0}},
    }};
}

/// Kraus operators of the independent product channel chA (x) chB, in the
/// order (i, j) -> i * |chB| + j.
inline std::vector<ComplexMatrix> product_kraus(const KrausChannel& a, const KrausChannel& b) {
    std::vector<ComplexMatrix> ops;
    ops.reserve(a.ops.size() * b.ops.size());
    for (const auto& ka : a.ops)
        for (const auto& kb : b.ops) ops.push_back(tensor_product(ka, kb));
    return ops;
}

/// max |sum_i K_i^dagger K_i - I| over an arbitrary operator list.
inline double completeness_defect(const std::vector<ComplexMatrix>& ops) {
    if (ops.empty()) return 1.0;
    const std::size_t n = ops.front().cols();
    ComplexMatrix sum(n, n);
    for (const auto& k : ops) sum += adjoint(k) * k;
    return max_abs_diff(sum, ComplexMatrix::identity(n));
}

inline double completeness_defect(const KrausChannel& ch) { return completeness_defect(ch.ops); }

/// Two-qubit form: sum_{i,j} (e_i (x) e_j)^dagger (e_i (x) e_j) - I.
inline double completeness_defect(const KrausChannel& a, const KrausChannel& b) {
    return completeness_defect(product_kraus(a, b));
}

/// sum_k K rho K^dagger without normalization or validation.
inline ComplexMatrix apply_kraus_unnormalized(const ComplexMatrix& rho, const std::vector<ComplexMatrix>& ops) {
    ComplexMatrix out(rho.rows(), rho.cols());
    for (const auto& k : ops) out += k * rho * adjoint(k);
    return out;
}

/// Independent channels on qubit A and qubit B of a two-qubit state.
inline DensityMatrix apply_two_qubit_channel(const DensityMatrix& rho, const KrausChannel& ch_a,
                                             const KrausChannel& ch_b) {
    if (rho.dim() != 4) throw Error(ErrorKind::InvalidDimensions, "two-qubit channel needs a 4x4 state");
    for (const auto* ch : {&ch_a, &ch_b})
        for (const auto& k : ch->ops)
            if (k.rows() != 2 || k.cols() != 2) {
                throw Error(ErrorKind::InvalidDimensions, "single-qubit Kraus operators must be 2x2");
            }
    return DensityMatrix(apply_kraus_unnormalized(rho.matrix(), product_kraus(ch_a, ch_b)));
}

/// Bell pair (|00> + |11>)/sqrt(2) after each qubit has interacted with its
/// own vacuum environment. Factor order A, B, E1, E2 (index 8a + 4b + 2e1 + e2).
inline StateVector dilated_bell_evolution(DampingParam d) {
    const double g = d.value();
    const double h = 1.0 / std::sqrt(2.0);
    auto ket = [](int a, int b, int e1, int e2) { return std::size_t(8 * a + 4 * b + 2 * e1 + e2); };
    std::vector<Complex> amps(16);
    amps[ket(0, 0, 0, 0)] = h;
    amps[ket(1, 1, 0, 0)] = h * (1.0 - g);
    amps[ket(1, 0, 0, 1)] = h * std::sqrt(g * (1.0 - g));
    amps[ket(0, 1, 1, 0)] = h * std::sqrt(g * (1.0 - g));
    amps[ket(0, 0, 1, 1)] = h * g;
    return StateVector(std::move(amps));
}

/// Environment traced out of the dilated evolution.
inline DensityMatrix dilated_bell_reduced(DampingParam d) {
    return partial_trace(dilated_bell_evolution(d).projector(), {2, 2, 2, 2}, {0, 1});
}

}  // namespace qdense

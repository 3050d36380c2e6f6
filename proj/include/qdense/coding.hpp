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
 * @file  coding.hpp
 * @brief Dense-coding ensemble on qubit A and its Holevo capacity.
 */
#pragma once

#include <array>
#include <cmath>

#include "qdense/channel.hpp"
#include "qdense/qmat.hpp"

namespace qdense {

/// The four local encodings, indexed by message 0..3 = bit pairs 00, 01, 10, 11:
/// U00 = I, U01 = X, U10 = Z, U11 = ZX (|x> -> (-1)^x |x+1 mod 2>).
struct EncodingSet {
    std::array<ComplexMatrix, 4> unitaries;

    const ComplexMatrix& u00() const { return unitaries[0]; }
    const ComplexMatrix& u01() const { return unitaries[1]; }
    const ComplexMatrix& u10() const { return unitaries[2]; }
    const ComplexMatrix& u11() const { return unitaries[3]; }
};

inline EncodingSet encoding_unitaries() {
    return EncodingSet{{
        ComplexMatrix{{1.0, 0.0}, {0.0, 1.0}},
        ComplexMatrix{{0.0, 1.0}, {1.0, 0.0}},
        ComplexMatrix{{1.0, 0.0}, {0.0, -1.0}},
        ComplexMatrix{{0.0, -1.0}, {1.0, 0.0}},
    }};
}

/// rho* = 1/4 sum_i (U_i (x) I) rho (U_i (x) I)^dagger.
inline DensityMatrix average_encoded_state(const DensityMatrix& rho) {
    if (rho.dim() != 4) throw Error(ErrorKind::InvalidDimensions, "dense coding needs a two-qubit state");
    const auto id = ComplexMatrix::identity(2);
    ComplexMatrix sum(4, 4);
    for (const auto& u : encoding_unitaries().unitaries) {
        const auto w = tensor_product(u, id);
        sum += w * rho.matrix() * adjoint(w);
    }
    sum *= 0.25;
    return DensityMatrix(std::move(sum));
}

struct HolevoTerms {
    double entropy_state;
    double entropy_avg;
    double capacity() const { return entropy_avg - entropy_state; }
};

inline HolevoTerms holevo_terms(const DensityMatrix& rho) {
    return HolevoTerms{von_neumann_entropy(rho), von_neumann_entropy(average_encoded_state(rho))};
}

/// S(rho*) - S(rho) in bits.
inline double holevo_capacity(const DensityMatrix& rho) { return holevo_terms(rho).capacity(); }

namespace detail {

inline double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

}  // namespace detail

/// Closed-form capacity of a Bell pair after amplitude damping d on both
/// qubits:
///
///   chi1 = -(1-d)/2 log2((1-d)/4) - (1+d)/2 log2((1+d)/4)
///          + d(1-d) log2(d(1-d)/2) + l- log2 l- + l+ log2 l+,
///   l+- = (1 - d + d^2 +- sqrt(1 - 2d + 2d^2)) / 2.
///
/// The leading term carries a minus sign; the frequently quoted variant with
/// a plus sign goes negative (about -0.89 at d = 0.5).
inline double chi1_closed_form(DampingParam damping) {
    using detail::xlog2x;
    const double d = damping.value();
    const double root = std::sqrt(1.0 - 2.0 * d + 2.0 * d * d);
    const double lminus = 0.5 * (1.0 - d + d * d - root);
    const double lplus = 0.5 * (1.0 - d + d * d + root);
    // (1-d)/2 * log2((1-d)/4) == 2 * xlog2x((1-d)/4), which handles d = 1.
    return -2.0 * xlog2x((1.0 - d) / 4.0) - 2.0 * xlog2x((1.0 + d) / 4.0) + 2.0 * xlog2x(0.5 * d * (1.0 - d)) +
           xlog2x(lminus) + xlog2x(lplus);
}

}  // namespace qdense

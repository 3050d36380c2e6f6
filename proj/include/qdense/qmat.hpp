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
 * @file  qmat.hpp
 * @brief Small dense complex matrices: Kronecker products, partial traces,
 *        Hermitian spectra and von Neumann entropy.
 *
 * Everything here is sized for a handful of qubits (dimension <= 16).
 * Multi-qubit indices are big-endian: for factors (A, B, ...) the first
 * factor is the most significant digit, so a two-qubit index is 2*a + b.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "qdense/errors.hpp"

namespace qdense {

using Complex = std::complex<double>;

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kPsdTol = 1e-10;
inline constexpr double kNormTol = 1e-12;
inline constexpr double kJacobiOffNormTol = 1e-13;
inline constexpr int kJacobiMaxSweeps = 100;
inline constexpr std::size_t kMaxDim = 16;

class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    /// Row-major literal, e.g. `ComplexMatrix{{1, 0}, {0, 1}}`.
    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
        rows_ = rows.size();
        cols_ = rows_ == 0 ? 0 : rows.begin()->size();
        data_.reserve(rows_ * cols_);
        for (const auto& row : rows) {
            if (row.size() != cols_) {
                throw Error(ErrorKind::InvalidDimensions, "ragged matrix literal");
            }
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static ComplexMatrix identity(std::size_t n) {
        ComplexMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    static ComplexMatrix diagonal(std::span<const Complex> entries) {
        ComplexMatrix m(entries.size(), entries.size());
        for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
        return m;
    }

    static ComplexMatrix diagonal(std::initializer_list<Complex> entries) {
        return diagonal(std::span<const Complex>(entries.begin(), entries.size()));
    }

    /// Column vector from amplitudes.
    static ComplexMatrix column(std::span<const Complex> entries) {
        ComplexMatrix m(entries.size(), 1);
        std::copy(entries.begin(), entries.end(), m.data_.begin());
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }
    std::span<const Complex> entries() const noexcept { return data_; }

    Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    Complex trace() const {
        Complex t = 0.0;
        for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
        return t;
    }

    ComplexMatrix& operator+=(const ComplexMatrix& o) {
        require_same_shape(o);
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
        return *this;
    }
    ComplexMatrix& operator-=(const ComplexMatrix& o) {
        require_same_shape(o);
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
        return *this;
    }
    ComplexMatrix& operator*=(Complex s) {
        for (auto& x : data_) x *= s;
        return *this;
    }

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
    friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }

    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
        if (a.cols_ != b.rows_) {
            throw Error(ErrorKind::InvalidDimensions, "matrix product shape mismatch");
        }
        ComplexMatrix out(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Complex aik = a(i, k);
                if (aik == Complex{}) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
            }
        }
        return out;
    }

    friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

private:
    void require_same_shape(const ComplexMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) {
            throw Error(ErrorKind::InvalidDimensions, "matrix shape mismatch");
        }
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

/// Largest entrywise |a - b|; shapes must agree.
inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw Error(ErrorKind::InvalidDimensions, "matrix shape mismatch");
    }
    double m = 0.0;
    for (std::size_t i = 0; i < a.entries().size(); ++i) {
        m = std::max(m, std::abs(a.entries()[i] - b.entries()[i]));
    }
    return m;
}

inline ComplexMatrix adjoint(const ComplexMatrix& a) {
    ComplexMatrix out(a.cols(), a.rows());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) out(c, r) = std::conj(a(r, c));
    return out;
}

inline ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t ar = 0; ar < a.rows(); ++ar)
        for (std::size_t ac = 0; ac < a.cols(); ++ac) {
            const Complex x = a(ar, ac);
            for (std::size_t br = 0; br < b.rows(); ++br)
                for (std::size_t bc = 0; bc < b.cols(); ++bc)
                    out(ar * b.rows() + br, ac * b.cols() + bc) = x * b(br, bc);
        }
    return out;
}

/// max |h - h^dagger|, or +inf for a non-square input.
inline double hermiticity_defect(const ComplexMatrix& h) {
    if (!h.is_square()) return HUGE_VAL;
    double m = 0.0;
    for (std::size_t r = 0; r < h.rows(); ++r)
        for (std::size_t c = r; c < h.cols(); ++c)
            m = std::max(m, std::abs(h(r, c) - std::conj(h(c, r))));
    return m;
}

inline bool all_finite(const ComplexMatrix& m) {
    return std::all_of(m.entries().begin(), m.entries().end(), [](const Complex& z) {
        return std::isfinite(z.real()) && std::isfinite(z.imag());
    });
}

/// Real eigenvalues, sorted descending.
struct Spectrum {
    std::vector<double> values;

    double sum() const { return std::accumulate(values.begin(), values.end(), 0.0); }
    double min() const { return values.empty() ? 0.0 : values.back(); }
    double max() const { return values.empty() ? 0.0 : values.front(); }
};

/// Eigenvalues of a Hermitian matrix by cyclic complex Jacobi rotations.
///
/// Each rotation zeroes one off-diagonal pair (p, q). Sweeps repeat until
/// the off-diagonal Frobenius norm is at most 1e-13; more than 100 sweeps
/// raises NotConverged.
inline Spectrum hermitian_spectrum(const ComplexMatrix& h) {
    if (!h.is_square()) throw Error(ErrorKind::InvalidDimensions, "spectrum of a non-square matrix");
    if (!all_finite(h)) throw Error(ErrorKind::InvalidState, "non-finite matrix entry");
    if (hermiticity_defect(h) > kHermitianTol) {
        throw Error(ErrorKind::NotHermitian,
                    "max |h - h^dagger| = " + std::to_string(hermiticity_defect(h)));
    }
    const std::size_t n = h.rows();
    ComplexMatrix a = h;
    for (std::size_t i = 0; i < n; ++i) a(i, i) = a(i, i).real();

    auto off_norm = [&] {
        double s = 0.0;
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c)
                if (r != c) s += std::norm(a(r, c));
        return std::sqrt(s);
    };

    int sweep = 0;
    while (off_norm() > kJacobiOffNormTol) {
        if (++sweep > kJacobiMaxSweeps) {
            throw Error(ErrorKind::NotConverged, "Jacobi iteration exceeded sweep limit");
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex g = a(p, q);
                const double mag = std::abs(g);
                if (mag == 0.0) continue;
                const Complex phase = g / mag;
                const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * mag);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                // A <- A V with V_pp = V_qq = c, V_pq = s e, V_qp = -s conj(e).
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex akp = a(k, p);
                    const Complex akq = a(k, q);
                    a(k, p) = c * akp - s * std::conj(phase) * akq;
                    a(k, q) = s * phase * akp + c * akq;
                }
                // A <- V^dagger A.
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex apk = a(p, k);
                    const Complex aqk = a(q, k);
                    a(p, k) = c * apk - s * phase * aqk;
                    a(q, k) = s * std::conj(phase) * apk + c * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
            }
        }
    }

    Spectrum out;
    out.values.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.values.push_back(a(i, i).real());
    std::sort(out.values.begin(), out.values.end(), std::greater<>());
    return out;
}

/// Trace-one, Hermitian, positive-semidefinite matrix whose dimension is a
/// power of two. The invariants are checked on construction.
class DensityMatrix {
public:
    explicit DensityMatrix(ComplexMatrix m) : mat_(std::move(m)) { validate(); }

    std::size_t dim() const noexcept { return mat_.rows(); }
    const ComplexMatrix& matrix() const noexcept { return mat_; }
    Complex operator()(std::size_t r, std::size_t c) const { return mat_(r, c); }

    friend bool operator==(const DensityMatrix&, const DensityMatrix&) = default;

private:
    void validate() const {
        const std::size_t n = mat_.rows();
        if (!mat_.is_square() || n == 0 || (n & (n - 1)) != 0 || n > kMaxDim) {
            throw Error(ErrorKind::InvalidDimensions,
                        "density matrix must be square with power-of-two dimension <= 16");
        }
        if (!all_finite(mat_)) throw Error(ErrorKind::InvalidState, "non-finite density matrix entry");
        const double herm = hermiticity_defect(mat_);
        if (herm > kHermitianTol) {
            throw Error(ErrorKind::InvalidState, "density matrix not Hermitian (" + std::to_string(herm) + ")");
        }
        const double tr_err = std::abs(mat_.trace() - Complex{1.0});
        if (tr_err > kTraceTol) {
            throw Error(ErrorKind::InvalidState, "density matrix trace off by " + std::to_string(tr_err));
        }
        const double lo = hermitian_spectrum(mat_).min();
        if (lo < -kPsdTol) {
            throw Error(ErrorKind::InvalidState, "density matrix has eigenvalue " + std::to_string(lo));
        }
    }

    ComplexMatrix mat_;
};

/// Unit-norm pure state.
class StateVector {
public:
    explicit StateVector(std::vector<Complex> amps) : amps_(std::move(amps)) {
        double n = 0.0;
        for (const auto& a : amps_) n += std::norm(a);
        if (amps_.empty() || std::abs(n - 1.0) > kNormTol) {
            throw Error(ErrorKind::InvalidState, "state vector norm^2 = " + std::to_string(n));
        }
    }

    std::size_t dim() const noexcept { return amps_.size(); }
    std::span<const Complex> amplitudes() const noexcept { return amps_; }
    Complex operator[](std::size_t i) const { return amps_[i]; }

    /// |psi><psi| as a density matrix.
    DensityMatrix projector() const {
        ComplexMatrix m(amps_.size(), amps_.size());
        for (std::size_t r = 0; r < amps_.size(); ++r)
            for (std::size_t c = 0; c < amps_.size(); ++c) m(r, c) = amps_[r] * std::conj(amps_[c]);
        return DensityMatrix(std::move(m));
    }

private:
    std::vector<Complex> amps_;
};

/// Reduced state over the factors listed in `keep` (kept in their original
/// order). `factor_dims` multiply to rho.dim().
inline DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> factor_dims,
                                   std::span<const std::size_t> keep) {
    const std::size_t total = std::accumulate(factor_dims.begin(), factor_dims.end(), std::size_t{1},
                                              std::multiplies<>());
    if (factor_dims.empty() || total != rho.dim()) {
        throw Error(ErrorKind::InvalidDimensions, "factor dimensions do not multiply to the state dimension");
    }
    const std::size_t nf = factor_dims.size();
    std::vector<bool> kept(nf, false);
    for (std::size_t k : keep) {
        if (k >= nf || kept[k]) throw Error(ErrorKind::InvalidDimensions, "bad or repeated kept factor index");
        kept[k] = true;
    }
    if (keep.empty()) throw Error(ErrorKind::InvalidDimensions, "keep set must be nonempty");

    // Digit strides for the full index (first factor most significant).
    std::vector<std::size_t> stride(nf, 1);
    for (std::size_t f = nf - 1; f > 0; --f) stride[f - 1] = stride[f] * factor_dims[f];

    std::size_t kept_dim = 1;
    std::size_t traced_dim = 1;
    for (std::size_t f = 0; f < nf; ++f) (kept[f] ? kept_dim : traced_dim) *= factor_dims[f];

    // Map (kept multi-index, traced multi-index) -> full index.
    auto full_index = [&](std::size_t kept_idx, std::size_t traced_idx) {
        std::size_t idx = 0;
        for (std::size_t f = nf; f-- > 0;) {
            std::size_t& src = kept[f] ? kept_idx : traced_idx;
            idx += (src % factor_dims[f]) * stride[f];
            src /= factor_dims[f];
        }
        return idx;
    };

    ComplexMatrix out(kept_dim, kept_dim);
    const ComplexMatrix& m = rho.matrix();
    for (std::size_t r = 0; r < kept_dim; ++r)
        for (std::size_t c = 0; c < kept_dim; ++c) {
            Complex s = 0.0;
            for (std::size_t t = 0; t < traced_dim; ++t) s += m(full_index(r, t), full_index(c, t));
            out(r, c) = s;
        }
    return DensityMatrix(std::move(out));
}

inline DensityMatrix partial_trace(const DensityMatrix& rho, std::initializer_list<std::size_t> factor_dims,
                                   std::initializer_list<std::size_t> keep) {
    return partial_trace(rho, std::span<const std::size_t>(factor_dims.begin(), factor_dims.size()),
                         std::span<const std::size_t>(keep.begin(), keep.size()));
}

inline bool is_xstate(const ComplexMatrix& m, double tol = 1e-12) {
    if (m.rows() != 4 || m.cols() != 4) return false;
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) {
            const bool allowed = r == c || (r == 0 && c == 3) || (r == 3 && c == 0);
            if (!allowed && std::abs(m(r, c)) > tol) return false;
        }
    return true;
}

/// Closed-form spectrum of a two-qubit state with support only on the
/// diagonal and the |00><11| / |11><00| corners.
inline Spectrum xstate_spectrum(const DensityMatrix& rho) {
    if (!is_xstate(rho.matrix())) throw Error(ErrorKind::NotXState, "state has entries outside the X pattern");
    const double a = rho(0, 0).real();
    const double b = rho(1, 1).real();
    const double c = rho(2, 2).real();
    const double e = rho(3, 3).real();
    const double z = std::abs(rho(0, 3));
    const double r = std::sqrt((a - e) * (a - e) + 4.0 * z * z);
    Spectrum out{{b, c, 0.5 * (a + e + r), 0.5 * (a + e - r)}};
    std::sort(out.values.begin(), out.values.end(), std::greater<>());
    return out;
}

/// -sum lambda log2 lambda over a spectrum, with 0 log 0 = 0. Values in
/// [-1e-10, 0) are treated as zero; anything more negative is an error.
inline double entropy_bits(const Spectrum& spectrum) {
    double s = 0.0;
    for (double lambda : spectrum.values) {
        if (lambda < -kPsdTol) {
            throw Error(ErrorKind::InvalidState, "negative eigenvalue " + std::to_string(lambda));
        }
        if (lambda > 0.0) s -= lambda * std::log2(lambda);
    }
    return s;
}

/// Von Neumann entropy in bits.
inline double von_neumann_entropy(const DensityMatrix& rho) {
    const double s = entropy_bits(hermitian_spectrum(rho.matrix()));
    return std::clamp(s, 0.0, std::log2(static_cast<double>(rho.dim())));
}

}  // namespace qdense

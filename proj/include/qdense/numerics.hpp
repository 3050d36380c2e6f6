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

#pragma once

#include <cmath>
#include <concepts>
#include <utility>

#include "qdense/errors.hpp"

namespace qdense::numerics {

/// Root of f on [lo, hi] by bisection. f(lo) and f(hi) must differ in sign.
/// Stops once |f(mid)| <= ftol or the bracket collapses to adjacent doubles.
template <std::invocable<double> F>
double bisect(F&& f, double lo, double hi, double ftol) {
    double flo = f(lo);
    const double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0)) {
        throw Error(ErrorKind::InvalidParameter, "bisection bracket does not straddle a root");
    }
    for (int it = 0; it < 2000; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (std::abs(fm) <= ftol || mid == lo || mid == hi) return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    throw Error(ErrorKind::NotConverged, "bisection did not converge");
}

struct Minimum {
    double x;
    double value;
};

/// Golden-section search for the minimum of a unimodal f on [a, b],
/// shrinking the bracket to width <= width_tol.
template <std::invocable<double> F>
Minimum golden_section_minimize(F&& f, double a, double b, double width_tol) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (b - a > width_tol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    const double x = 0.5 * (a + b);
    return Minimum{x, f(x)};
}

}  // namespace qdense::numerics

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

// Prints the unprotected and protected (p = 0.9, q = q*) dense-coding
// capacities side by side, with the heralding probability of the latter.

#include <cstdio>

#include "qdense/qdense.hpp"

int main() {
    using namespace qdense;
    std::printf("%6s %10s %10s %12s\n", "d", "chi1", "chi2", "T");
    for (double d : Grid{0.0, 0.95, 20}.values()) {
        const DampingParam damping(d);
        const double q = optimal_reversal_strength(damping, 0.9).q;
        const PlanResult a = run_plan_a(damping);
        const PlanResult b = run_plan_b(damping, 0.9, q);
        std::printf("%6.3f %10.6f %10.6f %12.6e\n", d, a.capacity, b.capacity, b.success_prob);
    }
}

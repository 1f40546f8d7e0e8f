// Copyright 2026 The ptqtc Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <cmath>
#include <concepts>
#include <utility>

namespace ptqtc {

struct Extremum {
    double x = 0.0;
    double value = 0.0;
};

/// Golden-section search for a maximum of a unimodal f on [lo, hi].
/// Stops once the bracket is narrower than `tol` or after `max_iter` steps.
template <std::invocable<double> F>
Extremum golden_section_maximize(F &&f, double lo, double hi, double tol,
                                 int max_iter = 200) {
    constexpr double inv_phi = 0.6180339887498948482; // (sqrt(5) - 1) / 2
    double c = hi - inv_phi * (hi - lo);
    double d = lo + inv_phi * (hi - lo);
    double fc = f(c);
    double fd = f(d);
    for (int i = 0; i < max_iter && (hi - lo) > tol; ++i) {
        // >= keeps the left point on ties, biasing toward smaller x.
        if (fc >= fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv_phi * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv_phi * (hi - lo);
            fd = f(d);
        }
    }
    return fc >= fd ? Extremum{c, fc} : Extremum{d, fd};
}

} // namespace ptqtc

/* Copyright 2026 The Spinflip Authors. All Rights Reserved.
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at
    http://www.apache.org/licenses/LICENSE-2.0
Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace spinflip {

struct Minimum {
  double x;
  double f;
};

// Golden-section search on [lo, hi] until hi - lo < tol. The objective is
// assumed unimodal on the bracket. Returns the best point evaluated; throws
// SearchError on a non-finite objective value.
Minimum refine_minimum(const std::function<double(double)>& objective, double lo, double hi,
                       double tol);

// Indices i (0 < i < n - 1) where values[i] is strictly below both neighbours.
std::vector<std::size_t> strict_local_minima(std::span<const double> values);

// Depth of the local minimum at `i` below its surroundings: walk outward on
// each side while the samples keep rising, take the peak reached on each
// side, and return min(left peak, right peak) - values[i].
double minimum_depth(std::span<const double> values, std::size_t i);

// n + 1 points covering [lo, hi] with spacing <= max_step (at least 3 points).
std::vector<double> uniform_grid(double lo, double hi, double max_step);
std::vector<double> linspace(double lo, double hi, std::size_t count);

}  // namespace spinflip

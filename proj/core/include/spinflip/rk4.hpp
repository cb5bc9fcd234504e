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

namespace spinflip::detail {

// One classical RK4 step. `rhs(k, y)` is evaluated at stage-time indices
// k = 2i, 2i+1, 2i+1, 2i+2 (half-step grid), so field samples can be shared
// between consecutive steps.
template <class State, class Rhs>
State rk4_step(const State& y, double h, std::size_t step_index, Rhs&& rhs) {
  const std::size_t k0 = 2 * step_index;
  const State k1 = rhs(k0, y);
  const State k2 = rhs(k0 + 1, State(y + (0.5 * h) * k1));
  const State k3 = rhs(k0 + 1, State(y + (0.5 * h) * k2));
  const State k4 = rhs(k0 + 2, State(y + h * k3));
  return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace spinflip::detail

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

#include "spinflip/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "spinflip/errors.hpp"

namespace spinflip {

namespace {

double checked(const std::function<double(double)>& f, double x) {
  const double v = f(x);
  if (!std::isfinite(v)) {
    std::ostringstream os;
    os << "objective is not finite at x = " << x;
    throw SearchError(os.str());
  }
  return v;
}

}  // namespace

Minimum refine_minimum(const std::function<double(double)>& objective, double lo, double hi,
                       double tol) {
  if (!(lo < hi)) throw PreconditionError("refine_minimum needs lo < hi");
  if (!(tol > 0.0)) throw PreconditionError("refine_minimum needs tol > 0");
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = checked(objective, c);
  double fd = checked(objective, d);
  Minimum best = fc <= fd ? Minimum{c, fc} : Minimum{d, fd};
  while (b - a >= tol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = checked(objective, c);
      if (fc < best.f) best = {c, fc};
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = checked(objective, d);
      if (fd < best.f) best = {d, fd};
    }
    if (c >= d) break;  // bracket collapsed below floating-point resolution
  }
  return best;
}

std::vector<std::size_t> strict_local_minima(std::span<const double> values) {
  std::vector<std::size_t> out;
  for (std::size_t i = 1; i + 1 < values.size(); ++i)
    if (values[i] < values[i - 1] && values[i] < values[i + 1]) out.push_back(i);
  return out;
}

double minimum_depth(std::span<const double> values, std::size_t i) {
  std::size_t l = i;
  while (l > 0 && values[l - 1] >= values[l]) --l;
  std::size_t r = i;
  while (r + 1 < values.size() && values[r + 1] >= values[r]) ++r;
  return std::min(values[l], values[r]) - values[i];
}

std::vector<double> uniform_grid(double lo, double hi, double max_step) {
  if (!(lo < hi)) throw PreconditionError("grid needs lo < hi");
  if (!(max_step > 0.0)) throw PreconditionError("grid step must be positive");
  const auto intervals = std::max<std::size_t>(
      2, static_cast<std::size_t>(std::ceil((hi - lo) / max_step - 1e-9)));
  return linspace(lo, hi, intervals + 1);
}

std::vector<double> linspace(double lo, double hi, std::size_t count) {
  if (count == 0) return {};
  if (count == 1) return {lo};
  std::vector<double> out(count);
  const double step = (hi - lo) / static_cast<double>(count - 1);
  for (std::size_t k = 0; k < count; ++k) out[k] = lo + step * static_cast<double>(k);
  out.back() = hi;
  return out;
}

}  // namespace spinflip

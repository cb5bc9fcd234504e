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

#include "spinflip/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "spinflip/errors.hpp"

namespace spinflip {

GaussLegendreRule gauss_legendre(int n) {
  if (n < 1) throw PreconditionError("Gauss-Legendre rule needs n >= 1");
  GaussLegendreRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Tricomi initial guess for the i-th largest root
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // recompute derivative at the converged root
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n == 1 ? 1.0 : n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    const auto lo = static_cast<std::size_t>(i);
    const auto hi = static_cast<std::size_t>(n - 1 - i);
    rule.nodes[lo] = -x;
    rule.nodes[hi] = x;
    rule.weights[lo] = w;
    rule.weights[hi] = w;
  }
  if (n % 2 == 1) rule.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
  return rule;
}

double gauss_legendre_integrate(const BatchFunction& f, double a, double b, int n) {
  const GaussLegendreRule rule = gauss_legendre(n);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  std::vector<double> x(rule.nodes.size());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = mid + half * rule.nodes[i];
  const std::vector<double> y = f(x);
  if (y.size() != x.size()) throw PreconditionError("batch integrand returned the wrong number of values");
  double sum = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) sum += rule.weights[i] * y[i];
  return half * sum;
}

double robustness_lambda(const BatchFunction& deficit, double gamma_bar, double epsilon,
                         int n_quad, const LambdaOptions& options) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw PreconditionError("epsilon must lie in (0, 1)");
  if (n_quad < 8) throw PreconditionError("n_quad must be >= 8");
  if (gamma_bar == 0.0 || !std::isfinite(gamma_bar))
    throw PreconditionError("gamma_bar must be finite and nonzero");

  const double a = gamma_bar * (1.0 - epsilon);
  const double b = gamma_bar * (1.0 + epsilon);
  const double norm = 1.0 / (b - a);
  auto estimate = [&](int n) { return norm * gauss_legendre_integrate(deficit, a, b, n); };

  int n = n_quad;
  double prev = estimate(n);
  double rel_change = 0.0;
  for (int d = 0; d < options.max_doublings; ++d) {
    n *= 2;
    const double cur = estimate(n);
    const double diff = std::abs(cur - prev);
    rel_change = cur != 0.0 ? diff / std::abs(cur) : diff;
    if (diff <= options.rel_tol * std::abs(cur) + options.abs_floor) return cur;
    prev = cur;
  }
  if (rel_change <= options.accept_tol) return prev;
  std::ostringstream os;
  os << "robustness quadrature did not converge: relative change " << rel_change
     << " after " << n << " nodes";
  throw QuadratureError(os.str(), prev);
}

double robustness_lambda(const std::function<double(double)>& deficit, double gamma_bar,
                         double epsilon, int n_quad, const LambdaOptions& options) {
  BatchFunction batch = [&deficit](std::span<const double> xs) {
    std::vector<double> ys;
    ys.reserve(xs.size());
    for (double x : xs) ys.push_back(deficit(x));
    return ys;
  };
  return robustness_lambda(batch, gamma_bar, epsilon, n_quad, options);
}

}  // namespace spinflip

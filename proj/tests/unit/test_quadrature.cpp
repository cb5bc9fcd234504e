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

#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "spinflip/baselines.hpp"
#include "spinflip/errors.hpp"
#include "spinflip/quadrature.hpp"

using namespace spinflip;
using doctest::Approx;

TEST_CASE("Gauss-Legendre weights sum to 2 and nodes are symmetric") {
  for (int n : {1, 2, 5, 64, 257}) {
    const auto rule = gauss_legendre(n);
    REQUIRE(rule.nodes.size() == static_cast<std::size_t>(n));
    double sum = 0.0;
    for (double w : rule.weights) sum += w;
    CHECK(sum == Approx(2.0).epsilon(1e-14));
    for (int i = 0; i < n; ++i)
      CHECK(std::abs(rule.nodes[i] + rule.nodes[n - 1 - i]) < 1e-14);
  }
}

TEST_CASE("n-point rule integrates degree 2n - 1 exactly") {
  const int n = 8;
  const auto rule = gauss_legendre(n);
  for (int deg = 0; deg <= 2 * n - 1; ++deg) {
    double q = 0.0;
    for (int i = 0; i < n; ++i) q += rule.weights[i] * std::pow(rule.nodes[i], deg);
    const double exact = deg % 2 ? 0.0 : 2.0 / (deg + 1);
    CHECK(std::abs(q - exact) < 1e-14);
  }
  // Degree 2n is no longer exact.
  double q = 0.0;
  for (int i = 0; i < n; ++i) q += rule.weights[i] * std::pow(rule.nodes[i], 2 * n);
  CHECK(std::abs(q - 2.0 / (2 * n + 1)) > 1e-8);
}

TEST_CASE("integration on a general interval") {
  const BatchFunction exp_fn = [](std::span<const double> x) {
    std::vector<double> y;
    for (double v : x) y.push_back(std::exp(v));
    return y;
  };
  CHECK(gauss_legendre_integrate(exp_fn, 0.0, 2.0, 20) == Approx(std::exp(2.0) - 1.0).epsilon(1e-14));
}

TEST_CASE("zero deficit has zero robustness") {
  CHECK(robustness_lambda([](double) { return 0.0; }, 2.0, 0.01) == 0.0);
}

TEST_CASE("pi-pulse deficit reproduces the closed form") {
  // Deficit sin^2(pi eps' / 2) with gamma = gamma_bar (1 - eps').
  const double gamma_bar = 2.0;
  auto deficit = [&](double g) {
    const double s = std::sin(std::numbers::pi * (1.0 - g / gamma_bar) / 2.0);
    return s * s;
  };
  for (double eps : {0.001, 0.01, 0.05, 0.3}) {
    const double lambda = robustness_lambda(deficit, gamma_bar, eps);
    CHECK(std::abs(lambda - analytic_lambda(Baseline::pi_pulse, eps)) < 1e-10);
  }
}

TEST_CASE("preconditions on epsilon and node count") {
  auto f = [](double) { return 1.0; };
  CHECK_THROWS_AS(robustness_lambda(f, 1.0, 0.0), PreconditionError);
  CHECK_THROWS_AS(robustness_lambda(f, 1.0, 1.0), PreconditionError);
  CHECK_THROWS_AS(robustness_lambda(f, 1.0, 0.1, 7), PreconditionError);
  CHECK(robustness_lambda(f, 1.0, 0.1, 8) == Approx(1.0));
}

TEST_CASE("non-convergent quadrature carries its partial value") {
  auto wild = [](double g) { return 0.5 + 0.5 * std::sin(1e5 * g); };
  try {
    robustness_lambda(wild, 1.0, 0.5);
    FAIL("expected QuadratureError");
  } catch (const QuadratureError& e) {
    CHECK(std::isfinite(e.partial_value()));
  }
}

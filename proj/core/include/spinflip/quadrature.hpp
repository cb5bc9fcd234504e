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

#include <functional>
#include <span>
#include <vector>

namespace spinflip {

struct GaussLegendreRule {
  std::vector<double> nodes;    // on [-1, 1], ascending
  std::vector<double> weights;  // sum to 2
};

// n-point Gauss-Legendre rule (n >= 1), nodes by Newton iteration on P_n.
GaussLegendreRule gauss_legendre(int n);

// Integral of f over [a, b] with an n-point rule; f receives all nodes at once.
using BatchFunction = std::function<std::vector<double>(std::span<const double>)>;
double gauss_legendre_integrate(const BatchFunction& f, double a, double b, int n);

inline constexpr int kDefaultQuadratureNodes = 64;

struct LambdaOptions {
  double rel_tol = 1e-12;     // target relative change between doublings
  double abs_floor = 1e-15;   // roundoff floor of individual deficits
  double accept_tol = 1e-9;   // relative change still accepted at the cap
  int max_doublings = 4;
};

// Robustness functional: the mean of the deficit over
// [gamma_bar (1 - eps), gamma_bar (1 + eps)], i.e.
//   (1 / (2 gamma_bar eps)) * integral of deficit(gamma) d gamma.
// Nodes double from n_quad until successive estimates agree; throws
// QuadratureError (carrying the last estimate) when they never do.
double robustness_lambda(const BatchFunction& deficit, double gamma_bar, double epsilon,
                         int n_quad = kDefaultQuadratureNodes,
                         const LambdaOptions& options = {});

// Scalar-callback convenience overload.
double robustness_lambda(const std::function<double(double)>& deficit, double gamma_bar,
                         double epsilon, int n_quad = kDefaultQuadratureNodes,
                         const LambdaOptions& options = {});

}  // namespace spinflip

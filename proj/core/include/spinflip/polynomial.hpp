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

#include <span>
#include <vector>

namespace spinflip {

// Value and first two derivatives of a scalar function at one point.
struct Jet {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

// Hermite-type interpolation constraint: the `order`-th derivative at `x`
// equals `value`. Only orders 0..2 are supported.
struct PolyConstraint {
  double x;
  int order;
  double value;
};

// Real polynomial with ascending coefficients c0 + c1 x + c2 x^2 + ...
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> coefficients);

  // Minimal-degree polynomial (degree = constraints.size() - 1) meeting every
  // constraint. Throws DomainError when the constraint system is singular.
  static Polynomial fit(std::span<const PolyConstraint> constraints);

  Jet operator()(double x) const;
  Polynomial derivative() const;
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<double>& coefficients() const { return coeffs_; }

 private:
  std::vector<double> coeffs_{0.0};
};

}  // namespace spinflip

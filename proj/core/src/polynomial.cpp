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

#include "spinflip/polynomial.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "spinflip/errors.hpp"

namespace spinflip {

Polynomial::Polynomial(std::vector<double> coefficients)
    : coeffs_(std::move(coefficients)) {
  if (coeffs_.empty()) coeffs_.push_back(0.0);
}

Polynomial Polynomial::fit(std::span<const PolyConstraint> constraints) {
  const auto n = static_cast<Eigen::Index>(constraints.size());
  if (n == 0) throw DomainError("polynomial fit needs at least one constraint");
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd rhs(n);
  for (Eigen::Index row = 0; row < n; ++row) {
    const auto& c = constraints[static_cast<std::size_t>(row)];
    if (c.order < 0 || c.order > 2)
      throw DomainError("polynomial fit supports derivative orders 0..2");
    for (Eigen::Index k = c.order; k < n; ++k) {
      double falling = 1.0;
      for (int j = 0; j < c.order; ++j) falling *= static_cast<double>(k - j);
      a(row, k) = falling * std::pow(c.x, static_cast<double>(k - c.order));
    }
    rhs(row) = c.value;
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
  if (!lu.isInvertible())
    throw DomainError("polynomial fit: constraints do not determine a unique polynomial");
  const Eigen::VectorXd sol = lu.solve(rhs);
  return Polynomial(std::vector<double>(sol.data(), sol.data() + n));
}

Jet Polynomial::operator()(double x) const {
  // Horner on value, first and second derivative simultaneously.
  Jet j{0.0, 0.0, 0.0};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    j.d2 = j.d2 * x + 2.0 * j.d1;
    j.d1 = j.d1 * x + j.value;
    j.value = j.value * x + *it;
  }
  return j;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return Polynomial({0.0});
  std::vector<double> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k)
    d[k - 1] = static_cast<double>(k) * coeffs_[k];
  return Polynomial(std::move(d));
}

}  // namespace spinflip

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

// Constant-field pi pulse and the x(pi/2) y(pi) x(pi/2) spin echo, with the
// closed-form robustness functionals used as reference curves.

#pragma once

#include <Eigen/Core>
#include <complex>
#include <string_view>

namespace spinflip {

class Unitary2 {
 public:
  // Throws PreconditionError if U^dagger U != 1 or |det U| != 1 (tol 1e-12).
  explicit Unitary2(const Eigen::Matrix2cd& m);

  static Unitary2 identity();

  const Eigen::Matrix2cd& matrix() const { return m_; }
  std::complex<double> operator()(int i, int j) const { return m_(i, j); }
  Unitary2 operator*(const Unitary2& rhs) const;

  // |<+| U |+>|^2
  double survival() const { return std::norm(m_(0, 0)); }

 private:
  Eigen::Matrix2cd m_;
};

enum class PulseAxis { x, y };

// cos(angle/2) I - i sin(angle/2) sigma_axis
Unitary2 pulse_propagator(PulseAxis axis, double angle);

enum class Baseline { pi_pulse, spin_echo };

Baseline parse_baseline(std::string_view name);
std::string_view to_string(Baseline b);

// Closed forms: sin^2(pi eps / 2) and sin^4(pi eps / 2).
double survival_probability(Baseline protocol, double epsilon);

// Same quantity from the propagator product, every pulse angle scaled by
// gamma / gamma_bar = 1 - eps.
double propagator_survival(Baseline protocol, double epsilon);
Unitary2 baseline_propagator(Baseline protocol, double epsilon);

// Lambda^pi = 1/2 - sin(pi eps)/(2 pi eps),
// Lambda^se = 3/8 - sin(pi eps)/(2 pi eps) + sin(2 pi eps)/(16 pi eps).
// Below eps = 1e-4 the leading series terms pi^2 eps^2 / 12 and
// pi^4 eps^4 / 80 are used. Throws DomainError for eps <= 0.
double analytic_lambda(Baseline protocol, double epsilon);

}  // namespace spinflip

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

#include "spinflip/baselines.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <string>

#include "spinflip/errors.hpp"

namespace spinflip {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kUnitaryTol = 1e-12;
constexpr double kSeriesBelow = 1e-4;

}  // namespace

Unitary2::Unitary2(const Eigen::Matrix2cd& m) : m_(m) {
  const double dev = (m_.adjoint() * m_ - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff();
  if (dev > kUnitaryTol || std::abs(std::abs(m_.determinant()) - 1.0) > kUnitaryTol)
    throw PreconditionError("matrix is not unitary within 1e-12");
}

Unitary2 Unitary2::identity() { return Unitary2(Eigen::Matrix2cd::Identity()); }

Unitary2 Unitary2::operator*(const Unitary2& rhs) const { return Unitary2(m_ * rhs.m_); }

Unitary2 pulse_propagator(PulseAxis axis, double angle) {
  using cd = std::complex<double>;
  const double c = std::cos(0.5 * angle);
  const double s = std::sin(0.5 * angle);
  Eigen::Matrix2cd m;
  if (axis == PulseAxis::x) {
    m << cd(c, 0.0), cd(0.0, -s),
         cd(0.0, -s), cd(c, 0.0);
  } else {
    // -i sin * sigma_y = [[0, -sin], [sin, 0]]
    m << cd(c, 0.0), cd(-s, 0.0),
         cd(s, 0.0), cd(c, 0.0);
  }
  return Unitary2(m);
}

Baseline parse_baseline(std::string_view name) {
  if (name == "pi_pulse" || name == "pi-pulse" || name == "pi") return Baseline::pi_pulse;
  if (name == "spin_echo" || name == "spin-echo" || name == "se") return Baseline::spin_echo;
  throw PreconditionError("unknown baseline protocol: " + std::string(name));
}

std::string_view to_string(Baseline b) {
  return b == Baseline::pi_pulse ? "pi_pulse" : "spin_echo";
}

double survival_probability(Baseline protocol, double epsilon) {
  const double s2 = std::pow(std::sin(0.5 * kPi * epsilon), 2);
  return protocol == Baseline::pi_pulse ? s2 : s2 * s2;
}

Unitary2 baseline_propagator(Baseline protocol, double epsilon) {
  const double scale = 1.0 - epsilon;
  if (protocol == Baseline::pi_pulse) return pulse_propagator(PulseAxis::x, kPi * scale);
  const Unitary2 half = pulse_propagator(PulseAxis::x, 0.5 * kPi * scale);
  return half * pulse_propagator(PulseAxis::y, kPi * scale) * half;
}

double propagator_survival(Baseline protocol, double epsilon) {
  return baseline_propagator(protocol, epsilon).survival();
}

double analytic_lambda(Baseline protocol, double epsilon) {
  if (!(epsilon > 0.0)) throw DomainError("analytic Lambda needs epsilon > 0");
  const double x = kPi * epsilon;
  if (protocol == Baseline::pi_pulse) {
    if (epsilon < kSeriesBelow) return x * x / 12.0;
    return 0.5 - std::sin(x) / (2.0 * x);
  }
  if (epsilon < kSeriesBelow) return x * x * x * x / 80.0;
  return 3.0 / 8.0 - std::sin(x) / (2.0 * x) + std::sin(2.0 * x) / (16.0 * x);
}

}  // namespace spinflip

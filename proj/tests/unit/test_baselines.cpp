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

#include "doctest.h"
#include "spinflip/baselines.hpp"
#include "spinflip/errors.hpp"
#include "spinflip/quadrature.hpp"

using namespace spinflip;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

double unitarity_defect(const Unitary2& u) {
  return (u.matrix().adjoint() * u.matrix() - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("pulse propagators") {
  CHECK((pulse_propagator(PulseAxis::x, 0.0).matrix() - Eigen::Matrix2cd::Identity()).norm() == 0.0);
  const Unitary2 flip = pulse_propagator(PulseAxis::x, kPi);
  CHECK(std::abs(flip(0, 1) - std::complex<double>(0.0, -1.0)) < 1e-15);
  CHECK(flip.survival() < 1e-30);
  CHECK(unitarity_defect(pulse_propagator(PulseAxis::y, 0.731)) < 1e-15);
}

TEST_CASE("composite echo is unitary with squared survival") {
  const double eps = 0.07;
  const double f = 1.0 - eps;
  const Unitary2 u = pulse_propagator(PulseAxis::y, kPi / 2 * f) *
                     pulse_propagator(PulseAxis::x, kPi * f) *
                     pulse_propagator(PulseAxis::y, kPi / 2 * f);
  CHECK(unitarity_defect(u) < 1e-12);
  const double single = survival_probability(Baseline::pi_pulse, eps);
  CHECK(std::abs(u.survival() - single * single) < 1e-12);
}

TEST_CASE("survival probabilities, closed form against propagators") {
  CHECK(survival_probability(Baseline::pi_pulse, 0.0) == 0.0);
  CHECK(survival_probability(Baseline::spin_echo, 0.0) == 0.0);
  CHECK(survival_probability(Baseline::pi_pulse, 1.0) == Approx(1.0));
  CHECK(survival_probability(Baseline::pi_pulse, 0.01) == Approx(2.4671981713419e-4).epsilon(1e-12));
  for (double eps : {-0.2, 0.001, 0.01, 0.05, 0.3, 0.9}) {
    for (Baseline b : {Baseline::pi_pulse, Baseline::spin_echo}) {
      CHECK(std::abs(survival_probability(b, eps) - propagator_survival(b, eps)) < 1e-12);
      CHECK(unitarity_defect(baseline_propagator(b, eps)) < 1e-12);
    }
  }
}

TEST_CASE("analytic robustness against quadrature of the propagator survival") {
  for (double eps : {0.001, 0.01, 0.05}) {
    for (Baseline b : {Baseline::pi_pulse, Baseline::spin_echo}) {
      const double numeric =
          robustness_lambda([b](double g) { return propagator_survival(b, 1.0 - g); }, 1.0, eps);
      CHECK(std::abs(numeric - analytic_lambda(b, eps)) < 1e-9);
    }
  }
}

TEST_CASE("small-epsilon limits") {
  const double eps = 1e-3;
  CHECK(analytic_lambda(Baseline::pi_pulse, eps) / (eps * eps) ==
        Approx(kPi * kPi / 12.0).epsilon(0.01));
  CHECK(analytic_lambda(Baseline::spin_echo, eps) / std::pow(eps, 4) ==
        Approx(std::pow(kPi, 4) / 80.0).epsilon(0.01));
  // Series branch and closed form agree where they meet.
  const double lo = analytic_lambda(Baseline::pi_pulse, 0.99e-4);
  const double hi = analytic_lambda(Baseline::pi_pulse, 1.01e-4);
  CHECK(lo < hi);
  CHECK(hi / lo == Approx(std::pow(1.01 / 0.99, 2)).epsilon(1e-4));
}

TEST_CASE("echo is more robust than the single pulse") {
  for (double eps = 0.01; eps <= 0.5; eps += 0.01)
    CHECK(analytic_lambda(Baseline::spin_echo, eps) < analytic_lambda(Baseline::pi_pulse, eps));
}

TEST_CASE("baseline names and domain") {
  CHECK(parse_baseline("pi-pulse") == Baseline::pi_pulse);
  CHECK(parse_baseline(to_string(Baseline::spin_echo)) == Baseline::spin_echo);
  CHECK_THROWS_AS(parse_baseline("corpse"), PreconditionError);
  CHECK_THROWS_AS(analytic_lambda(Baseline::pi_pulse, 0.0), DomainError);
  CHECK_THROWS_AS(analytic_lambda(Baseline::spin_echo, -0.1), DomainError);
  CHECK_THROWS_AS(Unitary2(Eigen::Matrix2cd::Constant(1.0)), PreconditionError);
}

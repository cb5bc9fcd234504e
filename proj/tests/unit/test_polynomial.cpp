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

#include <array>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "spinflip/errors.hpp"
#include "spinflip/polynomial.hpp"

using namespace spinflip;
using doctest::Approx;

TEST_CASE("Horner evaluation returns value and two derivatives") {
  const Polynomial p({1.0, -2.0, 0.5, 3.0});  // 1 - 2x + x^2/2 + 3x^3
  const Jet j = p(2.0);
  CHECK(j.value == Approx(1.0 - 4.0 + 2.0 + 24.0));
  CHECK(j.d1 == Approx(-2.0 + 2.0 + 36.0));
  CHECK(j.d2 == Approx(1.0 + 36.0));
}

TEST_CASE("derivative of a constant is zero") {
  const Polynomial c({4.0});
  CHECK(c.derivative()(3.0).value == 0.0);
  CHECK(c(7.0).d1 == 0.0);
}

TEST_CASE("fit meets Hermite constraints") {
  const double pi = std::numbers::pi;
  const std::array<PolyConstraint, 4> cubic{{
      {0.0, 0, 0.0}, {1.0, 0, -pi}, {0.0, 1, 0.0}, {1.0, 1, 0.0}}};
  const Polynomial p = Polynomial::fit(cubic);
  CHECK(p.degree() == 3);
  // Closed form -pi (3 t^2 - 2 t^3).
  for (double t : {0.0, 0.25, 0.5, 0.9, 1.0})
    CHECK(p(t).value == Approx(-pi * (3 * t * t - 2 * t * t * t)).epsilon(1e-13));
  CHECK(std::abs(p(0.0).value) < 1e-14);
  CHECK(std::abs(p(1.0).value + pi) < 1e-14);
}

TEST_CASE("fit with second-derivative constraint") {
  const std::array<PolyConstraint, 3> c{{{0.0, 0, 1.0}, {0.0, 1, 0.0}, {0.0, 2, 6.0}}};
  const Polynomial p = Polynomial::fit(c);
  CHECK(p(1.0).value == Approx(4.0));  // 1 + 3 x^2
}

TEST_CASE("singular constraint system is rejected") {
  const std::array<PolyConstraint, 2> dup{{{0.5, 0, 1.0}, {0.5, 0, 2.0}}};
  CHECK_THROWS_AS(Polynomial::fit(dup), DomainError);
}

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

#include "spinflip/interacting.hpp"

#include <algorithm>
#include <array>
#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>
#include <cmath>
#include <memory>
#include <numbers>
#include <sstream>

#include "spinflip/errors.hpp"
#include "spinflip/rk4.hpp"

namespace spinflip {

namespace {

using std::numbers::pi;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Spline = boost::math::interpolators::cardinal_cubic_b_spline<double>;

// Endpoint window inside which the detuning uses its analytic limit.
constexpr double kEndpointWindow = 1e-6;

void check_unit(const BlochVector& s, const char* name) {
  if (!s.is_unit()) {
    std::ostringstream os;
    os << name << " must have unit norm (|S| = " << s.norm() << ")";
    throw PreconditionError(os.str());
  }
}

void check_normalized(double norm2) {
  if (std::abs(norm2 - 1.0) > kUnitTolerance)
    throw PreconditionError("initial amplitudes must be normalized");
}

bool same_duration(double a, double b) {
  return std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b));
}

}  // namespace

std::pair<BlochTrajectory, BlochTrajectory> integrate_coupled_spins(
    const CoupledSpinsState& initial, const FieldProtocol& field, double gamma1, double gamma2,
    int n_steps) {
  check_unit(initial.s1, "s1");
  check_unit(initial.s2, "s2");
  const SampledField sampled(field, n_steps);
  const double h = sampled.step();
  const double mu = initial.mu;
  auto rhs = [&](std::size_t k, const Vec6& y) -> Vec6 {
    const Vec3 b = sampled.at_half_index(k);
    const Vec3 s1 = y.head<3>();
    const Vec3 s2 = y.tail<3>();
    Vec6 dy;
    dy.head<3>() = gamma1 * b.cross(s1) + mu * s2.cross(s1);
    dy.tail<3>() = gamma2 * b.cross(s2) + mu * s1.cross(s2);
    return dy;
  };
  const auto n = static_cast<std::size_t>(n_steps);
  std::vector<BlochVector> p1;
  std::vector<BlochVector> p2;
  p1.reserve(n + 1);
  p2.reserve(n + 1);
  Vec6 y;
  y << initial.s1.vec(), initial.s2.vec();
  p1.push_back(initial.s1);
  p2.push_back(initial.s2);
  for (std::size_t i = 0; i < n; ++i) {
    y = detail::rk4_step(y, h, i, rhs);
    p1.emplace_back(Vec3(y.head<3>()));
    p2.emplace_back(Vec3(y.tail<3>()));
  }
  return {BlochTrajectory(field.duration(), std::move(p1)),
          BlochTrajectory(field.duration(), std::move(p2))};
}

FieldProtocol isotropic_corrected_field(const FieldProtocol& b0_field,
                                        const BlochTrajectory& traj1,
                                        const BlochTrajectory& traj2, double mu, double gamma1,
                                        double gamma2) {
  if (traj1.size() != traj2.size() || !same_duration(traj1.duration(), traj2.duration()) ||
      !same_duration(traj1.duration(), b0_field.duration())) {
    std::ostringstream os;
    os << "trajectory grids do not match (" << traj1.size() << " points over "
       << traj1.duration() << " vs " << traj2.size() << " points over " << traj2.duration()
       << ", field duration " << b0_field.duration() << ")";
    throw PreconditionError(os.str());
  }
  if (traj1.size() < 4) throw PreconditionError("cubic interpolation needs at least 4 points");
  if (gamma1 == 0.0 || gamma2 == 0.0)
    throw PreconditionError("gyromagnetic factors must be non-zero");

  const double duration = traj1.duration();
  const double h = duration / static_cast<double>(traj1.steps());
  const Vec3 b_start = b0_field(0.0);
  const Vec3 b_end = b0_field(duration);

  auto splines = std::make_shared<std::array<Spline, 6>>();
  std::vector<double> column(traj1.size());
  for (int s = 0; s < 2; ++s) {
    const BlochTrajectory& traj = s == 0 ? traj1 : traj2;
    const double gamma = s == 0 ? gamma1 : gamma2;
    // The trajectories solve the free equation, so their end slopes are exact.
    const Vec3 d_start = gamma * b_start.cross(traj.front().vec());
    const Vec3 d_end = gamma * b_end.cross(traj.back().vec());
    for (int c = 0; c < 3; ++c) {
      for (std::size_t k = 0; k < traj.size(); ++k) column[k] = traj[k].vec()[c];
      (*splines)[3 * s + c] =
          Spline(column.data(), column.size(), 0.0, h, d_start[c], d_end[c]);
    }
  }

  const double w1 = mu / gamma2;
  const double w2 = mu / gamma1;
  auto eval = [b0_field, splines, w1, w2](double t) -> Vec3 {
    const auto& sp = *splines;
    const Vec3 s1(sp[0](t), sp[1](t), sp[2](t));
    const Vec3 s2(sp[3](t), sp[4](t), sp[5](t));
    return b0_field(t) - w1 * s1 - w2 * s2;
  };
  ProtocolInfo info = b0_field.info();
  info.method = "isotropic-corrected";
  info.params["mu"] = mu;
  info.params["gamma1"] = gamma1;
  info.params["gamma2"] = gamma2;
  return FieldProtocol(duration, std::move(eval), std::move(info));
}

std::vector<TripletAmplitudes> integrate_triplet(const TripletAmplitudes& initial,
                                                 const FieldProtocol& field, int n_steps) {
  check_normalized(initial.norm2());
  const SampledField sampled(field, n_steps);
  const double h = sampled.step();
  const double g = initial.gamma;
  const double xi = initial.xi;
  const double r = g / std::numbers::sqrt2;
  const Complex minus_i(0.0, -1.0);
  auto rhs = [&](std::size_t k, const Eigen::Vector3cd& y) -> Eigen::Vector3cd {
    const Vec3& b = sampled.at_half_index(k);
    const Complex bm(b.x(), -b.y());
    const Complex bp(b.x(), b.y());
    Eigen::Vector3cd hy;
    hy[0] = (g * b.z() + xi) * y[0] + r * bm * y[1];
    hy[1] = r * bp * y[0] - xi * y[1] + r * bm * y[2];
    hy[2] = r * bp * y[1] + (-g * b.z() + xi) * y[2];
    return minus_i * hy;
  };
  const auto n = static_cast<std::size_t>(n_steps);
  std::vector<TripletAmplitudes> out;
  out.reserve(n + 1);
  out.push_back(initial);
  Eigen::Vector3cd y(initial.a, initial.b, initial.c);
  for (std::size_t i = 0; i < n; ++i) {
    y = detail::rk4_step(y, h, i, rhs);
    out.push_back({y[0], y[1], y[2], xi, g});
  }
  return out;
}

InvariantDesign::InvariantDesign(Target target, double t_f, double xi, double omega,
                                 double gamma)
    : target_(target), t_f_(t_f), xi_(xi), omega_(omega), gamma_(gamma) {
  if (!(t_f > 0.0) || !std::isfinite(t_f)) throw PreconditionError("t_f must be positive");
  if (!std::isfinite(xi) || !std::isfinite(omega)) throw PreconditionError("xi and omega must be finite");
  if (gamma == 0.0 || !std::isfinite(gamma)) throw PreconditionError("gamma must be non-zero");
  coupling_ = target == Target::bell ? 1.0 / std::numbers::sqrt2 : std::sqrt(3.0) / 2.0;

  // Fitted in tau = t / t_f; derivative constraints are scaled by t_f.
  const std::array<PolyConstraint, 4> theta_c{{
      {0.0, 0, 0.0}, {1.0, 0, -pi}, {0.0, 1, 0.0}, {1.0, 1, 0.0}}};
  const std::array<PolyConstraint, 5> phi_c{{
      {0.0, 0, -pi / 2}, {0.5, 0, -pi / 2}, {1.0, 0, -pi / 2}, {0.0, 1, -pi}, {1.0, 1, pi}}};
  theta_ = Polynomial::fit(theta_c);
  phi_ = Polynomial::fit(phi_c);
}

double InvariantDesign::detuning_offset() const {
  return target_ == Target::bell ? 2.0 * xi_ : 4.0 * xi_;
}

Jet InvariantDesign::theta(double t) const {
  const Jet j = theta_(t / t_f_);
  return {j.value, j.d1 / t_f_, j.d2 / (t_f_ * t_f_)};
}

Jet InvariantDesign::phi(double t) const {
  const Jet j = phi_(t / t_f_);
  return {j.value, j.d1 / t_f_, j.d2 / (t_f_ * t_f_)};
}

double InvariantDesign::drive(double t) const {
  const double sin_phi = std::sin(phi(t).value);
  if (std::abs(sin_phi) < 1e-12) {
    std::ostringstream os;
    os << "invariant design: sin(phi) vanishes at t = " << t;
    throw DomainError(os.str());
  }
  return theta(t).d1 / (2.0 * coupling_ * sin_phi);
}

double InvariantDesign::detuning(double t) const {
  const double tau = t / t_f_;
  // theta' cot(theta) ~ 2 / (t - t_e) and cot(phi) ~ -phi'(t_e) (t - t_e)
  // near either end, so the sum tends to -3 phi'(t_e).
  if (tau < kEndpointWindow) return -3.0 * phi(0.0).d1;
  if (tau > 1.0 - kEndpointWindow) return -3.0 * phi(t_f_).d1;
  const Jet th = theta(t);
  const Jet ph = phi(t);
  const double cot_theta = std::cos(th.value) / std::sin(th.value);
  const double cot_phi = std::cos(ph.value) / std::sin(ph.value);
  return -ph.d1 + th.d1 * cot_theta * cot_phi;
}

double InvariantDesign::bz(double t) const {
  return (detuning(t) + omega_ - detuning_offset()) / gamma_;
}

FieldProtocol InvariantDesign::lab_field() const {
  const InvariantDesign self = *this;
  auto eval = [self](double t) -> Vec3 {
    const double b = self.drive(t) / self.gamma_;
    const double wt = self.omega_ * t;
    return {b * std::cos(wt), b * std::sin(wt), self.bz(t)};
  };
  ProtocolInfo info{target_ == Target::bell ? "invariant-bell" : "invariant-w",
                    {{"t_f", t_f_}, {"xi", xi_}, {"omega", omega_}, {"gamma", gamma_}}};
  return FieldProtocol(t_f_, std::move(eval), std::move(info));
}

Eigen::Vector2cd InvariantDesign::eigenstate(double t) const {
  const double th = theta(t).value;
  const double ph = phi(t).value;
  return {std::polar(std::cos(th / 2.0), ph), Complex(std::sin(th / 2.0), 0.0)};
}

InvariantDesign invariant_design(double t_f, double xi, double omega) {
  return InvariantDesign(InvariantDesign::Target::bell, t_f, xi, omega);
}

double bell_fidelity(double t_f, double xi, double omega, int n_steps) {
  const InvariantDesign design = invariant_design(t_f, xi, omega);
  const auto series = integrate_triplet({Complex(1.0), Complex(0.0), Complex(0.0), xi, 1.0},
                                        design.lab_field(), n_steps);
  return std::norm(series.back().b);
}

Eigen::Matrix4cd symmetric_three_spin_hamiltonian(const Vec3& b, double gamma, double xi) {
  const Complex bm(b.x(), -b.y());
  const double gz = gamma * b.z();
  const double s3 = std::sqrt(3.0) / 2.0;
  Eigen::Matrix4cd hm = Eigen::Matrix4cd::Zero();
  hm(0, 0) = 1.5 * gz + 3.0 * xi;
  hm(1, 1) = 0.5 * gz - xi;
  hm(2, 2) = -0.5 * gz - xi;
  hm(3, 3) = -1.5 * gz + 3.0 * xi;
  hm(0, 1) = s3 * gamma * bm;
  hm(1, 2) = gamma * bm;
  hm(2, 3) = s3 * gamma * bm;
  for (int i = 0; i < 3; ++i) hm(i + 1, i) = std::conj(hm(i, i + 1));
  return hm;
}

std::vector<Eigen::Vector4cd> integrate_three_spin(const Eigen::Vector4cd& initial,
                                                   const FieldProtocol& field, double gamma,
                                                   double xi, int n_steps) {
  check_normalized(initial.squaredNorm());
  const SampledField sampled(field, n_steps);
  const double h = sampled.step();
  const Complex minus_i(0.0, -1.0);
  auto rhs = [&](std::size_t k, const Eigen::Vector4cd& y) -> Eigen::Vector4cd {
    return minus_i * (symmetric_three_spin_hamiltonian(sampled.at_half_index(k), gamma, xi) * y);
  };
  const auto n = static_cast<std::size_t>(n_steps);
  std::vector<Eigen::Vector4cd> out;
  out.reserve(n + 1);
  out.push_back(initial);
  Eigen::Vector4cd y = initial;
  for (std::size_t i = 0; i < n; ++i) {
    y = detail::rk4_step(y, h, i, rhs);
    out.push_back(y);
  }
  return out;
}

double w_fidelity(double t_f, double xi, double omega, int n_steps) {
  const InvariantDesign design(InvariantDesign::Target::w_state, t_f, xi, omega);
  const Eigen::Vector4cd start(1.0, 0.0, 0.0, 0.0);
  const auto series = integrate_three_spin(start, design.lab_field(), 1.0, xi, n_steps);
  return std::norm(series.back()[1]);
}

double min_tracking_overlap(const InvariantDesign& design, int n_steps) {
  const FieldProtocol field = design.lab_field();
  std::vector<std::pair<Complex, Complex>> amps;
  if (design.target() == InvariantDesign::Target::bell) {
    const auto series = integrate_triplet(
        {Complex(1.0), Complex(0.0), Complex(0.0), design.xi(), design.gamma()}, field, n_steps);
    for (const auto& s : series) amps.emplace_back(s.a, s.b);
  } else {
    const Eigen::Vector4cd start(1.0, 0.0, 0.0, 0.0);
    const auto series = integrate_three_spin(start, field, design.gamma(), design.xi(), n_steps);
    for (const auto& s : series) amps.emplace_back(s[0], s[1]);
  }
  double worst = 1.0;
  const double dt = design.duration() / static_cast<double>(n_steps);
  for (std::size_t k = 0; k < amps.size(); ++k) {
    const double t = k + 1 == amps.size() ? design.duration() : dt * static_cast<double>(k);
    const double half = 0.5 * design.omega() * t;
    const Eigen::Vector2cd psi(amps[k].first * std::polar(1.0, half),
                               amps[k].second * std::polar(1.0, -half));
    worst = std::min(worst, std::norm(design.eigenstate(t).dot(psi)));
  }
  return worst;
}

}  // namespace spinflip

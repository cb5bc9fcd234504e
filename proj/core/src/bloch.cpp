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

#include "spinflip/bloch.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "spinflip/errors.hpp"
#include "spinflip/rk4.hpp"

namespace spinflip {

namespace {

void check_steps(int n_steps) {
  if (n_steps < kMinSteps) {
    std::ostringstream os;
    os << "n_steps must be >= " << kMinSteps << " (got " << n_steps << ")";
    throw PreconditionError(os.str());
  }
}

void check_unit(const BlochVector& s) {
  if (!s.is_unit()) {
    std::ostringstream os;
    os << "initial Bloch vector must have unit norm (|S| = " << s.norm() << ")";
    throw PreconditionError(os.str());
  }
}

}  // namespace

BlochVector BlochVector::from_angles(double theta, double phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

bool BlochVector::is_unit(double tol) const {
  return std::abs(v_.norm() - 1.0) <= tol;
}

FieldProtocol::FieldProtocol(double duration, Evaluator evaluator, ProtocolInfo info)
    : duration_(duration), eval_(std::move(evaluator)), info_(std::move(info)) {
  if (!(duration_ > 0.0) || !std::isfinite(duration_))
    throw PreconditionError("field protocol duration must be positive and finite");
  if (!eval_) throw PreconditionError("field protocol needs an evaluator");
}

FieldProtocol FieldProtocol::constant(double duration, const Vec3& b) {
  return FieldProtocol(duration, [b](double) { return b; }, ProtocolInfo{"constant", {}});
}

FieldProtocol FieldProtocol::annotated(const std::map<std::string, double>& params) const {
  FieldProtocol copy = *this;
  for (const auto& [k, v] : params) copy.info_.params[k] = v;
  return copy;
}

std::vector<FieldSample> FieldProtocol::sample(std::size_t n_samples) const {
  if (n_samples < 2) throw PreconditionError("field export needs at least two samples");
  std::vector<FieldSample> out;
  out.reserve(n_samples);
  const double dt = duration_ / static_cast<double>(n_samples - 1);
  for (std::size_t k = 0; k < n_samples; ++k) {
    const double t = k + 1 == n_samples ? duration_ : dt * static_cast<double>(k);
    out.push_back({t, eval_(t)});
  }
  return out;
}

BlochTrajectory::BlochTrajectory(double duration, std::vector<BlochVector> points)
    : duration_(duration), points_(std::move(points)) {
  if (points_.size() < 2) throw PreconditionError("trajectory needs at least two points");
}

double BlochTrajectory::time(std::size_t k) const {
  if (k + 1 == points_.size()) return duration_;
  return duration_ * static_cast<double>(k) / static_cast<double>(steps());
}

double BlochTrajectory::max_norm_drift() const {
  double worst = 0.0;
  for (const auto& p : points_) worst = std::max(worst, std::abs(p.norm() - 1.0));
  return worst;
}

SampledField::SampledField(const FieldProtocol& field, int n_steps)
    : n_steps_(n_steps), duration_(field.duration()) {
  check_steps(n_steps);
  h_ = duration_ / n_steps;
  const std::size_t count = 2 * static_cast<std::size_t>(n_steps) + 1;
  samples_.reserve(count);
  const double half = 0.5 * h_;
  for (std::size_t k = 0; k < count; ++k) {
    const double t = k + 1 == count ? duration_ : half * static_cast<double>(k);
    Vec3 b = field(t);
    if (!b.allFinite()) {
      std::ostringstream os;
      os << "field evaluation is not finite at t = " << t;
      throw IntegrationError(os.str(), t);
    }
    samples_.push_back(b);
  }
}

BlochTrajectory integrate_bloch(const BlochVector& s0, const FieldProtocol& field,
                                double gamma, int n_steps) {
  check_unit(s0);
  const SampledField sampled(field, n_steps);
  const double h = sampled.step();
  auto rhs = [&](std::size_t k, const Vec3& s) -> Vec3 {
    return gamma * sampled.at_half_index(k).cross(s);
  };
  std::vector<BlochVector> points;
  points.reserve(static_cast<std::size_t>(n_steps) + 1);
  points.push_back(s0);
  Vec3 s = s0.vec();
  for (std::size_t i = 0; i < static_cast<std::size_t>(n_steps); ++i) {
    s = detail::rk4_step(s, h, i, rhs);
    points.emplace_back(s);
  }
  return BlochTrajectory(field.duration(), std::move(points));
}

std::vector<BlochVector> integrate_bloch_ensemble(const BlochVector& s0,
                                                  const FieldProtocol& field,
                                                  std::span<const double> gammas,
                                                  int n_steps) {
  check_unit(s0);
  return integrate_bloch_ensemble(s0, SampledField(field, n_steps), gammas);
}

std::vector<BlochVector> integrate_bloch_ensemble(const BlochVector& s0,
                                                  const SampledField& field,
                                                  std::span<const double> gammas) {
  check_unit(s0);
  const std::size_t m = gammas.size();
  // One column per spin; the stage field is broadcast across the ensemble.
  Eigen::Matrix3Xd s(3, static_cast<Eigen::Index>(m));
  s.colwise() = s0.vec();
  const Eigen::Map<const Eigen::RowVectorXd> g(gammas.data(), static_cast<Eigen::Index>(m));
  const double h = field.step();

  auto rhs = [&](std::size_t k, const Eigen::Matrix3Xd& y) -> Eigen::Matrix3Xd {
    const Vec3& b = field.at_half_index(k);
    Eigen::Matrix3Xd out(3, y.cols());
    out.row(0) = (b.y() * y.row(2) - b.z() * y.row(1)).cwiseProduct(g);
    out.row(1) = (b.z() * y.row(0) - b.x() * y.row(2)).cwiseProduct(g);
    out.row(2) = (b.x() * y.row(1) - b.y() * y.row(0)).cwiseProduct(g);
    return out;
  };
  for (std::size_t i = 0; i < static_cast<std::size_t>(field.steps()); ++i)
    s = detail::rk4_step(s, h, i, rhs);

  std::vector<BlochVector> out;
  out.reserve(m);
  for (Eigen::Index j = 0; j < s.cols(); ++j) out.emplace_back(Vec3(s.col(j)));
  return out;
}

std::vector<SphericalAngles> bloch_angles(const BlochTrajectory& traj) {
  constexpr double kPole = 1e-12;
  std::vector<SphericalAngles> out;
  out.reserve(traj.size());
  double prev_phi = 0.0;
  bool have_phi = false;
  for (const auto& p : traj.points()) {
    const double sz = std::clamp(p.z(), -1.0, 1.0);
    const double theta = std::acos(sz);
    double phi = prev_phi;
    if (std::abs(p.z()) <= 1.0 - kPole) {
      const double raw = std::atan2(p.y(), p.x());
      if (!have_phi) {
        phi = raw;
        have_phi = true;
      } else {
        // unwrap onto the branch closest to the previous value
        const double two_pi = 2.0 * std::numbers::pi;
        phi = raw + two_pi * std::round((prev_phi - raw) / two_pi);
      }
    }
    out.push_back({theta, phi});
    prev_phi = phi;
  }
  return out;
}

double flip_deficit(const BlochVector& final_state) {
  return std::clamp(0.5 * (1.0 + final_state.z()), 0.0, 1.0);
}

double flip_deficit(const BlochTrajectory& traj) { return flip_deficit(traj.back()); }

std::vector<Spinor> integrate_spinor(const Spinor& psi0, const FieldProtocol& field,
                                     double gamma, int n_steps) {
  if (std::abs(psi0.norm() - 1.0) > kUnitTolerance)
    throw PreconditionError("initial spinor must be normalized");
  const SampledField sampled(field, n_steps);
  const std::complex<double> i1(0.0, 1.0);
  auto rhs = [&](std::size_t k, const Spinor& psi) -> Spinor {
    const Vec3& b = sampled.at_half_index(k);
    // -i H psi with H = (gamma/2) [[Bz, Bx - i By], [Bx + i By, -Bz]]
    const std::complex<double> bm(b.x(), -b.y());
    const std::complex<double> bp(b.x(), b.y());
    Spinor hpsi;
    hpsi(0) = 0.5 * gamma * (b.z() * psi(0) + bm * psi(1));
    hpsi(1) = 0.5 * gamma * (bp * psi(0) - b.z() * psi(1));
    return -i1 * hpsi;
  };
  std::vector<Spinor> out;
  out.reserve(static_cast<std::size_t>(n_steps) + 1);
  out.push_back(psi0);
  Spinor psi = psi0;
  for (std::size_t i = 0; i < static_cast<std::size_t>(n_steps); ++i) {
    psi = detail::rk4_step(psi, sampled.step(), i, rhs);
    out.push_back(psi);
  }
  return out;
}

BlochVector bloch_vector_of(const Spinor& psi) {
  const std::complex<double> ab = std::conj(psi(0)) * psi(1);
  return {2.0 * ab.real(), 2.0 * ab.imag(), std::norm(psi(0)) - std::norm(psi(1))};
}

}  // namespace spinflip

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

// Spin expectation dynamics under time-dependent magnetic fields.
//
// Convention: dS/dt = gamma * B x S with S = 2<s>/hbar, hbar = 1. Equivalently
// the single-spin Hamiltonian is H = (gamma / 2) sigma . B. With this choice a
// constant B = (0, pi / (gamma t_f), 0) carries (0, 0, 1) to (0, 0, -1) in t_f.

#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>
#include <complex>
#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace spinflip {

using Vec3 = Eigen::Vector3d;
using Spinor = Eigen::Vector2cd;

inline constexpr int kDefaultSteps = 4000;
inline constexpr int kMinSteps = 16;
inline constexpr double kUnitTolerance = 1e-9;

class BlochVector {
 public:
  BlochVector() : v_(0.0, 0.0, 1.0) {}
  BlochVector(double sx, double sy, double sz) : v_(sx, sy, sz) {}
  explicit BlochVector(const Vec3& v) : v_(v) {}

  static BlochVector north() { return {0.0, 0.0, 1.0}; }
  static BlochVector south() { return {0.0, 0.0, -1.0}; }
  static BlochVector from_angles(double theta, double phi);

  double x() const { return v_.x(); }
  double y() const { return v_.y(); }
  double z() const { return v_.z(); }
  const Vec3& vec() const { return v_; }
  double norm() const { return v_.norm(); }
  bool is_unit(double tol = kUnitTolerance) const;

 private:
  Vec3 v_;
};

// Free-form metadata carried by a protocol: a method tag plus named scalars
// (kappa, eta, B0, gamma, t_f, ...). Keys are kept sorted for stable output.
struct ProtocolInfo {
  std::string method;
  std::map<std::string, double> params;
};

struct FieldSample {
  double t;
  Vec3 b;
};

// B(t) on [0, t_f]. Immutable after construction and cheap to copy.
class FieldProtocol {
 public:
  using Evaluator = std::function<Vec3(double)>;

  FieldProtocol(double duration, Evaluator evaluator, ProtocolInfo info = {});

  static FieldProtocol constant(double duration, const Vec3& b);

  double duration() const { return duration_; }
  Vec3 operator()(double t) const { return eval_(t); }
  const ProtocolInfo& info() const { return info_; }

  // Copy with extra metadata merged into info().params.
  FieldProtocol annotated(const std::map<std::string, double>& params) const;

  // Uniform samples including both endpoints; n_samples >= 2.
  std::vector<FieldSample> sample(std::size_t n_samples = 2001) const;

 private:
  double duration_;
  Evaluator eval_;
  ProtocolInfo info_;
};

// Bloch vectors on the uniform grid t_k = k t_f / n, k = 0..n.
class BlochTrajectory {
 public:
  BlochTrajectory(double duration, std::vector<BlochVector> points);

  double duration() const { return duration_; }
  std::size_t size() const { return points_.size(); }
  std::size_t steps() const { return points_.size() - 1; }
  double time(std::size_t k) const;
  const BlochVector& operator[](std::size_t k) const { return points_[k]; }
  const BlochVector& front() const { return points_.front(); }
  const BlochVector& back() const { return points_.back(); }
  const std::vector<BlochVector>& points() const { return points_; }

  // max_k | |S(t_k)| - 1 |
  double max_norm_drift() const;

 private:
  double duration_;
  std::vector<BlochVector> points_;
};

struct SphericalAngles {
  double theta;
  double phi;
};

// Field values at the RK4 stage times t = k h / 2, k = 0..2n. Throws
// IntegrationError naming the first time at which the field is not finite.
class SampledField {
 public:
  SampledField(const FieldProtocol& field, int n_steps);

  int steps() const { return n_steps_; }
  double step() const { return h_; }
  double duration() const { return duration_; }
  const Vec3& at_half_index(std::size_t k) const { return samples_[k]; }

 private:
  int n_steps_;
  double duration_;
  double h_;
  std::vector<Vec3> samples_;
};

BlochTrajectory integrate_bloch(const BlochVector& s0, const FieldProtocol& field,
                                double gamma, int n_steps = kDefaultSteps);

// Final vectors for many gyromagnetic factors sharing one field; the field is
// evaluated once per stage time and reused across the ensemble.
std::vector<BlochVector> integrate_bloch_ensemble(const BlochVector& s0,
                                                  const FieldProtocol& field,
                                                  std::span<const double> gammas,
                                                  int n_steps = kDefaultSteps);
std::vector<BlochVector> integrate_bloch_ensemble(const BlochVector& s0,
                                                  const SampledField& field,
                                                  std::span<const double> gammas);

// theta = arccos(sz) in [0, pi]; phi = atan2(sy, sx) unwrapped. Within 1e-12
// of a pole phi repeats the previous value (0 if the trajectory starts there).
std::vector<SphericalAngles> bloch_angles(const BlochTrajectory& traj);

// Probability of remaining in the initial |+> state: (1 + sz) / 2 in [0, 1].
double flip_deficit(const BlochVector& final_state);
double flip_deficit(const BlochTrajectory& traj);

// Two-level amplitudes (c_plus, c_minus) under H = (gamma / 2) sigma . B.
// Returns the state at every grid point t_k = k t_f / n.
std::vector<Spinor> integrate_spinor(const Spinor& psi0, const FieldProtocol& field,
                                     double gamma, int n_steps = kDefaultSteps);

BlochVector bloch_vector_of(const Spinor& psi);

}  // namespace spinflip

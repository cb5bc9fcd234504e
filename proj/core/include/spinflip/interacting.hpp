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

// Two (or three) interacting spins.
//
// Isotropic coupling: the coupled Bloch equations
//   dS1/dt = gamma1 B x S1 + mu S2 x S1,   dS2/dt = gamma2 B x S2 + mu S1 x S2
// are solved exactly by the interaction-free trajectories S1^0, S2^0 once the
// field is shifted to B0 - (mu / gamma2) S1^0 - (mu / gamma1) S2^0.
//
// Ising coupling (two identical spins, hbar = 1): the symmetric sector
// {|++>, |Bell>, |-->} evolves under
//   H = [[gamma Bz + xi, gamma B-/sqrt2, 0],
//        [gamma B+/sqrt2, -xi, gamma B-/sqrt2],
//        [0, gamma B+/sqrt2, -gamma Bz + xi]],   B+- = Bx +- i By.
// Fields that steer |++> to |Bell> (or |+++> to |W>) are built from a
// Lewis-Riesenfeld invariant of the rotating-frame two-level reduction.

#pragma once

#include <Eigen/Core>
#include <complex>
#include <utility>
#include <vector>

#include "spinflip/bloch.hpp"
#include "spinflip/polynomial.hpp"

namespace spinflip {

using Complex = std::complex<double>;

struct CoupledSpinsState {
  BlochVector s1;
  BlochVector s2;
  double mu = 0.0;
};

std::pair<BlochTrajectory, BlochTrajectory> integrate_coupled_spins(
    const CoupledSpinsState& initial, const FieldProtocol& field, double gamma1, double gamma2,
    int n_steps = kDefaultSteps);

// traj1 / traj2 are the interaction-free solutions under `b0_field` on a common
// grid; values between grid points come from cubic B-splines clamped with the
// exact endpoint derivatives. Throws PreconditionError on a grid mismatch.
FieldProtocol isotropic_corrected_field(const FieldProtocol& b0_field,
                                        const BlochTrajectory& traj1,
                                        const BlochTrajectory& traj2, double mu, double gamma1,
                                        double gamma2);

struct TripletAmplitudes {
  Complex a{1.0, 0.0};  // |++>
  Complex b{0.0, 0.0};  // |Bell>
  Complex c{0.0, 0.0};  // |-->
  double xi = 1.0;
  double gamma = 1.0;

  double norm2() const { return std::norm(a) + std::norm(b) + std::norm(c); }
};

std::vector<TripletAmplitudes> integrate_triplet(const TripletAmplitudes& initial,
                                                 const FieldProtocol& field,
                                                 int n_steps = kDefaultSteps);

// Invariant-based design for a two-level reduction
//   H_I = [[Delta/2, g B], [g B, -Delta/2]]
// with g = 1/sqrt2 (Bell) or sqrt3/2 (W). The invariant axis has polar angle
// theta(t) (cubic) and azimuth phi(t) (quartic) fixed by
//   theta(0) = 0, theta(t_f) = -pi, theta'(0) = theta'(t_f) = 0,
//   phi(0) = phi(t_f/2) = phi(t_f) = -pi/2, phi'(0) = -pi/t_f, phi'(t_f) = pi/t_f,
// and the drive follows from theta' = 2 g B sin(phi),
// phi' = -Delta + theta' cot(theta) cot(phi).
class InvariantDesign {
 public:
  enum class Target { bell, w_state };

  InvariantDesign(Target target, double t_f, double xi, double omega, double gamma = 1.0);

  Target target() const { return target_; }
  double duration() const { return t_f_; }
  double xi() const { return xi_; }
  double omega() const { return omega_; }
  double gamma() const { return gamma_; }
  double coupling() const { return coupling_; }
  // Delta = gamma Bz - omega + detuning_offset (2 xi for Bell, 4 xi for W).
  double detuning_offset() const;

  // Angles with derivatives in physical time.
  Jet theta(double t) const;
  Jet phi(double t) const;
  // Polynomials in tau = t / t_f.
  const Polynomial& theta_polynomial() const { return theta_; }
  const Polynomial& phi_polynomial() const { return phi_; }

  // Transverse amplitude B(t) (so gamma B_x = B cos(omega t)).
  double drive(double t) const;
  double detuning(double t) const;
  double bz(double t) const;

  // Lab-frame rotating field over [0, t_f].
  FieldProtocol lab_field() const;

  // Invariant eigenstate cos(theta/2) e^{i phi} |first> + sin(theta/2) |second>.
  Eigen::Vector2cd eigenstate(double t) const;

 private:
  Target target_;
  double t_f_;
  double xi_;
  double omega_;
  double gamma_;
  double coupling_;
  Polynomial theta_;
  Polynomial phi_;
};

// Bell-state design (the two-spin case).
InvariantDesign invariant_design(double t_f, double xi, double omega);

// |<Bell|psi(t_f)>|^2 from |++> under the designed lab field, full three-level
// integration.
double bell_fidelity(double t_f, double xi, double omega, int n_steps = kDefaultSteps);

// Smallest |<phi_+(t)|psi_I(t)>|^2 over the grid, where psi_I is the
// rotating-frame (|++>, |Bell>) part of the three-level solution.
double min_tracking_overlap(const InvariantDesign& design, int n_steps = kDefaultSteps);

// Three identical spins, pairwise Ising 4 xi (s_i^z s_j^z), symmetric sector
// {|+++>, |W>, |Wbar>, |--->} with |W> = (|-++> + |+-+> + |++->)/sqrt3.
Eigen::Matrix4cd symmetric_three_spin_hamiltonian(const Vec3& b, double gamma, double xi);

std::vector<Eigen::Vector4cd> integrate_three_spin(const Eigen::Vector4cd& initial,
                                                   const FieldProtocol& field, double gamma,
                                                   double xi, int n_steps = kDefaultSteps);

// |<W|psi(t_f)>|^2 from |+++> under the W-state design (default omega = 4 xi
// puts the |+++> <-> |W> resonance at B_z = 0).
double w_fidelity(double t_f, double xi, double omega, int n_steps = kDefaultSteps);

}  // namespace spinflip

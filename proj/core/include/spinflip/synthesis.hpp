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

// Reverse engineering of field components from an imposed state evolution.
//
// Three formulations are provided:
//  * precession: impose the Bloch angles theta(s), phi(s) with s = t / t_f and
//    B_z = B0 cos(theta); the transverse components follow in closed form;
//  * evolution operator: impose the modulus r = |u11| and relative phase Phi of
//    the propagator;
//  * Madelung: impose the population difference Delta_n = |a|^2 - |b|^2 and the
//    Bloch azimuth arg(b) - arg(a), with B_y = 0.
//
// All fields follow the convention of bloch.hpp: dS/dt = gamma B x S.

#pragma once

#include <functional>
#include <vector>

#include "spinflip/bloch.hpp"
#include "spinflip/polynomial.hpp"

namespace spinflip {

// Half-width (in s for the precession path, in t / t_f otherwise) of the window
// around a removable singularity where the analytic limit replaces the closed
// form.
inline constexpr double kRemovableWindow = 1e-6;

// phi(s) = kappa [s + (eta - 1) s^2 - 2 eta s^3 + eta s^4].
// phi(0) = phi(1) = 0 and phi'(1/2) = 0 for every kappa, eta.
class PhiAnsatz {
 public:
  PhiAnsatz(double kappa, double eta);

  double kappa() const { return kappa_; }
  double eta() const { return eta_; }
  Jet operator()(double s) const { return poly_(s); }
  const Polynomial& polynomial() const { return poly_; }

 private:
  double kappa_;
  double eta_;
  Polynomial poly_;
};

Jet eval_phi_ansatz(double kappa, double eta, double s);

// Imposed Bloch angles for the precession formulation, in dimensionless time.
class PolarPath {
 public:
  // Throws PreconditionError when `flip_target` is set and theta(0) != 0 or
  // theta(1) != pi.
  PolarPath(Polynomial theta, Polynomial phi, double b0, double t_f,
            bool flip_target = true);

  // theta(s) = pi s with the two-parameter phi ansatz.
  static PolarPath flip(const PhiAnsatz& phi, double b0, double t_f);

  Jet theta(double s) const { return theta_(s); }
  Jet phi(double s) const { return phi_(s); }
  double b0() const { return b0_; }
  double duration() const { return t_f_; }
  const Polynomial& theta_polynomial() const { return theta_; }
  const Polynomial& phi_polynomial() const { return phi_; }

  // Points s* in [0, 1] where cos(theta) changes sign, i.e. tan(theta) diverges.
  const std::vector<double>& equator_crossings() const { return crossings_; }

 private:
  Polynomial theta_;
  Polynomial phi_;
  double b0_;
  double t_f_;
  std::vector<double> crossings_;
};

// Propagator modulus/phase path. Internally r = cos(chi) with the mixing angle
// chi in [0, pi/2], so sqrt(1 - r^2) = sin(chi) is never formed by cancellation.
class EvolutionOperatorPath {
 public:
  using JetFn = std::function<Jet(double)>;

  // chi(t) and Phi(t) with derivatives in physical time.
  static EvolutionOperatorPath from_mixing_angle(JetFn chi, JetFn big_phi, double t_f);

  // r(t) = |u11| with derivatives; r'' is used for the limit of r' / sqrt(1-r^2)
  // where r touches 1. Throws DomainError when r leaves [0, 1].
  static EvolutionOperatorPath from_modulus(JetFn r, JetFn big_phi, double t_f);

  // Phi = 0, r = cos(pi t / (2 t_f)): the constant-field pi pulse.
  static EvolutionOperatorPath pi_pulse(double t_f);

  double duration() const { return t_f_; }
  // (r, dr/dt) at time t.
  Jet r(double t) const;
  // (chi, dchi/dt) at time t.
  Jet mixing_angle(double t) const { return chi_(t); }
  Jet big_phi(double t) const { return phi_(t); }

 private:
  EvolutionOperatorPath(JetFn chi, JetFn big_phi, double t_f);

  JetFn chi_;
  JetFn phi_;
  double t_f_;
};

// Population difference and Bloch azimuth, both in physical time.
class MadelungPath {
 public:
  using JetFn = std::function<Jet(double)>;

  MadelungPath(JetFn delta_n, JetFn azimuth, double t_f);

  Jet delta_n(double t) const { return delta_n_(t); }
  Jet azimuth(double t) const { return azimuth_(t); }
  double duration() const { return t_f_; }

 private:
  JetFn delta_n_;
  JetFn azimuth_;
  double t_f_;
};

FieldProtocol synth_precession(const PolarPath& path, double gamma);
FieldProtocol synth_from_evolution_operator(const EvolutionOperatorPath& path, double gamma);
FieldProtocol synth_madelung(const MadelungPath& path, double gamma);

}  // namespace spinflip

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

#include "spinflip/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "spinflip/errors.hpp"

namespace spinflip {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kBoundaryTol = 1e-12;
constexpr double kSingularResidual = 1e-10;
constexpr int kCrossingScan = 4096;

void check_gamma(double gamma) {
  if (gamma == 0.0 || !std::isfinite(gamma))
    throw PreconditionError("gyromagnetic factor must be finite and nonzero");
}

std::vector<double> find_cos_crossings(const Polynomial& theta) {
  std::vector<double> out;
  auto c = [&](double s) { return std::cos(theta(s).value); };
  double prev_s = 0.0;
  double prev_c = c(0.0);
  if (prev_c == 0.0) out.push_back(0.0);
  for (int k = 1; k <= kCrossingScan; ++k) {
    const double s = static_cast<double>(k) / kCrossingScan;
    const double cs = c(s);
    if (cs == 0.0) {
      out.push_back(s);
    } else if (prev_c != 0.0 && std::signbit(cs) != std::signbit(prev_c)) {
      double lo = prev_s;
      double hi = s;
      const bool lo_sign = std::signbit(prev_c);
      for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (std::signbit(c(mid)) == lo_sign)
          lo = mid;
        else
          hi = mid;
      }
      out.push_back(0.5 * (lo + hi));
    }
    prev_s = s;
    prev_c = cs;
  }
  return out;
}

}  // namespace

PhiAnsatz::PhiAnsatz(double kappa, double eta)
    : kappa_(kappa),
      eta_(eta),
      poly_({0.0, kappa, kappa * (eta - 1.0), -2.0 * kappa * eta, kappa * eta}) {}

Jet eval_phi_ansatz(double kappa, double eta, double s) {
  if (!(s >= 0.0 && s <= 1.0)) throw PreconditionError("phi ansatz evaluated outside [0, 1]");
  return PhiAnsatz(kappa, eta)(s);
}

PolarPath::PolarPath(Polynomial theta, Polynomial phi, double b0, double t_f, bool flip_target)
    : theta_(std::move(theta)), phi_(std::move(phi)), b0_(b0), t_f_(t_f) {
  if (!(t_f_ > 0.0) || !std::isfinite(t_f_))
    throw PreconditionError("t_f must be positive and finite");
  if (!std::isfinite(b0_)) throw PreconditionError("B0 must be finite");
  if (flip_target) {
    if (std::abs(theta_(0.0).value) > kBoundaryTol || std::abs(theta_(1.0).value - kPi) > kBoundaryTol)
      throw PreconditionError("flip path requires theta(0) = 0 and theta(1) = pi");
  }
  crossings_ = find_cos_crossings(theta_);
}

PolarPath PolarPath::flip(const PhiAnsatz& phi, double b0, double t_f) {
  return PolarPath(Polynomial({0.0, kPi}), phi.polynomial(), b0, t_f, true);
}

FieldProtocol synth_precession(const PolarPath& path, double gamma) {
  check_gamma(gamma);
  struct Limit {
    double s;
    double value;  // lim phi'(s) tan(theta(s))
  };
  std::vector<Limit> limits;
  for (double s_star : path.equator_crossings()) {
    const Jet phi = path.phi(s_star);
    if (std::abs(phi.d1) > kSingularResidual) {
      std::ostringstream os;
      os << "unremovable singularity: dphi/ds = " << phi.d1 << " at s = " << s_star
         << " where tan(theta) diverges";
      throw SynthesisError(os.str());
    }
    const Jet theta = path.theta(s_star);
    if (theta.d1 == 0.0) throw SynthesisError("theta is stationary at an equator crossing");
    limits.push_back({s_star, -phi.d2 / theta.d1});
  }

  const double t_f = path.duration();
  const double b0 = path.b0();
  auto eval = [path, limits, gamma, t_f, b0](double t) -> Vec3 {
    const double s = std::clamp(t / t_f, 0.0, 1.0);
    const Jet th = path.theta(s);
    const Jet ph = path.phi(s);
    double dphi_tan = 0.0;
    bool near = false;
    for (const auto& l : limits) {
      if (std::abs(s - l.s) < kRemovableWindow) {
        dphi_tan = l.value;
        near = true;
        break;
      }
    }
    if (!near) dphi_tan = ph.d1 * std::tan(th.value);

    const double theta_dot = th.d1 / t_f;
    const double tan_term = dphi_tan / t_f;  // dphi/dt * tan(theta)
    const double sin_th = std::sin(th.value);
    const double cp = std::cos(ph.value);
    const double sp = std::sin(ph.value);
    return Vec3(-theta_dot / gamma * sp - tan_term / gamma * cp + b0 * sin_th * cp,
                theta_dot / gamma * cp - tan_term / gamma * sp + b0 * sin_th * sp,
                b0 * std::cos(th.value));
  };
  ProtocolInfo info{"precession", {{"B0", b0}, {"gamma", gamma}, {"t_f", t_f}}};
  return FieldProtocol(t_f, std::move(eval), std::move(info));
}

EvolutionOperatorPath::EvolutionOperatorPath(JetFn chi, JetFn big_phi, double t_f)
    : chi_(std::move(chi)), phi_(std::move(big_phi)), t_f_(t_f) {
  if (!(t_f_ > 0.0) || !std::isfinite(t_f_))
    throw PreconditionError("t_f must be positive and finite");
  if (!chi_ || !phi_) throw PreconditionError("evolution-operator path needs both evaluators");
}

EvolutionOperatorPath EvolutionOperatorPath::from_mixing_angle(JetFn chi, JetFn big_phi, double t_f) {
  return EvolutionOperatorPath(std::move(chi), std::move(big_phi), t_f);
}

EvolutionOperatorPath EvolutionOperatorPath::from_modulus(JetFn r, JetFn big_phi, double t_f) {
  auto chi = [r = std::move(r), t_f](double t) -> Jet {
    const Jet rj = r(t);
    if (rj.value < -kBoundaryTol || rj.value > 1.0 + kBoundaryTol) {
      std::ostringstream os;
      os << "r(t) = " << rj.value << " outside [0, 1] at t = " << t;
      throw DomainError(os.str());
    }
    const double rv = std::clamp(rj.value, 0.0, 1.0);
    const double q = std::sqrt((1.0 - rv) * (1.0 + rv));
    Jet out{std::acos(rv), 0.0, 0.0};
    if (q >= kRemovableWindow) {
      out.d1 = -rj.d1 / q;
      return out;
    }
    // r touches 1: r' / sqrt(1 - r^2) -> -/+ sqrt(-r'') on either side.
    if (!(rj.d2 < 0.0)) throw SynthesisError("divergent denominator: r = 1 without curvature to cancel it");
    const double lim = std::sqrt(-rj.d2);
    if (std::abs(rj.d1) > 10.0 * lim * q + 1e-12)
      throw SynthesisError("divergent denominator: dr/dt does not vanish where r = 1");
    double side = 0.0;  // +1 after the touch point, -1 before
    if (rj.d1 < 0.0)
      side = 1.0;
    else if (rj.d1 > 0.0)
      side = -1.0;
    else if (t <= kRemovableWindow * t_f)
      side = 1.0;
    else if (t >= (1.0 - kRemovableWindow) * t_f)
      side = -1.0;
    else
      throw SynthesisError("r touches 1 in the interior: the modulus representation is not smooth there");
    out.d1 = side * lim;
    return out;
  };
  return EvolutionOperatorPath(std::move(chi), std::move(big_phi), t_f);
}

EvolutionOperatorPath EvolutionOperatorPath::pi_pulse(double t_f) {
  const double rate = kPi / (2.0 * t_f);
  return from_mixing_angle([rate](double t) { return Jet{rate * t, rate, 0.0}; },
                           [](double) { return Jet{}; }, t_f);
}

Jet EvolutionOperatorPath::r(double t) const {
  const Jet c = chi_(t);
  return {std::cos(c.value), -std::sin(c.value) * c.d1, 0.0};
}

FieldProtocol synth_from_evolution_operator(const EvolutionOperatorPath& path, double gamma) {
  check_gamma(gamma);
  auto eval = [path, gamma](double t) -> Vec3 {
    const Jet chi = path.mixing_angle(t);
    if (chi.value < -kBoundaryTol || chi.value > kPi / 2.0 + kBoundaryTol) {
      std::ostringstream os;
      os << "mixing angle " << chi.value << " outside [0, pi/2] at t = " << t;
      throw DomainError(os.str());
    }
    const Jet ph = path.big_phi(t);
    const double r = std::cos(chi.value);
    const double q = std::sin(chi.value);  // sqrt(1 - r^2)
    const double c = std::cos(ph.value);
    const double s = std::sin(ph.value);
    const double k = 2.0 / gamma;
    // dr/dt / sqrt(1 - r^2) = -dchi/dt; overall sign follows H = +(gamma/2) sigma.B
    return Vec3(k * (r * q * ph.d1 * c - chi.d1 * s),
                k * (r * q * ph.d1 * s + chi.d1 * c),
                k * ph.d1 * r * r);
  };
  ProtocolInfo info{"evolution-operator", {{"gamma", gamma}, {"t_f", path.duration()}}};
  return FieldProtocol(path.duration(), std::move(eval), std::move(info));
}

MadelungPath::MadelungPath(JetFn delta_n, JetFn azimuth, double t_f)
    : delta_n_(std::move(delta_n)), azimuth_(std::move(azimuth)), t_f_(t_f) {
  if (!(t_f_ > 0.0) || !std::isfinite(t_f_))
    throw PreconditionError("t_f must be positive and finite");
  if (!delta_n_ || !azimuth_) throw PreconditionError("Madelung path needs both evaluators");
}

FieldProtocol synth_madelung(const MadelungPath& path, double gamma) {
  check_gamma(gamma);
  auto eval = [path, gamma](double t) -> Vec3 {
    const Jet dn = path.delta_n(t);
    const Jet th = path.azimuth(t);
    if (!(std::abs(dn.value) < 1.0)) {
      std::ostringstream os;
      os << "|Delta_n| reaches 1 at t = " << t;
      throw DomainError(os.str());
    }
    const double w = 1.0 - dn.value * dn.value;
    const double sin_th = std::sin(th.value);
    const double cos_th = std::cos(th.value);
    double ratio = 0.0;  // dDelta_n/dt / sin(theta)
    if (std::abs(sin_th) > 1e-12) {
      ratio = dn.d1 / sin_th;
    } else {
      if (std::abs(dn.d1) > kSingularResidual || th.d1 == 0.0) {
        std::ostringstream os;
        os << "sin(theta) = 0 with nonvanishing numerator at t = " << t;
        throw SynthesisError(os.str());
      }
      ratio = dn.d2 / (th.d1 * cos_th);
    }
    const double bx = ratio / (gamma * std::sqrt(w));
    const double bz = (th.d1 + ratio * dn.value * cos_th / w) / gamma;
    return Vec3(bx, 0.0, bz);
  };
  ProtocolInfo info{"madelung", {{"gamma", gamma}, {"t_f", path.duration()}}};
  return FieldProtocol(path.duration(), std::move(eval), std::move(info));
}

}  // namespace spinflip

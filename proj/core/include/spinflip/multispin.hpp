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

// Simultaneous control of spins with different gyromagnetic factors using one
// field designed (exactly) for gamma1: deficit maps, the robustness
// functional over a relative gamma spread, magic-kappa search and
// equal-superposition targets for the second spin.

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "spinflip/bloch.hpp"
#include "spinflip/optimize.hpp"
#include "spinflip/quadrature.hpp"

namespace spinflip {

// Physical design point. gamma1 is also the centre of the robustness average.
struct AnsatzDesign {
  double gamma1 = 2.0;
  double b0 = 1.0;
  double t_f = 1.0;
};

// Precession-synthesized flip of spin 1 with theta = pi s and the (kappa, eta)
// phi ansatz. Metadata carries kappa, eta, B0, gamma and t_f.
FieldProtocol ansatz_protocol(double kappa, double eta, const AnsatzDesign& design = {});

// (1 + S_2z(t_f)) / 2 for a spin with factor gamma2 starting at the north pole.
double spinflip_deficit(double gamma2, double kappa, double eta,
                        const AnsatzDesign& design = {}, int n_steps = kDefaultSteps);
std::vector<double> spinflip_deficits(std::span<const double> gamma2, double kappa, double eta,
                                      const AnsatzDesign& design = {},
                                      int n_steps = kDefaultSteps);

// |S_2z(t_f)|, minimized when spin 2 ends on the equator.
double superposition_deficit(double gamma2, double kappa, double eta,
                             const AnsatzDesign& design = {}, int n_steps = kDefaultSteps);
// Signed S_2z(t_f), the quantity behind superposition_deficit.
double final_sz(double gamma2, double kappa, double eta, const AnsatzDesign& design = {},
                int n_steps = kDefaultSteps);

enum class DeficitTarget { flip, superposition };

// Row-major matrix over (axis1, axis2): values[i * axis2.size() + j].
struct ScanGrid {
  std::string axis1_name;
  std::vector<double> axis1;
  std::string axis2_name;
  std::vector<double> axis2;
  std::vector<double> values;

  double at(std::size_t i, std::size_t j) const { return values[i * axis2.size() + j]; }
};

struct ScanOptions {
  int n_steps = kDefaultSteps;
  unsigned workers = 0;  // 0: default_workers()
};

// Deficit over (gamma2 / gamma1, eta) at fixed kappa. Axis samples must be
// nonempty and strictly increasing. Cell failures are rethrown naming the
// offending coordinates.
ScanGrid delta_map(std::span<const double> gamma_ratios, std::span<const double> etas,
                   double kappa, const AnsatzDesign& design = {},
                   DeficitTarget target = DeficitTarget::flip, const ScanOptions& options = {});

// |S_2z(t_f)| over (kappa, eta) at fixed gamma2.
ScanGrid superposition_map(std::span<const double> kappas, std::span<const double> etas,
                           double gamma2, const AnsatzDesign& design = {},
                           const ScanOptions& options = {});

struct RobustnessOptions {
  int n_quad = kDefaultQuadratureNodes;
  int n_steps = kDefaultSteps;
  unsigned workers = 0;
};

// Lambda(eps) of the (kappa, eta) protocol around gamma_bar = design.gamma1.
double ansatz_lambda(double kappa, double eta, double epsilon, const AnsatzDesign& design = {},
                     const RobustnessOptions& options = {});

struct MagicPoint {
  double kappa;
  double lambda;
};

struct RobustnessReport {
  double eta = 0.0;
  double epsilon = 0.0;
  double gamma_bar = 0.0;
  int n_quad = kDefaultQuadratureNodes;
  std::vector<double> kappa;
  std::vector<double> lambda;
  std::vector<MagicPoint> magic;
};

// Lambda sampled on the given kappa values (no minimum search).
RobustnessReport lambda_curve(std::span<const double> kappas, double eta, double epsilon,
                              const AnsatzDesign& design = {},
                              const RobustnessOptions& options = {});

struct MagicSearchOptions {
  RobustnessOptions robustness;
  double min_depth_decades = 1.0;  // drop of log10 Lambda below the local background
  double kappa_tol = 1e-4;
};

// Coarse scan of log10 Lambda(kappa) on [kappa_min, kappa_max] (spacing
// <= scan_step <= 0.05), then golden-section refinement of every sampled strict
// local minimum that is at least min_depth_decades deep. Magic points are
// sorted by kappa; an empty list is a valid result.
RobustnessReport find_magic_kappa(double eta, double epsilon, double kappa_min,
                                  double kappa_max, double scan_step,
                                  const AnsatzDesign& design = {},
                                  const MagicSearchOptions& options = {});

struct SuperpositionSearchOptions {
  int n_steps = kDefaultSteps;
  double kappa_tol = 1e-10;
  unsigned workers = 0;
};

// Local minima of |S_2z(t_f)| over kappa at fixed eta and gamma2, refined by
// golden section. Each entry is (kappa*, |S_2z|*), sorted by kappa.
std::vector<Minimum> find_superposition_kappa(double gamma2, double eta, double kappa_min,
                                              double kappa_max, double scan_step,
                                              const AnsatzDesign& design = {},
                                              const SuperpositionSearchOptions& options = {});

// Minimum of the flip deficit over gamma2 in [gamma_lo, gamma_hi].
Minimum refine_gamma_minimum(double kappa, double eta, double gamma_lo, double gamma_hi,
                             const AnsatzDesign& design = {}, int n_steps = kDefaultSteps,
                             double tol = 1e-9);

}  // namespace spinflip

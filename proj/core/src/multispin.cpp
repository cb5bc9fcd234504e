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

#include "spinflip/multispin.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "spinflip/errors.hpp"
#include "spinflip/parallel.hpp"
#include "spinflip/synthesis.hpp"

namespace spinflip {

namespace {

void check_axis(std::span<const double> axis, const char* name) {
  if (axis.empty()) throw PreconditionError(std::string(name) + " samples must be nonempty");
  for (std::size_t k = 1; k < axis.size(); ++k)
    if (!(axis[k] > axis[k - 1]))
      throw PreconditionError(std::string(name) + " samples must be strictly increasing");
}

double log10_lambda(double lambda) { return std::log10(std::max(lambda, 1e-300)); }

std::vector<double> deficits_on(const SampledField& field, std::span<const double> gammas) {
  const auto finals = integrate_bloch_ensemble(BlochVector::north(), field, gammas);
  std::vector<double> out;
  out.reserve(finals.size());
  for (const auto& s : finals) out.push_back(flip_deficit(s));
  return out;
}

}  // namespace

FieldProtocol ansatz_protocol(double kappa, double eta, const AnsatzDesign& design) {
  const PhiAnsatz phi(kappa, eta);
  return synth_precession(PolarPath::flip(phi, design.b0, design.t_f), design.gamma1)
      .annotated({{"kappa", kappa}, {"eta", eta}});
}

double spinflip_deficit(double gamma2, double kappa, double eta, const AnsatzDesign& design,
                        int n_steps) {
  const double g[] = {gamma2};
  return spinflip_deficits(g, kappa, eta, design, n_steps).front();
}

std::vector<double> spinflip_deficits(std::span<const double> gamma2, double kappa, double eta,
                                      const AnsatzDesign& design, int n_steps) {
  for (double g : gamma2)
    if (g == 0.0 || !std::isfinite(g)) throw PreconditionError("gamma2 must be finite and nonzero");
  const SampledField field(ansatz_protocol(kappa, eta, design), n_steps);
  return deficits_on(field, gamma2);
}

double final_sz(double gamma2, double kappa, double eta, const AnsatzDesign& design, int n_steps) {
  if (gamma2 == 0.0 || !std::isfinite(gamma2))
    throw PreconditionError("gamma2 must be finite and nonzero");
  const double g[] = {gamma2};
  const auto finals = integrate_bloch_ensemble(BlochVector::north(),
                                               ansatz_protocol(kappa, eta, design), g, n_steps);
  return finals.front().z();
}

double superposition_deficit(double gamma2, double kappa, double eta, const AnsatzDesign& design,
                             int n_steps) {
  return std::min(1.0, std::abs(final_sz(gamma2, kappa, eta, design, n_steps)));
}

ScanGrid delta_map(std::span<const double> gamma_ratios, std::span<const double> etas,
                   double kappa, const AnsatzDesign& design, DeficitTarget target,
                   const ScanOptions& options) {
  check_axis(gamma_ratios, "gamma ratio");
  check_axis(etas, "eta");
  ScanGrid grid{"gamma_ratio", {gamma_ratios.begin(), gamma_ratios.end()}, "eta",
                {etas.begin(), etas.end()}, {}};
  const std::size_t n1 = gamma_ratios.size();
  const std::size_t n2 = etas.size();
  grid.values.assign(n1 * n2, 0.0);

  std::vector<double> gammas(n1);
  for (std::size_t i = 0; i < n1; ++i) gammas[i] = gamma_ratios[i] * design.gamma1;

  // One field per eta column; every gamma ratio shares it.
  parallel_for(
      n2,
      [&](std::size_t j) {
        try {
          const SampledField field(ansatz_protocol(kappa, etas[j], design), options.n_steps);
          const auto finals = integrate_bloch_ensemble(BlochVector::north(), field, gammas);
          for (std::size_t i = 0; i < n1; ++i) {
            const double v = target == DeficitTarget::flip
                                 ? flip_deficit(finals[i])
                                 : std::min(1.0, std::abs(finals[i].z()));
            if (!std::isfinite(v)) {
              std::ostringstream os;
              os << "non-finite deficit at gamma_ratio = " << gamma_ratios[i];
              throw IntegrationError(os.str(), design.t_f);
            }
            grid.values[i * n2 + j] = v;
          }
        } catch (const Error& e) {
          std::ostringstream os;
          os << "delta map cell failed (eta = " << etas[j] << ", kappa = " << kappa
             << "): " << e.what();
          throw Error(os.str());
        }
      },
      options.workers);
  return grid;
}

ScanGrid superposition_map(std::span<const double> kappas, std::span<const double> etas,
                           double gamma2, const AnsatzDesign& design, const ScanOptions& options) {
  check_axis(kappas, "kappa");
  check_axis(etas, "eta");
  ScanGrid grid{"kappa", {kappas.begin(), kappas.end()}, "eta", {etas.begin(), etas.end()}, {}};
  const std::size_t n2 = etas.size();
  grid.values.assign(kappas.size() * n2, 0.0);
  parallel_for(
      grid.values.size(),
      [&](std::size_t cell) {
        const std::size_t i = cell / n2;
        const std::size_t j = cell % n2;
        try {
          grid.values[cell] = superposition_deficit(gamma2, kappas[i], etas[j], design, options.n_steps);
        } catch (const Error& e) {
          std::ostringstream os;
          os << "superposition map cell failed (kappa = " << kappas[i] << ", eta = " << etas[j]
             << "): " << e.what();
          throw Error(os.str());
        }
      },
      options.workers);
  return grid;
}

double ansatz_lambda(double kappa, double eta, double epsilon, const AnsatzDesign& design,
                     const RobustnessOptions& options) {
  const SampledField field(ansatz_protocol(kappa, eta, design), options.n_steps);
  BatchFunction deficits = [&field](std::span<const double> gammas) {
    return deficits_on(field, gammas);
  };
  return robustness_lambda(deficits, design.gamma1, epsilon, options.n_quad);
}

RobustnessReport lambda_curve(std::span<const double> kappas, double eta, double epsilon,
                              const AnsatzDesign& design, const RobustnessOptions& options) {
  RobustnessReport report;
  report.eta = eta;
  report.epsilon = epsilon;
  report.gamma_bar = design.gamma1;
  report.n_quad = options.n_quad;
  report.kappa.assign(kappas.begin(), kappas.end());
  report.lambda.assign(kappas.size(), 0.0);
  parallel_for(
      kappas.size(),
      [&](std::size_t i) {
        report.lambda[i] = ansatz_lambda(kappas[i], eta, epsilon, design, options);
      },
      options.workers);
  return report;
}

RobustnessReport find_magic_kappa(double eta, double epsilon, double kappa_min, double kappa_max,
                                  double scan_step, const AnsatzDesign& design,
                                  const MagicSearchOptions& options) {
  if (!(kappa_min < kappa_max)) throw PreconditionError("kappa_min must be below kappa_max");
  if (!(scan_step > 0.0 && scan_step <= 0.05))
    throw PreconditionError("scan_step must lie in (0, 0.05]");

  const std::vector<double> kappas = uniform_grid(kappa_min, kappa_max, scan_step);
  RobustnessReport report = lambda_curve(kappas, eta, epsilon, design, options.robustness);

  std::vector<double> logs(report.lambda.size());
  std::transform(report.lambda.begin(), report.lambda.end(), logs.begin(), log10_lambda);

  std::vector<std::size_t> candidates;
  for (std::size_t i : strict_local_minima(logs))
    if (minimum_depth(logs, i) >= options.min_depth_decades) candidates.push_back(i);

  report.magic.resize(candidates.size());
  auto objective = [&](double kappa) {
    return log10_lambda(ansatz_lambda(kappa, eta, epsilon, design, options.robustness));
  };
  parallel_for(
      candidates.size(),
      [&](std::size_t c) {
        const std::size_t i = candidates[c];
        const Minimum m = refine_minimum(objective, kappas[i - 1], kappas[i + 1], options.kappa_tol);
        // the refined point must not be worse than the sampled minimum
        report.magic[c] = m.f <= logs[i] ? MagicPoint{m.x, std::pow(10.0, m.f)}
                                         : MagicPoint{kappas[i], report.lambda[i]};
      },
      options.robustness.workers);
  std::sort(report.magic.begin(), report.magic.end(),
            [](const MagicPoint& a, const MagicPoint& b) { return a.kappa < b.kappa; });
  return report;
}

std::vector<Minimum> find_superposition_kappa(double gamma2, double eta, double kappa_min,
                                              double kappa_max, double scan_step,
                                              const AnsatzDesign& design,
                                              const SuperpositionSearchOptions& options) {
  const std::vector<double> kappas = uniform_grid(kappa_min, kappa_max, scan_step);
  std::vector<double> values(kappas.size());
  parallel_for(
      kappas.size(),
      [&](std::size_t i) {
        values[i] = superposition_deficit(gamma2, kappas[i], eta, design, options.n_steps);
      },
      options.workers);

  const std::vector<std::size_t> minima = strict_local_minima(values);
  std::vector<Minimum> out(minima.size());
  auto objective = [&](double kappa) {
    return superposition_deficit(gamma2, kappa, eta, design, options.n_steps);
  };
  parallel_for(
      minima.size(),
      [&](std::size_t c) {
        const std::size_t i = minima[c];
        out[c] = refine_minimum(objective, kappas[i - 1], kappas[i + 1], options.kappa_tol);
      },
      options.workers);
  std::sort(out.begin(), out.end(), [](const Minimum& a, const Minimum& b) { return a.x < b.x; });
  return out;
}

Minimum refine_gamma_minimum(double kappa, double eta, double gamma_lo, double gamma_hi,
                             const AnsatzDesign& design, int n_steps, double tol) {
  const SampledField field(ansatz_protocol(kappa, eta, design), n_steps);
  auto objective = [&field](double gamma2) {
    const double g[] = {gamma2};
    return deficits_on(field, g).front();
  };
  return refine_minimum(objective, gamma_lo, gamma_hi, tol);
}

}  // namespace spinflip

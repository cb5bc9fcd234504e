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

#include "spinflip_cli/pipelines.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "json.hpp"
#include "spinflip/baselines.hpp"
#include "spinflip/errors.hpp"
#include "spinflip/export.hpp"
#include "spinflip/interacting.hpp"
#include "spinflip/multispin.hpp"
#include "spinflip/optimize.hpp"
#include "spinflip/parallel.hpp"
#include "spinflip/synthesis.hpp"

namespace spinflip::cli {

namespace {

using std::numbers::pi;

AnsatzDesign design_of(const ExperimentConfig& cfg) { return {cfg.gamma, cfg.b0, cfg.tf}; }

unsigned workers_of(const ExperimentConfig& cfg) { return static_cast<unsigned>(cfg.workers); }

template <class Writer>
std::string to_text(Writer&& write) {
  std::ostringstream os;
  write(os);
  return os.str();
}

std::string trajectory_text(const BlochTrajectory& traj) {
  return to_text([&](std::ostream& os) { write_trajectory_csv(os, traj); });
}

std::string field_text(const FieldProtocol& field, int samples) {
  return to_text([&](std::ostream& os) {
    write_field_csv(os, field, static_cast<std::size_t>(samples));
  });
}

std::string grid_text(const ScanGrid& grid) {
  return to_text([&](std::ostream& os) { write_scan_grid_csv(os, grid); });
}

std::string table_text(const std::vector<std::string>& header,
                       const std::vector<std::vector<double>>& columns) {
  return to_text([&](std::ostream& os) { write_table_csv(os, header, columns); });
}

std::string fmt(double v) { return format_double(v); }

// Field, descriptor, one trajectory per spin and a deficit table.
void flip_artifacts(const ExperimentConfig& cfg, const std::string& prefix,
                    std::vector<double> gammas, PipelineResult& res) {
  const FieldProtocol field = ansatz_protocol(cfg.kappa, cfg.eta, design_of(cfg));
  res.artifacts.push_back({prefix + "field.csv", field_text(field, cfg.samples)});
  res.artifacts.push_back({prefix + "protocol.json", protocol_json(field)});
  if (gammas.empty()) gammas = {cfg.gamma};
  std::vector<double> sz;
  std::vector<double> deficit;
  std::vector<double> drift;
  for (double g : gammas) {
    const BlochTrajectory traj = integrate_bloch(BlochVector::north(), field, g, cfg.steps);
    const std::string name = gammas.size() == 1 ? prefix + "trajectory.csv"
                                                : prefix + "trajectory_" + fmt(g) + ".csv";
    res.artifacts.push_back({name, trajectory_text(traj)});
    sz.push_back(traj.back().z());
    deficit.push_back(flip_deficit(traj));
    drift.push_back(traj.max_norm_drift());
    const std::string label = prefix.empty() ? "" : prefix.substr(0, prefix.size() - 1) + " ";
    res.summary.push_back(label + "gamma=" + fmt(g) + " sz(t_f)=" + fmt(traj.back().z()) +
                          " deficit=" + fmt(deficit.back()) +
                          " norm_drift=" + fmt(drift.back()));
  }
  res.artifacts.push_back({prefix + "deficits.csv",
                           table_text({"gamma", "sz_final", "deficit", "norm_drift"},
                                      {gammas, sz, deficit, drift})});
}

PipelineResult run_flip(const ExperimentConfig& cfg) {
  PipelineResult res;
  flip_artifacts(cfg, "", cfg.gammas, res);
  return res;
}

PipelineResult run_synth(const ExperimentConfig& cfg) {
  PipelineResult res;
  BlochVector start = BlochVector::north();
  FieldProtocol field = FieldProtocol::constant(cfg.tf, Vec3::Zero());
  if (cfg.method == "precession") {
    field = synth_precession(PolarPath::flip(PhiAnsatz(cfg.kappa, cfg.eta), cfg.b0, cfg.tf),
                             cfg.gamma)
                .annotated({{"kappa", cfg.kappa}, {"eta", cfg.eta}});
  } else if (cfg.method == "evolution-operator") {
    field = synth_from_evolution_operator(EvolutionOperatorPath::pi_pulse(cfg.tf), cfg.gamma);
  } else {
    // Smooth transfer Delta_n: 1 - delta -> -(1 - delta) at azimuth pi/2.
    const double amp = 1.0 - cfg.delta;
    const double tf = cfg.tf;
    auto delta_n = [amp, tf](double t) {
      const double s = t / tf;
      const double p = 3.0 * s * s - 2.0 * s * s * s;
      return Jet{amp * (1.0 - 2.0 * p), -2.0 * amp * (6.0 * s - 6.0 * s * s) / tf,
                 -2.0 * amp * (6.0 - 12.0 * s) / (tf * tf)};
    };
    auto azimuth = [](double) { return Jet{pi / 2.0, 0.0, 0.0}; };
    field = synth_madelung(MadelungPath(delta_n, azimuth, tf), cfg.gamma)
                .annotated({{"delta", cfg.delta}});
    start = BlochVector::from_angles(std::acos(amp), pi / 2.0);
  }
  const BlochTrajectory traj = integrate_bloch(start, field, cfg.gamma, cfg.steps);
  res.artifacts.push_back({"field.csv", field_text(field, cfg.samples)});
  res.artifacts.push_back({"protocol.json", protocol_json(field)});
  res.artifacts.push_back({"trajectory.csv", trajectory_text(traj)});
  res.summary.push_back("method=" + cfg.method + " sz(0)=" + fmt(start.z()) +
                        " sz(t_f)=" + fmt(traj.back().z()) +
                        " norm_drift=" + fmt(traj.max_norm_drift()));
  return res;
}

PipelineResult run_scan(const ExperimentConfig& cfg) {
  PipelineResult res;
  const ScanOptions opts{cfg.steps, workers_of(cfg)};
  ScanGrid grid;
  if (cfg.target == "flip") {
    grid = delta_map(cfg.ratios, cfg.etas, cfg.kappa, design_of(cfg), DeficitTarget::flip, opts);
  } else {
    grid = superposition_map(cfg.kappas, cfg.etas, cfg.gamma2, design_of(cfg), opts);
  }
  res.artifacts.push_back({"scan.csv", grid_text(grid)});
  const auto best = std::min_element(grid.values.begin(), grid.values.end());
  res.summary.push_back("target=" + cfg.target + " cells=" + std::to_string(grid.values.size()) +
                        " min=" + fmt(*best));
  return res;
}

std::string magic_csv(const RobustnessReport& report) {
  std::vector<double> is_magic(report.kappa.size(), 0.0);
  std::vector<double> kappa = report.kappa;
  std::vector<double> lambda = report.lambda;
  // Refined magic points are merged into the sampled curve, sorted by kappa.
  for (const MagicPoint& m : report.magic) {
    const auto pos = std::lower_bound(kappa.begin(), kappa.end(), m.kappa) - kappa.begin();
    kappa.insert(kappa.begin() + pos, m.kappa);
    lambda.insert(lambda.begin() + pos, m.lambda);
    is_magic.insert(is_magic.begin() + pos, 1.0);
  }
  return table_text({"kappa", "lambda", "is_magic"}, {kappa, lambda, is_magic});
}

RobustnessReport magic_report(const ExperimentConfig& cfg, double kmin, double kmax) {
  MagicSearchOptions opts;
  opts.robustness = {cfg.nquad, cfg.steps, workers_of(cfg)};
  return find_magic_kappa(cfg.eta, cfg.epsilon, kmin, kmax, cfg.kstep, design_of(cfg), opts);
}

PipelineResult run_magic(const ExperimentConfig& cfg) {
  PipelineResult res;
  const RobustnessReport report = magic_report(cfg, cfg.kmin, cfg.kmax);
  if (cfg.format == "csv")
    res.artifacts.push_back({"magic.csv", magic_csv(report)});
  else
    res.artifacts.push_back({"magic.json", robustness_json(report)});
  for (const MagicPoint& m : report.magic)
    res.summary.push_back("magic kappa=" + fmt(m.kappa) + " log10_lambda=" + fmt(std::log10(m.lambda)));
  if (report.magic.empty()) res.summary.push_back("no magic kappa in range");
  return res;
}

struct RobustnessTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> columns;
};

RobustnessTable robustness_table(const ExperimentConfig& cfg) {
  const auto& eps = cfg.epsilons;
  RobustnessTable t;
  t.header = {"epsilon", "lambda_pi", "lambda_se"};
  t.columns.push_back(eps);
  std::vector<double> lp;
  std::vector<double> ls;
  for (double e : eps) {
    lp.push_back(analytic_lambda(Baseline::pi_pulse, e));
    ls.push_back(analytic_lambda(Baseline::spin_echo, e));
  }
  t.columns.push_back(lp);
  t.columns.push_back(ls);
  const RobustnessOptions opts{cfg.nquad, cfg.steps, 1};
  const std::size_t nk = cfg.kappas.size();
  std::vector<double> cells(nk * eps.size());
  parallel_for(
      cells.size(),
      [&](std::size_t i) {
        cells[i] = ansatz_lambda(cfg.kappas[i / eps.size()], cfg.eta, eps[i % eps.size()],
                                 design_of(cfg), opts);
      },
      workers_of(cfg));
  for (std::size_t k = 0; k < nk; ++k) {
    t.header.push_back("lambda_k" + fmt(cfg.kappas[k]));
    t.columns.emplace_back(cells.begin() + static_cast<std::ptrdiff_t>(k * eps.size()),
                           cells.begin() + static_cast<std::ptrdiff_t>((k + 1) * eps.size()));
  }
  return t;
}

PipelineResult run_robust(const ExperimentConfig& cfg) {
  PipelineResult res;
  const RobustnessTable t = robustness_table(cfg);
  if (cfg.format == "json") {
    nlohmann::ordered_json j;
    j["eta"] = cfg.eta;
    for (std::size_t c = 0; c < t.header.size(); ++c) j[t.header[c]] = t.columns[c];
    res.artifacts.push_back({"robustness.json", j.dump(2) + "\n"});
  } else {
    res.artifacts.push_back({"robustness.csv", table_text(t.header, t.columns)});
  }
  res.summary.push_back("epsilons=" + std::to_string(cfg.epsilons.size()) +
                        " curves=" + std::to_string(t.header.size() - 1));
  return res;
}

PipelineResult run_baseline(const ExperimentConfig& cfg) {
  PipelineResult res;
  std::vector<double> sp, ss, lp, ls, np, ns;
  for (double e : cfg.epsilons) {
    sp.push_back(survival_probability(Baseline::pi_pulse, e));
    ss.push_back(survival_probability(Baseline::spin_echo, e));
    lp.push_back(analytic_lambda(Baseline::pi_pulse, e));
    ls.push_back(analytic_lambda(Baseline::spin_echo, e));
    // Quadrature of the propagator survival over gamma = gamma_bar (1 - e').
    auto numeric = [&](Baseline b) {
      return robustness_lambda(
          [b](double g) { return propagator_survival(b, 1.0 - g); }, 1.0, e, cfg.nquad);
    };
    np.push_back(numeric(Baseline::pi_pulse));
    ns.push_back(numeric(Baseline::spin_echo));
  }
  res.artifacts.push_back(
      {"baseline.csv",
       table_text({"epsilon", "survival_pi", "survival_se", "lambda_pi", "lambda_se",
                   "lambda_pi_numeric", "lambda_se_numeric"},
                  {cfg.epsilons, sp, ss, lp, ls, np, ns})});
  double worst = 0.0;
  for (std::size_t i = 0; i < lp.size(); ++i)
    worst = std::max({worst, std::abs(lp[i] - np[i]), std::abs(ls[i] - ns[i])});
  res.summary.push_back("max |analytic - quadrature| = " + fmt(worst));
  return res;
}

double sup_deviation(const BlochTrajectory& a, const BlochTrajectory& b) {
  double worst = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k)
    worst = std::max(worst, (a[k].vec() - b[k].vec()).cwiseAbs().maxCoeff());
  return worst;
}

PipelineResult run_coupled(const ExperimentConfig& cfg) {
  PipelineResult res;
  const FieldProtocol base = ansatz_protocol(cfg.kappa, cfg.eta, design_of(cfg));
  const BlochTrajectory free1 = integrate_bloch(BlochVector::north(), base, cfg.gamma, cfg.steps);
  const BlochTrajectory free2 = integrate_bloch(BlochVector::north(), base, cfg.gamma2, cfg.steps);
  res.artifacts.push_back({"free_spin1.csv", trajectory_text(free1)});
  res.artifacts.push_back({"free_spin2.csv", trajectory_text(free2)});
  std::vector<double> mus = cfg.provided.count("mu") ? std::vector<double>{cfg.mu} : cfg.mus;
  if (mus.empty()) mus = {cfg.mu};
  std::vector<double> deviation;
  for (double mu : mus) {
    const FieldProtocol corrected =
        isotropic_corrected_field(base, free1, free2, mu, cfg.gamma, cfg.gamma2);
    const auto [s1, s2] = integrate_coupled_spins(
        {BlochVector::north(), BlochVector::north(), mu}, corrected, cfg.gamma, cfg.gamma2,
        cfg.steps);
    const std::string tag = "_mu" + fmt(mu);
    res.artifacts.push_back({"coupled_field" + tag + ".csv", field_text(corrected, cfg.samples)});
    res.artifacts.push_back({"coupled_spin1" + tag + ".csv", trajectory_text(s1)});
    res.artifacts.push_back({"coupled_spin2" + tag + ".csv", trajectory_text(s2)});
    deviation.push_back(std::max(sup_deviation(s1, free1), sup_deviation(s2, free2)));
    res.summary.push_back("mu=" + fmt(mu) + " sup deviation=" + fmt(deviation.back()));
  }
  res.artifacts.push_back(
      {"deviation.csv", table_text({"mu", "max_deviation"}, {mus, deviation})});
  return res;
}

std::string fidelity_text(const ExperimentConfig& cfg, PipelineResult& res) {
  const double xi = cfg.xi;
  const double omega_bell = cfg.omega.value_or(2.0 * xi);
  const double omega_w = cfg.omega.value_or(4.0 * xi);
  const auto& tf = cfg.tf_xi;
  std::vector<double> fb(tf.size());
  std::vector<double> fw(tf.size());
  parallel_for(
      tf.size(),
      [&](std::size_t i) {
        fb[i] = bell_fidelity(tf[i] / xi, xi, omega_bell, cfg.steps);
        fw[i] = w_fidelity(tf[i] / xi, xi, omega_w, cfg.steps);
      },
      workers_of(cfg));
  res.summary.push_back("fidelity at t_f = " + fmt(tf.back()) + "/xi: bell=" + fmt(fb.back()) +
                        " w=" + fmt(fw.back()));
  return table_text({"tf_xi", "fidelity_bell", "fidelity_w"}, {tf, fb, fw});
}

PipelineResult run_bell(const ExperimentConfig& cfg) {
  PipelineResult res;
  res.artifacts.push_back({"fidelity.csv", fidelity_text(cfg, res)});
  return res;
}

PipelineResult run_all_figures(const ExperimentConfig& cfg) {
  PipelineResult res;

  ExperimentConfig fig1 = cfg;
  fig1.gamma = 2.0, fig1.b0 = 1.0, fig1.tf = 1.0, fig1.kappa = 1.0, fig1.eta = 0.0;
  flip_artifacts(fig1, "fig1_", {}, res);

  ExperimentConfig base = fig1;
  for (double kappa : {0.5, 2.5, 3.1, 4.5}) {
    const ScanGrid grid = delta_map(linspace(0.05, 5.0, 100), linspace(0.0, 20.0, 41), kappa,
                                    design_of(base), DeficitTarget::flip,
                                    {cfg.steps, workers_of(cfg)});
    res.artifacts.push_back({"fig3_delta_k" + fmt(kappa) + ".csv", grid_text(grid)});
  }

  ExperimentConfig fig4 = base;
  fig4.kappa = 0.5, fig4.eta = 5.0;
  flip_artifacts(fig4, "fig4_", {2.0, 5.34, 8.94}, res);

  ExperimentConfig fig5 = base;
  fig5.eta = 20.0, fig5.epsilon = 0.01, fig5.kstep = 0.02;
  const RobustnessReport report = magic_report(fig5, 0.05, 10.0);
  res.artifacts.push_back({"fig5_lambda.csv", magic_csv(report)});
  res.artifacts.push_back({"fig5_magic.json", robustness_json(report)});
  for (const MagicPoint& m : report.magic)
    res.summary.push_back("fig5 magic kappa=" + fmt(m.kappa) +
                          " log10_lambda=" + fmt(std::log10(m.lambda)));
  const FieldProtocol inset = ansatz_protocol(9.18918, 20.0, design_of(base));
  res.artifacts.push_back(
      {"fig5_inset_trajectory.csv",
       trajectory_text(integrate_bloch(BlochVector::north(), inset, 1.01 * base.gamma, cfg.steps))});

  ExperimentConfig fig6 = defaults_for("robust");
  fig6.steps = cfg.steps, fig6.nquad = cfg.nquad, fig6.workers = cfg.workers;
  const RobustnessTable t = robustness_table(fig6);
  res.artifacts.push_back({"fig6_robustness.csv", table_text(t.header, t.columns)});

  const std::vector<double> kappas = linspace(0.05, 10.0, 200);
  const ScanGrid fig8 = superposition_map(kappas, linspace(0.0, 10.0, 41), 1.0, design_of(base),
                                          {cfg.steps, workers_of(cfg)});
  res.artifacts.push_back({"fig8_superposition.csv", grid_text(fig8)});
  const ScanGrid cut = superposition_map(kappas, std::vector<double>{2.0, 3.0}, 1.0,
                                         design_of(base), {cfg.steps, workers_of(cfg)});
  std::vector<double> c2;
  std::vector<double> c3;
  for (std::size_t i = 0; i < kappas.size(); ++i) {
    c2.push_back(cut.at(i, 0));
    c3.push_back(cut.at(i, 1));
  }
  res.artifacts.push_back({"fig8_cut.csv", table_text({"kappa", "abs_sz_eta2", "abs_sz_eta3"},
                                                      {kappas, c2, c3})});

  res.artifacts.push_back({"fidelity.csv", fidelity_text(cfg, res)});
  return res;
}

}  // namespace

PipelineResult run_pipeline(const ExperimentConfig& cfg) {
  const std::string& s = cfg.subcommand;
  if (s == "flip") return run_flip(cfg);
  if (s == "synth") return run_synth(cfg);
  if (s == "scan") return run_scan(cfg);
  if (s == "magic") return run_magic(cfg);
  if (s == "robust") return run_robust(cfg);
  if (s == "baseline") return run_baseline(cfg);
  if (s == "coupled") return run_coupled(cfg);
  if (s == "bell") return run_bell(cfg);
  if (s == "all-figures") return run_all_figures(cfg);
  throw PreconditionError("unknown subcommand '" + s + "'");
}

}  // namespace spinflip::cli

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

#include "spinflip_cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <variant>

#include "spinflip/export.hpp"
#include "spinflip/optimize.hpp"

namespace spinflip::cli {

namespace {

using C = ExperimentConfig;
using Member =
    std::variant<double C::*, int C::*, std::vector<double> C::*, std::optional<double> C::*,
                 std::string C::*, std::filesystem::path C::*>;

struct Entry {
  const char* name;
  Member member;
};

const std::vector<Entry>& registry() {
  static const std::vector<Entry> entries{
      {"gamma", &C::gamma},     {"gamma2", &C::gamma2},     {"gammas", &C::gammas},
      {"b0", &C::b0},           {"tf", &C::tf},             {"kappa", &C::kappa},
      {"eta", &C::eta},         {"mu", &C::mu},             {"mus", &C::mus},
      {"xi", &C::xi},           {"omega", &C::omega},       {"epsilon", &C::epsilon},
      {"delta", &C::delta},
      {"kmin", &C::kmin},       {"kmax", &C::kmax},         {"kstep", &C::kstep},
      {"ratios", &C::ratios},   {"etas", &C::etas},         {"kappas", &C::kappas},
      {"epsilons", &C::epsilons}, {"tf_xi", &C::tf_xi},     {"steps", &C::steps},
      {"nquad", &C::nquad},     {"samples", &C::samples},   {"workers", &C::workers},
      {"method", &C::method},   {"target", &C::target},     {"out", &C::out},
      {"format", &C::format},
  };
  return entries;
}

std::string canonical(std::string_view key) {
  std::string k(key);
  std::replace(k.begin(), k.end(), '-', '_');
  return k;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string_view unquote(std::string_view s) {
  if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front())
    return s.substr(1, s.size() - 2);
  return s;
}

double parse_double(std::string_view key, std::string_view text) {
  const std::string_view t = trim(text);
  double v = 0.0;
  const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size())
    throw ConfigError(std::string(key), "expected a number, got '" + std::string(t) + "'");
  if (!std::isfinite(v)) throw ConfigError(std::string(key), "value must be finite");
  return v;
}

int parse_int(std::string_view key, std::string_view text) {
  const std::string_view t = trim(text);
  int v = 0;
  const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size())
    throw ConfigError(std::string(key), "expected an integer, got '" + std::string(t) + "'");
  return v;
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

void require(bool ok, const char* key, const std::string& message) {
  if (!ok) throw ConfigError(key, message);
}

void require_increasing(const std::vector<double>& v, const char* key) {
  for (std::size_t i = 1; i < v.size(); ++i)
    require(v[i] > v[i - 1], key, "samples must be strictly increasing");
}

}  // namespace

ConfigError::ConfigError(std::string key, const std::string& message)
    : std::runtime_error("config error: " + key + ": " + message), key_(std::move(key)) {}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> out;
    for (const auto& e : registry()) out.emplace_back(e.name);
    return out;
  }();
  return keys;
}

std::vector<double> parse_list(std::string_view key, std::string_view text) {
  std::string_view t = trim(text);
  if (t.size() >= 2 && t.front() == '[' && t.back() == ']') t = trim(t.substr(1, t.size() - 2));
  if (t.empty()) throw ConfigError(std::string(key), "list must not be empty");

  if (t.find(':') != std::string_view::npos) {
    const auto a = t.find(':');
    const auto b = t.find(':', a + 1);
    if (b == std::string_view::npos)
      throw ConfigError(std::string(key), "range must be lo:hi:count");
    const double lo = parse_double(key, t.substr(0, a));
    const double hi = parse_double(key, t.substr(a + 1, b - a - 1));
    const int count = parse_int(key, t.substr(b + 1));
    if (count < 1) throw ConfigError(std::string(key), "range count must be >= 1");
    if (count == 1) return {lo};
    if (!(hi > lo)) throw ConfigError(std::string(key), "range needs lo < hi");
    return linspace(lo, hi, static_cast<std::size_t>(count));
  }

  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= t.size()) {
    const auto comma = t.find(',', pos);
    const auto item = t.substr(pos, comma == std::string_view::npos ? t.npos : comma - pos);
    out.push_back(parse_double(key, item));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

void set_config_value(ExperimentConfig& cfg, std::string_view key, std::string_view value) {
  const std::string k = canonical(key);
  const auto it = std::find_if(registry().begin(), registry().end(),
                               [&](const Entry& e) { return k == e.name; });
  if (it == registry().end()) throw ConfigError(k, "unknown key");
  const std::string_view v = unquote(trim(value));
  cfg.provided.insert(k);
  std::visit(Overloaded{
                 [&](double C::*m) { cfg.*m = parse_double(k, v); },
                 [&](int C::*m) { cfg.*m = parse_int(k, v); },
                 [&](std::vector<double> C::*m) { cfg.*m = parse_list(k, v); },
                 [&](std::optional<double> C::*m) { cfg.*m = parse_double(k, v); },
                 [&](std::string C::*m) { cfg.*m = std::string(v); },
                 [&](std::filesystem::path C::*m) { cfg.*m = std::filesystem::path(v); },
             },
             it->member);
}

void apply_config_file(ExperimentConfig& cfg, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open '" + path.string() + "'");
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view s = line;
    if (const auto hash = s.find('#'); hash != std::string_view::npos) s = s.substr(0, hash);
    s = trim(s);
    if (s.empty()) continue;
    const auto eq = s.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("config", path.string() + ":" + std::to_string(lineno) +
                                      ": expected 'key = value'");
    }
    const std::string_view key = trim(s.substr(0, eq));
    if (key.empty()) {
      throw ConfigError("config", path.string() + ":" + std::to_string(lineno) + ": missing key");
    }
    set_config_value(cfg, key, s.substr(eq + 1));
  }
}

ExperimentConfig defaults_for(std::string_view subcommand) {
  ExperimentConfig cfg;
  cfg.subcommand = std::string(subcommand);
  const std::vector<double> log_eps = [] {
    std::vector<double> e;
    for (double x : linspace(std::log10(5e-4), std::log10(0.05), 25)) e.push_back(std::pow(10.0, x));
    e.back() = 0.05;
    return e;
  }();
  if (subcommand == "scan") {
    cfg.kappa = 0.5;
    cfg.ratios = linspace(0.05, 5.0, 100);
    cfg.etas = linspace(0.0, 20.0, 41);
    cfg.kappas = linspace(0.05, 10.0, 200);
  } else if (subcommand == "magic") {
    cfg.eta = 20.0;
  } else if (subcommand == "robust") {
    cfg.eta = 20.0;
    cfg.kappas = {0.5, 2.0564, 3.262, 9.1892};
    cfg.epsilons = log_eps;
  } else if (subcommand == "baseline") {
    cfg.epsilons = log_eps;
  } else if (subcommand == "coupled") {
    cfg.kappa = 0.5;
    cfg.eta = 5.0;
    cfg.gamma2 = 5.34;
    cfg.mus = {0.5, 2.0, 10.0};
  } else if (subcommand == "bell" || subcommand == "all-figures") {
    cfg.tf_xi = linspace(0.1, 30.0, 300);
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  ExperimentConfig cfg;
  apply_config_file(cfg, path);
  validate(cfg);
  return cfg;
}

void validate(const ExperimentConfig& cfg) {
  require(cfg.gamma != 0.0, "gamma", "must be nonzero");
  require(cfg.gamma2 != 0.0, "gamma2", "must be nonzero");
  for (double g : cfg.gammas) require(g != 0.0, "gammas", "entries must be nonzero");
  require(cfg.tf > 0.0, "tf", "must be positive");
  require(cfg.mu >= 0.0, "mu", "must be non-negative");
  for (double m : cfg.mus) require(m >= 0.0, "mus", "entries must be non-negative");
  require(cfg.xi > 0.0, "xi", "must be positive");
  require(cfg.epsilon > 0.0 && cfg.epsilon < 1.0, "epsilon", "must lie in (0, 1)");
  require(cfg.delta > 0.0 && cfg.delta < 1.0, "delta", "must lie in (0, 1)");
  for (double e : cfg.epsilons)
    require(e > 0.0 && e < 1.0, "epsilons", "entries must lie in (0, 1)");
  require_increasing(cfg.epsilons, "epsilons");
  require(cfg.kmin < cfg.kmax, "kmin", "must be below kmax");
  require(cfg.kstep > 0.0 && cfg.kstep <= 0.05, "kstep", "must lie in (0, 0.05]");
  require_increasing(cfg.ratios, "ratios");
  require_increasing(cfg.etas, "etas");
  require_increasing(cfg.kappas, "kappas");
  require_increasing(cfg.tf_xi, "tf_xi");
  for (double t : cfg.tf_xi) require(t > 0.0, "tf_xi", "entries must be positive");
  require(cfg.steps >= 16, "steps", "must be >= 16");
  require(cfg.nquad >= 8, "nquad", "must be >= 8");
  require(cfg.samples >= 2, "samples", "must be >= 2");
  require(cfg.workers >= 0, "workers", "must be >= 0");
  require(cfg.method == "precession" || cfg.method == "evolution-operator" ||
              cfg.method == "madelung",
          "method", "expected precession, evolution-operator or madelung");
  require(cfg.target == "flip" || cfg.target == "superposition", "target",
          "expected flip or superposition");
  require(cfg.format == "auto" || cfg.format == "csv" || cfg.format == "json", "format",
          "expected auto, csv or json");
  require(!cfg.out.empty(), "out", "must not be empty");
}

std::string config_value_string(const ExperimentConfig& cfg, std::string_view key) {
  const std::string k = canonical(key);
  const auto it = std::find_if(registry().begin(), registry().end(),
                               [&](const Entry& e) { return k == e.name; });
  if (it == registry().end()) throw ConfigError(k, "unknown key");
  return std::visit(
      Overloaded{
          [&](double C::*m) { return format_double(cfg.*m); },
          [&](int C::*m) { return std::to_string(cfg.*m); },
          [&](std::vector<double> C::*m) {
            std::string s = "[";
            for (std::size_t i = 0; i < (cfg.*m).size(); ++i)
              s += (i ? ", " : "") + format_double((cfg.*m)[i]);
            return s + "]";
          },
          [&](std::optional<double> C::*m) {
            return (cfg.*m) ? format_double(*(cfg.*m)) : std::string("default");
          },
          [&](std::string C::*m) { return cfg.*m; },
          [&](std::filesystem::path C::*m) { return (cfg.*m).generic_string(); },
      },
      it->member);
}

}  // namespace spinflip::cli

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

#include "spinflip/export.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"
#include "spinflip/errors.hpp"

namespace spinflip {

namespace {

using nlohmann::json;

json scalar_or_null(const std::map<std::string, double>& params, const char* key) {
  const auto it = params.find(key);
  if (it == params.end()) return nullptr;
  return it->second;
}

void write_row(std::ostream& out, std::span<const double> values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out << ',';
    out << format_double(values[i]);
  }
  out << '\n';
}

}  // namespace

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), res.ptr);
}

void write_trajectory_csv(std::ostream& out, const BlochTrajectory& traj) {
  out << "t,sx,sy,sz\n";
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const Vec3& s = traj[k].vec();
    const std::array<double, 4> row{traj.time(k), s.x(), s.y(), s.z()};
    write_row(out, row);
  }
}

void write_field_csv(std::ostream& out, const FieldProtocol& field, std::size_t n_samples) {
  out << "t,Bx,By,Bz\n";
  for (const FieldSample& fs : field.sample(n_samples)) {
    const std::array<double, 4> row{fs.t, fs.b.x(), fs.b.y(), fs.b.z()};
    write_row(out, row);
  }
}

void write_scan_grid_csv(std::ostream& out, const ScanGrid& grid) {
  if (grid.values.size() != grid.axis1.size() * grid.axis2.size())
    throw PreconditionError("scan grid values do not match its axes");
  out << grid.axis1_name << '\\' << grid.axis2_name;
  for (double v : grid.axis2) out << ',' << format_double(v);
  out << '\n';
  std::vector<double> row(grid.axis2.size() + 1);
  for (std::size_t i = 0; i < grid.axis1.size(); ++i) {
    row[0] = grid.axis1[i];
    for (std::size_t j = 0; j < grid.axis2.size(); ++j) row[j + 1] = grid.at(i, j);
    write_row(out, row);
  }
}

void write_table_csv(std::ostream& out, std::span<const std::string> header,
                     std::span<const std::vector<double>> columns) {
  if (header.size() != columns.size())
    throw PreconditionError("table header and column count differ");
  const std::size_t rows = columns.empty() ? 0 : columns.front().size();
  for (const auto& c : columns)
    if (c.size() != rows) throw PreconditionError("table columns differ in length");
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n';
  std::vector<double> row(columns.size());
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < columns.size(); ++c) row[c] = columns[c][r];
    write_row(out, row);
  }
}

std::string protocol_json(const FieldProtocol& field) {
  const auto& params = field.info().params;
  json j;
  j["method"] = field.info().method;
  j["kappa"] = scalar_or_null(params, "kappa");
  j["eta"] = scalar_or_null(params, "eta");
  j["B0"] = scalar_or_null(params, "B0");
  j["gamma"] = scalar_or_null(params, "gamma");
  j["t_f"] = field.duration();
  j["params"] = json::object();
  for (const auto& [k, v] : params) j["params"][k] = v;
  return j.dump(2) + "\n";
}

std::string robustness_json(const RobustnessReport& report) {
  json j;
  j["eta"] = report.eta;
  j["epsilon"] = report.epsilon;
  j["gamma_bar"] = report.gamma_bar;
  j["n_quad"] = report.n_quad;
  j["kappa"] = report.kappa;
  j["lambda"] = report.lambda;
  j["magic"] = json::array();
  for (const MagicPoint& m : report.magic)
    j["magic"].push_back({{"kappa", m.kappa}, {"lambda", m.lambda}});
  return j.dump(2) + "\n";
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error("cannot open " + path.string() + " for writing");
  f.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!f) throw Error("failed writing " + path.string());
}

}  // namespace spinflip

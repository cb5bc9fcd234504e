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

// Deterministic text export. Floats use the shortest decimal form that reads
// back to the same double; lines end in LF regardless of platform.

#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "spinflip/bloch.hpp"
#include "spinflip/multispin.hpp"

namespace spinflip {

std::string format_double(double value);

// Header `t,sx,sy,sz`, one row per grid point.
void write_trajectory_csv(std::ostream& out, const BlochTrajectory& traj);

// Header `t,Bx,By,Bz` on a uniform grid of n_samples points.
void write_field_csv(std::ostream& out, const FieldProtocol& field,
                     std::size_t n_samples = 2001);

// First row: axis1_name\axis2_name followed by the axis2 values; every further
// row starts with its axis1 value.
void write_scan_grid_csv(std::ostream& out, const ScanGrid& grid);

// Column-major table; every column must have the same length as the first.
void write_table_csv(std::ostream& out, std::span<const std::string> header,
                     std::span<const std::vector<double>> columns);

// {"method", "kappa", "eta", "B0", "gamma", "t_f", "params"}; absent scalars
// are null, "params" echoes all metadata.
std::string protocol_json(const FieldProtocol& field);

// {"eta", "epsilon", "gamma_bar", "n_quad", "kappa", "lambda", "magic"}.
std::string robustness_json(const RobustnessReport& report);

// Writes `content` to `path` in binary mode, creating parent directories.
void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace spinflip

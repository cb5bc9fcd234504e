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

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace spinflip::cli {

std::string sha256_hex(std::string_view data);
std::string sha256_file(const std::filesystem::path& path);

struct ManifestEntry {
  std::string path;  // relative to the manifest directory, '/' separated
  std::string sha256;
  std::uintmax_t bytes = 0;
};

struct RunManifest {
  std::string tool_version;
  std::string subcommand;
  std::vector<std::pair<std::string, std::string>> config;
  double wall_seconds = 0.0;
  std::vector<ManifestEntry> files;

  std::string to_json() const;
};

// Re-hashes every listed file next to `manifest_path`. On mismatch returns
// false and, if `why` is set, names the offending file.
bool verify_manifest(const std::filesystem::path& manifest_path, std::string* why = nullptr);

}  // namespace spinflip::cli

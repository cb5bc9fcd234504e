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

#include <filesystem>
#include <string>
#include <vector>

#include "spinflip_cli/config.hpp"

namespace spinflip::cli {

// A file to be written under the output directory.
struct Artifact {
  std::filesystem::path relative;
  std::string content;
};

struct PipelineResult {
  std::vector<Artifact> artifacts;
  std::vector<std::string> summary;  // one human-readable line each
};

// Runs the pipeline for cfg.subcommand entirely in memory; nothing touches
// the disk until every artifact is ready.
PipelineResult run_pipeline(const ExperimentConfig& cfg);

}  // namespace spinflip::cli

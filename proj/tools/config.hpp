// Copyright 2026 The Hatemask Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hatemask::cli {

// Environment variable naming the default config file.
inline constexpr const char* kConfigEnv = "HATEMASK_CONFIG";

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigIoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Paths {
  std::string corpus;
  std::string verdicts;
  std::string candidates;
  std::string attributions;
  std::string overrides;
  std::string stoplist;
  std::string plans;
  std::string output_dir = "hatemask-out";
};

struct Thresholds {
  int annotator_votes = 2;   // [1, 3]
  int keyword_votes = 3;     // [0, 5]
  double attribution = 0.1;  // [0, 1]
  int min_level = 5;         // [0, 5]
  int min_count = 10;        // >= 1
};

struct PipelineConfig {
  Paths paths;
  Thresholds thresholds;
  std::uint64_t seed = 0;
  std::string aggregation = "micro";
  // Extra classifier label strings, mapped to hateful (true) or normal.
  std::map<std::string, bool> label_map;
};

// Reads a JSON config; relative paths resolve against the file's directory.
// Missing keys keep their defaults.
PipelineConfig LoadConfig(const std::string& path);
PipelineConfig ParseConfig(const std::string& json_text, const std::string& base_dir = "");

// Throws ConfigError when a threshold or option is out of range.
void Validate(const PipelineConfig& config);

// One line with thresholds, seed and aggregation.
std::string Describe(const PipelineConfig& config);

}  // namespace hatemask::cli

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

#include "config.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace hatemask::cli {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

std::string Resolve(const std::string& base_dir, const std::string& path) {
  if (path.empty() || base_dir.empty() || fs::path(path).is_absolute()) return path;
  return (fs::path(base_dir) / path).lexically_normal().string();
}

// Misspelled keys would otherwise be silently ignored.
void CheckKeys(const json& obj, std::initializer_list<const char*> allowed, const char* where) {
  if (!obj.is_object()) throw ConfigError(std::string(where) + " must be a JSON object");
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (const char* a : allowed) known = known || key == a;
    if (!known) throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

}  // namespace

PipelineConfig ParseConfig(const std::string& json_text, const std::string& base_dir) {
  PipelineConfig c;
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  CheckKeys(root, {"paths", "thresholds", "seed", "aggregation", "label_map"}, "config");
  try {
    if (auto p = root.find("paths"); p != root.end()) {
      CheckKeys(*p, {"corpus", "verdicts", "candidates", "attributions", "overrides", "stoplist",
                     "plans", "output_dir"},
                "paths");
      auto get = [&](const char* key, std::string& field) {
        if (auto it = p->find(key); it != p->end() && !it->is_null()) {
          field = Resolve(base_dir, it->get<std::string>());
        }
      };
      get("corpus", c.paths.corpus);
      get("verdicts", c.paths.verdicts);
      get("candidates", c.paths.candidates);
      get("attributions", c.paths.attributions);
      get("overrides", c.paths.overrides);
      get("stoplist", c.paths.stoplist);
      get("plans", c.paths.plans);
      get("output_dir", c.paths.output_dir);
    }
    if (auto t = root.find("thresholds"); t != root.end()) {
      CheckKeys(*t, {"annotator_votes", "keyword_votes", "attribution", "min_level", "min_count"},
                "thresholds");
      c.thresholds.annotator_votes = t->value("annotator_votes", c.thresholds.annotator_votes);
      c.thresholds.keyword_votes = t->value("keyword_votes", c.thresholds.keyword_votes);
      c.thresholds.attribution = t->value("attribution", c.thresholds.attribution);
      c.thresholds.min_level = t->value("min_level", c.thresholds.min_level);
      c.thresholds.min_count = t->value("min_count", c.thresholds.min_count);
    }
    c.seed = root.value("seed", c.seed);
    c.aggregation = root.value("aggregation", c.aggregation);
    if (auto m = root.find("label_map"); m != root.end()) {
      CheckKeys(*m, {"hateful", "normal"}, "label_map");
      for (const auto& raw : m->value("hateful", std::vector<std::string>{})) c.label_map[raw] = true;
      for (const auto& raw : m->value("normal", std::vector<std::string>{})) c.label_map[raw] = false;
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config field has the wrong type: ") + e.what());
  }
  return c;
}

PipelineConfig LoadConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigIoError("cannot read config '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return ParseConfig(buf.str(), fs::path(path).parent_path().string());
}

void Validate(const PipelineConfig& c) {
  const auto& t = c.thresholds;
  if (t.annotator_votes < 1 || t.annotator_votes > 3) {
    throw ConfigError("annotator_votes must be in [1, 3]");
  }
  if (t.keyword_votes < 0 || t.keyword_votes > 5) throw ConfigError("keyword_votes must be in [0, 5]");
  if (!std::isfinite(t.attribution) || t.attribution < 0.0 || t.attribution > 1.0) {
    throw ConfigError("attribution threshold must be in [0, 1]");
  }
  if (t.min_level < 0 || t.min_level > 5) throw ConfigError("min_level must be in [0, 5]");
  if (t.min_count < 1) throw ConfigError("min_count must be >= 1");
  if (c.aggregation != "micro" && c.aggregation != "macro") {
    throw ConfigError("aggregation must be 'micro' or 'macro'");
  }
  if (c.paths.output_dir.empty()) throw ConfigError("output_dir must not be empty");
}

std::string Describe(const PipelineConfig& c) {
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "annotator_votes=%d keyword_votes=%d attribution=%g min_level=%d min_count=%d "
                "seed=%llu aggregation=%s",
                c.thresholds.annotator_votes, c.thresholds.keyword_votes, c.thresholds.attribution,
                c.thresholds.min_level, c.thresholds.min_count,
                static_cast<unsigned long long>(c.seed), c.aggregation.c_str());
  return buf;
}

}  // namespace hatemask::cli

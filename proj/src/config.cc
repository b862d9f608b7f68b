// Copyright 2026 The Skatlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "skat/config.h"

#include <cstdlib>
#include <fstream>
#include <stdexcept>
#include <thread>

namespace skat {

int RunConfig::EffectiveWorkers() const {
  if (const char* env = std::getenv("SKAT_WORKERS")) {
    const int value = std::atoi(env);
    if (value > 0) return value;
  }
  if (workers > 0) return workers;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

void ApplyConfigLine(RunConfig& config, const std::string& key,
                     const std::string& value) {
  if (key == "bid_threshold") {
    config.policy.bid_threshold = std::stod(value);
  } else if (key == "world_count") {
    config.policy.world_count = std::stoi(value);
  } else if (key == "endgame_trigger") {
    config.policy.endgame_trigger = std::stoi(value);
  } else if (key == "endgame_world_cap") {
    config.policy.endgame_world_cap = std::stoi(value);
  } else if (key == "objective") {
    if (value == "max_prob") {
      config.policy.objective = Objective::kMaxProbability;
    } else if (value == "expected_score") {
      config.policy.objective = Objective::kExpectedScore;
    } else {
      throw std::invalid_argument("unknown objective: " + value);
    }
  } else if (key == "seed") {
    config.policy.seed = std::stoull(value);
  } else if (key == "workers") {
    config.workers = std::stoi(value);
  } else if (key == "confidence_threshold") {
    config.confidence_threshold = std::stoull(value);
  } else if (key == "corpus_weight") {
    config.corpus_weight = std::stoull(value);
  } else {
    throw std::invalid_argument("unknown config key: " + key);
  }
}

RunConfig LoadConfigFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config: " + path);
  RunConfig config;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    const size_t eq = line.find('=');
    if (eq == std::string::npos) {
      bool blank = line.find_first_not_of(" \t\r") == std::string::npos;
      if (blank) continue;
      throw std::runtime_error(path + ":" + std::to_string(line_number) +
                               ": expected key=value");
    }
    auto trim = [](std::string s) {
      const size_t a = s.find_first_not_of(" \t\r");
      const size_t b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    ApplyConfigLine(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  config.policy.Validate();
  return config;
}

}  // namespace skat

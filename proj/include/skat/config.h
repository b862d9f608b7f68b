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

#ifndef SKATLAB_CONFIG_H_
#define SKATLAB_CONFIG_H_

#include <string>

#include "skat/players.h"

namespace skat {

// Everything a pipeline run needs beyond the deal inputs. Loaded from a
// key=value text file; the SKAT_WORKERS environment variable overrides
// the worker count.
struct RunConfig {
  PolicyConfig policy;
  int workers = 0;  // 0: hardware concurrency
  uint64_t confidence_threshold = kDefaultConfidenceThreshold;
  uint64_t corpus_weight = 1;

  int EffectiveWorkers() const;
};

// Recognized keys: bid_threshold, world_count, endgame_trigger,
// endgame_world_cap, objective (max_prob | expected_score), seed,
// workers, confidence_threshold, corpus_weight.
void ApplyConfigLine(RunConfig& config, const std::string& key,
                     const std::string& value);
RunConfig LoadConfigFile(const std::string& path);

}  // namespace skat

#endif  // SKATLAB_CONFIG_H_

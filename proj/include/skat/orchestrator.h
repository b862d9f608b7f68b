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

#ifndef SKATLAB_ORCHESTRATOR_H_
#define SKATLAB_ORCHESTRATOR_H_

#include <array>
#include <string>
#include <vector>

#include "skat/cards.h"
#include "skat/config.h"
#include "skat/pgn.h"
#include "skat/players.h"
#include "skat/tables.h"

namespace skat {

// Game-type rows of the evaluation report: suit games, grand, and the two
// null value groups.
enum class GameGroup { kSuit = 0, kGrand = 1, kNullLow = 2, kNullHigh = 3 };
inline constexpr int kNumGameGroups = 4;
const char* GameGroupName(GameGroup g);
GameGroup GroupOfGame(GameType type);

struct EvalReport {
  // counts[group][ocs][actual]
  int64_t counts[kNumGameGroups][2][2] = {};
  int64_t folded = 0;

  int64_t GroupTotal(GameGroup g) const;
  int64_t TotalPlayed() const;
  int64_t Agreements() const;  // ocs == actual
  double Accuracy() const;     // agreements / played
  double GroupAccuracy(GameGroup g) const;
  // Solver predicts a win and the declarer won.
  double TruePositiveRate() const;
  // Solver predicts a loss and the declarer lost.
  double FalseNegativeRate() const;
  double WinningPercentage() const;  // declarer wins / played
};

// Open-card verdict vs recorded outcome over a corpus. Workers split the
// records; every count is aggregated exactly, so the report does not
// depend on the worker count.
EvalReport Evaluate(const std::vector<pgn::GameRecord>& games, int workers);

// One self-played corpus: one record per deal, folded games included.
// Deterministic in (config.seed, deal ids) and independent of the worker
// count and scheduling.
pgn::Series RunSelfplay(const std::vector<Deal>& deals, const TableSet& tables,
                        const PolicyConfig& config, PlayMode mode, int workers,
                        const std::string& event_name = "Selfplay");

// Builds all five question tables from a corpus, carrying `bias` counts
// forward.
TableSet LearnAllQuestions(const std::vector<Deal>& deals,
                           const std::vector<pgn::GameRecord>& played,
                           const TableSet* bias, uint64_t weight,
                           uint64_t confidence_threshold);

struct BootstrapRun {
  int iteration = 0;
  uint64_t deals = 0;
  uint64_t played = 0;
  uint64_t folded = 0;
  double accuracy = 0.0;
  double true_positive_rate = 0.0;
  double false_negative_rate = 0.0;
  double winning_percentage = 0.0;
  std::array<double, kNumGameGroups> group_accuracy = {};
  std::array<int64_t, kNumPlayers> seeger_totals = {};
  std::string tables_dir;
};

struct BootstrapOptions {
  int iterations = 1;
  uint64_t deals_per_iteration = 0;
  uint64_t deal_seed = 1;
  RunConfig run;
  std::string out_dir;  // deals, corpora, tables and reports live here
  bool evaluate = true;
};

// The outer loop: self-play with tables T_n, relearn with T_n as bias,
// publish T_{n+1} atomically, evaluate, repeat. Tables accumulate counts
// across iterations.
std::vector<BootstrapRun> Bootstrap(const BootstrapOptions& options);

void WriteRunsCsv(const std::vector<BootstrapRun>& runs,
                  const std::string& path);
// One two-column (iteration, value) file per metric, plot-tool friendly.
void WritePlotSeries(const std::vector<BootstrapRun>& runs,
                     const std::string& dir);
std::vector<BootstrapRun> ReadRunsCsv(const std::string& path);

// Seeger-Fabian totals of a corpus, using each record's reached value.
std::array<int64_t, kNumPlayers> ScoreCorpus(
    const std::vector<pgn::GameRecord>& games);
int RecordGameValue(const pgn::GameRecord& record);

struct VersusResult {
  // Per seat: games declared and won/lost, and Seeger-Fabian totals.
  std::array<int64_t, kNumPlayers> won = {};
  std::array<int64_t, kNumPlayers> lost = {};
  std::array<int64_t, kNumPlayers> score = {};
  uint64_t folded = 0;
};

// Head-to-head on fixed deals: seat_tables[i] selects which table set
// seat i plays with (e.g. two learned, one empty).
VersusResult Versus(const std::vector<Deal>& deals,
                    const std::array<const TableSet*, kNumPlayers>& seat_tables,
                    const PolicyConfig& config, int workers);

}  // namespace skat

#endif  // SKATLAB_ORCHESTRATOR_H_

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

#include "skat/orchestrator.h"

#include <atomic>
#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "skat/solver.h"

namespace skat {
namespace {

// Runs fn(record_index) on `workers` threads over [0, count).
void ParallelFor(uint64_t count, int workers,
                 const std::function<void(int worker, uint64_t index)>& fn) {
  if (workers < 1) workers = 1;
  std::atomic<uint64_t> next{0};
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        while (true) {
          const uint64_t i = next.fetch_add(1);
          if (i >= count) break;
          fn(w, i);
        }
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (std::thread& t : pool) t.join();
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::vector<pgn::GameRecord> PlayDeals(
    const std::vector<Deal>& deals,
    const std::array<const TableSet*, kNumPlayers>& seat_tables,
    const PolicyConfig& config, PlayMode mode, int workers) {
  std::vector<pgn::GameRecord> records(deals.size());
  std::vector<std::unique_ptr<OpenSolver>> solvers;
  if (workers < 1) workers = 1;
  for (int w = 0; w < workers; ++w) {
    solvers.push_back(std::make_unique<OpenSolver>());
  }
  ParallelFor(deals.size(), workers, [&](int w, uint64_t i) {
    records[i] =
        PlayOneGame(deals[i], seat_tables, config, mode, solvers[w].get());
  });
  return records;
}

}  // namespace

const char* GameGroupName(GameGroup g) {
  switch (g) {
    case GameGroup::kSuit: return "Suit";
    case GameGroup::kGrand: return "Grand";
    case GameGroup::kNullLow: return "Null23/35";
    case GameGroup::kNullHigh: return "Null46/59";
  }
  return "unknown";
}

GameGroup GroupOfGame(GameType type) {
  if (type.IsSuit()) return GameGroup::kSuit;
  if (type.IsGrand()) return GameGroup::kGrand;
  switch (type.code()) {
    case GameType::kNullCode:
    case GameType::kNullHandCode:
      return GameGroup::kNullLow;
    case GameType::kNullOuvertCode:
    case GameType::kNullOuvertHandCode:
      return GameGroup::kNullHigh;
    default:
      throw std::invalid_argument("folded game has no group");
  }
}

int64_t EvalReport::GroupTotal(GameGroup g) const {
  const auto& c = counts[static_cast<int>(g)];
  return c[0][0] + c[0][1] + c[1][0] + c[1][1];
}

int64_t EvalReport::TotalPlayed() const {
  int64_t total = 0;
  for (int g = 0; g < kNumGameGroups; ++g) {
    total += GroupTotal(static_cast<GameGroup>(g));
  }
  return total;
}

int64_t EvalReport::Agreements() const {
  int64_t agree = 0;
  for (int g = 0; g < kNumGameGroups; ++g) {
    agree += counts[g][0][0] + counts[g][1][1];
  }
  return agree;
}

double EvalReport::Accuracy() const {
  const int64_t total = TotalPlayed();
  return total == 0 ? 0.0 : static_cast<double>(Agreements()) / total;
}

double EvalReport::GroupAccuracy(GameGroup g) const {
  const int64_t total = GroupTotal(g);
  if (total == 0) return 0.0;
  const auto& c = counts[static_cast<int>(g)];
  return static_cast<double>(c[0][0] + c[1][1]) / total;
}

double EvalReport::TruePositiveRate() const {
  int64_t predicted_win = 0, hit = 0;
  for (int g = 0; g < kNumGameGroups; ++g) {
    predicted_win += counts[g][1][0] + counts[g][1][1];
    hit += counts[g][1][1];
  }
  return predicted_win == 0 ? 0.0 : static_cast<double>(hit) / predicted_win;
}

double EvalReport::FalseNegativeRate() const {
  int64_t predicted_loss = 0, hit = 0;
  for (int g = 0; g < kNumGameGroups; ++g) {
    predicted_loss += counts[g][0][0] + counts[g][0][1];
    hit += counts[g][0][0];
  }
  return predicted_loss == 0 ? 0.0 : static_cast<double>(hit) / predicted_loss;
}

double EvalReport::WinningPercentage() const {
  int64_t won = 0;
  for (int g = 0; g < kNumGameGroups; ++g) {
    won += counts[g][0][1] + counts[g][1][1];
  }
  const int64_t total = TotalPlayed();
  return total == 0 ? 0.0 : static_cast<double>(won) / total;
}

EvalReport Evaluate(const std::vector<pgn::GameRecord>& games, int workers) {
  if (workers < 1) workers = 1;
  std::vector<EvalReport> partial(workers);
  std::vector<std::unique_ptr<OpenSolver>> solvers;
  for (int w = 0; w < workers; ++w) {
    solvers.push_back(std::make_unique<OpenSolver>());
  }
  ParallelFor(games.size(), workers, [&](int w, uint64_t i) {
    const pgn::GameRecord& record = games[i];
    if (record.folded) {
      ++partial[w].folded;
      return;
    }
    const bool ocs = PredictedOutcome(record, *solvers[w]);
    const bool actual = record.declarer_won;
    const int g = static_cast<int>(GroupOfGame(record.Type()));
    ++partial[w].counts[g][ocs ? 1 : 0][actual ? 1 : 0];
  });
  EvalReport report;
  for (const EvalReport& p : partial) {
    report.folded += p.folded;
    for (int g = 0; g < kNumGameGroups; ++g) {
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
          report.counts[g][a][b] += p.counts[g][a][b];
        }
      }
    }
  }
  return report;
}

int RecordGameValue(const pgn::GameRecord& record) {
  const GameType type = record.Type();
  if (type.IsNull()) return type.NullValue();
  if (!type.IsTrumpGame()) return 0;
  Announcements ann;
  ann.hand = record.hand;
  ann.schneider = record.schneider;
  ann.schneider_announced = record.schneider_announced;
  ann.schwarz = record.schwarz;
  ann.schwarz_announced = record.schwarz_announced;
  ann.ouvert = record.ouvert;
  // The contract level holds the signed matador run.
  return GameValue(type, std::abs(record.contract_level), ann);
}

std::array<int64_t, kNumPlayers> ScoreCorpus(
    const std::vector<pgn::GameRecord>& games) {
  std::vector<SeriesGame> series;
  series.reserve(games.size());
  for (const pgn::GameRecord& record : games) {
    if (record.folded) continue;
    series.push_back({record.declarer, record.declarer_won,
                      RecordGameValue(record)});
  }
  return SeegerFabianScore(series);
}

pgn::Series RunSelfplay(const std::vector<Deal>& deals, const TableSet& tables,
                        const PolicyConfig& config, PlayMode mode, int workers,
                        const std::string& event_name) {
  pgn::Series series;
  series.games = PlayDeals(deals, {&tables, &tables, &tables}, config, mode,
                           workers);
  series.header.event = event_name;
  // Fixed header fields keep reruns byte-identical.
  series.header.date = "01.01.2026";
  series.header.time = "00:00";
  series.header.duration = "0m";
  series.header.game_count = static_cast<int64_t>(series.games.size());
  const std::array<int64_t, kNumPlayers> totals = ScoreCorpus(series.games);
  for (int seat = 0; seat < kNumPlayers; ++seat) {
    pgn::SeatInfo& info = series.header.seats[seat];
    info.name = "AI" + std::to_string(seat + 1);
    info.id = seat + 1;
    info.score = totals[seat];
    info.won = 0;
    info.lost = 0;
    for (const pgn::GameRecord& record : series.games) {
      if (record.folded || record.declarer != seat) continue;
      record.declarer_won ? ++info.won : ++info.lost;
    }
  }
  return series;
}

TableSet LearnAllQuestions(const std::vector<Deal>& deals,
                           const std::vector<pgn::GameRecord>& played,
                           const TableSet* bias, uint64_t weight,
                           uint64_t confidence_threshold) {
  TableSet result;
  for (int i = 0; i < kNumQuestions; ++i) {
    const Question q = static_cast<Question>(i);
    const WinningTable* bias_table = bias != nullptr ? &bias->table(q) : nullptr;
    WinningTable table = LearnQuestion(q, deals, played, bias_table, weight);
    table.set_confidence_threshold(confidence_threshold);
    result.Set(q, std::move(table));
  }
  return result;
}

std::vector<BootstrapRun> Bootstrap(const BootstrapOptions& options) {
  if (options.iterations < 1) {
    throw std::invalid_argument("bootstrap needs at least one iteration");
  }
  namespace fs = std::filesystem;
  fs::create_directories(options.out_dir);
  const int workers = options.run.EffectiveWorkers();

  TableSet tables;  // zero-learning start: empty foregrounds, neutral prior
  DealGenerator generator(options.deal_seed, 0);
  std::vector<BootstrapRun> runs;

  for (int iteration = 1; iteration <= options.iterations; ++iteration) {
    char suffix[16];
    std::snprintf(suffix, sizeof(suffix), "%03d", iteration);
    std::vector<Deal> deals;
    deals.reserve(options.deals_per_iteration);
    for (uint64_t i = 0; i < options.deals_per_iteration; ++i) {
      deals.push_back(generator.Next());
    }
    DealFileHeader header;
    header.seed = options.deal_seed;
    header.first_id = deals.empty() ? 0 : deals.front().id;
    WriteDealFile(options.out_dir + "/deals_" + suffix + ".skd", header,
                  deals);

    pgn::Series corpus = RunSelfplay(deals, tables, options.run.policy,
                                     PlayMode::kTablePlay, workers,
                                     "Bootstrap iteration " + std::string(suffix));
    pgn::WriteSeriesFile(corpus,
                         options.out_dir + "/corpus_" + suffix + ".pgn");

    std::vector<pgn::GameRecord> played;
    played.reserve(corpus.games.size());
    for (const pgn::GameRecord& r : corpus.games) {
      if (!r.folded) played.push_back(r);
    }

    tables = LearnAllQuestions(deals, played, &tables,
                               options.run.corpus_weight,
                               options.run.confidence_threshold);
    const std::string tables_dir =
        options.out_dir + "/tables_" + suffix;
    tables.PublishAtomically(tables_dir);

    BootstrapRun run;
    run.iteration = iteration;
    run.deals = deals.size();
    run.played = played.size();
    run.folded = corpus.games.size() - played.size();
    run.tables_dir = tables_dir;
    run.seeger_totals = ScoreCorpus(corpus.games);
    if (options.evaluate) {
      const EvalReport report = Evaluate(corpus.games, workers);
      run.accuracy = report.Accuracy();
      run.true_positive_rate = report.TruePositiveRate();
      run.false_negative_rate = report.FalseNegativeRate();
      run.winning_percentage = report.WinningPercentage();
      for (int g = 0; g < kNumGameGroups; ++g) {
        run.group_accuracy[g] =
            report.GroupAccuracy(static_cast<GameGroup>(g));
      }
    }
    runs.push_back(run);
  }
  WriteRunsCsv(runs, options.out_dir + "/runs.csv");
  WritePlotSeries(runs, options.out_dir + "/plots");
  return runs;
}

namespace {
constexpr const char* kCsvHeader =
    "iteration,deals,played,folded,accuracy,true_positive_rate,"
    "false_negative_rate,winning_percentage,accuracy_suit,accuracy_grand,"
    "accuracy_null_low,accuracy_null_high,seeger_0,seeger_1,seeger_2,"
    "tables_dir";

std::string FormatDouble(double v) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}
}  // namespace

void WriteRunsCsv(const std::vector<BootstrapRun>& runs,
                  const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write: " + path);
  out << kCsvHeader << '\n';
  for (const BootstrapRun& r : runs) {
    out << r.iteration << ',' << r.deals << ',' << r.played << ',' << r.folded
        << ',' << FormatDouble(r.accuracy) << ','
        << FormatDouble(r.true_positive_rate) << ','
        << FormatDouble(r.false_negative_rate) << ','
        << FormatDouble(r.winning_percentage);
    for (double g : r.group_accuracy) out << ',' << FormatDouble(g);
    for (int64_t s : r.seeger_totals) out << ',' << s;
    out << ',' << r.tables_dir << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::vector<BootstrapRun> ReadRunsCsv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw std::runtime_error("unexpected csv header in " + path);
  }
  std::vector<BootstrapRun> runs;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != 16) {
      throw std::runtime_error("bad csv row: " + line);
    }
    BootstrapRun r;
    r.iteration = std::stoi(cells[0]);
    r.deals = std::stoull(cells[1]);
    r.played = std::stoull(cells[2]);
    r.folded = std::stoull(cells[3]);
    r.accuracy = std::strtod(cells[4].c_str(), nullptr);
    r.true_positive_rate = std::strtod(cells[5].c_str(), nullptr);
    r.false_negative_rate = std::strtod(cells[6].c_str(), nullptr);
    r.winning_percentage = std::strtod(cells[7].c_str(), nullptr);
    for (int g = 0; g < kNumGameGroups; ++g) {
      r.group_accuracy[g] = std::strtod(cells[8 + g].c_str(), nullptr);
    }
    for (int s = 0; s < kNumPlayers; ++s) {
      r.seeger_totals[s] = std::stoll(cells[12 + s]);
    }
    r.tables_dir = cells[15];
    runs.push_back(r);
  }
  return runs;
}

void WritePlotSeries(const std::vector<BootstrapRun>& runs,
                     const std::string& dir) {
  std::filesystem::create_directories(dir);
  const std::array<std::pair<const char*, double BootstrapRun::*>, 4> metrics =
      {{{"accuracy", &BootstrapRun::accuracy},
        {"true_positive_rate", &BootstrapRun::true_positive_rate},
        {"false_negative_rate", &BootstrapRun::false_negative_rate},
        {"winning_percentage", &BootstrapRun::winning_percentage}}};
  for (const auto& [name, member] : metrics) {
    std::ofstream out(dir + "/" + name + ".dat");
    if (!out) throw std::runtime_error("cannot write plot series");
    for (const BootstrapRun& r : runs) {
      out << r.iteration << ' ' << FormatDouble(r.*member) << '\n';
    }
  }
}

VersusResult Versus(const std::vector<Deal>& deals,
                    const std::array<const TableSet*, kNumPlayers>& seat_tables,
                    const PolicyConfig& config, int workers) {
  const std::vector<pgn::GameRecord> records =
      PlayDeals(deals, seat_tables, config, PlayMode::kTablePlay, workers);
  VersusResult result;
  const std::array<int64_t, kNumPlayers> totals = ScoreCorpus(records);
  result.score = totals;
  for (const pgn::GameRecord& r : records) {
    if (r.folded) {
      ++result.folded;
      continue;
    }
    r.declarer_won ? ++result.won[r.declarer] : ++result.lost[r.declarer];
  }
  return result;
}

}  // namespace skat

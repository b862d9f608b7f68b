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

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "skat/cards.h"
#include "skat/config.h"
#include "skat/features.h"
#include "skat/orchestrator.h"
#include "skat/pgn.h"
#include "skat/players.h"
#include "skat/solver.h"
#include "skat/tables.h"

namespace {

using namespace skat;

struct ConfigCli {
  std::string config_file;
  std::optional<uint64_t> seed;
  std::optional<int> workers;
  std::optional<double> bid_threshold;
  std::optional<int> world_count;
  std::optional<int> endgame_trigger;

  void Register(CLI::App* cmd) {
    cmd->add_option("--config", config_file, "key=value config file");
    cmd->add_option("--seed", seed, "play seed (per game: seed xor deal id)");
    cmd->add_option("--workers", workers,
                    "worker threads (SKAT_WORKERS overrides)");
    cmd->add_option("--bid-threshold", bid_threshold,
                    "table probability needed to bid");
    cmd->add_option("--world-count", world_count, "sampled worlds per move");
    cmd->add_option("--endgame-trigger", endgame_trigger,
                    "cards per hand for exhaustive endgame worlds");
  }

  RunConfig Resolve() const {
    RunConfig run;
    if (!config_file.empty()) run = LoadConfigFile(config_file);
    if (seed) run.policy.seed = *seed;
    if (workers) run.workers = *workers;
    if (bid_threshold) run.policy.bid_threshold = *bid_threshold;
    if (world_count) run.policy.world_count = *world_count;
    if (endgame_trigger) run.policy.endgame_trigger = *endgame_trigger;
    run.policy.Validate();
    return run;
  }
};

void PrintEvalReport(const EvalReport& report) {
  std::printf("%-10s %3s %3s %10s %10s %8s %8s\n", "Game", "OCS", "AI",
              "Count", "Total", "%Games", "Acc");
  const int64_t total = report.TotalPlayed();
  for (int g = 0; g < kNumGameGroups; ++g) {
    const GameGroup group = static_cast<GameGroup>(g);
    for (int ocs = 0; ocs < 2; ++ocs) {
      for (int actual = 0; actual < 2; ++actual) {
        const int64_t count = report.counts[g][ocs][actual];
        if (ocs == 1 && actual == 1) {
          const int64_t group_total = report.GroupTotal(group);
          const double share =
              total == 0 ? 0.0 : 100.0 * group_total / total;
          std::printf("%-10s %3d %3d %10lld %10lld %7.1f%% %7.1f%%\n",
                      GameGroupName(group), ocs, actual,
                      static_cast<long long>(count),
                      static_cast<long long>(group_total), share,
                      100.0 * report.GroupAccuracy(group));
        } else {
          std::printf("%-10s %3d %3d %10lld\n", GameGroupName(group), ocs,
                      actual, static_cast<long long>(count));
        }
      }
    }
  }
  std::printf("%-10s %19s %10lld\n", "Total", "", static_cast<long long>(total));
  std::printf("%-10s %19s %10lld\n", "Folded", "",
              static_cast<long long>(report.folded));
  std::printf("accuracy %.4f  tp_rate %.4f  fn_rate %.4f  winning %.4f\n",
              report.Accuracy(), report.TruePositiveRate(),
              report.FalseNegativeRate(), report.WinningPercentage());
}

TableSet LoadTablesArg(const std::string& dir, bool zero_learning,
                       uint64_t confidence) {
  if (zero_learning) return TableSet();
  if (dir.empty()) {
    throw std::runtime_error(
        "no tables directory given; pass --tables DIR or --zero-learning");
  }
  return TableSet::Load(dir, confidence);
}

// Schema-free merge: lines are feature tuples plus won/games/prob, merged
// per tuple. Field arity is taken from the first line and enforced.
void MergeTableFiles(const std::string& a, const std::string& b,
                     const std::string& out_path) {
  std::map<std::vector<int64_t>, std::pair<uint64_t, uint64_t>> merged;
  int arity = -1;
  for (const std::string& path : {a, b}) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::string line;
    int line_number = 0;
    while (std::getline(in, line)) {
      ++line_number;
      std::istringstream parts(line);
      std::vector<double> values;
      double v;
      while (parts >> v) values.push_back(v);
      if (values.empty()) continue;
      if (values.size() < 4) {
        throw std::runtime_error(path + ":" + std::to_string(line_number) +
                                 ": too few fields");
      }
      const int k = static_cast<int>(values.size()) - 3;
      if (arity < 0) arity = k;
      if (k != arity) {
        throw std::runtime_error(path + ":" + std::to_string(line_number) +
                                 ": field count differs between tables");
      }
      std::vector<int64_t> features(arity);
      for (int i = 0; i < arity; ++i) {
        features[i] = static_cast<int64_t>(values[i]);
      }
      const uint64_t won = static_cast<uint64_t>(values[arity]);
      const uint64_t games = static_cast<uint64_t>(values[arity + 1]);
      if (won > games || games == 0) {
        throw std::runtime_error(path + ":" + std::to_string(line_number) +
                                 ": invalid counts");
      }
      auto& cell = merged[features];
      cell.first += won;
      cell.second += games;
    }
  }
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot write: " + out_path);
  char prob[32];
  for (const auto& [features, cell] : merged) {
    for (int64_t f : features) out << f << ' ';
    std::snprintf(prob, sizeof(prob), "%.6f",
                  static_cast<double>(cell.first) / cell.second);
    out << cell.first << ' ' << cell.second << ' ' << prob << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Skat engine with self-play table learning"};
  app.require_subcommand(1);

  // dealgen
  auto* dealgen = app.add_subcommand("dealgen", "generate a binary deal file");
  uint64_t dg_seed = 1, dg_count = 0, dg_first = 0;
  std::string dg_out;
  dealgen->add_option("--seed", dg_seed, "generator seed")->required();
  dealgen->add_option("--count", dg_count, "number of deals")->required();
  dealgen->add_option("--out", dg_out, "output file")->required();
  dealgen->add_option("--first-id", dg_first, "id of the first deal");
  dealgen->callback([&] {
    DealFileHeader header;
    header.seed = dg_seed;
    header.first_id = dg_first;
    WriteDealFile(dg_out, header, GenerateDeals(dg_seed, dg_count, dg_first));
    std::printf("wrote %llu deals to %s\n",
                static_cast<unsigned long long>(dg_count), dg_out.c_str());
  });

  // selfplay
  auto* selfplay = app.add_subcommand("selfplay", "play deals to a corpus");
  std::string sp_deals, sp_tables, sp_out, sp_event = "Selfplay";
  bool sp_zero = false, sp_random = false;
  ConfigCli sp_config;
  selfplay->add_option("--deals", sp_deals, "deal file")->required();
  selfplay->add_option("--tables", sp_tables, "tables directory");
  selfplay->add_option("--out", sp_out, "output corpus")->required();
  selfplay->add_option("--event", sp_event, "series event name");
  selfplay->add_flag("--zero-learning", sp_zero,
                     "play with empty tables and the neutral prior");
  selfplay->add_flag("--random-play", sp_random,
                     "random-legal-move baseline (bidding stays table-driven)");
  sp_config.Register(selfplay);
  selfplay->callback([&] {
    const RunConfig run = sp_config.Resolve();
    const TableSet tables =
        LoadTablesArg(sp_tables, sp_zero, run.confidence_threshold);
    const std::vector<Deal> deals = ReadDealFile(sp_deals);
    const pgn::Series corpus = RunSelfplay(
        deals, tables, run.policy,
        sp_random ? PlayMode::kRandomPlay : PlayMode::kTablePlay,
        run.EffectiveWorkers(), sp_event);
    pgn::WriteSeriesFile(corpus, sp_out);
    std::printf("played %zu deals -> %s\n", deals.size(), sp_out.c_str());
  });

  // tablegen
  auto* tablegen = app.add_subcommand(
      "tablegen", "build or update a winning table from a corpus");
  std::string tg_deals, tg_games, tg_question, tg_bias, tg_out;
  uint64_t tg_weight = 1, tg_threshold = kDefaultConfidenceThreshold;
  tablegen->add_option("--deals", tg_deals, "deal file")->required();
  tablegen->add_option("--games", tg_games, "played games corpus")->required();
  tablegen->add_option("--question", tg_question,
                       "declarer_suit|declarer_grand|null_per_suit|"
                       "opening_suit|opening_grand")
      ->required();
  tablegen->add_option("--bias", tg_bias, "old table file used as bias");
  tablegen->add_option("--out", tg_out, "output table file")->required();
  tablegen->add_option("--weight", tg_weight, "per-corpus weight multiplier");
  tablegen->add_option("--threshold", tg_threshold, "confidence threshold");
  tablegen->callback([&] {
    const auto question = QuestionFromName(tg_question);
    if (!question) {
      throw std::runtime_error("unknown question: " + tg_question);
    }
    const std::vector<Deal> deals = ReadDealFile(tg_deals);
    const pgn::Series corpus = pgn::ReadSeriesFile(tg_games);
    std::vector<pgn::GameRecord> played;
    for (const pgn::GameRecord& r : corpus.games) {
      if (!r.folded) played.push_back(r);
    }
    std::optional<WinningTable> bias;
    if (!tg_bias.empty()) {
      std::ifstream in(tg_bias);
      if (!in) throw std::runtime_error("cannot open bias: " + tg_bias);
      bias = WinningTable::Read(in, *question, SchemaFor(*question),
                                tg_threshold);
    }
    WinningTable table =
        LearnQuestion(*question, deals, played,
                      bias ? &*bias : nullptr, tg_weight);
    std::ofstream out(tg_out);
    if (!out) throw std::runtime_error("cannot write: " + tg_out);
    table.Print(out);
    std::printf("%s: %zu buckets, %llu games\n", tg_out.c_str(), table.size(),
                static_cast<unsigned long long>(table.TotalGames()));
  });

  // tablemerge
  auto* tablemerge =
      app.add_subcommand("tablemerge", "merge two table files per bucket");
  std::vector<std::string> tm_inputs;
  std::string tm_out;
  tablemerge->add_option("inputs", tm_inputs, "two table files")
      ->expected(2)
      ->required();
  tablemerge->add_option("--out", tm_out, "merged output")->required();
  tablemerge->callback([&] {
    MergeTableFiles(tm_inputs[0], tm_inputs[1], tm_out);
    std::printf("merged %s + %s -> %s\n", tm_inputs[0].c_str(),
                tm_inputs[1].c_str(), tm_out.c_str());
  });

  // eval
  auto* eval = app.add_subcommand(
      "eval", "open-card solver verdicts vs recorded outcomes");
  std::string ev_pgn, ev_tables;
  ConfigCli ev_config;
  eval->add_option("--pgn", ev_pgn, "corpus to evaluate")->required();
  eval->add_option("--tables", ev_tables,
                   "tables the corpus was played with (report label only)");
  ev_config.Register(eval);
  eval->callback([&] {
    const RunConfig run = ev_config.Resolve();
    const pgn::Series corpus = pgn::ReadSeriesFile(ev_pgn);
    const EvalReport report =
        Evaluate(corpus.games, run.EffectiveWorkers());
    if (!ev_tables.empty()) std::printf("tables: %s\n", ev_tables.c_str());
    PrintEvalReport(report);
  });

  // bootstrap
  auto* bootstrap = app.add_subcommand(
      "bootstrap", "self-play, relearn tables, evaluate, repeat");
  BootstrapOptions bo;
  bool bs_no_eval = false;
  ConfigCli bs_config;
  bootstrap->add_option("--iterations", bo.iterations, "iterations")
      ->required();
  bootstrap->add_option("--deals-per-iter", bo.deals_per_iteration,
                        "deals per iteration")
      ->required();
  bootstrap->add_option("--deal-seed", bo.deal_seed, "deal generator seed");
  bootstrap->add_option("--out", bo.out_dir, "run directory")->required();
  bootstrap->add_flag("--no-eval", bs_no_eval, "skip solver evaluation");
  bs_config.Register(bootstrap);
  bootstrap->callback([&] {
    bo.run = bs_config.Resolve();
    bo.evaluate = !bs_no_eval;
    const std::vector<BootstrapRun> runs = Bootstrap(bo);
    for (const BootstrapRun& r : runs) {
      std::printf(
          "iter %d: played %llu folded %llu accuracy %.4f winning %.4f\n",
          r.iteration, static_cast<unsigned long long>(r.played),
          static_cast<unsigned long long>(r.folded), r.accuracy,
          r.winning_percentage);
    }
  });

  // versus
  auto* versus = app.add_subcommand(
      "versus", "head-to-head bots with and without learned tables");
  std::string vs_plus, vs_minus, vs_seating = "2:1";
  uint64_t vs_count = 1000, vs_deal_seed = 1;
  ConfigCli vs_config;
  versus->add_option("--tables-plus", vs_plus, "learned tables directory")
      ->required();
  versus->add_option("--tables-minus", vs_minus,
                     "tables for the other side (default: empty tables)");
  versus->add_option("--seating", vs_seating, "2:1 or 1:2");
  versus->add_option("--deals-count", vs_count, "number of fixed deals");
  versus->add_option("--deal-seed", vs_deal_seed, "deal generator seed");
  vs_config.Register(versus);
  versus->callback([&] {
    const RunConfig run = vs_config.Resolve();
    const TableSet plus = TableSet::Load(vs_plus, run.confidence_threshold);
    const TableSet minus =
        vs_minus.empty() ? TableSet()
                         : TableSet::Load(vs_minus, run.confidence_threshold);
    std::array<const TableSet*, kNumPlayers> seats;
    if (vs_seating == "2:1") {
      seats = {&plus, &plus, &minus};
    } else if (vs_seating == "1:2") {
      seats = {&plus, &minus, &minus};
    } else {
      throw std::runtime_error("seating must be 2:1 or 1:2");
    }
    const std::vector<Deal> deals = GenerateDeals(vs_deal_seed, vs_count);
    const VersusResult result =
        Versus(deals, seats, run.policy, run.EffectiveWorkers());
    std::printf("seating %s on %llu deals (folded %llu)\n",
                vs_seating.c_str(), static_cast<unsigned long long>(vs_count),
                static_cast<unsigned long long>(result.folded));
    for (int seat = 0; seat < kNumPlayers; ++seat) {
      const bool with = vs_seating == "2:1" ? seat < 2 : seat == 0;
      std::printf("seat %d (%s): won %lld lost %lld score %lld\n", seat,
                  with ? "+OL" : "-OL",
                  static_cast<long long>(result.won[seat]),
                  static_cast<long long>(result.lost[seat]),
                  static_cast<long long>(result.score[seat]));
    }
  });

  // solve
  auto* solve = app.add_subcommand("solve", "open-card solve one record");
  std::string sv_pgn;
  uint64_t sv_id = 0;
  solve->add_option("--pgn", sv_pgn, "corpus file")->required();
  solve->add_option("--id", sv_id, "game id")->required();
  solve->callback([&] {
    const pgn::Series corpus = pgn::ReadSeriesFile(sv_pgn);
    for (const pgn::GameRecord& record : corpus.games) {
      if (record.id != sv_id) continue;
      OpenSolver solver;
      const SolverVerdict verdict = SolveRecord(record, solver);
      std::printf("game %llu (%s): declarer_can_win %d best_eyes %d",
                  static_cast<unsigned long long>(sv_id),
                  record.Type().ToString().c_str(),
                  verdict.declarer_can_win ? 1 : 0, verdict.best_eyes);
      if (!verdict.principal_variation.empty()) {
        std::printf(" best_move %s",
                    verdict.principal_variation.front().ToString().c_str());
      }
      std::printf("\n");
      return;
    }
    throw std::runtime_error("no record with id " + std::to_string(sv_id));
  });

  // pgn validate | split
  auto* pgn_cmd = app.add_subcommand("pgn", "corpus utilities");
  pgn_cmd->require_subcommand(1);
  auto* validate = pgn_cmd->add_subcommand("validate", "check a corpus file");
  std::string pv_file;
  validate->add_option("file", pv_file, "corpus file")->required();
  validate->callback([&] {
    const pgn::Series corpus = pgn::ReadSeriesFile(pv_file);
    std::printf("%s: %zu games, header ok\n", pv_file.c_str(),
                corpus.games.size());
  });
  auto* split = pgn_cmd->add_subcommand(
      "split", "split a corpus into deals and played games");
  std::string ps_in, ps_deals, ps_games;
  split->add_option("--in", ps_in, "corpus file")->required();
  split->add_option("--deals", ps_deals, "output deal file")->required();
  split->add_option("--games", ps_games, "output played-games corpus")
      ->required();
  split->callback([&] {
    const pgn::Series corpus = pgn::ReadSeriesFile(ps_in);
    const pgn::SplitResult result = pgn::SplitIo(corpus);
    DealFileHeader header;
    header.first_id = result.deals.empty() ? 0 : result.deals.front().id;
    WriteDealFile(ps_deals, header, result.deals);
    pgn::WriteSeriesFile(result.played, ps_games);
    std::printf("%zu deals, %zu played games\n", result.deals.size(),
                result.played.games.size());
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}

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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "test_support.h"

#include "doctest.h"

namespace skat {
namespace {

PolicyConfig FastPolicy() {
  PolicyConfig config;
  config.bid_threshold = 0.45;  // neutral prior plays
  config.world_count = 2;
  config.endgame_trigger = 3;
  config.endgame_world_cap = 128;
  config.seed = 99;
  return config;
}

std::string SeriesText(const pgn::Series& series) {
  std::stringstream out;
  pgn::WriteSeries(series, out);
  return out.str();
}

TEST_CASE("selfplay output does not depend on the worker count") {
  const std::vector<Deal> deals = GenerateDeals(2024, 24);
  TableSet tables;
  const pgn::Series one = RunSelfplay(deals, tables, FastPolicy(),
                                      PlayMode::kTablePlay, 1);
  const pgn::Series four = RunSelfplay(deals, tables, FastPolicy(),
                                       PlayMode::kTablePlay, 4);
  CHECK(SeriesText(one) == SeriesText(four));
  const pgn::Series again = RunSelfplay(deals, tables, FastPolicy(),
                                        PlayMode::kTablePlay, 2);
  CHECK(SeriesText(one) == SeriesText(again));
}

TEST_CASE("evaluation report arithmetic") {
  EvalReport report;
  // Synthetic 2x2 counts 3,1,1,5 in the suit group.
  report.counts[0][0][0] = 3;
  report.counts[0][0][1] = 1;
  report.counts[0][1][0] = 1;
  report.counts[0][1][1] = 5;
  CHECK(report.TotalPlayed() == 10);
  CHECK(report.Accuracy() == doctest::Approx(0.8));
  CHECK(report.TruePositiveRate() == doctest::Approx(5.0 / 6.0));
  CHECK(report.FalseNegativeRate() == doctest::Approx(3.0 / 4.0));
  CHECK(report.WinningPercentage() == doctest::Approx(0.6));
}

TEST_CASE("perfect agreement scores accuracy one") {
  // Evaluate a small self-played corpus and rebuild the report by hand.
  const std::vector<Deal> deals = GenerateDeals(5150, 12);
  TableSet tables;
  const pgn::Series corpus = RunSelfplay(deals, tables, FastPolicy(),
                                         PlayMode::kTablePlay, 2);
  const EvalReport report = Evaluate(corpus.games, 2);
  CHECK(report.folded + report.TotalPlayed() ==
        static_cast<int64_t>(corpus.games.size()));
  // Counts conserve: every played record lands in exactly one cell.
  int64_t played = 0;
  for (const pgn::GameRecord& r : corpus.games) {
    if (!r.folded) ++played;
  }
  CHECK(report.TotalPlayed() == played);

  // A corpus whose outcomes all match the solver scores accuracy 1.
  EvalReport perfect;
  perfect.counts[1][1][1] = 7;
  perfect.counts[2][0][0] = 3;
  CHECK(perfect.Accuracy() == 1.0);
}

TEST_CASE("bootstrap accumulates counts across iterations") {
  const std::string dir = "/tmp/skatlab_bootstrap_test";
  std::filesystem::remove_all(dir);
  BootstrapOptions options;
  options.iterations = 2;
  options.deals_per_iteration = 30;
  options.deal_seed = 11;
  options.run.policy = FastPolicy();
  options.run.workers = 2;
  options.run.confidence_threshold = 4;
  options.out_dir = dir;
  options.evaluate = true;
  const std::vector<BootstrapRun> runs = Bootstrap(options);
  REQUIRE(runs.size() == 2);

  // Table totals equal the non-folded games of both corpora: each played
  // game lands in exactly one declarer-question table (null counts four
  // samples per game).
  const TableSet final_tables = TableSet::Load(runs[1].tables_dir, 4);
  const uint64_t declarer_total =
      final_tables.table(Question::kDeclarerSuit).TotalGames() +
      final_tables.table(Question::kDeclarerGrand).TotalGames() +
      final_tables.table(Question::kNullPerSuit).TotalGames() / 4;
  CHECK(declarer_total == runs[0].played + runs[1].played);

  // CSV roundtrip reproduces the metric values exactly.
  const std::vector<BootstrapRun> reread = ReadRunsCsv(dir + "/runs.csv");
  REQUIRE(reread.size() == runs.size());
  for (size_t i = 0; i < runs.size(); ++i) {
    CHECK(reread[i].iteration == runs[i].iteration);
    CHECK(reread[i].accuracy == runs[i].accuracy);
    CHECK(reread[i].true_positive_rate == runs[i].true_positive_rate);
    CHECK(reread[i].false_negative_rate == runs[i].false_negative_rate);
    CHECK(reread[i].winning_percentage == runs[i].winning_percentage);
    CHECK(reread[i].seeger_totals == runs[i].seeger_totals);
  }

  // Plot series: one line per iteration.
  std::ifstream accuracy(dir + "/plots/accuracy.dat");
  REQUIRE(accuracy.good());
  std::string line;
  int rows = 0;
  while (std::getline(accuracy, line)) {
    if (!line.empty()) ++rows;
  }
  CHECK(rows == 2);
}

TEST_CASE("relearning the same corpus doubles its counts") {
  const std::vector<Deal> deals = GenerateDeals(808, 40);
  TableSet tables;
  const pgn::Series corpus = RunSelfplay(deals, tables, FastPolicy(),
                                         PlayMode::kTablePlay, 2);
  std::vector<pgn::GameRecord> played;
  for (const pgn::GameRecord& r : corpus.games) {
    if (!r.folded) played.push_back(r);
  }
  const TableSet once = LearnAllQuestions(deals, played, nullptr, 1, 4);
  const TableSet twice = LearnAllQuestions(deals, played, &once, 1, 4);
  for (int qi = 0; qi < kNumQuestions; ++qi) {
    const Question q = static_cast<Question>(qi);
    CHECK(twice.table(q).TotalGames() == 2 * once.table(q).TotalGames());
  }
}

TEST_CASE("zero deals leave the tables empty") {
  const std::string dir = "/tmp/skatlab_bootstrap_empty";
  std::filesystem::remove_all(dir);
  BootstrapOptions options;
  options.iterations = 1;
  options.deals_per_iteration = 0;
  options.run.policy = FastPolicy();
  options.run.workers = 1;
  options.out_dir = dir;
  const std::vector<BootstrapRun> runs = Bootstrap(options);
  REQUIRE(runs.size() == 1);
  CHECK(runs[0].played == 0);
  CHECK(runs[0].folded == 0);
  const TableSet tables = TableSet::Load(runs[0].tables_dir);
  for (int qi = 0; qi < kNumQuestions; ++qi) {
    CHECK(tables.table(static_cast<Question>(qi)).Empty());
  }
}

TEST_CASE("corpus scoring uses the recorded game values") {
  pgn::GameRecord won;
  won.game_code = 3;  // diamonds
  won.declarer = 1;
  won.declarer_won = true;
  won.contract_level = 1;  // with one
  pgn::GameRecord lost = won;
  lost.declarer_won = false;
  lost.declarer = 2;
  const std::array<int64_t, 3> totals = ScoreCorpus({won, lost});
  CHECK(totals[1] == 18 + 50 + 40);  // win plus defender bonus from the loss
  CHECK(totals[2] == -(2 * 18 + 50));
  CHECK(totals[0] == 40);
}

TEST_CASE("versus mode reports per-seat outcomes on fixed deals") {
  const std::vector<Deal> deals = GenerateDeals(606, 12);
  TableSet plus;   // both sides empty here; the point is the bookkeeping
  TableSet minus;
  const VersusResult result =
      Versus(deals, {&plus, &plus, &minus}, FastPolicy(), 2);
  int64_t declared = 0;
  for (int seat = 0; seat < kNumPlayers; ++seat) {
    declared += result.won[seat] + result.lost[seat];
  }
  CHECK(declared + static_cast<int64_t>(result.folded) ==
        static_cast<int64_t>(deals.size()));
}

}  // namespace
}  // namespace skat

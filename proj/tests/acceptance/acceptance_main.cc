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
//
// Acceptance suite. Every criterion prints one PASS/FAIL line; the
// process exits nonzero if any executed criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "skat/cards.h"
#include "skat/config.h"
#include "skat/features.h"
#include "skat/orchestrator.h"
#include "skat/pgn.h"
#include "skat/phash.h"
#include "skat/players.h"
#include "skat/rules.h"
#include "skat/solver.h"
#include "skat/tables.h"

#include "test_support.h"

namespace skat {
namespace {

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

bool NextInDomain(const FeatureSchema& schema, FeatureVector& v) {
  for (int i = schema.FieldCount() - 1; i >= 0; --i) {
    if (++v[i] < schema.field(i).domain) return true;
    v[i] = 0;
  }
  return false;
}

FeatureVector RandomVector(const FeatureSchema& schema, std::mt19937_64& rng) {
  FeatureVector v(schema.FieldCount());
  for (int i = 0; i < schema.FieldCount(); ++i) {
    v[i] = static_cast<uint32_t>(rng() % schema.field(i).domain);
  }
  return v;
}

// 1. Exhaustive rank/unrank bijectivity for every schema with a domain of
//    at most 2^20 vectors, in under ten seconds.
Outcome Criterion1() {
  const auto start = Clock::now();
  uint64_t vectors_checked = 0;
  int schemas_checked = 0;
  for (int qi = 0; qi < kNumQuestions; ++qi) {
    const FeatureSchema& schema = SchemaFor(static_cast<Question>(qi));
    if (schema.DomainProduct() > (uint64_t{1} << 20)) continue;
    ++schemas_checked;
    std::vector<bool> seen(schema.Capacity(), false);
    FeatureVector v(schema.FieldCount(), 0);
    do {
      const uint64_t key = schema.Rank(v);
      if (key >= schema.Capacity() || seen[key]) {
        return {false, "duplicate or out-of-range key in " + schema.name()};
      }
      seen[key] = true;
      if (schema.Unrank(key) != v) {
        return {false, "unrank(rank(v)) != v in " + schema.name()};
      }
      ++vectors_checked;
    } while (NextInDomain(schema, v));
  }
  const double elapsed = Seconds(start);
  std::ostringstream detail;
  detail << schemas_checked << " schemas, " << vectors_checked
         << " vectors, " << elapsed << " s";
  return {schemas_checked > 0 && elapsed < 10.0, detail.str()};
}

// 2. Key ordering equals lexicographic ordering on 1e5 random pairs per
//    schema.
Outcome Criterion2() {
  std::mt19937_64 rng(20260810);
  uint64_t pairs = 0;
  for (int qi = 0; qi < kNumQuestions; ++qi) {
    const FeatureSchema& schema = SchemaFor(static_cast<Question>(qi));
    for (int i = 0; i < 100000; ++i) {
      const FeatureVector a = RandomVector(schema, rng);
      const FeatureVector b = RandomVector(schema, rng);
      const int lex = LexCompare(a, b);
      const uint64_t ka = schema.Rank(a);
      const uint64_t kb = schema.Rank(b);
      const int key = ka < kb ? -1 : (ka > kb ? 1 : 0);
      if (lex != key) {
        return {false, "ordering violation in " + schema.name()};
      }
      ++pairs;
    }
  }
  return {true, std::to_string(pairs) + " pairs, zero violations"};
}

// 3. 10,000 random records roundtrip bit-exactly; the published sample
//    line parses to the documented fields.
Outcome Criterion3() {
  std::mt19937_64 rng(31337);
  for (uint64_t id = 0; id < 10000; ++id) {
    const pgn::GameRecord record = test::RandomStructuralRecord(id, rng);
    const std::string line = pgn::FormatGameLine(record);
    const pgn::GameRecord back = pgn::ParseGameLine(line, 1);
    if (!(back == record) || pgn::FormatGameLine(back) != line) {
      return {false, "roundtrip mismatch at id " + std::to_string(id)};
    }
  }
  std::string line = "0 0 2 22 0 22 0 0 0 0 0 0 1 0 -1 87 10 4 6";
  const int h0[10] = {24, 25, 26, 27, 28, 29, 30, 31, 16, 17};
  const int h1[10] = {18, 19, 20, 21, 22, 23, 8, 9, 10, 11};
  const int h2[10] = {0, 1, 2, 3, 4, 5, 6, 7, 12, 13};
  for (int c : h0) line += " " + std::to_string(c);
  for (int c : h1) line += " " + std::to_string(c);
  for (int c : h2) line += " " + std::to_string(c);
  line += " 14 15 12 13 7 24 3 2 21";
  const pgn::GameRecord sample = pgn::ParseGameLine(line, 1);
  const bool fields_ok = sample.declarer == 2 &&
                         sample.bids == std::array<int, 3>{22, 0, 22} &&
                         sample.declarer_won && sample.declarer_eyes == 87;
  if (!fields_ok) return {false, "sample line fields wrong"};
  return {true, "10000 roundtrips, sample line fields verified"};
}

// 4. OuterLearning equals a naive group-by on 10,000 synthetic games with
//    randomized folding, and bias == merge.
Outcome Criterion4() {
  std::mt19937_64 rng(808080);
  std::vector<Deal> deals;
  std::vector<pgn::GameRecord> played;
  std::map<FeatureVector, std::pair<uint64_t, uint64_t>> oracle;
  const Question q = Question::kDeclarerSuit;
  for (uint64_t id = 0; id < 10000; ++id) {
    const pgn::GameRecord record = test::RandomStructuralRecord(id, rng);
    Deal deal;
    deal.id = id;
    deal.forehand = static_cast<int>(id % 3);
    for (int p = 0; p < kNumPlayers; ++p) deal.hands[p] = record.HandSet(p);
    deal.skat = record.SkatTakenSet();
    deals.push_back(deal);
    if (record.folded) continue;  // folded games never reach the output file
    played.push_back(record);
    if (ExcludeFromQuestion(q, deal, record)) continue;
    for (const FeatureVector& v : ExtractForQuestion(q, deal, record)) {
      auto& cell = oracle[v];
      if (record.declarer_won) ++cell.first;
      ++cell.second;
    }
  }
  const WinningTable table = LearnQuestion(q, deals, played, nullptr, 1);
  if (table.size() != oracle.size()) {
    return {false, "bucket count mismatch vs naive group-by"};
  }
  const FeatureSchema& schema = SchemaFor(q);
  for (const auto& [v, cell] : oracle) {
    const TableEntry* entry = table.Find(schema.Rank(v));
    if (entry == nullptr || entry->won != cell.first ||
        entry->games != cell.second) {
      return {false, "count mismatch vs naive group-by"};
    }
  }
  // Bias semantics: learning on top of B equals merging B with learning
  // from scratch.
  std::mt19937_64 rng2(17);
  WinningTable bias(q, schema);
  for (int i = 0; i < 300; ++i) {
    bias.RecordVector(RandomVector(schema, rng2), rng2() % 2 == 0);
  }
  const WinningTable with_bias = LearnQuestion(q, deals, played, &bias, 1);
  if (!(with_bias == MergeTables(bias, table))) {
    return {false, "bias is not exactly count-carrying"};
  }
  std::ostringstream detail;
  detail << played.size() << " played of 10000, " << oracle.size()
         << " buckets equal, bias == merge";
  return {true, detail.str()};
}

// 5. 500 random endgames with at most four cards per hand: the alpha-beta
//    + transposition solver equals plain minimax, inside five minutes.
Outcome Criterion5() {
  const auto start = Clock::now();
  std::mt19937_64 rng(5555);
  OpenSolver solver;
  const std::vector<GameType> types = {
      GameType::SuitGame(Suit::kClubs), GameType::SuitGame(Suit::kSpades),
      GameType::SuitGame(Suit::kHearts), GameType::SuitGame(Suit::kDiamonds),
      GameType::Grand()};
  for (int i = 0; i < 400; ++i) {
    const GameType type = types[rng() % types.size()];
    const int per_hand = 1 + static_cast<int>(rng() % 4);
    const OpenPosition pos = test::RandomEndgame(type, per_hand, rng);
    solver.NewSearch();
    const SolverVerdict verdict = solver.Solve(pos);
    const int oracle = test::OracleBestEyes(pos);
    if (verdict.best_eyes != oracle) {
      return {false, "eyes mismatch vs plain minimax"};
    }
    if (verdict.declarer_can_win != (oracle >= 61)) {
      return {false, "verdict mismatch vs plain minimax"};
    }
  }
  for (int i = 0; i < 100; ++i) {
    OpenPosition pos = test::RandomEndgame(GameType(GameType::kNullCode),
                                           1 + static_cast<int>(rng() % 4),
                                           rng);
    pos.declarer_banked_eyes = 0;
    solver.NewSearch();
    if (solver.DeclarerCanWin(pos) != test::OracleNullAvoid(pos)) {
      return {false, "null verdict mismatch vs plain minimax"};
    }
  }
  const double elapsed = Seconds(start);
  std::ostringstream detail;
  detail << "500 endgames agree, " << elapsed << " s";
  return {elapsed < 300.0, detail.str()};
}

// 6. Median exact solve time for full ten-card deals under ten seconds;
//    report the distribution.
Outcome Criterion6() {
  const std::vector<Deal> deals = GenerateDeals(60606, 25);
  OpenSolver solver;
  std::vector<double> times;
  const std::vector<GameType> types = {
      GameType::SuitGame(Suit::kClubs), GameType::Grand(),
      GameType::SuitGame(Suit::kHearts)};
  for (size_t i = 0; i < deals.size(); ++i) {
    OpenPosition pos;
    pos.type = types[i % types.size()];
    pos.declarer = static_cast<int>(i % 3);
    pos.leader = deals[i].forehand;
    pos.hands = deals[i].hands;
    pos.declarer_banked_eyes = deals[i].skat.TotalEyes();
    const auto start = Clock::now();
    solver.NewSearch();
    (void)solver.Solve(pos);
    times.push_back(Seconds(start));
  }
  std::sort(times.begin(), times.end());
  const double median = times[times.size() / 2];
  std::ostringstream detail;
  detail.precision(4);
  detail << "full-deal exact solves (s): min " << times.front() << " median "
         << median << " p90 " << times[times.size() * 9 / 10] << " max "
         << times.back();
  return {median < 10.0, detail.str()};
}

// 7. Three bootstrap iterations over 10,000 deals each complete in under
//    two hours and beat a random-legal-move baseline on the same deals by
//    at least five accuracy points.
Outcome Criterion7() {
  const auto start = Clock::now();
  const std::string dir = "acceptance_runs/bootstrap";
  std::filesystem::remove_all(dir);

  BootstrapOptions options;
  options.iterations = 3;
  options.deals_per_iteration = 10000;
  options.deal_seed = 424242;
  options.out_dir = dir;
  options.evaluate = true;
  options.run.policy.bid_threshold = 0.45;  // lets the cold start explore
  options.run.policy.world_count = 2;
  options.run.policy.endgame_trigger = 3;
  options.run.policy.endgame_world_cap = 600;
  options.run.policy.seed = 777;
  options.run.confidence_threshold = 32;
  const std::vector<BootstrapRun> runs = Bootstrap(options);

  // Baseline: identical bidding and declaration (the iteration-2 tables),
  // random legal trick play, the same deals as iteration 3.
  const TableSet bidding_tables = TableSet::Load(runs[1].tables_dir, 32);
  std::vector<Deal> iter3_deals =
      GenerateDeals(424242, options.deals_per_iteration * 3);
  iter3_deals.erase(iter3_deals.begin(),
                    iter3_deals.begin() + options.deals_per_iteration * 2);
  const pgn::Series baseline =
      RunSelfplay(iter3_deals, bidding_tables, options.run.policy,
                  PlayMode::kRandomPlay, options.run.EffectiveWorkers(),
                  "Random baseline");
  const EvalReport baseline_report =
      Evaluate(baseline.games, options.run.EffectiveWorkers());

  const double table_accuracy = runs[2].accuracy;
  const double random_accuracy = baseline_report.Accuracy();
  const double elapsed = Seconds(start);
  std::ostringstream detail;
  detail.precision(4);
  detail << "table-driven accuracy " << table_accuracy << " vs random "
         << random_accuracy << " (gap "
         << (table_accuracy - random_accuracy) * 100 << " points), "
         << elapsed << " s";
  const bool pass = table_accuracy - random_accuracy >= 0.05 &&
                    elapsed < 7200.0;
  return {pass, detail.str()};
}

// 8. Null probability equals the direct per-suit product to 1e-12 on 1e4
//    random table configurations; the all-ones case is exactly one.
Outcome Criterion8() {
  std::mt19937_64 rng(88888);
  const GameType null_game(GameType::kNullCode);
  for (int round = 0; round < 10000; ++round) {
    // Random ten-card hand, random variant context, random suit stats.
    std::array<int, kNumCards> deck;
    for (int i = 0; i < kNumCards; ++i) deck[i] = i;
    std::shuffle(deck.begin(), deck.end(), rng);
    CardSet kept;
    for (int i = 0; i < kHandSize; ++i) kept.Add(Card(deck[i]));
    CardSet put;
    put.Add(Card(deck[10]));
    put.Add(Card(deck[11]));
    const bool to_move = rng() % 2 == 0;

    WinningTable table(Question::kNullPerSuit,
                       SchemaFor(Question::kNullPerSuit), 1);
    double expected = 1.0;
    for (int s = 0; s < kNumSuits; ++s) {
      const FeatureVector v = NullSuitVector(kept, put, static_cast<Suit>(s),
                                             null_game, to_move);
      const uint64_t won = rng() % 50;
      const uint64_t games = won + 1 + rng() % 50;
      table.Record(SchemaFor(Question::kNullPerSuit).Rank(v), false,
                   games - won);
      if (won > 0) {
        table.Record(SchemaFor(Question::kNullPerSuit).Rank(v), true, won);
      }
      expected *= static_cast<double>(won) / static_cast<double>(games);
    }
    const LayeredTable layered(table);
    const double got =
        NullWinProbability(kept, put, null_game, to_move, layered);
    if (std::abs(got - expected) > 1e-12) {
      return {false, "product deviates beyond 1e-12"};
    }
  }
  // All-ones case.
  WinningTable ones(Question::kNullPerSuit, SchemaFor(Question::kNullPerSuit),
                    1);
  CardSet kept;
  for (int i = 0; i < kHandSize; ++i) kept.Add(Card(i));
  for (int s = 0; s < kNumSuits; ++s) {
    ones.RecordVector(NullSuitVector(kept, CardSet(), static_cast<Suit>(s),
                                     null_game, false),
                      true);
  }
  const LayeredTable layered(ones);
  if (NullWinProbability(kept, CardSet(), null_game, false, layered) != 1.0) {
    return {false, "all-ones product is not exactly 1"};
  }
  return {true, "10000 random configurations within 1e-12, all-ones exact"};
}

// 9. The general deal-count product at (3, 32) equals the factorial
//    closed form exactly.
Outcome Criterion9() {
  auto factorial = [](int n) {
    BigInt f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
  };
  const BigInt expected = factorial(32) / (factorial(10) * factorial(10) *
                                           factorial(10) * factorial(2));
  const BigInt got = DealCountProduct({.players = 3, .deck_size = 32});
  if (got != expected) return {false, "deal count differs from 32!/(10!^3 2!)"};
  std::ostringstream detail;
  detail << "deal_count(3,32) = " << got.str() << " = 32!/(10!10!10!2!)";
  return {true, detail.str()};
}

// 10. Merge is associative and commutative with identity, exactly, on
//     1000 random pairs/triples.
Outcome Criterion10() {
  std::mt19937_64 rng(101010);
  const Question q = Question::kOpeningGrand;
  const FeatureSchema& schema = SchemaFor(q);
  const WinningTable empty(q, schema);
  auto random_table = [&](int entries) {
    WinningTable t(q, schema);
    for (int i = 0; i < entries; ++i) {
      FeatureVector v = RandomVector(schema, rng);
      const int games = 1 + static_cast<int>(rng() % 9);
      for (int g = 0; g < games; ++g) t.RecordVector(v, rng() % 2 == 0);
    }
    return t;
  };
  for (int i = 0; i < 1000; ++i) {
    const WinningTable a = random_table(8);
    const WinningTable b = random_table(8);
    const WinningTable c = random_table(8);
    if (!(MergeTables(a, empty) == a) || !(MergeTables(empty, a) == a)) {
      return {false, "identity violated"};
    }
    if (!(MergeTables(a, b) == MergeTables(b, a))) {
      return {false, "commutativity violated"};
    }
    if (!(MergeTables(MergeTables(a, b), c) ==
          MergeTables(a, MergeTables(b, c)))) {
      return {false, "associativity violated"};
    }
  }
  return {true, "1000 random pairs/triples, exact count equality"};
}

// 11. Two complete bootstrap runs with identical seeds produce byte-
//     identical corpora, tables and reports.
Outcome Criterion11() {
  auto run_once = [](const std::string& dir) {
    std::filesystem::remove_all(dir);
    BootstrapOptions options;
    options.iterations = 2;
    options.deals_per_iteration = 250;
    options.deal_seed = 1111;
    options.out_dir = dir;
    options.evaluate = true;
    options.run.policy.bid_threshold = 0.45;
    options.run.policy.world_count = 2;
    options.run.policy.endgame_trigger = 3;
    options.run.policy.endgame_world_cap = 400;
    options.run.policy.seed = 31;
    options.run.confidence_threshold = 16;
    return Bootstrap(options);
  };
  const std::string dir_a = "acceptance_runs/determinism_a";
  const std::string dir_b = "acceptance_runs/determinism_b";
  run_once(dir_a);
  run_once(dir_b);

  auto read_file = [](const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
  };
  std::vector<std::string> relative = {"runs.csv"};
  for (int iter = 1; iter <= 2; ++iter) {
    char suffix[8];
    std::snprintf(suffix, sizeof(suffix), "%03d", iter);
    relative.push_back(std::string("deals_") + suffix + ".skd");
    relative.push_back(std::string("corpus_") + suffix + ".pgn");
    for (int qi = 0; qi < kNumQuestions; ++qi) {
      relative.push_back(std::string("tables_") + suffix + "/" +
                         TableFileName(static_cast<Question>(qi)));
    }
  }
  for (const std::string& rel : relative) {
    const std::string a = read_file(dir_a + "/" + rel);
    const std::string b = read_file(dir_b + "/" + rel);
    if (a.empty() || a != b) {
      return {false, "files differ or are empty: " + rel};
    }
  }
  std::ostringstream detail;
  detail << relative.size() << " files byte-identical across two runs";
  return {true, detail.str()};
}

struct Criterion {
  int number;
  const char* name;
  Outcome (*run)();
};

const Criterion kCriteria[] = {
    {1, "hash bijectivity", Criterion1},
    {2, "lexicographic preservation", Criterion2},
    {3, "pgn roundtrip", Criterion3},
    {4, "outer-learning oracle equivalence", Criterion4},
    {5, "solver exactness", Criterion5},
    {6, "solver performance", Criterion6},
    {7, "bootstrap trend vs random baseline", Criterion7},
    {8, "null product formula", Criterion8},
    {9, "deal-count identity", Criterion9},
    {10, "merge algebra", Criterion10},
    {11, "end-to-end determinism", Criterion11},
};

}  // namespace
}  // namespace skat

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      only = std::atoi(argv[i + 1]);
      ++i;
    }
  }
  bool all_pass = true;
  for (const auto& criterion : skat::kCriteria) {
    if (only != 0 && criterion.number != only) continue;
    skat::Outcome outcome;
    try {
      outcome = criterion.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    std::printf("criterion %2d (%s): %s — %s\n", criterion.number,
                criterion.name, outcome.pass ? "PASS" : "FAIL",
                outcome.detail.c_str());
    std::fflush(stdout);
    all_pass = all_pass && outcome.pass;
  }
  return all_pass ? 0 : 1;
}

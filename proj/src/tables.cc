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

#include "skat/tables.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace skat {

WinningTable::WinningTable(Question question, FeatureSchema schema,
                           uint64_t confidence_threshold)
    : question_(question),
      schema_(std::move(schema)),
      confidence_threshold_(confidence_threshold) {}

uint64_t WinningTable::TotalGames() const {
  uint64_t total = 0;
  for (const auto& [key, entry] : entries_) total += entry.games;
  return total;
}

uint64_t WinningTable::TotalWon() const {
  uint64_t total = 0;
  for (const auto& [key, entry] : entries_) total += entry.won;
  return total;
}

void WinningTable::Record(uint64_t key, bool won, uint64_t weight) {
  if (key >= schema_.Capacity()) {
    throw std::invalid_argument("key beyond schema capacity");
  }
  TableEntry& entry = entries_[key];
  entry.games += weight;
  if (won) entry.won += weight;
  entry.prob = static_cast<double>(entry.won) / static_cast<double>(entry.games);
}

void WinningTable::RecordVector(const FeatureVector& v, bool won,
                                uint64_t weight) {
  Record(schema_.Rank(v), won, weight);
}

const TableEntry* WinningTable::Find(uint64_t key) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? nullptr : &it->second;
}

void WinningTable::MergeFrom(const WinningTable& other) {
  if (!(schema_ == other.schema_) || question_ != other.question_) {
    throw std::invalid_argument("cannot merge tables of different schemas");
  }
  for (const auto& [key, entry] : other.entries_) {
    TableEntry& mine = entries_[key];
    mine.won += entry.won;
    mine.games += entry.games;
    mine.prob = static_cast<double>(mine.won) / static_cast<double>(mine.games);
  }
}

WinningTable MergeTables(const WinningTable& a, const WinningTable& b) {
  WinningTable result = a;
  result.MergeFrom(b);
  return result;
}

void WinningTable::Print(std::ostream& out) const {
  char prob_text[32];
  for (const auto& [key, entry] : entries_) {
    const FeatureVector features = schema_.Unrank(key);
    for (uint32_t f : features) out << f << ' ';
    std::snprintf(prob_text, sizeof(prob_text), "%.6f", entry.prob);
    out << entry.won << ' ' << entry.games << ' ' << prob_text << '\n';
  }
}

WinningTable WinningTable::Read(std::istream& in, Question question,
                                const FeatureSchema& schema,
                                uint64_t confidence_threshold) {
  WinningTable table(question, schema, confidence_threshold);
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    std::istringstream parts(line);
    FeatureVector features(schema.FieldCount());
    bool blank = true;
    for (int i = 0; i < schema.FieldCount(); ++i) {
      int64_t value;
      if (!(parts >> value)) {
        if (i == 0) {
          blank = true;
          break;
        }
        throw std::runtime_error("table line " + std::to_string(line_number) +
                                 ": truncated features");
      }
      blank = false;
      if (value < 0 || static_cast<uint64_t>(value) >= schema.field(i).domain) {
        throw std::runtime_error("table line " + std::to_string(line_number) +
                                 ": feature " + schema.field(i).name +
                                 " out of domain");
      }
      features[i] = static_cast<uint32_t>(value);
    }
    if (blank) continue;
    int64_t won, games;
    double prob;
    if (!(parts >> won >> games >> prob)) {
      throw std::runtime_error("table line " + std::to_string(line_number) +
                               ": expected 'won games prob'");
    }
    if (won < 0 || games < 1 || won > games) {
      throw std::runtime_error("table line " + std::to_string(line_number) +
                               ": invalid counts won=" + std::to_string(won) +
                               " games=" + std::to_string(games));
    }
    const double expected =
        static_cast<double>(won) / static_cast<double>(games);
    if (std::abs(prob - expected) > 5e-7 + 1e-12) {
      throw std::runtime_error("table line " + std::to_string(line_number) +
                               ": probability does not match won/games");
    }
    const uint64_t key = schema.Rank(features);
    auto [it, inserted] = table.entries_.emplace(key, TableEntry{});
    if (!inserted) {
      throw std::runtime_error("table line " + std::to_string(line_number) +
                               ": duplicate feature vector");
    }
    it->second.won = static_cast<uint64_t>(won);
    it->second.games = static_cast<uint64_t>(games);
    it->second.prob = expected;
  }
  return table;
}

LayeredTable::LayeredTable(WinningTable foreground, int fields_dropped)
    : foreground_(std::move(foreground)), fields_dropped_(fields_dropped) {
  const FeatureSchema bg_schema = foreground_.schema().Prefix(fields_dropped_);
  background_ = WinningTable(foreground_.question(), bg_schema,
                             foreground_.confidence_threshold());
  const int keep = bg_schema.FieldCount();
  for (const auto& [key, entry] : foreground_) {
    FeatureVector features = foreground_.schema().Unrank(key);
    features.resize(keep);
    const uint64_t bg_key = bg_schema.Rank(features);
    if (entry.games > entry.won) {
      background_.Record(bg_key, false, entry.games - entry.won);
    }
    if (entry.won > 0) {
      background_.Record(bg_key, true, entry.won);
    }
  }
}

LayeredTable::LookupResult LayeredTable::LookupDetailed(
    const FeatureVector& features) const {
  LookupResult result;
  if (!foreground_.schema().InDomain(features)) {
    throw std::invalid_argument("lookup vector out of domain");
  }
  const TableEntry* fg = foreground_.Find(foreground_.schema().Rank(features));
  if (fg != nullptr && fg->games >= foreground_.confidence_threshold()) {
    result.prob = fg->prob;
    result.source = Source::kForeground;
    return result;
  }
  FeatureVector reduced = features;
  reduced.resize(background_.schema().FieldCount());
  const TableEntry* bg = background_.Find(background_.schema().Rank(reduced));
  if (bg != nullptr) {
    result.prob = bg->prob;
    result.source = Source::kBackground;
    return result;
  }
  result.prob = kNeutralPrior;
  result.source = Source::kNeutral;
  return result;
}

WinningTable OuterLearning(DealSource& deals, RecordSource& games,
                           const ExcludeFn& exclude, const ExtractFn& extract,
                           Question question, const FeatureSchema& schema,
                           const WinningTable* bias, uint64_t weight,
                           OuterLearningStats* stats) {
  WinningTable table = bias != nullptr
                           ? *bias
                           : WinningTable(question, schema);
  if (bias != nullptr &&
      (!(bias->schema() == schema) || bias->question() != question)) {
    throw std::invalid_argument("bias table schema mismatch");
  }
  uint64_t offset = 0;  // deals skipped because their game was not played
  std::optional<Deal> deal = deals.Next();
  uint64_t last_deal_id = 0;
  uint64_t last_game_id = 0;
  bool first_deal = true;
  bool first_game = true;
  OuterLearningStats local;
  while (std::optional<pgn::GameRecord> game = games.Next()) {
    if (!first_game && game->id <= last_game_id) {
      throw std::runtime_error("games not id-ascending");
    }
    last_game_id = game->id;
    first_game = false;
    // Advance the deal stream until the ids line up again.
    while (deal.has_value() && deal->id != game->id) {
      if (!first_deal && deal->id <= last_deal_id) {
        throw std::runtime_error("deals not id-ascending");
      }
      if (deal->id > game->id) {
        throw std::runtime_error("played game " + std::to_string(game->id) +
                                 " has no deal");
      }
      last_deal_id = deal->id;
      first_deal = false;
      ++offset;
      deal = deals.Next();
    }
    if (!deal.has_value()) {
      throw std::runtime_error("played game " + std::to_string(game->id) +
                               " has no deal");
    }
    const Deal matched_deal = *deal;
    last_deal_id = matched_deal.id;
    first_deal = false;
    deal = deals.Next();  // a deal pairs with at most one played game
    ++local.matched;
    if (exclude && exclude(matched_deal, *game)) {
      ++local.excluded;
      continue;
    }
    const bool won = game->declarer_won;
    for (const FeatureVector& features : extract(matched_deal, *game)) {
      table.RecordVector(features, won, weight);
    }
  }
  local.offset = offset;
  if (stats != nullptr) *stats = local;
  return table;
}

WinningTable LearnQuestion(Question q, const std::vector<Deal>& deals,
                           const std::vector<pgn::GameRecord>& games,
                           const WinningTable* bias, uint64_t weight) {
  VectorDealSource deal_source(deals);
  VectorRecordSource record_source(games);
  const ExcludeFn exclude = [q](const Deal& d, const pgn::GameRecord& r) {
    return ExcludeFromQuestion(q, d, r);
  };
  const ExtractFn extract = [q](const Deal& d, const pgn::GameRecord& r) {
    return ExtractForQuestion(q, d, r);
  };
  return OuterLearning(deal_source, record_source, exclude, extract, q,
                       SchemaFor(q), bias, weight);
}

TableSet::TableSet() {
  tables_.reserve(kNumQuestions);
  layered_.resize(kNumQuestions);
  for (int i = 0; i < kNumQuestions; ++i) {
    const Question q = static_cast<Question>(i);
    tables_.emplace_back(q, SchemaFor(q));
    layered_[i] = LayeredTable(tables_[i]);
  }
}

void TableSet::Set(Question q, WinningTable table) {
  const int i = static_cast<int>(q);
  tables_[i] = std::move(table);
  layered_[i] = LayeredTable(tables_[i]);
}

std::string TableFileName(Question q) {
  return std::string(QuestionName(q)) + ".tbl";
}

TableSet TableSet::Load(const std::string& dir,
                        uint64_t confidence_threshold) {
  TableSet set;
  for (int i = 0; i < kNumQuestions; ++i) {
    const Question q = static_cast<Question>(i);
    const std::string path = dir + "/" + TableFileName(q);
    std::ifstream in(path);
    if (!in) {
      throw std::runtime_error("missing table file: " + path);
    }
    set.Set(q, WinningTable::Read(in, q, SchemaFor(q), confidence_threshold));
  }
  return set;
}

void TableSet::Save(const std::string& dir) const {
  std::filesystem::create_directories(dir);
  for (int i = 0; i < kNumQuestions; ++i) {
    const Question q = static_cast<Question>(i);
    const std::string path = dir + "/" + TableFileName(q);
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write: " + path);
    tables_[i].Print(out);
    if (!out) throw std::runtime_error("write failed: " + path);
  }
}

void TableSet::PublishAtomically(const std::string& dir) const {
  const std::string scratch = dir + ".tmp";
  std::filesystem::remove_all(scratch);
  Save(scratch);
  std::filesystem::remove_all(dir);
  std::filesystem::rename(scratch, dir);
}

}  // namespace skat

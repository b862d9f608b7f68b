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

#ifndef SKATLAB_TABLES_H_
#define SKATLAB_TABLES_H_

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "skat/cards.h"
#include "skat/features.h"
#include "skat/pgn.h"
#include "skat/phash.h"

namespace skat {

// Probability assumed for a bucket nobody has trained yet. Only reachable
// before any learning; lookups report when they fall through to it.
inline constexpr double kNeutralPrior = 0.5;

// Games observed for a bucket must reach this count before the bucket
// participates in lookups.
inline constexpr uint64_t kDefaultConfidenceThreshold = 32;

struct TableEntry {
  uint64_t won = 0;
  uint64_t games = 0;
  double prob = 0.0;  // always won / games, recomputed on every update

  bool operator==(const TableEntry& o) const {
    return won == o.won && games == o.games;
  }
};

// Bucket statistics keyed by the schema's hash key. Iteration order is
// ascending key, which by construction is the lexicographic feature order.
class WinningTable {
 public:
  WinningTable() = default;
  WinningTable(Question question, FeatureSchema schema,
               uint64_t confidence_threshold = kDefaultConfidenceThreshold);

  Question question() const { return question_; }
  const FeatureSchema& schema() const { return schema_; }
  uint64_t confidence_threshold() const { return confidence_threshold_; }
  void set_confidence_threshold(uint64_t t) { confidence_threshold_ = t; }

  size_t size() const { return entries_.size(); }
  bool Empty() const { return entries_.empty(); }
  uint64_t TotalGames() const;
  uint64_t TotalWon() const;

  // Adds `weight` games, `won ? weight : 0` of them won.
  void Record(uint64_t key, bool won, uint64_t weight = 1);
  void RecordVector(const FeatureVector& v, bool won, uint64_t weight = 1);

  const TableEntry* Find(uint64_t key) const;

  // Per-key count addition; requires the same question and schema.
  void MergeFrom(const WinningTable& other);

  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  // One line per entry in ascending key order:
  // "f_1 ... f_k won games prob", prob with six decimals.
  void Print(std::ostream& out) const;
  static WinningTable Read(std::istream& in, Question question,
                           const FeatureSchema& schema,
                           uint64_t confidence_threshold =
                               kDefaultConfidenceThreshold);

  bool operator==(const WinningTable& o) const {
    return question_ == o.question_ && schema_ == o.schema_ &&
           entries_ == o.entries_;
  }

 private:
  Question question_ = Question::kDeclarerSuit;
  FeatureSchema schema_;
  std::map<uint64_t, TableEntry> entries_;
  uint64_t confidence_threshold_ = kDefaultConfidenceThreshold;
};

WinningTable MergeTables(const WinningTable& a, const WinningTable& b);

// Foreground table plus an always-answerable reduced-schema fallback.
// The background is the foreground aggregated over the dropped trailing
// fields; a query missing from both yields the neutral prior.
class LayeredTable {
 public:
  LayeredTable() = default;
  explicit LayeredTable(WinningTable foreground,
                        int fields_dropped = kBackgroundFieldsDropped);

  const WinningTable& foreground() const { return foreground_; }
  const WinningTable& background() const { return background_; }

  enum class Source { kForeground, kBackground, kNeutral };
  struct LookupResult {
    double prob = kNeutralPrior;
    Source source = Source::kNeutral;
  };
  LookupResult LookupDetailed(const FeatureVector& features) const;
  double Lookup(const FeatureVector& features) const {
    return LookupDetailed(features).prob;
  }

 private:
  WinningTable foreground_;
  WinningTable background_;
  int fields_dropped_ = kBackgroundFieldsDropped;
};

// --- Outer learning ----------------------------------------------------

// Aligned traversal of a deal stream (every deal, id-ascending) and the
// played-games stream (a subset, id-ascending). Each matched, non-excluded
// game adds one observation per extracted vector, won iff the declarer
// took the game. The bias table carries earlier counts forward, so
// learning with bias B equals merging B with learning from scratch.
class DealSource {
 public:
  virtual ~DealSource() = default;
  virtual std::optional<Deal> Next() = 0;
};

class RecordSource {
 public:
  virtual ~RecordSource() = default;
  virtual std::optional<pgn::GameRecord> Next() = 0;
};

class VectorDealSource : public DealSource {
 public:
  explicit VectorDealSource(const std::vector<Deal>& deals)
      : deals_(deals) {}
  std::optional<Deal> Next() override {
    if (pos_ >= deals_.size()) return std::nullopt;
    return deals_[pos_++];
  }

 private:
  const std::vector<Deal>& deals_;
  size_t pos_ = 0;
};

class VectorRecordSource : public RecordSource {
 public:
  explicit VectorRecordSource(const std::vector<pgn::GameRecord>& records)
      : records_(records) {}
  std::optional<pgn::GameRecord> Next() override {
    if (pos_ >= records_.size()) return std::nullopt;
    return records_[pos_++];
  }

 private:
  const std::vector<pgn::GameRecord>& records_;
  size_t pos_ = 0;
};

using ExcludeFn =
    std::function<bool(const Deal&, const pgn::GameRecord&)>;
using ExtractFn = std::function<std::vector<FeatureVector>(
    const Deal&, const pgn::GameRecord&)>;

struct OuterLearningStats {
  uint64_t matched = 0;     // games found in both streams
  uint64_t excluded = 0;    // matched games the filter dropped
  uint64_t offset = 0;      // final input-output offset
};

// Builds/updates one winning table from a deal stream and the played-games
// stream. Throws if the streams are not id-ascending or a played game has
// no deal. `weight` scales every observation (per-corpus weighting).
WinningTable OuterLearning(DealSource& deals, RecordSource& games,
                           const ExcludeFn& exclude, const ExtractFn& extract,
                           Question question, const FeatureSchema& schema,
                           const WinningTable* bias = nullptr,
                           uint64_t weight = 1,
                           OuterLearningStats* stats = nullptr);

// Convenience wrapper wiring the question's standard exclusion and
// extraction.
WinningTable LearnQuestion(Question q, const std::vector<Deal>& deals,
                           const std::vector<pgn::GameRecord>& games,
                           const WinningTable* bias = nullptr,
                           uint64_t weight = 1);

// --- Table set on disk --------------------------------------------------

// The five question tables of one learning state. Files are named
// <question>.tbl inside a version directory; publishing replaces the
// directory atomically via rename.
class TableSet {
 public:
  TableSet();  // empty tables for every question (zero-learning state)

  const LayeredTable& layered(Question q) const {
    return layered_[static_cast<int>(q)];
  }
  const WinningTable& table(Question q) const {
    return tables_[static_cast<int>(q)];
  }
  void Set(Question q, WinningTable table);

  static TableSet Load(const std::string& dir,
                       uint64_t confidence_threshold =
                           kDefaultConfidenceThreshold);
  void Save(const std::string& dir) const;
  // Writes to a scratch directory next to `dir`, then renames.
  void PublishAtomically(const std::string& dir) const;

 private:
  std::vector<WinningTable> tables_;
  std::vector<LayeredTable> layered_;
};

std::string TableFileName(Question q);

}  // namespace skat

#endif  // SKATLAB_TABLES_H_

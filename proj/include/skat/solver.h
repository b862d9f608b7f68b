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

#ifndef SKATLAB_SOLVER_H_
#define SKATLAB_SOLVER_H_

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "skat/cards.h"
#include "skat/pgn.h"
#include "skat/rules.h"

namespace skat {

// A fully revealed position: all three remaining hands, the trick on the
// table, and the declarer's banked eyes (skat plus completed tricks).
struct OpenPosition {
  GameType type;
  int declarer = 0;
  std::array<CardSet, kNumPlayers> hands;
  int leader = 0;                 // leader of the current trick
  std::vector<Card> trick_cards;  // 0..2 cards already played to it
  int declarer_banked_eyes = 0;
  int declarer_tricks_taken = 0;  // decides lost null games

  int ToMove() const {
    return (leader + static_cast<int>(trick_cards.size())) % kNumPlayers;
  }
  void Check() const;  // throws std::invalid_argument on malformed input
};

struct SolverVerdict {
  bool declarer_can_win = false;
  // Trump and grand: the exact maximum of declarer eyes under optimal play
  // by both sides. Null: 0 if the declarer can stay trickless, else 1.
  int best_eyes = 0;
  std::vector<Card> principal_variation;

  bool operator==(const SolverVerdict& o) const {
    return declarer_can_win == o.declarer_can_win && best_eyes == o.best_eyes;
  }
};

// Exact open-card solver: alpha-beta over declarer eyes (the two defenders
// form one minimizing coalition) with a transposition table keyed on the
// remaining-cards mask and trick leader. Values are stored relative to the
// eyes still on the table, so one card configuration shares entries no
// matter how many eyes are already banked.
class OpenSolver {
 public:
  OpenSolver();
  ~OpenSolver();
  OpenSolver(const OpenSolver&) = delete;
  OpenSolver& operator=(const OpenSolver&) = delete;

  // Invalidates the transposition table. Must be called before solving
  // positions of a different underlying deal or game; positions reached
  // from one deal may share the table freely.
  void NewSearch();

  // Exact verdict with principal variation.
  SolverVerdict Solve(const OpenPosition& pos);

  // Decision form: can the declarer force a win from here? Uses a
  // zero-width eyes window for trump games, considerably faster than the
  // exact solve.
  bool DeclarerCanWin(const OpenPosition& pos);

  // Eyes the declarer can still collect from the remaining play,
  // excluding what is already banked.
  int SolveRemainingEyes(const OpenPosition& pos);

  // Proves value >= target (returns true) or value < target, without
  // resolving the exact value; target in remaining-play eyes.
  bool RemainingEyesAtLeast(const OpenPosition& pos, int target);

  // Fail-soft form of the decision search: the returned eyes value
  // satisfies (value >= target) == RemainingEyesAtLeast(pos, target) and
  // is a one-sided bound on the exact value, usable as a cheap estimate.
  int ProbeRemainingEyes(const OpenPosition& pos, int target);

  uint64_t nodes_searched() const { return nodes_; }

 private:
  struct TtEntry;

  void Prepare(const OpenPosition& pos);
  int SearchEyes(int to_move, int alpha, int beta);
  bool SearchNullAvoid(int to_move);
  int GenerateMoves(int to_move, std::array<int8_t, 12>& moves) const;
  int OrderMoves(int to_move, std::array<int8_t, 12>& moves, int count,
                 int tt_move) const;

  // Per-game static tables.
  GameType type_;
  int declarer_ = 0;
  std::array<int8_t, kNumCards> class_of_;
  std::array<int8_t, kNumCards> power_of_;
  std::array<int8_t, kNumCards> eyes_of_;
  std::array<uint32_t, kTrumpClass + 1> class_mask_;
  // Cards of each class in descending power, for equivalence skipping.
  std::array<std::array<int8_t, kNumCards>, kTrumpClass + 1> class_order_;
  std::array<int8_t, kTrumpClass + 1> class_size_;

  // Search state.
  std::array<uint32_t, kNumPlayers> hands_;
  uint32_t live_mask_ = 0;
  int remaining_eyes_ = 0;
  std::array<int8_t, kNumPlayers> trick_cards_;
  int trick_count_ = 0;
  int trick_leader_ = 0;

  std::vector<TtEntry> tt_;
  uint32_t generation_ = 1;
  uint64_t nodes_ = 0;
};

// Open-card verdict for a recorded game, solved from the first trick with
// the declared game and discard. The first-trick leader is reconstructed
// from the recorded trick-one winner.
SolverVerdict SolveRecord(const pgn::GameRecord& record, OpenSolver& solver);
OpenPosition PositionFromRecord(const pgn::GameRecord& record);

// 1 iff the solver says the declarer of this non-folded record could have
// forced a win. Throws on folded records.
bool PredictedOutcome(const pgn::GameRecord& record, OpenSolver& solver);

// Plays one card in an open position, resolving the trick when it is the
// third card: eyes are banked, the winner leads on.
void ApplyMoveOpen(OpenPosition& pos, Card c);

}  // namespace skat

#endif  // SKATLAB_SOLVER_H_

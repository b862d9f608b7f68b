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

#ifndef SKATLAB_PLAYERS_H_
#define SKATLAB_PLAYERS_H_

#include <array>
#include <optional>
#include <random>
#include <vector>

#include "skat/cards.h"
#include "skat/features.h"
#include "skat/pgn.h"
#include "skat/rules.h"
#include "skat/solver.h"
#include "skat/tables.h"

namespace skat {

enum class Objective { kMaxProbability, kExpectedScore };

struct PolicyConfig {
  double bid_threshold = 0.6;  // minimum table probability to bid a game
  int world_count = 16;        // sampled worlds per trick decision
  int endgame_trigger = 6;     // cards per hand from which worlds are
                               // enumerated exhaustively
  int endgame_world_cap = 4096;  // enumeration budget; beyond it, sample
  Objective objective = Objective::kMaxProbability;
  uint64_t seed = 0;

  void Validate() const;
};

// What one seat is allowed to know when choosing a trick card: own cards,
// everything public, and the skat when this seat discarded it.
struct TrickView {
  GameType type;
  int declarer = 0;
  int my_seat = 0;
  CardSet my_hand;
  CardSet played;                // cards gone in completed tricks
  std::vector<Card> trick_cards; // current trick so far
  int trick_leader = 0;
  std::array<int, kNumPlayers> hand_sizes = {0, 0, 0};
  // voids[seat][class]: seat failed to follow this class earlier.
  std::array<std::array<bool, kTrumpClass + 1>, kNumPlayers> voids = {};
  bool skat_known = false;
  CardSet known_skat;            // the discarded cards, if skat_known
  int declarer_trick_eyes = 0;   // public bank from completed tricks
  int declarer_tricks_taken = 0;

  int ToMove() const {
    return (trick_leader + static_cast<int>(trick_cards.size())) %
           kNumPlayers;
  }
};

struct BidEvaluation {
  int max_bid = 0;  // 0 means pass
  GameType best_game = GameType::Folded();
  double best_prob = 0.0;
};

struct SkatDecision {
  GameType game;
  std::array<Card, kSkatSize> put;
  double probability = 0.0;
  int game_value = 0;
  bool covers_bid = false;
};

// Table-driven decision policy for every stage of one game. Trick play
// samples hidden worlds, solves them open, and votes; small endgames are
// enumerated exhaustively and solved exactly.
class TablePlayer {
 public:
  TablePlayer(const TableSet& tables, const PolicyConfig& config,
              OpenSolver* solver);

  // Highest standard bid whose game reaches the probability threshold.
  int MaxBid(CardSet hand, int position_from_forehand) const;
  BidEvaluation EvaluateHand(CardSet hand, int position_from_forehand) const;

  // Evaluates all 66 discards x candidate game types; the objective
  // breaks ties by lowest rank pair, then card indices.
  SkatDecision ChooseSkatPut(CardSet hand12, int contract_bid,
                             int highest_opposing_bid,
                             int position_from_forehand) const;

  // Opening lead for a defender: suit by the long-way/short-way rule,
  // ace-or-under by the opening tables.
  Card ChooseOpeningCard(CardSet hand, GameType type, int my_seat,
                         int declarer_seat, int partner_bid) const;

  // Perfect-information Monte-Carlo over worlds consistent with `view`.
  Card ChooseTrickCard(const TrickView& view, std::mt19937_64& rng) const;

  // Worlds consistent with the view: completes the three hands and the
  // skat. Exposed for the sampling-consistency property tests.
  struct World {
    std::array<CardSet, kNumPlayers> hands;
    CardSet skat;
  };
  std::optional<World> SampleWorld(const TrickView& view,
                                   std::mt19937_64& rng) const;
  std::vector<World> EnumerateWorlds(const TrickView& view, int cap) const;

 private:
  double GameProbability(GameType type, const DeclarerContext& ctx) const;

  const TableSet& tables_;
  PolicyConfig config_;
  OpenSolver* solver_;
};

// Bid auction among the three seats' maximum bids, forehand first. Seats
// are absolute; `forehand` names the seat that leads the first trick.
struct AuctionResult {
  bool folded = true;
  int declarer = 0;
  int winning_bid = 0;
  std::array<int, kNumPlayers> said = {0, 0, 0};  // last value each agreed to
};
AuctionResult RunAuction(const std::array<int, kNumPlayers>& max_bids,
                         int forehand);

enum class PlayMode { kTablePlay, kRandomPlay };

// Plays one deal to a complete game record. Deterministic for a fixed
// config seed: the per-game generator is seeded with seed xor deal id.
pgn::GameRecord PlayOneGame(const Deal& deal, const TableSet& tables,
                            const PolicyConfig& config, PlayMode mode,
                            OpenSolver* solver);

// Same, with per-seat tables (head-to-head comparisons seat differently
// equipped players at one table).
pgn::GameRecord PlayOneGame(
    const Deal& deal,
    const std::array<const TableSet*, kNumPlayers>& seat_tables,
    const PolicyConfig& config, PlayMode mode, OpenSolver* solver);

}  // namespace skat

#endif  // SKATLAB_PLAYERS_H_

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

#include "skat/solver.h"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace skat {
namespace {

constexpr int kTtSizeLog = 20;
constexpr size_t kTtSize = size_t{1} << kTtSizeLog;
constexpr int16_t kNoLower = -1;
constexpr int16_t kNoUpper = std::numeric_limits<int16_t>::max();

size_t TtIndex(uint64_t key) {
  return static_cast<size_t>((key * 0x9E3779B97F4A7C15ull) >>
                             (64 - kTtSizeLog));
}

}  // namespace

struct OpenSolver::TtEntry {
  uint64_t key = 0;
  int16_t lower = kNoLower;
  int16_t upper = kNoUpper;
  int8_t best_move = -1;
  uint32_t generation = 0;
};

void OpenPosition::Check() const {
  if (!type.IsValid() || type.IsFolded()) {
    throw std::invalid_argument("position without a playable game type");
  }
  if (declarer < 0 || declarer >= kNumPlayers || leader < 0 ||
      leader >= kNumPlayers) {
    throw std::invalid_argument("bad seat index");
  }
  if (trick_cards.size() >= kNumPlayers) {
    throw std::invalid_argument("trick already complete");
  }
  uint32_t seen = 0;
  for (const CardSet& hand : hands) {
    if ((seen & hand.mask()) != 0) {
      throw std::invalid_argument("hands overlap");
    }
    seen |= hand.mask();
  }
  for (Card c : trick_cards) {
    if (!c.IsValid() || (seen & (1u << c.index())) != 0) {
      throw std::invalid_argument("trick card invalid or still in a hand");
    }
    seen |= 1u << c.index();
  }
  // Everyone entered the current trick with the same number of cards.
  const int base = hands[ToMove()].Count();
  for (int j = 0; j < kNumPlayers; ++j) {
    const int seat = (leader + j) % kNumPlayers;
    const int want =
        j < static_cast<int>(trick_cards.size()) ? base - 1 : base;
    if (hands[seat].Count() != want) {
      throw std::invalid_argument("hand sizes inconsistent with the trick");
    }
  }
  if (declarer_banked_eyes < 0 || declarer_banked_eyes > kTotalEyes) {
    throw std::invalid_argument("banked eyes out of range");
  }
}

OpenSolver::OpenSolver() : tt_(kTtSize) {}
OpenSolver::~OpenSolver() = default;

void OpenSolver::NewSearch() { ++generation_; }

void OpenSolver::Prepare(const OpenPosition& pos) {
  pos.Check();
  type_ = pos.type;
  declarer_ = pos.declarer;
  class_mask_.fill(0);
  class_size_.fill(0);
  for (int c = 0; c < kNumCards; ++c) {
    const Card card(c);
    class_of_[c] = static_cast<int8_t>(TrickClass(type_, card));
    power_of_[c] = static_cast<int8_t>(TrickPower(type_, card));
    eyes_of_[c] = static_cast<int8_t>(card.Eyes());
    class_mask_[class_of_[c]] |= 1u << c;
  }
  for (int cl = 0; cl <= kTrumpClass; ++cl) {
    auto& order = class_order_[cl];
    int n = 0;
    for (int c = 0; c < kNumCards; ++c) {
      if (class_of_[c] == cl) order[n++] = static_cast<int8_t>(c);
    }
    std::sort(order.begin(), order.begin() + n, [this](int8_t a, int8_t b) {
      return power_of_[a] > power_of_[b];
    });
    class_size_[cl] = static_cast<int8_t>(n);
  }
  for (int p = 0; p < kNumPlayers; ++p) hands_[p] = pos.hands[p].mask();
  trick_count_ = 0;
  trick_leader_ = pos.leader;
  live_mask_ = hands_[0] | hands_[1] | hands_[2];
  remaining_eyes_ = 0;
  for (Card c : pos.trick_cards) {
    trick_cards_[trick_count_++] = static_cast<int8_t>(c.index());
    live_mask_ |= 1u << c.index();
  }
  for (int c = 0; c < kNumCards; ++c) {
    if (live_mask_ & (1u << c)) remaining_eyes_ += eyes_of_[c];
  }
}

int OpenSolver::GenerateMoves(int to_move,
                              std::array<int8_t, 12>& moves) const {
  const uint32_t hand = hands_[to_move];
  uint32_t legal = hand;
  if (trick_count_ > 0) {
    const uint32_t follow = hand & class_mask_[class_of_[trick_cards_[0]]];
    if (follow != 0) legal = follow;
  }
  // Keep one representative per run of cards that are adjacent among the
  // live cards of their class; such cards are interchangeable as long as
  // they carry the same eyes (eyes never matter in null games).
  const bool null_mode = type_.IsNull();
  int count = 0;
  for (int cl = 0; cl <= kTrumpClass; ++cl) {
    if ((legal & class_mask_[cl]) == 0) continue;
    bool prev_was_candidate = false;
    int prev_card = -1;
    for (int k = 0; k < class_size_[cl]; ++k) {
      const int c = class_order_[cl][k];
      const uint32_t bit = 1u << c;
      if ((live_mask_ & bit) == 0) continue;
      if ((legal & bit) != 0) {
        if (!(prev_was_candidate &&
              (null_mode || eyes_of_[c] == eyes_of_[prev_card]))) {
          moves[count++] = static_cast<int8_t>(c);
        }
        prev_was_candidate = true;
        prev_card = c;
      } else {
        prev_was_candidate = false;
      }
    }
  }
  return count;
}

int OpenSolver::OrderMoves(int to_move, std::array<int8_t, 12>& moves,
                           int count, int tt_move) const {
  std::array<int, 12> scores;
  int winning_card = -1;
  bool team_winning = false;
  if (trick_count_ > 0) {
    int off = 0;
    winning_card = trick_cards_[0];
    for (int k = 1; k < trick_count_; ++k) {
      const int c = trick_cards_[k];
      const bool beats =
          (class_of_[c] == class_of_[winning_card] &&
           power_of_[c] > power_of_[winning_card]) ||
          (class_of_[c] == kTrumpClass &&
           class_of_[winning_card] != kTrumpClass);
      if (beats) {
        winning_card = c;
        off = k;
      }
    }
    const int winner_seat = (trick_leader_ + off) % kNumPlayers;
    team_winning =
        (winner_seat == declarer_) == (to_move == declarer_);
  }
  const bool null_mode = type_.IsNull();
  for (int i = 0; i < count; ++i) {
    const int c = moves[i];
    int s;
    if (c == tt_move) {
      s = 1 << 20;
    } else if (null_mode) {
      // The declarer ducks from the bottom; the defenders probe with low
      // cards to force the declarer up.
      s = -power_of_[c];
    } else if (trick_count_ == 0) {
      // Leading: the declarer pulls trumps from the top, the defenders
      // prefer cheap plain-suit leads.
      if (to_move == declarer_) {
        s = (class_of_[c] == kTrumpClass ? 512 : 0) + power_of_[c];
      } else {
        s = (class_of_[c] == kTrumpClass ? -512 : 0) - power_of_[c] -
            4 * eyes_of_[c];
      }
    } else {
      const bool takes =
          (class_of_[c] == class_of_[winning_card] &&
           power_of_[c] > power_of_[winning_card]) ||
          (class_of_[c] == kTrumpClass &&
           class_of_[winning_card] != kTrumpClass);
      if (!team_winning && takes) {
        s = 512 - power_of_[c];  // win the trick as cheaply as possible
      } else if (team_winning && trick_count_ == 2) {
        s = 256 + eyes_of_[c];  // last hand, trick secured: load it up
      } else {
        s = -eyes_of_[c];  // dump low
      }
    }
    scores[i] = s;
  }
  // Insertion sort, descending; move lists are tiny.
  for (int i = 1; i < count; ++i) {
    const int8_t m = moves[i];
    const int s = scores[i];
    int j = i - 1;
    while (j >= 0 && scores[j] < s) {
      scores[j + 1] = scores[j];
      moves[j + 1] = moves[j];
      --j;
    }
    scores[j + 1] = s;
    moves[j + 1] = m;
  }
  return count;
}

int OpenSolver::SearchEyes(int to_move, int alpha, int beta) {
  ++nodes_;
  const bool at_trick_start = trick_count_ == 0;
  if (at_trick_start) {
    if (live_mask_ == 0) return 0;
    // Value is bounded by the eyes still in play.
    if (remaining_eyes_ <= alpha) return remaining_eyes_;
    if (beta <= 0) return 0;
  }

  uint64_t key = 0;
  int tt_move = -1;
  TtEntry* entry = nullptr;
  if (at_trick_start) {
    key = static_cast<uint64_t>(live_mask_) |
          (static_cast<uint64_t>(trick_leader_) << 32);
    entry = &tt_[TtIndex(key)];
    if (entry->generation == generation_ && entry->key == key) {
      if (entry->lower == entry->upper) return entry->lower;
      if (entry->lower != kNoLower && entry->lower >= beta) {
        return entry->lower;
      }
      if (entry->upper != kNoUpper && entry->upper <= alpha) {
        return entry->upper;
      }
      if (entry->lower != kNoLower) alpha = std::max<int>(alpha, entry->lower);
      if (entry->upper != kNoUpper) beta = std::min<int>(beta, entry->upper);
      tt_move = entry->best_move;
    }
  }

  const int search_alpha = alpha;
  const int search_beta = beta;
  const bool maximizing = to_move == declarer_;
  std::array<int8_t, 12> moves;
  int count = GenerateMoves(to_move, moves);
  count = OrderMoves(to_move, moves, count, tt_move);

  int best = maximizing ? std::numeric_limits<int>::min()
                        : std::numeric_limits<int>::max();
  int best_move = -1;
  int a = alpha;
  int b = beta;
  for (int i = 0; i < count; ++i) {
    const int c = moves[i];
    const uint32_t bit = 1u << c;
    hands_[to_move] ^= bit;
    trick_cards_[trick_count_++] = static_cast<int8_t>(c);
    int value;
    if (trick_count_ == kNumPlayers) {
      int off = 0;
      int wc = trick_cards_[0];
      for (int k = 1; k < kNumPlayers; ++k) {
        const int ck = trick_cards_[k];
        const bool beats = (class_of_[ck] == class_of_[wc] &&
                            power_of_[ck] > power_of_[wc]) ||
                           (class_of_[ck] == kTrumpClass &&
                            class_of_[wc] != kTrumpClass);
        if (beats) {
          wc = ck;
          off = k;
        }
      }
      const int winner = (trick_leader_ + off) % kNumPlayers;
      const int trick_eyes = eyes_of_[trick_cards_[0]] +
                             eyes_of_[trick_cards_[1]] +
                             eyes_of_[trick_cards_[2]];
      const int gained = winner == declarer_ ? trick_eyes : 0;
      const uint32_t trick_mask = (1u << trick_cards_[0]) |
                                  (1u << trick_cards_[1]) |
                                  (1u << trick_cards_[2]);
      const int saved_leader = trick_leader_;
      live_mask_ ^= trick_mask;
      remaining_eyes_ -= trick_eyes;
      trick_leader_ = winner;
      trick_count_ = 0;
      value = gained + SearchEyes(winner, a - gained, b - gained);
      trick_count_ = kNumPlayers;
      trick_leader_ = saved_leader;
      remaining_eyes_ += trick_eyes;
      live_mask_ |= trick_mask;
    } else {
      value = SearchEyes((to_move + 1) % kNumPlayers, a, b);
    }
    --trick_count_;
    hands_[to_move] ^= bit;

    if (maximizing) {
      if (value > best) {
        best = value;
        best_move = c;
      }
      a = std::max(a, best);
      if (a >= b) break;
    } else {
      if (value < best) {
        best = value;
        best_move = c;
      }
      b = std::min(b, best);
      if (b <= a) break;
    }
  }

  if (entry != nullptr) {
    int16_t lower = kNoLower;
    int16_t upper = kNoUpper;
    if (best <= search_alpha) {
      upper = static_cast<int16_t>(best);
    } else if (best >= search_beta) {
      lower = static_cast<int16_t>(best);
    } else {
      lower = upper = static_cast<int16_t>(best);
    }
    if (entry->generation == generation_ && entry->key == key) {
      if (lower != kNoLower &&
          (entry->lower == kNoLower || lower > entry->lower)) {
        entry->lower = lower;
      }
      if (upper != kNoUpper &&
          (entry->upper == kNoUpper || upper < entry->upper)) {
        entry->upper = upper;
      }
      if (best_move >= 0) entry->best_move = static_cast<int8_t>(best_move);
    } else {
      entry->key = key;
      entry->generation = generation_;
      entry->lower = lower;
      entry->upper = upper;
      entry->best_move = static_cast<int8_t>(best_move);
    }
  }
  return best;
}

bool OpenSolver::SearchNullAvoid(int to_move) {
  ++nodes_;
  const bool at_trick_start = trick_count_ == 0;
  uint64_t key = 0;
  TtEntry* entry = nullptr;
  int tt_move = -1;
  if (at_trick_start) {
    if (live_mask_ == 0) return true;
    key = static_cast<uint64_t>(live_mask_) |
          (static_cast<uint64_t>(trick_leader_) << 32);
    entry = &tt_[TtIndex(key)];
    if (entry->generation == generation_ && entry->key == key &&
        entry->lower == entry->upper) {
      return entry->lower != 0;
    }
    if (entry->generation == generation_ && entry->key == key) {
      tt_move = entry->best_move;
    }
  }

  const bool maximizing = to_move == declarer_;  // declarer avoids tricks
  std::array<int8_t, 12> moves;
  int count = GenerateMoves(to_move, moves);
  count = OrderMoves(to_move, moves, count, tt_move);

  bool best = !maximizing;
  int best_move = count > 0 ? moves[0] : -1;
  for (int i = 0; i < count; ++i) {
    const int c = moves[i];
    const uint32_t bit = 1u << c;
    hands_[to_move] ^= bit;
    trick_cards_[trick_count_++] = static_cast<int8_t>(c);
    bool avoided;
    if (trick_count_ == kNumPlayers) {
      int off = 0;
      int wc = trick_cards_[0];
      for (int k = 1; k < kNumPlayers; ++k) {
        const int ck = trick_cards_[k];
        if (class_of_[ck] == class_of_[wc] &&
            power_of_[ck] > power_of_[wc]) {
          wc = ck;
          off = k;
        }
      }
      const int winner = (trick_leader_ + off) % kNumPlayers;
      if (winner == declarer_) {
        avoided = false;
      } else {
        const uint32_t trick_mask = (1u << trick_cards_[0]) |
                                    (1u << trick_cards_[1]) |
                                    (1u << trick_cards_[2]);
        const int saved_leader = trick_leader_;
        live_mask_ ^= trick_mask;
        trick_leader_ = winner;
        trick_count_ = 0;
        avoided = SearchNullAvoid(winner);
        trick_count_ = kNumPlayers;
        trick_leader_ = saved_leader;
        live_mask_ |= trick_mask;
      }
    } else {
      avoided = SearchNullAvoid((to_move + 1) % kNumPlayers);
    }
    --trick_count_;
    hands_[to_move] ^= bit;

    if (maximizing) {
      if (avoided) {
        best = true;
        best_move = c;
        break;
      }
    } else {
      if (!avoided) {
        best = false;
        best_move = c;
        break;
      }
    }
  }

  if (entry != nullptr) {
    entry->key = key;
    entry->generation = generation_;
    entry->lower = entry->upper = best ? 1 : 0;
    entry->best_move = static_cast<int8_t>(best_move);
  }
  return best;
}

int OpenSolver::SolveRemainingEyes(const OpenPosition& pos) {
  if (!pos.type.IsTrumpGame()) {
    throw std::invalid_argument("eyes solving needs a trump or grand game");
  }
  Prepare(pos);
  return SearchEyes(pos.ToMove(), -1, remaining_eyes_ + 1);
}

bool OpenSolver::RemainingEyesAtLeast(const OpenPosition& pos, int target) {
  return ProbeRemainingEyes(pos, target) >= target;
}

int OpenSolver::ProbeRemainingEyes(const OpenPosition& pos, int target) {
  if (!pos.type.IsTrumpGame()) {
    throw std::invalid_argument("eyes solving needs a trump or grand game");
  }
  Prepare(pos);
  if (target <= 0) return 0;
  if (target > remaining_eyes_) return remaining_eyes_;
  return SearchEyes(pos.ToMove(), target - 1, target);
}

bool OpenSolver::DeclarerCanWin(const OpenPosition& pos) {
  if (pos.type.IsNull()) {
    if (pos.declarer_tricks_taken > 0) return false;
    Prepare(pos);
    return SearchNullAvoid(pos.ToMove());
  }
  return RemainingEyesAtLeast(pos, 61 - pos.declarer_banked_eyes);
}

SolverVerdict OpenSolver::Solve(const OpenPosition& pos) {
  SolverVerdict verdict;
  if (pos.type.IsNull()) {
    verdict.declarer_can_win = DeclarerCanWin(pos);
    verdict.best_eyes = verdict.declarer_can_win ? 0 : 1;
  } else {
    verdict.best_eyes =
        pos.declarer_banked_eyes + SolveRemainingEyes(pos);
    verdict.declarer_can_win = verdict.best_eyes >= 61;
  }
  // Root best move, when the root was a trick-start node.
  if (pos.trick_cards.empty() && !(pos.hands[0].Empty() &&
                                   pos.hands[1].Empty() &&
                                   pos.hands[2].Empty())) {
    const uint64_t key =
        static_cast<uint64_t>(pos.hands[0].mask() | pos.hands[1].mask() |
                              pos.hands[2].mask()) |
        (static_cast<uint64_t>(pos.leader) << 32);
    const TtEntry& entry = tt_[TtIndex(key)];
    if (entry.generation == generation_ && entry.key == key &&
        entry.best_move >= 0) {
      verdict.principal_variation.push_back(Card(entry.best_move));
    }
  }
  return verdict;
}

OpenPosition PositionFromRecord(const pgn::GameRecord& record) {
  if (record.folded) {
    throw std::invalid_argument("folded record has no position to solve");
  }
  if (record.tricks.empty()) {
    throw std::invalid_argument("record has no tricks; cannot place the lead");
  }
  const GameType type = record.Type();
  // The winner's offset inside the trick depends only on the cards, so the
  // recorded winner seat pins down the leader.
  Trick first;
  first.leader = 0;
  for (int i = 0; i < kNumPlayers; ++i) {
    first.cards[i] = Card(record.tricks[0].cards[i]);
  }
  const int offset = TrickWinner(first, type);
  const int leader =
      (record.tricks[0].winner - offset + kNumPlayers) % kNumPlayers;

  OpenPosition pos;
  pos.type = type;
  pos.declarer = record.declarer;
  for (int seat = 0; seat < kNumPlayers; ++seat) {
    pos.hands[seat] = seat == record.declarer ? record.DeclarerPlayingHand()
                                              : record.HandSet(seat);
  }
  pos.leader = leader;
  pos.declarer_banked_eyes =
      type.IsTrumpGame() ? record.SkatPutSet().TotalEyes() : 0;
  return pos;
}

SolverVerdict SolveRecord(const pgn::GameRecord& record, OpenSolver& solver) {
  const OpenPosition pos = PositionFromRecord(record);
  solver.NewSearch();
  return solver.Solve(pos);
}

bool PredictedOutcome(const pgn::GameRecord& record, OpenSolver& solver) {
  const OpenPosition pos = PositionFromRecord(record);
  solver.NewSearch();
  return solver.DeclarerCanWin(pos);
}

void ApplyMoveOpen(OpenPosition& pos, Card c) {
  const int mover = pos.ToMove();
  if (!pos.hands[mover].Contains(c)) {
    throw std::invalid_argument("card not in mover's hand");
  }
  pos.hands[mover].Remove(c);
  pos.trick_cards.push_back(c);
  if (pos.trick_cards.size() < kNumPlayers) return;
  Trick trick;
  trick.leader = pos.leader;
  for (int i = 0; i < kNumPlayers; ++i) trick.cards[i] = pos.trick_cards[i];
  const int winner = TrickWinner(trick, pos.type);
  if (winner == pos.declarer) {
    pos.declarer_banked_eyes += trick.Eyes();
    ++pos.declarer_tricks_taken;
  }
  pos.leader = winner;
  pos.trick_cards.clear();
}

}  // namespace skat

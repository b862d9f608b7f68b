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

#include "skat/rules.h"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace skat {

std::string GameType::ToString() const {
  switch (code_) {
    case kFoldedCode: return "folded";
    case 0: return "clubs";
    case 1: return "spades";
    case 2: return "hearts";
    case 3: return "diamonds";
    case kGrandCode: return "grand";
    case kNullCode: return "null";
    case kNullOuvertCode: return "null-ouvert";
    case kNullHandCode: return "null-hand";
    case kNullOuvertHandCode: return "null-ouvert-hand";
    default: return "invalid";
  }
}

int TrickClass(GameType type, Card c) {
  if (type.IsNull()) return static_cast<int>(c.suit());
  if (c.rank() == Rank::kJack) return kTrumpClass;
  if (type.IsSuit() && c.suit() == type.trump_suit()) return kTrumpClass;
  return static_cast<int>(c.suit());
}

int TrickPower(GameType type, Card c) {
  if (type.IsNull()) {
    // A,K,Q,J,10,9,8,7 from the top, which is the rank index order.
    return static_cast<int>(c.rank());
  }
  if (c.rank() == Rank::kJack) {
    return 100 + (3 - static_cast<int>(c.suit()));  // CJ highest
  }
  // A,10,K,Q,9,8,7 from the top, both as trump and as plain suit.
  constexpr int kTrumpPower[kNumRanks] = {0, 1, 2, 5, -1, 3, 4, 6};
  return kTrumpPower[static_cast<int>(c.rank())];
}

CardSet FollowingCards(GameType type, CardSet hand, Card led) {
  if (!led.IsValid()) return hand;
  const int led_class = TrickClass(type, led);
  CardSet following;
  for (Card c : hand) {
    if (TrickClass(type, c) == led_class) following.Add(c);
  }
  return following.Empty() ? hand : following;
}

int TrickWinner(const Trick& trick, GameType type) {
  for (int i = 0; i < kNumPlayers; ++i) {
    if (!trick.cards[i].IsValid()) {
      throw std::invalid_argument("incomplete trick");
    }
  }
  int best = 0;
  for (int i = 1; i < kNumPlayers; ++i) {
    const Card cur = trick.cards[i];
    const Card win = trick.cards[best];
    const int cur_class = TrickClass(type, cur);
    const int win_class = TrickClass(type, win);
    const bool beats =
        (cur_class == win_class &&
         TrickPower(type, cur) > TrickPower(type, win)) ||
        (cur_class == kTrumpClass && win_class != kTrumpClass);
    if (beats) best = i;
  }
  return (trick.leader + best) % kNumPlayers;
}

Matadors MatadorCount(CardSet declarer_cards, GameType type) {
  std::vector<Card> sequence = {
      Card(Suit::kClubs, Rank::kJack), Card(Suit::kSpades, Rank::kJack),
      Card(Suit::kHearts, Rank::kJack), Card(Suit::kDiamonds, Rank::kJack)};
  if (type.IsSuit()) {
    const Suit s = type.trump_suit();
    for (Rank r : {Rank::kAce, Rank::kTen, Rank::kKing, Rank::kQueen,
                   Rank::kNine, Rank::kEight, Rank::kSeven}) {
      sequence.emplace_back(s, r);
    }
  }
  Matadors m;
  m.with = declarer_cards.Contains(sequence[0]);
  for (Card c : sequence) {
    if (declarer_cards.Contains(c) != m.with) break;
    ++m.count;
  }
  return m;
}

int GameValue(GameType type, int matadors, const Announcements& ann) {
  if (type.IsNull()) return type.NullValue();
  if (!type.IsTrumpGame()) return 0;
  int multiplier = matadors + 1;
  if (ann.hand) ++multiplier;
  if (ann.schneider) ++multiplier;
  if (ann.schneider_announced) ++multiplier;
  if (ann.schwarz) ++multiplier;
  if (ann.schwarz_announced) ++multiplier;
  if (ann.ouvert) ++multiplier;
  return type.BaseValue() * multiplier;
}

GameState::GameState(GameType type, int declarer, int forehand,
                     const std::array<CardSet, kNumPlayers>& hands,
                     int skat_eyes, int matadors,
                     const Announcements& announcements)
    : type_(type),
      declarer_(declarer),
      hands_(hands),
      to_move_(forehand),
      declarer_eyes_(skat_eyes),
      matadors_(matadors),
      announcements_(announcements) {
  current_.leader = forehand;
}

CardSet GameState::LegalMoves(int player) const {
  if (player != to_move_) {
    throw std::invalid_argument("not this player's turn");
  }
  const Card led = cards_in_trick_ > 0 ? current_.cards[0] : Card();
  return FollowingCards(type_, hands_[player], led);
}

void GameState::Play(Card c) {
  if (!LegalMoves(to_move_).Contains(c)) {
    throw std::invalid_argument("illegal card: " + c.ToString());
  }
  hands_[to_move_].Remove(c);
  current_.cards[cards_in_trick_++] = c;
  if (cards_in_trick_ < kNumPlayers) {
    to_move_ = (to_move_ + 1) % kNumPlayers;
    return;
  }
  const int winner = TrickWinner(current_, type_);
  const int eyes = current_.Eyes();
  if (winner == declarer_) {
    declarer_eyes_ += eyes;
    ++declarer_tricks_;
    if (type_.IsNull()) null_loss_ = true;
  } else {
    opponent_eyes_ += eyes;
    ++opponent_tricks_;
  }
  history_.push_back(current_);
  current_ = Trick{};
  current_.leader = winner;
  cards_in_trick_ = 0;
  to_move_ = winner;
}

bool GameState::Finished() const {
  if (type_.IsNull() && null_loss_) return true;
  return hands_[0].Empty() && hands_[1].Empty() && hands_[2].Empty() &&
         cards_in_trick_ == 0;
}

int GameState::EyesInPlay() const {
  int eyes = declarer_eyes_ + opponent_eyes_;
  for (const CardSet& h : hands_) eyes += h.TotalEyes();
  for (int i = 0; i < cards_in_trick_; ++i) eyes += current_.cards[i].Eyes();
  return eyes;
}

GameOutcome GameState::Outcome(int contract_bid) const {
  GameOutcome out;
  out.declarer_eyes = declarer_eyes_;
  if (type_.IsNull()) {
    if (!Finished()) {
      throw std::logic_error("null game still running");
    }
    out.declarer_won = declarer_tricks_ == 0 &&
                       (contract_bid == 0 || type_.NullValue() >= contract_bid);
    return out;
  }
  if (!Finished()) {
    throw std::logic_error("game still running");
  }
  const bool enough_eyes = declarer_eyes_ >= 61;
  // Losing side flags; the winning side always holds more than 30 eyes
  // and at least one trick.
  const int loser_eyes = enough_eyes ? opponent_eyes_ : declarer_eyes_;
  const int loser_tricks = enough_eyes ? opponent_tricks_ : declarer_tricks_;
  out.schneider = loser_eyes <= 30;
  out.schwarz = loser_tricks == 0;
  Announcements reached = announcements_;
  reached.schneider = out.schneider;
  reached.schwarz = out.schwarz;
  const int value = GameValue(type_, matadors_, reached);
  out.declarer_won = enough_eyes && (contract_bid == 0 || value >= contract_bid);
  return out;
}

std::array<int64_t, kNumPlayers> SeegerFabianScore(
    std::span<const SeriesGame> series) {
  std::array<int64_t, kNumPlayers> totals = {0, 0, 0};
  for (const SeriesGame& g : series) {
    if (g.declarer_won) {
      totals[g.declarer] += g.game_value + 50;
    } else {
      totals[g.declarer] -= 2 * g.game_value + 50;
      for (int seat = 0; seat < kNumPlayers; ++seat) {
        if (seat != g.declarer) totals[seat] += 40;
      }
    }
  }
  return totals;
}

const std::vector<int>& BidLadder() {
  static const std::vector<int> ladder = [] {
    std::set<int> values;
    for (int base : {9, 10, 11, 12, 24}) {
      for (int mult = 2; base * mult <= 264; ++mult) {
        values.insert(base * mult);
      }
    }
    for (int null_value : {23, 35, 46, 59}) values.insert(null_value);
    return std::vector<int>(values.begin(), values.end());
  }();
  return ladder;
}

}  // namespace skat

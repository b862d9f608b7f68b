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

#ifndef SKATLAB_RULES_H_
#define SKATLAB_RULES_H_

#include <array>
#include <span>
#include <string>
#include <vector>

#include "skat/cards.h"

namespace skat {

// Game codes as stored in the corpus format: -1 folded, 0..3 suit
// (clubs, spades, hearts, diamonds), 4 grand, 5 null, 6 null ouvert,
// 7 null hand, 8 null ouvert hand.
class GameType {
 public:
  static constexpr int kFoldedCode = -1;
  static constexpr int kGrandCode = 4;
  static constexpr int kNullCode = 5;
  static constexpr int kNullOuvertCode = 6;
  static constexpr int kNullHandCode = 7;
  static constexpr int kNullOuvertHandCode = 8;

  constexpr GameType() = default;
  constexpr explicit GameType(int code) : code_(code) {}
  static constexpr GameType SuitGame(Suit s) {
    return GameType(static_cast<int>(s));
  }
  static constexpr GameType Grand() { return GameType(kGrandCode); }
  static constexpr GameType Folded() { return GameType(kFoldedCode); }

  constexpr int code() const { return code_; }
  constexpr bool IsValid() const { return code_ >= -1 && code_ <= 8; }
  constexpr bool IsFolded() const { return code_ == kFoldedCode; }
  constexpr bool IsSuit() const { return code_ >= 0 && code_ <= 3; }
  constexpr bool IsGrand() const { return code_ == kGrandCode; }
  constexpr bool IsNull() const { return code_ >= 5 && code_ <= 8; }
  constexpr bool IsTrumpGame() const { return IsSuit() || IsGrand(); }
  constexpr bool IsHand() const {
    return code_ == kNullHandCode || code_ == kNullOuvertHandCode;
  }
  constexpr Suit trump_suit() const { return static_cast<Suit>(code_); }

  // Base values: diamonds 9, hearts 10, spades 11, clubs 12, grand 24.
  constexpr int BaseValue() const {
    if (IsGrand()) return 24;
    constexpr int kBase[4] = {12, 11, 10, 9};
    return kBase[code_];
  }
  // Null contracts have fixed values 23/35/46/59.
  constexpr int NullValue() const {
    switch (code_) {
      case kNullCode: return 23;
      case kNullOuvertCode: return 46;
      case kNullHandCode: return 35;
      case kNullOuvertHandCode: return 59;
      default: return 0;
    }
  }

  std::string ToString() const;

  friend constexpr bool operator==(GameType a, GameType b) {
    return a.code_ == b.code_;
  }

 private:
  int code_ = kFoldedCode;
};

inline constexpr int kTrumpClass = 4;

// Class a card belongs to for following purposes: 0..3 plain suits,
// kTrumpClass for trumps. In suit games jacks and the trump suit form the
// trump class; in grand only the jacks; null games have no trumps.
int TrickClass(GameType type, Card c);

// Strength of a card inside its class. Higher wins. Jacks rank
// CJ > SJ > HJ > DJ on top of the trump class; plain suits order
// A,10,K,Q,9,8,7; null games order A,K,Q,J,10,9,8,7.
int TrickPower(GameType type, Card c);

// Cards of `hand` that may be played when `led` (invalid card = leading).
CardSet FollowingCards(GameType type, CardSet hand, Card led);

struct Trick {
  int leader = 0;
  std::array<Card, kNumPlayers> cards;  // in play order from the leader

  int Eyes() const {
    return cards[0].Eyes() + cards[1].Eyes() + cards[2].Eyes();
  }
};

// Seat index of the trick winner under Skat ordering.
int TrickWinner(const Trick& trick, GameType type);

struct Announcements {
  bool hand = false;
  bool schneider = false;           // achieved (value computation input)
  bool schneider_announced = false;
  bool schwarz = false;
  bool schwarz_announced = false;
  bool ouvert = false;
};

// Matador run: length of the unbroken top-trump sequence from CJ that the
// declarer holds ("with") or misses ("without").
struct Matadors {
  int count = 0;
  bool with = false;  // true when CJ is held
  // Contract level fields use the signed form: +count with, -count without.
  int Signed() const { return with ? count : -count; }
};
Matadors MatadorCount(CardSet declarer_cards, GameType type);

// Contract value. Trump games: base * (matadors + 1 + hand + schneider
// (+announced) + schwarz (+announced) + ouvert); null games: fixed values.
int GameValue(GameType type, int matadors, const Announcements& ann);

struct GameOutcome {
  bool declarer_won = false;
  int declarer_eyes = 0;  // 0..120, includes skat
  bool schneider = false; // losing side held at most 30 eyes
  bool schwarz = false;   // losing side took no trick
};

// Play state for one game after the discard. Declarer eyes start at the
// skat eyes; the eyes partition over hands, trick and banks stays at 120
// for trump games.
class GameState {
 public:
  GameState(GameType type, int declarer, int forehand,
            const std::array<CardSet, kNumPlayers>& hands, int skat_eyes,
            int matadors = 0, const Announcements& announcements = {});

  GameType type() const { return type_; }
  int declarer() const { return declarer_; }
  int to_move() const { return to_move_; }
  CardSet hand(int player) const { return hands_[player]; }
  int declarer_eyes() const { return declarer_eyes_; }
  int opponent_eyes() const { return opponent_eyes_; }
  int declarer_tricks() const { return declarer_tricks_; }
  int opponent_tricks() const { return opponent_tricks_; }
  const std::vector<Trick>& history() const { return history_; }
  const Trick& current_trick() const { return current_; }
  int cards_in_trick() const { return cards_in_trick_; }

  CardSet LegalMoves(int player) const;
  void Play(Card c);

  // Null games are over as soon as the declarer takes a trick.
  bool Finished() const;
  GameOutcome Outcome(int contract_bid) const;

  // Eyes in hands + current trick + both banks; 120 for trump games.
  int EyesInPlay() const;

 private:
  GameType type_;
  int declarer_;
  std::array<CardSet, kNumPlayers> hands_;
  int to_move_;
  Trick current_;
  int cards_in_trick_ = 0;
  int declarer_eyes_;
  int opponent_eyes_ = 0;
  int declarer_tricks_ = 0;
  int opponent_tricks_ = 0;
  std::vector<Trick> history_;
  bool null_loss_ = false;
  int matadors_ = 0;
  Announcements announcements_;
};

// One line of a series result: who declared, whether they won, at which
// contract value.
struct SeriesGame {
  int declarer = 0;
  bool declarer_won = false;
  int game_value = 0;
};

// Seeger-Fabian totals per seat (3-player table): declarer win adds
// value + 50, a loss costs 2 * value + 50, and each opponent of a lost
// game collects 40.
std::array<int64_t, kNumPlayers> SeegerFabianScore(
    std::span<const SeriesGame> series);

// Standard bid ladder: all attainable contract values in ascending order.
const std::vector<int>& BidLadder();

}  // namespace skat

#endif  // SKATLAB_RULES_H_

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

#ifndef SKATLAB_FEATURES_H_
#define SKATLAB_FEATURES_H_

#include <optional>
#include <string>
#include <vector>

#include "skat/cards.h"
#include "skat/pgn.h"
#include "skat/phash.h"
#include "skat/rules.h"

namespace skat {

// The decision questions backed by statistics tables.
enum class Question {
  kDeclarerSuit = 0,
  kDeclarerGrand = 1,
  kNullPerSuit = 2,
  kOpeningSuit = 3,
  kOpeningGrand = 4,
};
inline constexpr int kNumQuestions = 5;

const char* QuestionName(Question q);
std::optional<Question> QuestionFromName(const std::string& name);
const FeatureSchema& SchemaFor(Question q);

// Trailing fields dropped from a foreground schema to form the always-
// answerable background schema.
inline constexpr int kBackgroundFieldsDropped = 3;

// --- Declarer hand features -------------------------------------------------
//
// The concrete feature clusterings below are this project's own choices;
// they live here so the hashing and table machinery never depends on them.

// Highest opposing bid, classed through {0,18,20,24,30,36,48,60}.
uint32_t BiddingValueClass(int highest_opposing_bid);
// Eyes banked in the discard, classed through
// {0, 1-4, 5-8, 9-12, 13-16, 17-20, 21, 22}. Hand games bank nothing and
// use class 0.
uint32_t SkatValueClass(int skat_eyes);
// Jack bitmask, CJ=8 SJ=4 HJ=2 DJ=1.
uint32_t JacksGroup(CardSet cards);

struct DeclarerContext {
  CardSet kept;             // cards the declarer plays with
  CardSet put;              // discarded cards (empty for hand games)
  int highest_opposing_bid = 0;
  int declarer_position = 0;  // seats after forehand, 0..2
  bool hand_game = false;
};

// numberoftrumps, jacksgroup, trumptenaces, nontrumpaces, nontrumptens,
// lostcards, biddingvalue, skatvalue, numberoffreesuits.
FeatureVector SuitDeclarerVector(const DeclarerContext& ctx, Suit trump);

// jacksgroup, numberofaces, numberoftens, lostcards, biddingvalue,
// posplayer, skatvalue.
FeatureVector GrandDeclarerVector(const DeclarerContext& ctx);

// --- Null features ----------------------------------------------------------

// Null variant index: null 0, null hand 1, null ouvert 2, null ouvert hand 3.
uint32_t NullVariantIndex(GameType type);

// holding (8-bit suit bitmask, rank index order), variant, declarertomove,
// discardedinsuit — one vector per suit of the declarer's playing hand.
FeatureVector NullSuitVector(CardSet kept, CardSet put, Suit suit,
                             GameType type, bool declarer_to_move);

// --- Opening-card features --------------------------------------------------

struct OpeningContext {
  CardSet opener_hand;        // opener's ten cards before the lead
  Card led;                   // the opening card
  int opener_seat = 0;
  int declarer_seat = 0;
  int partner_bid = 0;        // final bid value of the opener's partner
  int opponents_trump_count = 0;  // both defenders combined (suit games)
};

// trumpstrength, openinglength, hasace, hasten, tableposition,
// partnerbidsuit, aceplayed.
FeatureVector OpeningSuitVector(const OpeningContext& ctx, Suit trump);

// position, openinglength, partnerbidsuit, jackscode, hasace, hasten,
// aceplayed.
FeatureVector OpeningGrandVector(const OpeningContext& ctx);

// --- Record-level extraction ------------------------------------------------

// True when the record cannot feed the question's table (wrong game type,
// folded, or a missing stage such as an absent first trick).
bool ExcludeFromQuestion(Question q, const Deal& deal,
                         const pgn::GameRecord& record);

// Feature vectors the record contributes to the question's table: one for
// declarer and opening questions, one per suit for null games, none when
// excluded. Deterministic in its inputs.
std::vector<FeatureVector> ExtractForQuestion(Question q, const Deal& deal,
                                              const pgn::GameRecord& record);

// --- Question-level lookups -------------------------------------------------

class LayeredTable;

// Product over the four suits of the per-suit null winning probabilities.
double NullWinProbability(CardSet kept, CardSet put, GameType type,
                          bool declarer_to_move, const LayeredTable& table);

enum class UnderAceAnswer { kPlayAce, kPlayUnderAce, kInsufficientData };

class WinningTable;

// Compares the two foreground buckets that differ only in the aceplayed
// bit. Buckets qualify with at least the table's confidence threshold of
// games; ties keep the ace back as a stopper.
UnderAceAnswer AnswerUnderAce(const WinningTable& foreground,
                              const FeatureVector& context_with_ace_unset);

}  // namespace skat

#endif  // SKATLAB_FEATURES_H_

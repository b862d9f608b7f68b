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

#include "skat/features.h"

#include <algorithm>
#include <stdexcept>

#include "skat/tables.h"

namespace skat {
namespace {

constexpr uint32_t kBidThresholds[8] = {0, 18, 20, 24, 30, 36, 48, 60};

uint32_t Clip(int value, uint32_t max_value) {
  if (value < 0) return 0;
  return std::min(static_cast<uint32_t>(value), max_value);
}

CardSet SuitCardsNoJack(CardSet cards, Suit suit) {
  CardSet result;
  for (Card c : cards) {
    if (c.suit() == suit && c.rank() != Rank::kJack) result.Add(c);
  }
  return result;
}

// Cards in plain suits that will not take a trick by themselves: anything
// beyond the ace and an ace-guarded ten counts as a likely loser. A
// deliberately simple stand-in, kept in one place so it can be revised
// without touching the tables.
uint32_t LostCards(CardSet kept, GameType type) {
  int losers = 0;
  for (int s = 0; s < kNumSuits; ++s) {
    const Suit suit = static_cast<Suit>(s);
    if (type.IsSuit() && suit == type.trump_suit()) continue;
    const CardSet in_suit = SuitCardsNoJack(kept, suit);
    if (in_suit.Empty()) continue;
    const bool has_ace = in_suit.Contains(Card(suit, Rank::kAce));
    const bool has_ten = in_suit.Contains(Card(suit, Rank::kTen));
    const int winners = (has_ace ? 1 : 0) + ((has_ace && has_ten) ? 1 : 0);
    losers += in_suit.Count() - winners;
  }
  return Clip(losers, 7);
}

int TrumpTenaces(CardSet kept, GameType type) {
  std::vector<Card> order = {
      Card(Suit::kClubs, Rank::kJack), Card(Suit::kSpades, Rank::kJack),
      Card(Suit::kHearts, Rank::kJack), Card(Suit::kDiamonds, Rank::kJack)};
  if (type.IsSuit()) {
    for (Rank r : {Rank::kAce, Rank::kTen, Rank::kKing, Rank::kQueen,
                   Rank::kNine, Rank::kEight, Rank::kSeven}) {
      order.emplace_back(type.trump_suit(), r);
    }
  }
  int pairs = 0;
  for (size_t i = 0; i + 1 < order.size(); ++i) {
    if (kept.Contains(order[i]) && kept.Contains(order[i + 1])) ++pairs;
  }
  return pairs;
}

}  // namespace

const char* QuestionName(Question q) {
  switch (q) {
    case Question::kDeclarerSuit: return "declarer_suit";
    case Question::kDeclarerGrand: return "declarer_grand";
    case Question::kNullPerSuit: return "null_per_suit";
    case Question::kOpeningSuit: return "opening_suit";
    case Question::kOpeningGrand: return "opening_grand";
  }
  return "unknown";
}

std::optional<Question> QuestionFromName(const std::string& name) {
  for (int i = 0; i < kNumQuestions; ++i) {
    const Question q = static_cast<Question>(i);
    if (name == QuestionName(q)) return q;
  }
  return std::nullopt;
}

const FeatureSchema& SchemaFor(Question q) {
  static const FeatureSchema kDeclarerSuitSchema(
      "declarer_suit", {{"numberoftrumps", 12},
                        {"jacksgroup", 16},
                        {"trumptenaces", 4},
                        {"nontrumpaces", 4},
                        {"nontrumptens", 4},
                        {"lostcards", 8},
                        {"biddingvalue", 8},
                        {"skatvalue", 8},
                        {"numberoffreesuits", 4}});
  static const FeatureSchema kDeclarerGrandSchema(
      "declarer_grand", {{"jacksgroup", 16},
                         {"numberofaces", 5},
                         {"numberoftens", 5},
                         {"lostcards", 8},
                         {"biddingvalue", 8},
                         {"posplayer", 3},
                         {"skatvalue", 8}});
  static const FeatureSchema kNullSchema("null_per_suit",
                                         {{"holding", 256},
                                          {"variant", 4},
                                          {"declarertomove", 2},
                                          {"discardedinsuit", 3}});
  static const FeatureSchema kOpeningSuitSchema("opening_suit",
                                                {{"trumpstrength", 3},
                                                 {"openinglength", 8},
                                                 {"hasace", 2},
                                                 {"hasten", 2},
                                                 {"tableposition", 2},
                                                 {"partnerbidsuit", 2},
                                                 {"aceplayed", 2}});
  static const FeatureSchema kOpeningGrandSchema("opening_grand",
                                                 {{"position", 2},
                                                  {"openinglength", 8},
                                                  {"partnerbidsuit", 2},
                                                  {"jackscode", 16},
                                                  {"hasace", 2},
                                                  {"hasten", 2},
                                                  {"aceplayed", 2}});
  switch (q) {
    case Question::kDeclarerSuit: return kDeclarerSuitSchema;
    case Question::kDeclarerGrand: return kDeclarerGrandSchema;
    case Question::kNullPerSuit: return kNullSchema;
    case Question::kOpeningSuit: return kOpeningSuitSchema;
    case Question::kOpeningGrand: return kOpeningGrandSchema;
  }
  throw std::invalid_argument("unknown question");
}

uint32_t BiddingValueClass(int highest_opposing_bid) {
  uint32_t cls = 0;
  for (uint32_t i = 1; i < 8; ++i) {
    if (static_cast<uint32_t>(std::max(highest_opposing_bid, 0)) >=
        kBidThresholds[i]) {
      cls = i;
    }
  }
  return cls;
}

uint32_t SkatValueClass(int skat_eyes) {
  if (skat_eyes <= 0) return 0;
  if (skat_eyes >= 22) return 7;
  if (skat_eyes == 21) return 6;
  return 1 + (skat_eyes - 1) / 4;  // 1-4, 5-8, 9-12, 13-16, 17-20
}

uint32_t JacksGroup(CardSet cards) {
  uint32_t mask = 0;
  for (int s = 0; s < kNumSuits; ++s) {
    if (cards.Contains(Card(static_cast<Suit>(s), Rank::kJack))) {
      mask |= 1u << (3 - s);
    }
  }
  return mask;
}

FeatureVector SuitDeclarerVector(const DeclarerContext& ctx, Suit trump) {
  const GameType type = GameType::SuitGame(trump);
  uint32_t trumps = 0;
  for (Card c : ctx.kept) {
    if (TrickClass(type, c) == kTrumpClass) ++trumps;
  }
  uint32_t aces = 0, tens = 0, free_suits = 0;
  for (int s = 0; s < kNumSuits; ++s) {
    const Suit suit = static_cast<Suit>(s);
    if (suit == trump) continue;
    const CardSet in_suit = SuitCardsNoJack(ctx.kept, suit);
    if (in_suit.Empty()) ++free_suits;
    if (in_suit.Contains(Card(suit, Rank::kAce))) ++aces;
    if (in_suit.Contains(Card(suit, Rank::kTen))) ++tens;
  }
  const int skat_eyes = ctx.hand_game ? 0 : ctx.put.TotalEyes();
  return FeatureVector{
      Clip(trumps, 11),
      JacksGroup(ctx.kept),
      Clip(TrumpTenaces(ctx.kept, type), 3),
      Clip(aces, 3),
      Clip(tens, 3),
      LostCards(ctx.kept, type),
      BiddingValueClass(ctx.highest_opposing_bid),
      SkatValueClass(skat_eyes),
      Clip(free_suits, 3)};
}

FeatureVector GrandDeclarerVector(const DeclarerContext& ctx) {
  const GameType type = GameType::Grand();
  uint32_t aces = 0, tens = 0;
  for (Card c : ctx.kept) {
    if (c.rank() == Rank::kAce) ++aces;
    if (c.rank() == Rank::kTen) ++tens;
  }
  const int skat_eyes = ctx.hand_game ? 0 : ctx.put.TotalEyes();
  return FeatureVector{JacksGroup(ctx.kept),
                       Clip(aces, 4),
                       Clip(tens, 4),
                       LostCards(ctx.kept, type),
                       BiddingValueClass(ctx.highest_opposing_bid),
                       static_cast<uint32_t>(ctx.declarer_position),
                       SkatValueClass(skat_eyes)};
}

uint32_t NullVariantIndex(GameType type) {
  switch (type.code()) {
    case GameType::kNullCode: return 0;
    case GameType::kNullHandCode: return 1;
    case GameType::kNullOuvertCode: return 2;
    case GameType::kNullOuvertHandCode: return 3;
    default:
      throw std::invalid_argument("not a null game");
  }
}

FeatureVector NullSuitVector(CardSet kept, CardSet put, Suit suit,
                             GameType type, bool declarer_to_move) {
  uint32_t holding = 0;
  for (Card c : kept) {
    if (c.suit() == suit) holding |= 1u << static_cast<int>(c.rank());
  }
  uint32_t discarded = 0;
  for (Card c : put) {
    if (c.suit() == suit) ++discarded;
  }
  return FeatureVector{holding, NullVariantIndex(type),
                       declarer_to_move ? 1u : 0u, discarded};
}

namespace {

struct OpeningSuitInfo {
  bool plain_lead = false;  // the led card is not a trump
  Suit suit = Suit::kClubs;
  uint32_t length = 0;
  uint32_t has_ace = 0;
  uint32_t has_ten = 0;
  uint32_t ace_played = 0;
  uint32_t partner_bid_suit = 0;
};

OpeningSuitInfo AnalyzeLead(const OpeningContext& ctx, GameType type) {
  OpeningSuitInfo info;
  if (TrickClass(type, ctx.led) == kTrumpClass) return info;
  info.plain_lead = true;
  info.suit = ctx.led.suit();
  const CardSet in_suit = SuitCardsNoJack(ctx.opener_hand, info.suit);
  info.length = Clip(in_suit.Count(), 7);
  const Card ace(info.suit, Rank::kAce);
  info.has_ace = in_suit.Contains(ace) ? 1 : 0;
  info.has_ten = in_suit.Contains(Card(info.suit, Rank::kTen)) ? 1 : 0;
  info.ace_played = ctx.led == ace ? 1 : 0;
  // Final bid values are all the bidding leaves behind, so "partner bid
  // this suit as trump" is approximated by divisibility by its base value.
  const int base = GameType::SuitGame(info.suit).BaseValue();
  info.partner_bid_suit =
      ctx.partner_bid > 0 && ctx.partner_bid % base == 0 ? 1 : 0;
  return info;
}

uint32_t TablePosition(const OpeningContext& ctx) {
  // 0 when the declarer plays directly after the opener.
  return (ctx.opener_seat + 1) % kNumPlayers == ctx.declarer_seat ? 0 : 1;
}

}  // namespace

FeatureVector OpeningSuitVector(const OpeningContext& ctx, Suit trump) {
  const GameType type = GameType::SuitGame(trump);
  const OpeningSuitInfo lead = AnalyzeLead(ctx, type);
  uint32_t strength;  // combined defender trumps, clustered
  if (ctx.opponents_trump_count <= 2) {
    strength = 0;
  } else if (ctx.opponents_trump_count <= 4) {
    strength = 1;
  } else {
    strength = 2;
  }
  return FeatureVector{strength,        lead.length,
                       lead.has_ace,    lead.has_ten,
                       TablePosition(ctx), lead.partner_bid_suit,
                       lead.ace_played};
}

FeatureVector OpeningGrandVector(const OpeningContext& ctx) {
  const OpeningSuitInfo lead = AnalyzeLead(ctx, GameType::Grand());
  return FeatureVector{TablePosition(ctx), lead.length,
                       lead.partner_bid_suit, JacksGroup(ctx.opener_hand),
                       lead.has_ace,          lead.has_ten,
                       lead.ace_played};
}

bool ExcludeFromQuestion(Question q, const Deal& deal,
                         const pgn::GameRecord& record) {
  if (record.folded) return true;
  const GameType type = record.Type();
  switch (q) {
    case Question::kDeclarerSuit:
      return !type.IsSuit();
    case Question::kDeclarerGrand:
      return !type.IsGrand();
    case Question::kNullPerSuit:
      return !type.IsNull();
    case Question::kOpeningSuit:
      return !type.IsSuit() || record.tricks.empty() ||
             deal.forehand == record.declarer;
    case Question::kOpeningGrand:
      return !type.IsGrand() || record.tricks.empty() ||
             deal.forehand == record.declarer;
  }
  return true;
}

std::vector<FeatureVector> ExtractForQuestion(Question q, const Deal& deal,
                                              const pgn::GameRecord& record) {
  if (ExcludeFromQuestion(q, deal, record)) return {};
  const GameType type = record.Type();

  if (q == Question::kDeclarerSuit || q == Question::kDeclarerGrand) {
    DeclarerContext ctx;
    ctx.hand_game = record.hand;
    ctx.kept = record.DeclarerPlayingHand();
    ctx.put = record.hand ? CardSet() : record.SkatPutSet();
    ctx.highest_opposing_bid = record.HighestOpposingBid();
    ctx.declarer_position =
        (record.declarer - deal.forehand + kNumPlayers) % kNumPlayers;
    if (q == Question::kDeclarerSuit) {
      return {SuitDeclarerVector(ctx, type.trump_suit())};
    }
    return {GrandDeclarerVector(ctx)};
  }

  if (q == Question::kNullPerSuit) {
    const CardSet kept = record.DeclarerPlayingHand();
    const CardSet put = record.hand ? CardSet() : record.SkatPutSet();
    const bool to_move = deal.forehand == record.declarer;
    std::vector<FeatureVector> vectors;
    vectors.reserve(kNumSuits);
    for (int s = 0; s < kNumSuits; ++s) {
      vectors.push_back(
          NullSuitVector(kept, put, static_cast<Suit>(s), type, to_move));
    }
    return vectors;
  }

  OpeningContext ctx;
  ctx.opener_seat = deal.forehand;
  ctx.declarer_seat = record.declarer;
  ctx.opener_hand = deal.hands[ctx.opener_seat];
  ctx.led = Card(record.tricks[0].cards[0]);
  for (int seat = 0; seat < kNumPlayers; ++seat) {
    if (seat != ctx.opener_seat && seat != ctx.declarer_seat) {
      ctx.partner_bid = record.bids[seat];
    }
  }
  if (q == Question::kOpeningSuit) {
    int defender_trumps = 0;
    for (int seat = 0; seat < kNumPlayers; ++seat) {
      if (seat == record.declarer) continue;
      for (Card c : deal.hands[seat]) {
        if (TrickClass(type, c) == kTrumpClass) ++defender_trumps;
      }
    }
    ctx.opponents_trump_count = defender_trumps;
    return {OpeningSuitVector(ctx, type.trump_suit())};
  }
  return {OpeningGrandVector(ctx)};
}

double NullWinProbability(CardSet kept, CardSet put, GameType type,
                          bool declarer_to_move, const LayeredTable& table) {
  double product = 1.0;
  for (int s = 0; s < kNumSuits; ++s) {
    product *= table.Lookup(
        NullSuitVector(kept, put, static_cast<Suit>(s), type,
                       declarer_to_move));
  }
  return product;
}

UnderAceAnswer AnswerUnderAce(const WinningTable& foreground,
                              const FeatureVector& context) {
  const FeatureSchema& schema = foreground.schema();
  int ace_field = -1;
  for (int i = 0; i < schema.FieldCount(); ++i) {
    if (schema.field(i).name == "aceplayed") ace_field = i;
  }
  if (ace_field < 0) {
    throw std::invalid_argument("table has no aceplayed feature");
  }
  FeatureVector with_ace = context;
  FeatureVector without_ace = context;
  with_ace[ace_field] = 1;
  without_ace[ace_field] = 0;
  const TableEntry* played = foreground.Find(schema.Rank(with_ace));
  const TableEntry* held_back = foreground.Find(schema.Rank(without_ace));
  const uint64_t need = foreground.confidence_threshold();
  const bool played_ok = played != nullptr && played->games >= need;
  const bool held_ok = held_back != nullptr && held_back->games >= need;
  if (!played_ok && !held_ok) return UnderAceAnswer::kInsufficientData;
  if (played_ok && !held_ok) return UnderAceAnswer::kPlayAce;
  if (!played_ok && held_ok) return UnderAceAnswer::kPlayUnderAce;
  return played->prob > held_back->prob ? UnderAceAnswer::kPlayAce
                                        : UnderAceAnswer::kPlayUnderAce;
}

}  // namespace skat

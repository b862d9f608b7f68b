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
#include <random>

#include "doctest.h"

namespace skat {
namespace {

Card C(const char* text) { return *Card::FromString(text); }

// Exhaustive comparator oracle: the winning card is the one that beats
// both others under a pairwise "beats when played later" relation.
int OracleTrickWinner(const Trick& trick, GameType type) {
  auto beats_earlier = [&](Card later, Card earlier) {
    const int lc = TrickClass(type, later);
    const int ec = TrickClass(type, earlier);
    if (lc == ec) return TrickPower(type, later) > TrickPower(type, earlier);
    return lc == kTrumpClass;
  };
  int best = 0;
  for (int i = 1; i < kNumPlayers; ++i) {
    if (beats_earlier(trick.cards[i], trick.cards[best])) best = i;
  }
  return (trick.leader + best) % kNumPlayers;
}

TEST_CASE("leading is unrestricted") {
  const CardSet hand = CardSet::FromCards({C("CA"), C("H7"), C("SJ")});
  CHECK(FollowingCards(GameType::SuitGame(Suit::kClubs), hand, Card()) ==
        hand);
}

TEST_CASE("must follow the led class when able") {
  const GameType clubs = GameType::SuitGame(Suit::kClubs);
  const CardSet hand = CardSet::FromCards({C("HK"), C("H8"), C("CA"), C("SJ")});
  const CardSet follow = FollowingCards(clubs, hand, C("HA"));
  CHECK(follow.Count() == 2);
  for (Card c : follow) CHECK(c.suit() == Suit::kHearts);
}

TEST_CASE("void in the led class frees the whole hand") {
  const GameType clubs = GameType::SuitGame(Suit::kClubs);
  const CardSet hand = CardSet::FromCards({C("DA"), C("S7"), C("CQ")});
  CHECK(FollowingCards(clubs, hand, C("HA")) == hand);
}

TEST_CASE("jacks belong to the trump class, not their suit") {
  const GameType hearts = GameType::SuitGame(Suit::kHearts);
  // A heart jack in hand does not have to follow a spade lead; a spade
  // lead must be followed by plain spades only.
  const CardSet hand = CardSet::FromCards({C("SJ"), C("S8")});
  const CardSet follow = FollowingCards(hearts, hand, C("SA"));
  CHECK(follow.Count() == 1);
  CHECK(follow.Contains(C("S8")));
  // Jacks follow a trump lead.
  const CardSet trump_follow = FollowingCards(hearts, hand, C("H7"));
  CHECK(trump_follow.Count() == 1);
  CHECK(trump_follow.Contains(C("SJ")));
}

TEST_CASE("club jack tops a diamond trick in a diamond game") {
  Trick trick{.leader = 1, .cards = {C("D7"), C("DA"), C("CJ")}};
  CHECK(TrickWinner(trick, GameType::SuitGame(Suit::kDiamonds)) ==
        (1 + 2) % 3);
}

TEST_CASE("null ordering puts the jack between queen and ten") {
  Trick trick{.leader = 0, .cards = {C("HT"), C("HJ"), C("H7")}};
  CHECK(TrickWinner(trick, GameType(GameType::kNullCode)) == 1);
  Trick trick2{.leader = 0, .cards = {C("HQ"), C("HJ"), C("H7")}};
  CHECK(TrickWinner(trick2, GameType(GameType::kNullCode)) == 0);
}

TEST_CASE("grand: highest card of the led suit wins without trumps") {
  Trick trick{.leader = 2, .cards = {C("HA"), C("H7"), C("H8")}};
  CHECK(TrickWinner(trick, GameType::Grand()) == 2);
}

TEST_CASE("trick winner matches the exhaustive comparator oracle") {
  std::mt19937_64 rng(1234);
  const std::vector<GameType> types = {
      GameType::SuitGame(Suit::kClubs), GameType::SuitGame(Suit::kSpades),
      GameType::SuitGame(Suit::kHearts), GameType::SuitGame(Suit::kDiamonds),
      GameType::Grand(), GameType(GameType::kNullCode)};
  for (int iteration = 0; iteration < 5000; ++iteration) {
    std::array<int, kNumCards> deck;
    for (int i = 0; i < kNumCards; ++i) deck[i] = i;
    std::shuffle(deck.begin(), deck.end(), rng);
    Trick trick;
    trick.leader = static_cast<int>(rng() % 3);
    for (int i = 0; i < kNumPlayers; ++i) trick.cards[i] = Card(deck[i]);
    for (GameType type : types) {
      CHECK(TrickWinner(trick, type) == OracleTrickWinner(trick, type));
    }
  }
}

TEST_CASE("trick winner is invariant under seat rotation") {
  std::mt19937_64 rng(77);
  for (int iteration = 0; iteration < 2000; ++iteration) {
    std::array<int, kNumCards> deck;
    for (int i = 0; i < kNumCards; ++i) deck[i] = i;
    std::shuffle(deck.begin(), deck.end(), rng);
    Trick trick;
    trick.leader = 0;
    for (int i = 0; i < kNumPlayers; ++i) trick.cards[i] = Card(deck[i]);
    const GameType type = GameType::Grand();
    const int base = TrickWinner(trick, type);
    for (int rot = 1; rot < kNumPlayers; ++rot) {
      Trick rotated = trick;
      rotated.leader = rot;
      CHECK(TrickWinner(rotated, type) == (base + rot) % kNumPlayers);
    }
  }
}

TEST_CASE("incomplete trick is rejected") {
  Trick trick;
  trick.cards[0] = C("CA");
  CHECK_THROWS(TrickWinner(trick, GameType::Grand()));
}

TEST_CASE("null game values are fixed") {
  CHECK(GameValue(GameType(GameType::kNullCode), 0, {}) == 23);
  CHECK(GameValue(GameType(GameType::kNullOuvertCode), 0, {}) == 46);
  CHECK(GameValue(GameType(GameType::kNullHandCode), 0, {}) == 35);
  CHECK(GameValue(GameType(GameType::kNullOuvertHandCode), 0, {}) == 59);
}

TEST_CASE("trump game values from the rule table") {
  CHECK(GameValue(GameType::SuitGame(Suit::kDiamonds), 1, {}) == 18);
  Announcements hand_only{.hand = true};
  CHECK(GameValue(GameType::Grand(), 4, hand_only) == 24 * 6);
  Announcements loaded{.hand = true,
                       .schneider = true,
                       .schneider_announced = true,
                       .schwarz = true,
                       .schwarz_announced = true,
                       .ouvert = true};
  CHECK(GameValue(GameType::SuitGame(Suit::kClubs), 2, loaded) == 12 * 9);
}

TEST_CASE("matador counting with and without") {
  const GameType clubs = GameType::SuitGame(Suit::kClubs);
  // With CJ SJ and then a hole at HJ.
  CardSet with2 = CardSet::FromCards({C("CJ"), C("SJ"), C("DJ"), C("CA")});
  Matadors m = MatadorCount(with2, clubs);
  CHECK(m.with);
  CHECK(m.count == 2);
  CHECK(m.Signed() == 2);
  // Without CJ, SJ, HJ: first held trump is DJ.
  CardSet without3 = CardSet::FromCards({C("DJ"), C("CA"), C("CT")});
  m = MatadorCount(without3, clubs);
  CHECK(!m.with);
  CHECK(m.count == 3);
  CHECK(m.Signed() == -3);
  // Suit matadors continue into the trump suit: CJ SJ HJ DJ CA CT = 6.
  CardSet run =
      CardSet::FromCards({C("CJ"), C("SJ"), C("HJ"), C("DJ"), C("CA"),
                          C("CT"), C("C7")});
  m = MatadorCount(run, clubs);
  CHECK(m.with);
  CHECK(m.count == 6);
  // Grand is capped at the four jacks.
  m = MatadorCount(run, GameType::Grand());
  CHECK(m.count == 4);
}

GameState PlayedOutGame(GameType type, int declarer, uint64_t seed,
                        int* skat_eyes_out = nullptr) {
  // Random complete playout used by outcome tests.
  std::mt19937_64 rng(seed);
  std::array<int, kNumCards> deck;
  for (int i = 0; i < kNumCards; ++i) deck[i] = i;
  std::shuffle(deck.begin(), deck.end(), rng);
  std::array<CardSet, kNumPlayers> hands;
  for (int p = 0; p < kNumPlayers; ++p) {
    for (int i = 0; i < kHandSize; ++i) hands[p].Add(Card(deck[p * 10 + i]));
  }
  const int skat_eyes = Card(deck[30]).Eyes() + Card(deck[31]).Eyes();
  if (skat_eyes_out != nullptr) *skat_eyes_out = skat_eyes;
  GameState state(type, declarer, 0, hands, skat_eyes);
  while (!state.Finished()) {
    const CardSet legal = state.LegalMoves(state.to_move());
    std::vector<Card> moves = legal.Cards();
    state.Play(moves[rng() % moves.size()]);
    CHECK(state.EyesInPlay() == kTotalEyes);
  }
  return state;
}

TEST_CASE("eyes are conserved through random playouts") {
  for (uint64_t seed = 0; seed < 200; ++seed) {
    GameState state = PlayedOutGame(GameType::SuitGame(Suit::kHearts),
                                    static_cast<int>(seed % 3), seed);
    const GameOutcome out = state.Outcome(0);
    CHECK(state.declarer_eyes() + state.opponent_eyes() == kTotalEyes);
    CHECK(out.declarer_eyes >= 0);
    CHECK(out.declarer_eyes <= kTotalEyes);
    CHECK(out.declarer_won == (out.declarer_eyes >= 61));
  }
}

TEST_CASE("sixty eyes lose, sixty-one would win") {
  // Outcome thresholds, driven directly.
  for (uint64_t seed = 0; seed < 400; ++seed) {
    GameState state = PlayedOutGame(GameType::Grand(), 1, seed);
    const GameOutcome out = state.Outcome(0);
    if (out.declarer_eyes == 60) CHECK(!out.declarer_won);
    if (out.declarer_eyes == 61) CHECK(out.declarer_won);
  }
}

TEST_CASE("null game ends at the declarer's first trick") {
  std::array<CardSet, kNumPlayers> hands;
  // Declarer (seat 0) holds only aces and kings; they must take the lead.
  hands[0] = CardSet::FromCards({C("CA"), C("SA"), C("HA"), C("DA"), C("CK"),
                                 C("SK"), C("HK"), C("DK"), C("CQ"), C("SQ")});
  hands[1] = CardSet::FromCards({C("C7"), C("S7"), C("H7"), C("D7"), C("C8"),
                                 C("S8"), C("H8"), C("D8"), C("C9"), C("S9")});
  hands[2] = CardSet::FromCards({C("H9"), C("D9"), C("CT"), C("ST"), C("HT"),
                                 C("DT"), C("CJ"), C("SJ"), C("HJ"), C("DJ")});
  GameState state(GameType(GameType::kNullCode), 0, 0, hands, 0);
  state.Play(C("CA"));
  state.Play(C("C7"));
  state.Play(C("CT"));
  CHECK(state.Finished());
  CHECK(!state.Outcome(0).declarer_won);
  CHECK(state.declarer_tricks() == 1);
}

TEST_CASE("overbid loses despite enough eyes") {
  for (uint64_t seed = 0; seed < 300; ++seed) {
    int skat_eyes = 0;
    GameState state =
        PlayedOutGame(GameType::SuitGame(Suit::kDiamonds), 0, seed, &skat_eyes);
    const GameOutcome honest = state.Outcome(0);
    if (honest.declarer_won && !honest.schneider) {
      // No value a diamond game can reach covers a bid of 1000.
      const GameOutcome overbid = state.Outcome(1000);
      CHECK(!overbid.declarer_won);
      break;
    }
  }
}

TEST_CASE("declarer and opponents never both win") {
  for (uint64_t seed = 500; seed < 1000; ++seed) {
    GameState state = PlayedOutGame(GameType::SuitGame(Suit::kClubs),
                                    static_cast<int>(seed % 3), seed);
    const GameOutcome out = state.Outcome(0);
    const bool opponents_won = state.opponent_eyes() >= 60;
    CHECK(out.declarer_won == !opponents_won);
  }
}

TEST_CASE("seeger-fabian scoring") {
  SUBCASE("empty series") {
    auto totals = SeegerFabianScore({});
    CHECK(totals == std::array<int64_t, 3>{0, 0, 0});
  }
  SUBCASE("single won diamond game of value 18") {
    std::vector<SeriesGame> series = {{.declarer = 1,
                                       .declarer_won = true,
                                       .game_value = 18}};
    auto totals = SeegerFabianScore(series);
    CHECK(totals[1] == 68);
    CHECK(totals[0] == 0);
    CHECK(totals[2] == 0);
  }
  SUBCASE("single lost game of value 18") {
    std::vector<SeriesGame> series = {{.declarer = 1,
                                       .declarer_won = false,
                                       .game_value = 18}};
    auto totals = SeegerFabianScore(series);
    CHECK(totals[1] == -86);
    CHECK(totals[0] == 40);
    CHECK(totals[2] == 40);
  }
}

TEST_CASE("bid ladder starts with the standard steps") {
  const std::vector<int>& ladder = BidLadder();
  REQUIRE(ladder.size() > 10);
  CHECK(ladder[0] == 18);
  CHECK(ladder[1] == 20);
  CHECK(ladder[2] == 22);
  CHECK(ladder[3] == 23);
  CHECK(ladder[4] == 24);
  CHECK(ladder[5] == 27);
  CHECK(std::find(ladder.begin(), ladder.end(), 59) != ladder.end());
  CHECK(std::is_sorted(ladder.begin(), ladder.end()));
}

}  // namespace
}  // namespace skat

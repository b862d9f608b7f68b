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

#include <random>

#include "test_support.h"

#include "doctest.h"

namespace skat {
namespace {

Card C(const char* text) { return *Card::FromString(text); }

const std::vector<GameType> kTrumpTypes = {
    GameType::SuitGame(Suit::kClubs), GameType::SuitGame(Suit::kSpades),
    GameType::SuitGame(Suit::kHearts), GameType::SuitGame(Suit::kDiamonds),
    GameType::Grand()};

TEST_CASE("single-card endgame: highest trump takes the last trick") {
  OpenPosition pos;
  pos.type = GameType::SuitGame(Suit::kHearts);
  pos.declarer = 0;
  pos.leader = 0;
  pos.hands[0] = CardSet::FromCards({C("CJ")});
  pos.hands[1] = CardSet::FromCards({C("HA")});
  pos.hands[2] = CardSet::FromCards({C("SA")});
  pos.declarer_banked_eyes = 40;
  OpenSolver solver;
  const SolverVerdict verdict = solver.Solve(pos);
  // CJ wins the trick: 2 + 11 + 11 eyes on top of the bank.
  CHECK(verdict.best_eyes == 40 + 24);
  CHECK(verdict.declarer_can_win);
  REQUIRE(verdict.principal_variation.size() == 1);
  CHECK(verdict.principal_variation[0] == C("CJ"));
}

TEST_CASE("solver equals plain minimax on random endgames") {
  std::mt19937_64 rng(2025);
  OpenSolver solver;
  for (int i = 0; i < 150; ++i) {
    const GameType type = kTrumpTypes[rng() % kTrumpTypes.size()];
    const int per_hand = 1 + static_cast<int>(rng() % 4);
    const OpenPosition pos = test::RandomEndgame(type, per_hand, rng);
    solver.NewSearch();
    const SolverVerdict verdict = solver.Solve(pos);
    CHECK(verdict.best_eyes == test::OracleBestEyes(pos));
    CHECK(verdict.declarer_can_win == (verdict.best_eyes >= 61));
    CHECK(solver.DeclarerCanWin(pos) == verdict.declarer_can_win);
  }
}

TEST_CASE("null solver equals the avoid-all-tricks oracle") {
  std::mt19937_64 rng(4);
  OpenSolver solver;
  for (int i = 0; i < 150; ++i) {
    OpenPosition pos = test::RandomEndgame(GameType(GameType::kNullCode),
                                           1 + static_cast<int>(rng() % 4),
                                           rng);
    pos.declarer_banked_eyes = 0;
    solver.NewSearch();
    CHECK(solver.DeclarerCanWin(pos) == test::OracleNullAvoid(pos));
  }
}

TEST_CASE("mid-trick positions solve correctly too") {
  std::mt19937_64 rng(77);
  OpenSolver solver;
  for (int i = 0; i < 100; ++i) {
    const GameType type = kTrumpTypes[rng() % kTrumpTypes.size()];
    OpenPosition pos = test::RandomEndgame(type, 2 + (rng() % 2), rng);
    // Play one legal card to produce a one-card trick.
    const int mover = pos.ToMove();
    const CardSet legal = FollowingCards(type, pos.hands[mover], Card());
    std::vector<Card> cards = legal.Cards();
    ApplyMoveOpen(pos, cards[rng() % cards.size()]);
    solver.NewSearch();
    CHECK(solver.Solve(pos).best_eyes == test::OracleBestEyes(pos));
  }
}

TEST_CASE("repeated solves are bit-identical") {
  std::mt19937_64 rng(5);
  const OpenPosition pos =
      test::RandomEndgame(GameType::Grand(), 5, rng);
  OpenSolver a, b;
  const SolverVerdict va = a.Solve(pos);
  const SolverVerdict vb = b.Solve(pos);
  a.NewSearch();
  const SolverVerdict va2 = a.Solve(pos);
  CHECK(va == vb);
  CHECK(va == va2);
  CHECK(va.principal_variation == vb.principal_variation);
}

TEST_CASE("verdict is invariant under seat rotation") {
  std::mt19937_64 rng(6);
  OpenSolver solver;
  for (int i = 0; i < 60; ++i) {
    const GameType type = kTrumpTypes[rng() % kTrumpTypes.size()];
    const OpenPosition pos = test::RandomEndgame(type, 4, rng);
    solver.NewSearch();
    const SolverVerdict base = solver.Solve(pos);
    for (int rot = 1; rot < kNumPlayers; ++rot) {
      OpenPosition rotated = pos;
      rotated.declarer = (pos.declarer + rot) % kNumPlayers;
      rotated.leader = (pos.leader + rot) % kNumPlayers;
      for (int seat = 0; seat < kNumPlayers; ++seat) {
        rotated.hands[(seat + rot) % kNumPlayers] = pos.hands[seat];
      }
      solver.NewSearch();
      const SolverVerdict moved = solver.Solve(rotated);
      CHECK(moved.best_eyes == base.best_eyes);
      CHECK(moved.declarer_can_win == base.declarer_can_win);
    }
  }
}

TEST_CASE("null game with the bottom of every suit is unbeatable") {
  OpenPosition pos;
  pos.type = GameType(GameType::kNullCode);
  pos.declarer = 0;
  pos.leader = 1;
  pos.hands[0] = CardSet::FromCards({C("C7"), C("C8"), C("C9"), C("CT"),
                                     C("S7"), C("S8"), C("S9"), C("H7"),
                                     C("H8"), C("H9")});
  // Opponents split the rest; the two cards left over sit in the skat.
  const std::vector<Card> rest = FullDeck().Minus(pos.hands[0]).Cards();
  for (int i = 0; i < 10; ++i) pos.hands[1].Add(rest[i]);
  for (int i = 10; i < 20; ++i) pos.hands[2].Add(rest[i]);
  OpenSolver solver;
  CHECK(solver.DeclarerCanWin(pos));
}

TEST_CASE("predicted outcome on constructed records") {
  std::mt19937_64 rng(8);
  OpenSolver solver;

  auto build_record = [&](const std::array<CardSet, 3>& hands, CardSet skat,
                          GameType type, int declarer,
                          int forehand) -> pgn::GameRecord {
    pgn::GameRecord r;
    r.id = 0;
    r.game_code = type.code();
    r.declarer = declarer;
    for (int p = 0; p < kNumPlayers; ++p) {
      const std::vector<Card> cards = hands[p].Cards();
      for (int i = 0; i < kHandSize; ++i) {
        r.hands[p][i] = static_cast<uint8_t>(cards[i].index());
      }
    }
    const std::vector<Card> skat_cards = skat.Cards();
    r.skat_taken = {static_cast<uint8_t>(skat_cards[0].index()),
                    static_cast<uint8_t>(skat_cards[1].index())};
    r.skat_put = r.skat_taken;
    // One structural trick so the leader can be reconstructed.
    Trick first;
    first.leader = forehand;
    int next = 0;
    for (int j = 0; j < kNumPlayers; ++j) {
      const int seat = (forehand + j) % kNumPlayers;
      first.cards[j] = hands[seat].Cards()[next];
    }
    pgn::TrickRecord tr;
    int eyes = 0;
    for (int j = 0; j < kNumPlayers; ++j) {
      tr.cards[j] = static_cast<uint8_t>(first.cards[j].index());
      eyes += first.cards[j].Eyes();
    }
    tr.winner = static_cast<uint8_t>(TrickWinner(first, type));
    tr.eyes = tr.winner == declarer ? eyes : -eyes;
    r.tricks.push_back(tr);
    r.declarer_eyes = std::max(tr.eyes, 0);
    pgn::ValidateRecord(r);
    return r;
  };

  SUBCASE("four jacks, four aces and high tens force a grand win") {
    std::array<CardSet, 3> hands;
    hands[0] = CardSet::FromCards({C("CJ"), C("SJ"), C("HJ"), C("DJ"), C("CA"),
                                   C("SA"), C("HA"), C("DA"), C("CT"),
                                   C("ST")});
    CardSet rest = FullDeck().Minus(hands[0]);
    std::vector<Card> cards = rest.Cards();
    for (int i = 0; i < 10; ++i) hands[1].Add(cards[i]);
    for (int i = 10; i < 20; ++i) hands[2].Add(cards[i]);
    CardSet skat;
    skat.Add(cards[20]);
    skat.Add(cards[21]);
    const pgn::GameRecord record =
        build_record(hands, skat, GameType::Grand(), 0, 0);
    CHECK(PredictedOutcome(record, solver));
  }

  SUBCASE("bottom cards cannot win a club game") {
    std::array<CardSet, 3> hands;
    hands[0] = CardSet::FromCards({C("S7"), C("S8"), C("S9"), C("H7"), C("H8"),
                                   C("H9"), C("D7"), C("D8"), C("D9"),
                                   C("C7")});
    CardSet rest = FullDeck().Minus(hands[0]);
    std::vector<Card> cards = rest.Cards();
    for (int i = 0; i < 10; ++i) hands[1].Add(cards[i]);
    for (int i = 10; i < 20; ++i) hands[2].Add(cards[i]);
    CardSet skat;
    skat.Add(cards[20]);
    skat.Add(cards[21]);
    const pgn::GameRecord record = build_record(
        hands, skat, GameType::SuitGame(Suit::kClubs), 0, 1);
    CHECK(!PredictedOutcome(record, solver));
  }

  SUBCASE("folded records are rejected") {
    pgn::GameRecord folded = test::RandomStructuralRecord(3, rng);
    folded.folded = true;
    folded.tricks.clear();
    CHECK_THROWS(PredictedOutcome(folded, solver));
  }
}

TEST_CASE("a full ten-card deal solves to a sane exact value") {
  const std::vector<Deal> deals = GenerateDeals(31337, 2);
  OpenSolver solver;
  for (const Deal& deal : deals) {
    OpenPosition pos;
    pos.type = GameType::SuitGame(Suit::kClubs);
    pos.declarer = 0;
    pos.leader = deal.forehand;
    pos.hands = deal.hands;
    pos.declarer_banked_eyes = deal.skat.TotalEyes();
    solver.NewSearch();
    const SolverVerdict verdict = solver.Solve(pos);
    CHECK(verdict.best_eyes >= 0);
    CHECK(verdict.best_eyes <= kTotalEyes);
    CHECK(verdict.declarer_can_win == (verdict.best_eyes >= 61));
    // The decision form must agree with the exact value.
    solver.NewSearch();
    CHECK(solver.DeclarerCanWin(pos) == verdict.declarer_can_win);
  }
}

}  // namespace
}  // namespace skat

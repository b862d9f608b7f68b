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

#include "skat/players.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace skat {
namespace {

// Game types a declarer may announce after picking up the skat. Hand and
// ouvert-hand variants are out of the policy's reach by construction.
const std::vector<GameType>& DeclarableGames() {
  static const std::vector<GameType> games = {
      GameType::SuitGame(Suit::kClubs),  GameType::SuitGame(Suit::kSpades),
      GameType::SuitGame(Suit::kHearts), GameType::SuitGame(Suit::kDiamonds),
      GameType::Grand(),                 GameType(GameType::kNullCode),
      GameType(GameType::kNullOuvertCode)};
  return games;
}

uint64_t DrawBelow(std::mt19937_64& rng, uint64_t n) {
  const uint64_t limit =
      std::numeric_limits<uint64_t>::max() -
      std::numeric_limits<uint64_t>::max() % n;
  uint64_t v;
  do {
    v = rng();
  } while (v >= limit);
  return v % n;
}

struct DiscardKey {
  int rank_lo;
  int rank_hi;
  int idx_lo;
  int idx_hi;
  int type_order;

  bool operator<(const DiscardKey& o) const {
    if (rank_lo != o.rank_lo) return rank_lo < o.rank_lo;
    if (rank_hi != o.rank_hi) return rank_hi < o.rank_hi;
    if (idx_lo != o.idx_lo) return idx_lo < o.idx_lo;
    if (idx_hi != o.idx_hi) return idx_hi < o.idx_hi;
    return type_order < o.type_order;
  }
};

DiscardKey MakeKey(Card a, Card b, int type_order) {
  int ra = static_cast<int>(a.rank()), rb = static_cast<int>(b.rank());
  DiscardKey key;
  key.rank_lo = std::min(ra, rb);
  key.rank_hi = std::max(ra, rb);
  key.idx_lo = std::min(a.index(), b.index());
  key.idx_hi = std::max(a.index(), b.index());
  key.type_order = type_order;
  return key;
}

}  // namespace

void PolicyConfig::Validate() const {
  if (bid_threshold <= 0.0 || bid_threshold >= 1.0) {
    throw std::invalid_argument("bid threshold must be in (0,1)");
  }
  if (world_count < 1) {
    throw std::invalid_argument("world count must be at least 1");
  }
  if (endgame_trigger < 0 || endgame_world_cap < 1) {
    throw std::invalid_argument("bad endgame configuration");
  }
}

TablePlayer::TablePlayer(const TableSet& tables, const PolicyConfig& config,
                         OpenSolver* solver)
    : tables_(tables), config_(config), solver_(solver) {
  config_.Validate();
}

double TablePlayer::GameProbability(GameType type,
                                    const DeclarerContext& ctx) const {
  if (type.IsSuit()) {
    return tables_.layered(Question::kDeclarerSuit)
        .Lookup(SuitDeclarerVector(ctx, type.trump_suit()));
  }
  if (type.IsGrand()) {
    return tables_.layered(Question::kDeclarerGrand)
        .Lookup(GrandDeclarerVector(ctx));
  }
  throw std::invalid_argument("declarer tables cover suit and grand only");
}

BidEvaluation TablePlayer::EvaluateHand(CardSet hand,
                                        int position_from_forehand) const {
  BidEvaluation eval;
  DeclarerContext ctx;
  ctx.kept = hand;
  ctx.hand_game = true;  // no skat knowledge at bidding time
  ctx.highest_opposing_bid = 0;
  ctx.declarer_position = position_from_forehand;
  for (GameType type : DeclarableGames()) {
    double prob;
    int value;
    if (type.IsNull()) {
      prob = NullWinProbability(hand, CardSet(), type,
                                position_from_forehand == 0,
                                tables_.layered(Question::kNullPerSuit));
      value = type.NullValue();
    } else {
      prob = GameProbability(type, ctx);
      value = GameValue(type, MatadorCount(hand, type).count, {});
    }
    if (prob > eval.best_prob) {
      eval.best_prob = prob;
      eval.best_game = type;
    }
    if (prob >= config_.bid_threshold) {
      eval.max_bid = std::max(eval.max_bid, value);
    }
  }
  return eval;
}

int TablePlayer::MaxBid(CardSet hand, int position_from_forehand) const {
  return EvaluateHand(hand, position_from_forehand).max_bid;
}

SkatDecision TablePlayer::ChooseSkatPut(CardSet hand12, int contract_bid,
                                        int highest_opposing_bid,
                                        int position_from_forehand) const {
  if (hand12.Count() != kHandSize + kSkatSize) {
    throw std::invalid_argument("skat decision needs twelve cards");
  }
  const std::vector<Card> cards = hand12.Cards();
  bool have_valid = false;
  bool have_any = false;
  SkatDecision best_valid{}, best_any{};
  double best_valid_obj = 0.0, best_any_obj = 0.0;
  DiscardKey best_valid_key{}, best_any_key{};

  for (size_t i = 0; i < cards.size(); ++i) {
    for (size_t j = i + 1; j < cards.size(); ++j) {
      CardSet put;
      put.Add(cards[i]);
      put.Add(cards[j]);
      const CardSet kept = hand12.Minus(put);
      DeclarerContext ctx;
      ctx.kept = kept;
      ctx.put = put;
      ctx.hand_game = false;
      ctx.highest_opposing_bid = highest_opposing_bid;
      ctx.declarer_position = position_from_forehand;
      int type_order = 0;
      for (GameType type : DeclarableGames()) {
        double prob;
        int value;
        if (type.IsNull()) {
          prob = NullWinProbability(kept, put, type,
                                    position_from_forehand == 0,
                                    tables_.layered(Question::kNullPerSuit));
          value = type.NullValue();
        } else {
          prob = GameProbability(type, ctx);
          value = GameValue(type, MatadorCount(hand12, type).count, {});
        }
        const double objective =
            config_.objective == Objective::kMaxProbability
                ? prob
                : prob * (value + 50) - (1.0 - prob) * (2 * value + 50);
        const DiscardKey key = MakeKey(cards[i], cards[j], type_order);
        SkatDecision decision;
        decision.game = type;
        decision.put = {cards[i], cards[j]};
        decision.probability = prob;
        decision.game_value = value;
        decision.covers_bid = value >= contract_bid;

        if (!have_any || objective > best_any_obj ||
            (objective == best_any_obj && key < best_any_key)) {
          have_any = true;
          best_any = decision;
          best_any_obj = objective;
          best_any_key = key;
        }
        if (decision.covers_bid &&
            (!have_valid || objective > best_valid_obj ||
             (objective == best_valid_obj && key < best_valid_key))) {
          have_valid = true;
          best_valid = decision;
          best_valid_obj = objective;
          best_valid_key = key;
        }
        ++type_order;
      }
    }
  }
  // A declarer boxed in above every reachable value still has to declare;
  // the best objective stands and the overbid resolves as a loss.
  return have_valid ? best_valid : best_any;
}

Card TablePlayer::ChooseOpeningCard(CardSet hand, GameType type, int my_seat,
                                    int declarer_seat, int partner_bid) const {
  if (!type.IsTrumpGame()) {
    throw std::invalid_argument("opening tables cover suit and grand games");
  }
  const bool long_way =
      (declarer_seat - my_seat + kNumPlayers) % kNumPlayers == 2;
  int best_suit = -1;
  int best_len = 0;
  for (int s = 0; s < kNumSuits; ++s) {
    const Suit suit = static_cast<Suit>(s);
    if (type.IsSuit() && suit == type.trump_suit()) continue;
    CardSet in_suit;
    for (Card c : hand) {
      if (c.suit() == suit && c.rank() != Rank::kJack) in_suit.Add(c);
    }
    const int len = in_suit.Count();
    if (len == 0) continue;
    const bool better =
        best_suit < 0 || (long_way ? len > best_len : len < best_len);
    if (better) {
      best_suit = s;
      best_len = len;
    }
  }
  if (best_suit < 0) {
    return hand.Lowest();  // nothing but trumps
  }
  const Suit suit = static_cast<Suit>(best_suit);
  CardSet in_suit;
  for (Card c : hand) {
    if (c.suit() == suit && c.rank() != Rank::kJack) in_suit.Add(c);
  }
  const Card ace(suit, Rank::kAce);
  if (!in_suit.Contains(ace)) {
    // No ace question to ask; probe with the smallest card.
    Card lowest = in_suit.Lowest();
    for (Card c : in_suit) {
      if (TrickPower(type, c) < TrickPower(type, lowest)) lowest = c;
    }
    return lowest;
  }

  OpeningContext ctx;
  ctx.opener_hand = hand;
  ctx.led = ace;
  ctx.opener_seat = my_seat;
  ctx.declarer_seat = declarer_seat;
  ctx.partner_bid = partner_bid;
  int own_trumps = 0;
  for (Card c : hand) {
    if (TrickClass(type, c) == kTrumpClass) ++own_trumps;
  }
  // The partner's trumps are hidden; two is the neutral guess.
  ctx.opponents_trump_count = own_trumps + 2;

  const Question q =
      type.IsGrand() ? Question::kOpeningGrand : Question::kOpeningSuit;
  const FeatureVector context = type.IsGrand()
                                    ? OpeningGrandVector(ctx)
                                    : OpeningSuitVector(ctx, type.trump_suit());
  const UnderAceAnswer answer = AnswerUnderAce(tables_.table(q), context);
  if (answer == UnderAceAnswer::kPlayUnderAce) {
    Card best = ace;
    for (Card c : in_suit) {
      if (c == ace) continue;
      if (best == ace || TrickPower(type, c) > TrickPower(type, best)) {
        best = c;
      }
    }
    if (!(best == ace)) return best;  // highest non-ace
  }
  // kPlayAce, kInsufficientData, or a bare ace: lead the ace.
  return ace;
}

std::optional<TablePlayer::World> TablePlayer::SampleWorld(
    const TrickView& view, std::mt19937_64& rng) const {
  CardSet unknown = FullDeck()
                        .Minus(view.played)
                        .Minus(view.my_hand)
                        .Minus(view.skat_known ? view.known_skat : CardSet());
  for (Card c : view.trick_cards) unknown.Remove(c);

  struct Slot {
    int seat;  // -1 for the skat
    int capacity;
  };
  std::vector<Slot> slots;
  for (int seat = 0; seat < kNumPlayers; ++seat) {
    if (seat == view.my_seat) continue;
    slots.push_back({seat, view.hand_sizes[seat]});
  }
  if (!view.skat_known) slots.push_back({-1, kSkatSize});
  int total = 0;
  for (const Slot& s : slots) total += s.capacity;
  if (total != unknown.Count()) {
    throw std::logic_error("inconsistent view: unknown cards vs capacities");
  }

  std::vector<Card> pool = unknown.Cards();
  for (size_t i = pool.size(); i > 1; --i) {
    std::swap(pool[i - 1], pool[DrawBelow(rng, i)]);
  }
  auto allowed = [&](const Slot& slot, Card c) {
    if (slot.seat < 0) return true;
    return !view.voids[slot.seat][TrickClass(view.type, c)];
  };
  std::vector<int> assignment(pool.size(), -1);
  std::vector<int> left(slots.size());
  for (size_t s = 0; s < slots.size(); ++s) left[s] = slots[s].capacity;
  // Backtracking over a shuffled pool; slot order is randomized per card
  // so repeated samples spread across the consistent worlds.
  std::function<bool(size_t)> place = [&](size_t i) -> bool {
    if (i == pool.size()) return true;
    size_t first = slots.empty() ? 0 : DrawBelow(rng, slots.size());
    for (size_t k = 0; k < slots.size(); ++k) {
      const size_t s = (first + k) % slots.size();
      if (left[s] == 0 || !allowed(slots[s], pool[i])) continue;
      --left[s];
      assignment[i] = static_cast<int>(s);
      if (place(i + 1)) return true;
      ++left[s];
      assignment[i] = -1;
    }
    return false;
  };
  if (!place(0)) return std::nullopt;

  World world;
  world.hands[view.my_seat] = view.my_hand;
  for (size_t i = 0; i < pool.size(); ++i) {
    const Slot& slot = slots[assignment[i]];
    if (slot.seat < 0) {
      world.skat.Add(pool[i]);
    } else {
      world.hands[slot.seat].Add(pool[i]);
    }
  }
  if (view.skat_known) world.skat = view.known_skat;
  return world;
}

std::vector<TablePlayer::World> TablePlayer::EnumerateWorlds(
    const TrickView& view, int cap) const {
  CardSet unknown = FullDeck()
                        .Minus(view.played)
                        .Minus(view.my_hand)
                        .Minus(view.skat_known ? view.known_skat : CardSet());
  for (Card c : view.trick_cards) unknown.Remove(c);

  std::vector<int> seat_of_slot;
  std::vector<int> capacity;
  for (int seat = 0; seat < kNumPlayers; ++seat) {
    if (seat == view.my_seat) continue;
    seat_of_slot.push_back(seat);
    capacity.push_back(view.hand_sizes[seat]);
  }
  if (!view.skat_known) {
    seat_of_slot.push_back(-1);
    capacity.push_back(kSkatSize);
  }
  const std::vector<Card> pool = unknown.Cards();
  std::vector<int> assignment(pool.size(), -1);
  std::vector<World> worlds;
  bool over_budget = false;

  std::function<void(size_t)> enumerate = [&](size_t i) {
    if (over_budget) return;
    if (i == pool.size()) {
      World world;
      world.hands[view.my_seat] = view.my_hand;
      for (size_t k = 0; k < pool.size(); ++k) {
        const int seat = seat_of_slot[assignment[k]];
        if (seat < 0) {
          world.skat.Add(pool[k]);
        } else {
          world.hands[seat].Add(pool[k]);
        }
      }
      if (view.skat_known) world.skat = view.known_skat;
      if (static_cast<int>(worlds.size()) >= cap) {
        over_budget = true;
        return;
      }
      worlds.push_back(world);
      return;
    }
    for (size_t s = 0; s < capacity.size(); ++s) {
      if (capacity[s] == 0) continue;
      if (seat_of_slot[s] >= 0 &&
          view.voids[seat_of_slot[s]][TrickClass(view.type, pool[i])]) {
        continue;
      }
      --capacity[s];
      assignment[i] = static_cast<int>(s);
      enumerate(i + 1);
      ++capacity[s];
      assignment[i] = -1;
      if (over_budget) return;
    }
  };
  enumerate(0);
  if (over_budget) return {};
  return worlds;
}

Card TablePlayer::ChooseTrickCard(const TrickView& view,
                                  std::mt19937_64& rng) const {
  const Card led =
      view.trick_cards.empty() ? Card() : view.trick_cards.front();
  const CardSet legal = FollowingCards(view.type, view.my_hand, led);
  if (legal.Count() == 1) return legal.Lowest();
  const std::vector<Card> candidates = legal.Cards();

  const bool endgame =
      view.hand_sizes[view.my_seat] <= config_.endgame_trigger;
  std::vector<World> worlds;
  if (endgame) {
    worlds = EnumerateWorlds(view, config_.endgame_world_cap);
  }
  if (worlds.empty()) {
    worlds.reserve(config_.world_count);
    for (int i = 0; i < config_.world_count; ++i) {
      if (auto world = SampleWorld(view, rng)) {
        worlds.push_back(*world);
      }
    }
  }
  if (worlds.empty()) return candidates.front();

  const bool i_am_declarer = view.my_seat == view.declarer;
  std::vector<int64_t> votes(candidates.size(), 0);
  std::vector<int64_t> eyes_sum(candidates.size(), 0);

  for (const World& world : worlds) {
    solver_->NewSearch();
    OpenPosition base;
    base.type = view.type;
    base.declarer = view.declarer;
    base.hands = world.hands;
    base.leader = view.trick_leader;
    base.trick_cards = view.trick_cards;
    base.declarer_tricks_taken = view.declarer_tricks_taken;
    base.declarer_banked_eyes =
        view.type.IsTrumpGame()
            ? view.declarer_trick_eyes + world.skat.TotalEyes()
            : 0;
    for (size_t ci = 0; ci < candidates.size(); ++ci) {
      OpenPosition child = base;
      ApplyMoveOpen(child, candidates[ci]);
      bool declarer_wins;
      int eyes_estimate = 0;
      if (view.type.IsNull()) {
        declarer_wins = solver_->DeclarerCanWin(child);
      } else if (endgame) {
        const int value = child.declarer_banked_eyes +
                          solver_->SolveRemainingEyes(child);
        declarer_wins = value >= 61;
        eyes_estimate = value;
      } else {
        const int target = 61 - child.declarer_banked_eyes;
        const int probe = solver_->ProbeRemainingEyes(child, target);
        declarer_wins = probe >= target;
        eyes_estimate = child.declarer_banked_eyes + probe;
      }
      const bool my_win = i_am_declarer ? declarer_wins : !declarer_wins;
      if (my_win) ++votes[ci];
      eyes_sum[ci] += i_am_declarer ? eyes_estimate : -eyes_estimate;
    }
  }

  size_t best = 0;
  for (size_t ci = 1; ci < candidates.size(); ++ci) {
    if (votes[ci] > votes[best] ||
        (votes[ci] == votes[best] && eyes_sum[ci] > eyes_sum[best])) {
      best = ci;
    }
  }
  return candidates[best];
}

AuctionResult RunAuction(const std::array<int, kNumPlayers>& max_bids,
                         int forehand) {
  const std::vector<int>& ladder = BidLadder();
  AuctionResult result;
  // Bids run between the caller who announces values and the holder who
  // keeps or passes; middlehand calls on forehand, then rearhand on the
  // survivor.
  auto duel = [&](int caller, int holder,
                  size_t start) -> std::pair<int, size_t> {
    size_t idx = start;
    while (idx < ladder.size()) {
      const int bid = ladder[idx];
      if (max_bids[caller] < bid) return {holder, idx};
      result.said[caller] = bid;
      if (max_bids[holder] < bid) return {caller, idx + 1};
      result.said[holder] = bid;
      ++idx;
    }
    return {holder, idx};
  };
  const int f = forehand;
  const int m = (forehand + 1) % kNumPlayers;
  const int r = (forehand + 2) % kNumPlayers;
  auto [survivor, next] = duel(m, f, 0);
  auto [winner, unused] = duel(r, survivor, next);
  (void)unused;
  if (result.said[winner] == 0) {
    // Nobody had to say a value; the survivor may still play at 18.
    if (max_bids[winner] < ladder.front()) {
      return result;  // all passed, game folded
    }
    result.said[winner] = ladder.front();
  }
  result.folded = false;
  result.declarer = winner;
  result.winning_bid = result.said[winner];
  return result;
}

pgn::GameRecord PlayOneGame(const Deal& deal, const TableSet& tables,
                            const PolicyConfig& config, PlayMode mode,
                            OpenSolver* solver) {
  return PlayOneGame(deal, {&tables, &tables, &tables}, config, mode, solver);
}

pgn::GameRecord PlayOneGame(
    const Deal& deal,
    const std::array<const TableSet*, kNumPlayers>& seat_tables,
    const PolicyConfig& config, PlayMode mode, OpenSolver* solver) {
  std::mt19937_64 rng(config.seed ^ deal.id);
  std::array<std::optional<TablePlayer>, kNumPlayers> players;
  for (int seat = 0; seat < kNumPlayers; ++seat) {
    players[seat].emplace(*seat_tables[seat], config, solver);
  }

  pgn::GameRecord record;
  record.id = deal.id;
  for (int seat = 0; seat < kNumPlayers; ++seat) {
    const std::vector<Card> cards = deal.hands[seat].Cards();
    for (int i = 0; i < kHandSize; ++i) {
      record.hands[seat][i] = static_cast<uint8_t>(cards[i].index());
    }
  }
  {
    const std::vector<Card> skat = deal.skat.Cards();
    record.skat_taken = {static_cast<uint8_t>(skat[0].index()),
                         static_cast<uint8_t>(skat[1].index())};
    record.skat_put = record.skat_taken;
  }

  std::array<int, kNumPlayers> max_bids;
  for (int seat = 0; seat < kNumPlayers; ++seat) {
    const int position = (seat - deal.forehand + kNumPlayers) % kNumPlayers;
    const BidEvaluation eval =
        players[seat]->EvaluateHand(deal.hands[seat], position);
    max_bids[seat] = eval.max_bid;
    record.hand_strength[seat] = std::min(
        10, std::max(0, static_cast<int>(std::lround(eval.best_prob * 10))));
  }

  const AuctionResult auction = RunAuction(max_bids, deal.forehand);
  record.bids = auction.said;
  if (auction.folded) {
    record.folded = true;
    record.game_code = GameType::kFoldedCode;
    pgn::ValidateRecord(record);
    return record;
  }

  const int declarer = auction.declarer;
  record.declarer = declarer;
  const int declarer_position =
      (declarer - deal.forehand + kNumPlayers) % kNumPlayers;
  int highest_opposing = 0;
  for (int seat = 0; seat < kNumPlayers; ++seat) {
    if (seat != declarer) {
      highest_opposing = std::max(highest_opposing, auction.said[seat]);
    }
  }

  const CardSet hand12 = deal.hands[declarer].Union(deal.skat);
  const SkatDecision decision = players[declarer]->ChooseSkatPut(
      hand12, auction.winning_bid, highest_opposing, declarer_position);
  const GameType type = decision.game;
  CardSet put;
  put.Add(decision.put[0]);
  put.Add(decision.put[1]);
  {
    const std::vector<Card> put_cards = put.Cards();
    record.skat_put = {static_cast<uint8_t>(put_cards[0].index()),
                       static_cast<uint8_t>(put_cards[1].index())};
  }
  record.game_code = type.code();
  const Matadors matadors = MatadorCount(hand12, type);
  record.contract_level = type.IsTrumpGame() ? matadors.Signed() : 1;

  std::array<CardSet, kNumPlayers> playing_hands = deal.hands;
  playing_hands[declarer] = hand12.Minus(put);
  const int put_eyes = put.TotalEyes();
  GameState state(type, declarer, deal.forehand, playing_hands, put_eyes,
                  matadors.count, {});

  TrickView view;
  view.type = type;
  view.declarer = declarer;
  view.voids = {};

  while (!state.Finished()) {
    const int seat = state.to_move();
    const CardSet legal = state.LegalMoves(seat);
    Card chosen;
    if (legal.Count() == 1) {
      chosen = legal.Lowest();
    } else if (mode == PlayMode::kRandomPlay) {
      const std::vector<Card> cards = legal.Cards();
      chosen = cards[DrawBelow(rng, cards.size())];
    } else if (state.history().empty() && state.cards_in_trick() == 0 &&
               seat == deal.forehand && seat != declarer &&
               type.IsTrumpGame()) {
      int partner_bid = 0;
      for (int s = 0; s < kNumPlayers; ++s) {
        if (s != seat && s != declarer) partner_bid = auction.said[s];
      }
      chosen = players[seat]->ChooseOpeningCard(state.hand(seat), type, seat,
                                                declarer, partner_bid);
    } else {
      view.my_seat = seat;
      view.my_hand = state.hand(seat);
      view.played = CardSet();
      for (const Trick& t : state.history()) {
        for (Card c : t.cards) view.played.Add(c);
      }
      view.trick_cards.assign(
          state.current_trick().cards.begin(),
          state.current_trick().cards.begin() + state.cards_in_trick());
      view.trick_leader = state.current_trick().leader;
      for (int s = 0; s < kNumPlayers; ++s) {
        view.hand_sizes[s] = state.hand(s).Count();
      }
      view.skat_known = seat == declarer;
      view.known_skat = seat == declarer ? put : CardSet();
      view.declarer_trick_eyes = state.declarer_eyes() - put_eyes;
      view.declarer_tricks_taken = state.declarer_tricks();
      chosen = players[seat]->ChooseTrickCard(view, rng);
    }
    // Failing to follow reveals a void to everyone.
    if (state.cards_in_trick() > 0) {
      const int led_class =
          TrickClass(type, state.current_trick().cards[0]);
      if (TrickClass(type, chosen) != led_class) {
        view.voids[seat][led_class] = true;
      }
    }
    state.Play(chosen);
  }

  const GameOutcome outcome = state.Outcome(auction.winning_bid);
  record.declarer_won = outcome.declarer_won;
  record.declarer_eyes = outcome.declarer_eyes;
  record.schneider = outcome.schneider;
  record.schwarz = outcome.schwarz;
  for (const Trick& t : state.history()) {
    pgn::TrickRecord tr;
    int eyes = 0;
    for (int i = 0; i < kNumPlayers; ++i) {
      tr.cards[i] = static_cast<uint8_t>(t.cards[i].index());
      eyes += t.cards[i].Eyes();
    }
    tr.winner = static_cast<uint8_t>(TrickWinner(t, type));
    tr.eyes = tr.winner == declarer ? eyes : -eyes;
    record.tricks.push_back(tr);
  }
  pgn::ValidateRecord(record);
  return record;
}

}  // namespace skat

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

#ifndef SKATLAB_PGN_H_
#define SKATLAB_PGN_H_

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "skat/cards.h"
#include "skat/rules.h"

namespace skat {
namespace pgn {

// Parse failure with the 1-based line it happened on.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

struct SeatInfo {
  std::string name;
  int id = 0;
  int64_t score = 0;
  int won = 0;
  int lost = 0;

  bool operator==(const SeatInfo&) const = default;
};

struct SeriesHeader {
  std::string event;
  std::string date;      // opaque text, e.g. "12.01.2025"
  std::string time;      // opaque text, e.g. "13:19"
  std::string duration;  // opaque text, e.g. "24m"
  std::array<SeatInfo, kNumPlayers> seats;
  int64_t game_count = 0;

  bool operator==(const SeriesHeader&) const = default;
};

struct TrickRecord {
  std::array<uint8_t, kNumPlayers> cards;  // compact indices, play order
  uint8_t winner = 0;                      // seat index
  int eyes = 0;                            // signed: >0 declarer team, <0 else

  bool operator==(const TrickRecord&) const = default;
};

// One game line. Field layout (space separated):
//   id game declarer bid0 bid1 bid2 hand schneider schneider_announced
//   schwarz schwarz_announced ouvert won folded level eyes hs0 hs1 hs2
//   30 hand card codes, 2 skat-taken codes, 2 skat-put codes,
//   then per trick: 3 card codes, winner seat, signed trick eyes.
struct GameRecord {
  uint64_t id = 0;
  int game_code = GameType::kFoldedCode;
  int declarer = 0;
  std::array<int, kNumPlayers> bids = {0, 0, 0};
  bool hand = false;
  bool schneider = false;
  bool schneider_announced = false;
  bool schwarz = false;
  bool schwarz_announced = false;
  bool ouvert = false;
  bool declarer_won = false;
  bool folded = false;
  int contract_level = -1;  // signed matador level, stored opaquely
  int declarer_eyes = 0;
  std::array<int, kNumPlayers> hand_strength = {0, 0, 0};
  std::array<std::array<uint8_t, kHandSize>, kNumPlayers> hands = {};
  std::array<uint8_t, kSkatSize> skat_taken = {0, 0};
  std::array<uint8_t, kSkatSize> skat_put = {0, 0};
  std::vector<TrickRecord> tricks;

  GameType Type() const { return GameType(game_code); }
  CardSet HandSet(int player) const;
  CardSet SkatTakenSet() const;
  CardSet SkatPutSet() const;
  // Post-discard playing hand of the declarer: hand + taken - put.
  CardSet DeclarerPlayingHand() const;
  int HighestOpposingBid() const;

  bool operator==(const GameRecord&) const = default;
};

struct Series {
  SeriesHeader header;
  std::vector<GameRecord> games;

  bool operator==(const Series&) const = default;
};

// Structural checks: field ranges, 32 distinct card codes over hands and
// skat-taken, put cards from the declarer's twelve, trick eyes matching the
// card points with the sign fixed by the winner's team, folded games with
// an empty trick section. Throws std::invalid_argument on violation.
void ValidateRecord(const GameRecord& record);

GameRecord ParseGameLine(const std::string& line, int line_number);
std::string FormatGameLine(const GameRecord& record);

Series ParseSeries(std::istream& in);
void WriteSeries(const Series& series, std::ostream& out);

Series ReadSeriesFile(const std::string& path);
void WriteSeriesFile(const Series& series, const std::string& path);

// Splits a series into the learning inputs: a deal file holding every deal
// keyed by id, and a played-games series holding only non-folded games.
// Forehand is reconstructed as id mod 3, the rotation used by the deal
// generator. Both outputs are id-sorted.
struct SplitResult {
  std::vector<Deal> deals;
  Series played;
};
SplitResult SplitIo(const Series& series);

}  // namespace pgn
}  // namespace skat

#endif  // SKATLAB_PGN_H_

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

#include "skat/pgn.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <regex>
#include <sstream>

namespace skat {
namespace pgn {
namespace {

std::vector<int64_t> SplitInts(const std::string& line, int line_number) {
  std::vector<int64_t> values;
  const char* p = line.data();
  const char* end = line.data() + line.size();
  while (p < end) {
    while (p < end && (*p == ' ' || *p == '\t' || *p == '\r')) ++p;
    if (p >= end) break;
    int64_t value = 0;
    auto [next, ec] = std::from_chars(p, end, value);
    if (ec != std::errc()) {
      throw ParseError(line_number, "expected integer near '" +
                                        std::string(p, std::min<size_t>(
                                                           8, end - p)) +
                                        "'");
    }
    values.push_back(value);
    p = next;
  }
  return values;
}

void CheckRange(int64_t value, int64_t lo, int64_t hi, const char* what) {
  if (value < lo || value > hi) {
    throw std::invalid_argument(std::string(what) + " out of range: " +
                                std::to_string(value));
  }
}

bool AsFlag(int64_t value, const char* what) {
  CheckRange(value, 0, 1, what);
  return value == 1;
}

}  // namespace

CardSet GameRecord::HandSet(int player) const {
  CardSet set;
  for (uint8_t code : hands[player]) set.Add(Card(code));
  return set;
}

CardSet GameRecord::SkatTakenSet() const {
  CardSet set;
  for (uint8_t code : skat_taken) set.Add(Card(code));
  return set;
}

CardSet GameRecord::SkatPutSet() const {
  CardSet set;
  for (uint8_t code : skat_put) set.Add(Card(code));
  return set;
}

CardSet GameRecord::DeclarerPlayingHand() const {
  return HandSet(declarer).Union(SkatTakenSet()).Minus(SkatPutSet());
}

int GameRecord::HighestOpposingBid() const {
  int best = 0;
  for (int seat = 0; seat < kNumPlayers; ++seat) {
    if (seat != declarer) best = std::max(best, bids[seat]);
  }
  return best;
}

void ValidateRecord(const GameRecord& record) {
  if (record.game_code < -1 || record.game_code > 8) {
    throw std::invalid_argument("bad game code");
  }
  CheckRange(record.declarer, 0, kNumPlayers - 1, "declarer");
  for (int b : record.bids) CheckRange(b, 0, 1000000, "bid");
  CheckRange(record.contract_level, -11, 11, "contract level");
  CheckRange(record.declarer_eyes, 0, kTotalEyes, "declarer eyes");
  for (int hs : record.hand_strength) CheckRange(hs, 0, 10, "hand strength");

  CardSet seen;
  for (int p = 0; p < kNumPlayers; ++p) {
    for (uint8_t code : record.hands[p]) {
      CheckRange(code, 0, kNumCards - 1, "card code");
      Card c(code);
      if (seen.Contains(c)) {
        throw std::invalid_argument("duplicated card code " + c.ToString());
      }
      seen.Add(c);
    }
  }
  for (uint8_t code : record.skat_taken) {
    CheckRange(code, 0, kNumCards - 1, "skat card code");
    Card c(code);
    if (seen.Contains(c)) {
      throw std::invalid_argument("duplicated card code " + c.ToString());
    }
    seen.Add(c);
  }

  const CardSet declarer_twelve =
      record.HandSet(record.declarer).Union(record.SkatTakenSet());
  if (record.skat_put[0] == record.skat_put[1]) {
    throw std::invalid_argument("skat put cards must differ");
  }
  for (uint8_t code : record.skat_put) {
    CheckRange(code, 0, kNumCards - 1, "skat put code");
    if (!declarer_twelve.Contains(Card(code))) {
      throw std::invalid_argument("skat put card not held by declarer");
    }
  }

  if (record.folded) {
    if (!record.tricks.empty()) {
      throw std::invalid_argument("folded game with trick section");
    }
    if (record.declarer_won) {
      throw std::invalid_argument("folded game marked as won");
    }
    return;
  }

  if (record.tricks.size() > kHandSize) {
    throw std::invalid_argument("more than ten tricks");
  }
  CardSet played;
  const CardSet put = record.SkatPutSet();
  int declarer_trick_eyes = 0;
  for (const TrickRecord& trick : record.tricks) {
    int eyes = 0;
    for (uint8_t code : trick.cards) {
      CheckRange(code, 0, kNumCards - 1, "trick card code");
      Card c(code);
      if (played.Contains(c)) {
        throw std::invalid_argument("card played twice: " + c.ToString());
      }
      if (put.Contains(c)) {
        throw std::invalid_argument("discarded card played: " + c.ToString());
      }
      played.Add(c);
      eyes += c.Eyes();
    }
    CheckRange(trick.winner, 0, kNumPlayers - 1, "trick winner");
    const int expected =
        trick.winner == record.declarer ? eyes : -eyes;
    if (trick.eyes != expected) {
      throw std::invalid_argument("trick eyes mismatch: got " +
                                  std::to_string(trick.eyes) + ", expected " +
                                  std::to_string(expected));
    }
    if (trick.winner == record.declarer) declarer_trick_eyes += eyes;
  }
  // Complete trump games conserve eyes: tricks plus the discarded skat
  // account for the declarer's total.
  if (record.tricks.size() == kHandSize && record.Type().IsTrumpGame()) {
    const int expected = declarer_trick_eyes + put.TotalEyes();
    if (record.declarer_eyes != expected) {
      throw std::invalid_argument(
          "declarer eyes " + std::to_string(record.declarer_eyes) +
          " do not match tricks plus skat (" + std::to_string(expected) + ")");
    }
  }
}

GameRecord ParseGameLine(const std::string& line, int line_number) {
  const std::vector<int64_t> f = SplitInts(line, line_number);
  constexpr size_t kFixedFields = 53;
  if (f.size() < kFixedFields || (f.size() - kFixedFields) % 5 != 0) {
    throw ParseError(line_number,
                     "bad field count " + std::to_string(f.size()));
  }
  GameRecord r;
  try {
    size_t i = 0;
    if (f[i] < 0) throw std::invalid_argument("negative id");
    r.id = static_cast<uint64_t>(f[i++]);
    r.game_code = static_cast<int>(f[i++]);
    r.declarer = static_cast<int>(f[i++]);
    for (int s = 0; s < kNumPlayers; ++s) r.bids[s] = static_cast<int>(f[i++]);
    r.hand = AsFlag(f[i++], "hand flag");
    r.schneider = AsFlag(f[i++], "schneider flag");
    r.schneider_announced = AsFlag(f[i++], "schneider announced flag");
    r.schwarz = AsFlag(f[i++], "schwarz flag");
    r.schwarz_announced = AsFlag(f[i++], "schwarz announced flag");
    r.ouvert = AsFlag(f[i++], "ouvert flag");
    r.declarer_won = AsFlag(f[i++], "won flag");
    r.folded = AsFlag(f[i++], "folded flag");
    r.contract_level = static_cast<int>(f[i++]);
    r.declarer_eyes = static_cast<int>(f[i++]);
    for (int s = 0; s < kNumPlayers; ++s) {
      r.hand_strength[s] = static_cast<int>(f[i++]);
    }
    for (int p = 0; p < kNumPlayers; ++p) {
      for (int c = 0; c < kHandSize; ++c) {
        CheckRange(f[i], 0, kNumCards - 1, "card code");
        r.hands[p][c] = static_cast<uint8_t>(f[i++]);
      }
    }
    for (int c = 0; c < kSkatSize; ++c) {
      CheckRange(f[i], 0, kNumCards - 1, "skat taken code");
      r.skat_taken[c] = static_cast<uint8_t>(f[i++]);
    }
    for (int c = 0; c < kSkatSize; ++c) {
      CheckRange(f[i], 0, kNumCards - 1, "skat put code");
      r.skat_put[c] = static_cast<uint8_t>(f[i++]);
    }
    const size_t trick_count = (f.size() - kFixedFields) / 5;
    r.tricks.reserve(trick_count);
    for (size_t t = 0; t < trick_count; ++t) {
      TrickRecord trick;
      for (int c = 0; c < kNumPlayers; ++c) {
        CheckRange(f[i], 0, kNumCards - 1, "trick card code");
        trick.cards[c] = static_cast<uint8_t>(f[i++]);
      }
      CheckRange(f[i], 0, kNumPlayers - 1, "trick winner");
      trick.winner = static_cast<uint8_t>(f[i++]);
      trick.eyes = static_cast<int>(f[i++]);
      r.tricks.push_back(trick);
    }
    ValidateRecord(r);
  } catch (const std::invalid_argument& e) {
    throw ParseError(line_number, e.what());
  }
  return r;
}

std::string FormatGameLine(const GameRecord& r) {
  std::ostringstream out;
  out << r.id << ' ' << r.game_code << ' ' << r.declarer;
  for (int b : r.bids) out << ' ' << b;
  out << ' ' << int(r.hand) << ' ' << int(r.schneider) << ' '
      << int(r.schneider_announced) << ' ' << int(r.schwarz) << ' '
      << int(r.schwarz_announced) << ' ' << int(r.ouvert) << ' '
      << int(r.declarer_won) << ' ' << int(r.folded);
  out << ' ' << r.contract_level << ' ' << r.declarer_eyes;
  for (int hs : r.hand_strength) out << ' ' << hs;
  for (const auto& hand : r.hands) {
    for (uint8_t code : hand) out << ' ' << int(code);
  }
  for (uint8_t code : r.skat_taken) out << ' ' << int(code);
  for (uint8_t code : r.skat_put) out << ' ' << int(code);
  for (const TrickRecord& trick : r.tricks) {
    for (uint8_t code : trick.cards) out << ' ' << int(code);
    out << ' ' << int(trick.winner) << ' ' << trick.eyes;
  }
  return out.str();
}

namespace {

const std::regex kHeaderLine1(
    R"(\[Event: (.*)\] \[Date: ([^,\]]*), ([^,\]]*), Duration: ([^\]]*)\]\s*)");
const std::regex kHeaderLine2(
    R"(\[Seat1: (.*) \(ID: (-?\d+)\)\] \[Seat2: (.*) \(ID: (-?\d+)\)\] \[Seat3: (.*) \(ID: (-?\d+)\)\]\s*)");
const std::regex kHeaderLine3(R"(\[Number of games: (\d+)\]\s*)");
const std::regex kHeaderLine4(
    R"(\[Result: Seat1: (-?\d+) \((\d+):(\d+)\) Seat2: (-?\d+) \((\d+):(\d+)\) Seat3: (-?\d+) \((\d+):(\d+)\)\]\s*)");

std::string GetLineOrThrow(std::istream& in, int* line_number,
                           const char* what) {
  std::string line;
  if (!std::getline(in, line)) {
    throw ParseError(*line_number, std::string("missing ") + what);
  }
  ++*line_number;
  return line;
}

}  // namespace

Series ParseSeries(std::istream& in) {
  Series series;
  int line_number = 0;
  std::smatch m;

  std::string line = GetLineOrThrow(in, &line_number, "event header");
  if (!std::regex_match(line, m, kHeaderLine1)) {
    throw ParseError(line_number, "malformed event/date header");
  }
  series.header.event = m[1];
  series.header.date = m[2];
  series.header.time = m[3];
  series.header.duration = m[4];

  line = GetLineOrThrow(in, &line_number, "seat header");
  if (!std::regex_match(line, m, kHeaderLine2)) {
    throw ParseError(line_number, "malformed seat header");
  }
  for (int s = 0; s < kNumPlayers; ++s) {
    series.header.seats[s].name = m[1 + 2 * s];
    series.header.seats[s].id = std::stoi(m[2 + 2 * s]);
  }

  line = GetLineOrThrow(in, &line_number, "game count header");
  if (!std::regex_match(line, m, kHeaderLine3)) {
    throw ParseError(line_number, "malformed game count header");
  }
  series.header.game_count = std::stoll(m[1]);

  line = GetLineOrThrow(in, &line_number, "result header");
  if (!std::regex_match(line, m, kHeaderLine4)) {
    throw ParseError(line_number, "malformed result header");
  }
  for (int s = 0; s < kNumPlayers; ++s) {
    series.header.seats[s].score = std::stoll(m[1 + 3 * s]);
    series.header.seats[s].won = std::stoi(m[2 + 3 * s]);
    series.header.seats[s].lost = std::stoi(m[3 + 3 * s]);
  }

  while (std::getline(in, line)) {
    ++line_number;
    bool blank = true;
    for (char c : line) {
      if (c != ' ' && c != '\t' && c != '\r') {
        blank = false;
        break;
      }
    }
    if (blank) continue;
    series.games.push_back(ParseGameLine(line, line_number));
  }
  if (static_cast<int64_t>(series.games.size()) != series.header.game_count) {
    throw ParseError(line_number,
                     "header announces " +
                         std::to_string(series.header.game_count) +
                         " games, found " + std::to_string(series.games.size()));
  }
  return series;
}

void WriteSeries(const Series& series, std::ostream& out) {
  if (static_cast<int64_t>(series.games.size()) != series.header.game_count) {
    throw std::invalid_argument("header game count does not match games");
  }
  const SeriesHeader& h = series.header;
  out << "[Event: " << h.event << "] [Date: " << h.date << ", " << h.time
      << ", Duration: " << h.duration << "]\n";
  out << "[Seat1: " << h.seats[0].name << " (ID: " << h.seats[0].id
      << ")] [Seat2: " << h.seats[1].name << " (ID: " << h.seats[1].id
      << ")] [Seat3: " << h.seats[2].name << " (ID: " << h.seats[2].id
      << ")]\n";
  out << "[Number of games: " << h.game_count << "]\n";
  out << "[Result:";
  for (int s = 0; s < kNumPlayers; ++s) {
    out << " Seat" << (s + 1) << ": " << h.seats[s].score << " ("
        << h.seats[s].won << ":" << h.seats[s].lost << ")";
  }
  out << "]\n\n";
  for (const GameRecord& game : series.games) {
    out << FormatGameLine(game) << '\n';
  }
}

Series ReadSeriesFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  return ParseSeries(in);
}

void WriteSeriesFile(const Series& series, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  WriteSeries(series, out);
  if (!out) throw std::runtime_error("write failed: " + path);
}

SplitResult SplitIo(const Series& series) {
  SplitResult result;
  std::vector<GameRecord> sorted = series.games;
  std::sort(sorted.begin(), sorted.end(),
            [](const GameRecord& a, const GameRecord& b) {
              return a.id < b.id;
            });
  for (const GameRecord& r : sorted) {
    Deal deal;
    deal.id = r.id;
    deal.forehand = static_cast<int>(r.id % kNumPlayers);
    for (int p = 0; p < kNumPlayers; ++p) deal.hands[p] = r.HandSet(p);
    deal.skat = r.SkatTakenSet();
    result.deals.push_back(deal);
    if (!r.folded) result.played.games.push_back(r);
  }
  result.played.header = series.header;
  result.played.header.game_count =
      static_cast<int64_t>(result.played.games.size());
  return result;
}

}  // namespace pgn
}  // namespace skat

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

#include "skat/cards.h"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace skat {
namespace {

constexpr char kSuitLetters[kNumSuits + 1] = "CSHD";
constexpr char kRankLetters[kNumRanks + 1] = "789TJQKA";

template <typename T>
void WriteLe(std::ostream& out, T value) {
  unsigned char bytes[sizeof(T)];
  for (size_t i = 0; i < sizeof(T); ++i) {
    bytes[i] = static_cast<unsigned char>((value >> (8 * i)) & 0xFF);
  }
  out.write(reinterpret_cast<const char*>(bytes), sizeof(T));
}

template <typename T>
bool ReadLe(std::istream& in, T* value) {
  unsigned char bytes[sizeof(T)];
  if (!in.read(reinterpret_cast<char*>(bytes), sizeof(T))) return false;
  T v = 0;
  for (size_t i = 0; i < sizeof(T); ++i) {
    v |= static_cast<T>(bytes[i]) << (8 * i);
  }
  *value = v;
  return true;
}

constexpr char kDealMagic[4] = {'S', 'K', 'D', 'L'};
constexpr uint16_t kDealFormatVersion = 1;

}  // namespace

std::string Card::ToString() const {
  if (!IsValid()) return "??";
  std::string s;
  s += kSuitLetters[static_cast<int>(suit())];
  s += kRankLetters[static_cast<int>(rank())];
  return s;
}

std::optional<Card> Card::FromString(const std::string& text) {
  if (text.size() != 2) return std::nullopt;
  const char* suit_pos = std::strchr(kSuitLetters, text[0]);
  const char* rank_pos = std::strchr(kRankLetters, text[1]);
  if (suit_pos == nullptr || rank_pos == nullptr || *suit_pos == '\0' ||
      *rank_pos == '\0') {
    return std::nullopt;
  }
  return Card(static_cast<Suit>(suit_pos - kSuitLetters),
              static_cast<Rank>(rank_pos - kRankLetters));
}

CardSet CardSet::FromCards(const std::vector<Card>& cards) {
  CardSet set;
  for (Card c : cards) set.Add(c);
  return set;
}

int CardSet::TotalEyes() const {
  int eyes = 0;
  for (Card c : *this) eyes += c.Eyes();
  return eyes;
}

std::vector<Card> CardSet::Cards() const {
  std::vector<Card> cards;
  cards.reserve(Count());
  for (Card c : *this) cards.push_back(c);
  return cards;
}

std::string CardSet::ToString() const {
  std::string s;
  for (Card c : *this) {
    if (!s.empty()) s += ' ';
    s += c.ToString();
  }
  return s;
}

bool Deal::IsValidPartition() const {
  uint32_t seen = 0;
  int total = 0;
  for (const CardSet& hand : hands) {
    if (hand.Count() != kHandSize) return false;
    if ((seen & hand.mask()) != 0) return false;
    seen |= hand.mask();
    total += hand.Count();
  }
  if (skat.Count() != kSkatSize || (seen & skat.mask()) != 0) return false;
  seen |= skat.mask();
  return total + kSkatSize == kNumCards && seen == FullDeck().mask() &&
         forehand >= 0 && forehand < kNumPlayers;
}

bool Deal::operator==(const Deal& o) const {
  return id == o.id && hands == o.hands && skat == o.skat &&
         forehand == o.forehand;
}

BigInt Binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  BigInt result = 1;
  for (int i = 1; i <= k; ++i) {
    result = result * (n - k + i) / i;
  }
  return result;
}

BigInt DealCountProduct(const DealSpec& spec) {
  if (!spec.IsValid()) {
    throw std::invalid_argument("invalid deal spec");
  }
  // Player i in 0..p-1 draws from the n - i*h cards still undealt. Leftover
  // cards (the skat) stay on the table and cancel in the last binomial.
  const int hand = spec.HandSize();
  BigInt result = 1;
  for (int i = 0; i < spec.players; ++i) {
    result *= Binomial(spec.deck_size - i * hand, hand);
  }
  return result;
}

BigInt SkatDealCount() {
  // 32! / (10! 10! 10! 2!) == C(32,10) * C(22,10) * C(12,10).
  return Binomial(32, 10) * Binomial(22, 10) * Binomial(12, 10);
}

DealGenerator::DealGenerator(uint64_t seed, uint64_t first_id)
    : rng_(seed), next_id_(first_id) {}

uint64_t DealGenerator::UniformBelow(uint64_t n) {
  // Rejection sampling keeps the stream identical across standard library
  // implementations (uniform_int_distribution is not portable).
  const uint64_t limit = std::numeric_limits<uint64_t>::max() -
                         std::numeric_limits<uint64_t>::max() % n;
  uint64_t v;
  do {
    v = rng_();
  } while (v >= limit);
  return v % n;
}

Deal DealGenerator::Next() {
  std::array<int8_t, kNumCards> deck;
  std::iota(deck.begin(), deck.end(), 0);
  for (int i = kNumCards - 1; i > 0; --i) {
    const int j = static_cast<int>(UniformBelow(static_cast<uint64_t>(i + 1)));
    std::swap(deck[i], deck[j]);
  }
  Deal deal;
  deal.id = next_id_;
  deal.forehand = static_cast<int>(next_id_ % kNumPlayers);
  ++next_id_;
  for (int p = 0; p < kNumPlayers; ++p) {
    for (int i = 0; i < kHandSize; ++i) {
      deal.hands[p].Add(Card(deck[p * kHandSize + i]));
    }
  }
  deal.skat.Add(Card(deck[30]));
  deal.skat.Add(Card(deck[31]));
  return deal;
}

std::vector<Deal> GenerateDeals(uint64_t seed, uint64_t count,
                                uint64_t first_id) {
  DealGenerator gen(seed, first_id);
  std::vector<Deal> deals;
  deals.reserve(count);
  for (uint64_t i = 0; i < count; ++i) deals.push_back(gen.Next());
  return deals;
}

DealFileWriter::DealFileWriter(std::ostream& out, const DealFileHeader& header)
    : out_(out) {
  out_.write(kDealMagic, sizeof(kDealMagic));
  WriteLe<uint16_t>(out_, kDealFormatVersion);
  WriteLe<uint64_t>(out_, header.seed);
  WriteLe<uint64_t>(out_, header.first_id);
  WriteLe<uint64_t>(out_, header.count);
  if (header.algorithm.size() > 255) {
    throw std::invalid_argument("algorithm id too long");
  }
  WriteLe<uint8_t>(out_, static_cast<uint8_t>(header.algorithm.size()));
  out_.write(header.algorithm.data(),
             static_cast<std::streamsize>(header.algorithm.size()));
}

void DealFileWriter::Write(const Deal& deal) {
  if (!deal.IsValidPartition()) {
    throw std::invalid_argument("deal is not a partition of the deck");
  }
  unsigned char record[41];
  int pos = 0;
  for (int p = 0; p < kNumPlayers; ++p) {
    for (Card c : deal.hands[p]) {
      record[pos++] = static_cast<unsigned char>(c.index());
    }
  }
  for (Card c : deal.skat) {
    record[pos++] = static_cast<unsigned char>(c.index());
  }
  record[pos++] = static_cast<unsigned char>(deal.forehand);
  for (int i = 0; i < 8; ++i) {
    record[pos++] = static_cast<unsigned char>((deal.id >> (8 * i)) & 0xFF);
  }
  out_.write(reinterpret_cast<const char*>(record), sizeof(record));
  ++written_;
}

DealFileReader::DealFileReader(std::istream& in) : in_(in) {
  char magic[4];
  if (!in_.read(magic, 4) || std::memcmp(magic, kDealMagic, 4) != 0) {
    throw std::runtime_error("not a deal file (bad magic)");
  }
  uint16_t version = 0;
  if (!ReadLe(in_, &version) || version != kDealFormatVersion) {
    throw std::runtime_error("unsupported deal file version");
  }
  if (!ReadLe(in_, &header_.seed) || !ReadLe(in_, &header_.first_id) ||
      !ReadLe(in_, &header_.count)) {
    throw std::runtime_error("truncated deal file header");
  }
  uint8_t algo_len = 0;
  if (!ReadLe(in_, &algo_len)) {
    throw std::runtime_error("truncated deal file header");
  }
  header_.algorithm.resize(algo_len);
  if (algo_len > 0 && !in_.read(header_.algorithm.data(), algo_len)) {
    throw std::runtime_error("truncated deal file header");
  }
}

std::optional<Deal> DealFileReader::Next() {
  if (read_ >= header_.count) return std::nullopt;
  unsigned char record[41];
  if (!in_.read(reinterpret_cast<char*>(record), sizeof(record))) {
    throw std::runtime_error("truncated deal record");
  }
  Deal deal;
  int pos = 0;
  for (int p = 0; p < kNumPlayers; ++p) {
    for (int i = 0; i < kHandSize; ++i) {
      deal.hands[p].Add(Card(record[pos++]));
    }
  }
  deal.skat.Add(Card(record[pos++]));
  deal.skat.Add(Card(record[pos++]));
  deal.forehand = record[pos++];
  deal.id = 0;
  for (int i = 0; i < 8; ++i) {
    deal.id |= static_cast<uint64_t>(record[pos++]) << (8 * i);
  }
  if (!deal.IsValidPartition()) {
    throw std::runtime_error("corrupt deal record");
  }
  ++read_;
  return deal;
}

void WriteDealFile(const std::string& path, const DealFileHeader& header,
                   const std::vector<Deal>& deals) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  DealFileHeader h = header;
  h.count = deals.size();
  DealFileWriter writer(out, h);
  for (const Deal& d : deals) writer.Write(d);
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::vector<Deal> ReadDealFile(const std::string& path,
                               DealFileHeader* header) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);
  DealFileReader reader(in);
  if (header != nullptr) *header = reader.header();
  std::vector<Deal> deals;
  deals.reserve(reader.header().count);
  while (auto deal = reader.Next()) deals.push_back(*deal);
  return deals;
}

}  // namespace skat

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

#ifndef SKATLAB_CARDS_H_
#define SKATLAB_CARDS_H_

#include <array>
#include <bit>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace skat {

using BigInt = boost::multiprecision::cpp_int;

inline constexpr int kNumSuits = 4;
inline constexpr int kNumRanks = 8;
inline constexpr int kNumCards = 32;
inline constexpr int kNumPlayers = 3;
inline constexpr int kHandSize = 10;
inline constexpr int kSkatSize = 2;
inline constexpr int kTotalEyes = 120;

// Suit order matches the game codes used in the corpus format (0..3).
enum class Suit : int8_t { kClubs = 0, kSpades = 1, kHearts = 2, kDiamonds = 3 };
enum class Rank : int8_t {
  kSeven = 0,
  kEight = 1,
  kNine = 2,
  kTen = 3,
  kJack = 4,
  kQueen = 5,
  kKing = 6,
  kAce = 7
};

// Compact card index: suit-major, rank-minor, i.e. index = 8*suit + rank.
class Card {
 public:
  constexpr Card() = default;
  constexpr explicit Card(int index) : index_(static_cast<int8_t>(index)) {}
  constexpr Card(Suit suit, Rank rank)
      : index_(static_cast<int8_t>(8 * static_cast<int>(suit) +
                                   static_cast<int>(rank))) {}

  constexpr bool IsValid() const { return index_ >= 0 && index_ < kNumCards; }
  constexpr int index() const { return index_; }
  constexpr Suit suit() const { return static_cast<Suit>(index_ / 8); }
  constexpr Rank rank() const { return static_cast<Rank>(index_ % 8); }

  // Card points: A=11, 10=10, K=4, Q=3, J=2, 9/8/7=0.
  constexpr int Eyes() const {
    constexpr int kEyesByRank[kNumRanks] = {0, 0, 0, 10, 2, 3, 4, 11};
    return kEyesByRank[index_ % 8];
  }

  std::string ToString() const;  // e.g. "CA", "HJ", "D7"
  static std::optional<Card> FromString(const std::string& text);

  friend constexpr bool operator==(Card a, Card b) {
    return a.index_ == b.index_;
  }
  friend constexpr bool operator!=(Card a, Card b) {
    return a.index_ != b.index_;
  }
  friend constexpr bool operator<(Card a, Card b) {
    return a.index_ < b.index_;
  }

 private:
  int8_t index_ = -1;
};

// Set of cards stored as a 32-bit mask, one bit per compact index.
class CardSet {
 public:
  constexpr CardSet() = default;
  constexpr explicit CardSet(uint32_t mask) : mask_(mask) {}
  static CardSet FromCards(const std::vector<Card>& cards);

  constexpr uint32_t mask() const { return mask_; }
  constexpr bool Contains(Card c) const {
    return (mask_ >> c.index()) & 1u;
  }
  constexpr void Add(Card c) { mask_ |= 1u << c.index(); }
  constexpr void Remove(Card c) { mask_ &= ~(1u << c.index()); }
  constexpr int Count() const { return std::popcount(mask_); }
  constexpr bool Empty() const { return mask_ == 0; }
  constexpr CardSet Union(CardSet o) const { return CardSet(mask_ | o.mask_); }
  constexpr CardSet Intersect(CardSet o) const {
    return CardSet(mask_ & o.mask_);
  }
  constexpr CardSet Minus(CardSet o) const { return CardSet(mask_ & ~o.mask_); }
  constexpr Card Lowest() const { return Card(std::countr_zero(mask_)); }

  int TotalEyes() const;
  std::vector<Card> Cards() const;  // ascending index order
  std::string ToString() const;

  class Iterator {
   public:
    explicit constexpr Iterator(uint32_t mask) : mask_(mask) {}
    constexpr Card operator*() const { return Card(std::countr_zero(mask_)); }
    constexpr Iterator& operator++() {
      mask_ &= mask_ - 1;
      return *this;
    }
    constexpr bool operator!=(const Iterator& o) const {
      return mask_ != o.mask_;
    }

   private:
    uint32_t mask_;
  };
  constexpr Iterator begin() const { return Iterator(mask_); }
  constexpr Iterator end() const { return Iterator(0); }

  friend constexpr bool operator==(CardSet a, CardSet b) {
    return a.mask_ == b.mask_;
  }

 private:
  uint32_t mask_ = 0;
};

inline constexpr CardSet FullDeck() { return CardSet(0xFFFFFFFFu); }

// One dealt game: three hands of ten, two skat cards, and the seat that
// leads the first trick.
struct Deal {
  uint64_t id = 0;
  std::array<CardSet, kNumPlayers> hands;
  CardSet skat;
  int forehand = 0;

  // Hands and skat are pairwise disjoint and cover the full deck.
  bool IsValidPartition() const;
  bool operator==(const Deal& o) const;
};

// Generic deal shape: p players drawing floor(n/p) cards each from an
// n-card deck; leftovers (the skat in Skat) stay on the table.
struct DealSpec {
  int players = kNumPlayers;
  int deck_size = kNumCards;
  int HandSize() const { return deck_size / players; }
  // One player degenerately takes everything; the formula still applies.
  bool IsValid() const { return players >= 1 && deck_size >= players; }
};

// Number of distinct deals, prod_{i=1..p} C(n - i*floor(n/p), floor(n/p)).
// The caller multiplies by the number of forehand positions if seats matter.
BigInt DealCountProduct(const DealSpec& spec);

// Skat closed form 32! / (10! 10! 10! 2!), kept separate from the general
// product on purpose: the product form ignores leftover cards.
BigInt SkatDealCount();

BigInt Binomial(int n, int k);

// Deterministic deal stream. Same seed, same sequence, bit for bit.
// Algorithm identity is recorded in deal files so corpora stay replayable.
class DealGenerator {
 public:
  static constexpr const char* kAlgorithmId = "mt19937_64/fisher-yates/v1";

  explicit DealGenerator(uint64_t seed, uint64_t first_id = 0);
  Deal Next();
  uint64_t next_id() const { return next_id_; }

 private:
  uint64_t UniformBelow(uint64_t n);

  std::mt19937_64 rng_;
  uint64_t next_id_;
};

std::vector<Deal> GenerateDeals(uint64_t seed, uint64_t count,
                                uint64_t first_id = 0);

// Fixed-width binary deal file. Header carries seed and generator identity;
// records are 41 bytes (32 card indices in deal order, forehand byte,
// 64-bit id, little-endian) so a deal is seekable by id.
struct DealFileHeader {
  uint64_t seed = 0;
  uint64_t first_id = 0;
  uint64_t count = 0;
  std::string algorithm = DealGenerator::kAlgorithmId;
};

class DealFileWriter {
 public:
  DealFileWriter(std::ostream& out, const DealFileHeader& header);
  void Write(const Deal& deal);
  uint64_t written() const { return written_; }

 private:
  std::ostream& out_;
  uint64_t written_ = 0;
};

class DealFileReader {
 public:
  explicit DealFileReader(std::istream& in);
  const DealFileHeader& header() const { return header_; }
  std::optional<Deal> Next();

 private:
  std::istream& in_;
  DealFileHeader header_;
  uint64_t read_ = 0;
};

void WriteDealFile(const std::string& path, const DealFileHeader& header,
                   const std::vector<Deal>& deals);
std::vector<Deal> ReadDealFile(const std::string& path,
                               DealFileHeader* header = nullptr);

}  // namespace skat

#endif  // SKATLAB_CARDS_H_

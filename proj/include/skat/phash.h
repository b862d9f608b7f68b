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

#ifndef SKATLAB_PHASH_H_
#define SKATLAB_PHASH_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace skat {

using FeatureVector = std::vector<uint32_t>;

// -1, 0, +1 like a three-way comparison of the two vectors in
// dictionary order.
int LexCompare(const FeatureVector& a, const FeatureVector& b);

struct SchemaField {
  std::string name;
  uint32_t domain = 1;  // |D_i|, field values live in [0, domain)
  int bits = 0;         // ceil(log2(domain))
};

// Order-preserving perfect hash over a feature vector. Each field is
// packed into ceil(log2(|D_i|)) bits; the last field occupies the least
// significant bits. Keys therefore compare exactly like the vectors do
// lexicographically. The hash is perfect but not minimal: capacity is
// 2^(sum of widths), at least the product of the domains.
class FeatureSchema {
 public:
  FeatureSchema() = default;
  FeatureSchema(std::string name,
                std::vector<std::pair<std::string, uint32_t>> fields);

  const std::string& name() const { return name_; }
  int FieldCount() const { return static_cast<int>(fields_.size()); }
  const SchemaField& field(int i) const { return fields_[i]; }
  int TotalBits() const { return total_bits_; }
  // Shift of field i from the least significant end.
  int Shift(int i) const { return shifts_[i]; }

  // Number of addressable keys, 2^TotalBits. Total bit width is capped at
  // 63 so the capacity itself fits an unsigned key.
  uint64_t Capacity() const { return uint64_t{1} << total_bits_; }
  uint64_t DomainProduct() const;

  bool InDomain(const FeatureVector& v) const;

  // h = f1, then h = (h << width_i) + f_i for each further field.
  uint64_t Rank(const FeatureVector& v) const;
  // f_i = (h >> shift_i) & mask_i. Values are raw bit fields; only padded
  // schemas (every domain a power of two) guarantee in-domain results.
  FeatureVector Unrank(uint64_t key) const;

  // Drops the given number of trailing fields (the least significant
  // ones); used for background tables.
  FeatureSchema Prefix(int fields_to_drop) const;

  // Manifest format: one field per line, "name domain_size".
  static FeatureSchema Load(const std::string& name, std::istream& in);
  void Save(std::ostream& out) const;

  bool operator==(const FeatureSchema& o) const {
    if (name_ != o.name_ || fields_.size() != o.fields_.size()) return false;
    for (size_t i = 0; i < fields_.size(); ++i) {
      if (fields_[i].name != o.fields_[i].name ||
          fields_[i].domain != o.fields_[i].domain) {
        return false;
      }
    }
    return true;
  }

 private:
  std::string name_;
  std::vector<SchemaField> fields_;
  std::vector<int> shifts_;
  int total_bits_ = 0;
};

}  // namespace skat

#endif  // SKATLAB_PHASH_H_

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

#include "skat/phash.h"

#include <algorithm>
#include <bit>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace skat {

int LexCompare(const FeatureVector& a, const FeatureVector& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("vectors of different arity");
  }
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  }
  return 0;
}

FeatureSchema::FeatureSchema(
    std::string name, std::vector<std::pair<std::string, uint32_t>> fields)
    : name_(std::move(name)) {
  if (fields.empty()) throw std::invalid_argument("schema without fields");
  fields_.reserve(fields.size());
  for (auto& [field_name, domain] : fields) {
    if (domain < 1) throw std::invalid_argument("empty field domain");
    SchemaField f;
    f.name = std::move(field_name);
    f.domain = domain;
    f.bits = domain <= 1 ? 0 : std::bit_width(domain - 1);
    total_bits_ += f.bits;
    fields_.push_back(std::move(f));
  }
  if (total_bits_ > 63) {
    throw std::invalid_argument("schema exceeds 63 key bits");
  }
  shifts_.assign(fields_.size(), 0);
  int shift = 0;
  for (int i = FieldCount() - 1; i >= 0; --i) {
    shifts_[i] = shift;
    shift += fields_[i].bits;
  }
}

uint64_t FeatureSchema::DomainProduct() const {
  uint64_t product = 1;
  for (const SchemaField& f : fields_) product *= f.domain;
  return product;
}

bool FeatureSchema::InDomain(const FeatureVector& v) const {
  if (static_cast<int>(v.size()) != FieldCount()) return false;
  for (int i = 0; i < FieldCount(); ++i) {
    if (v[i] >= fields_[i].domain) return false;
  }
  return true;
}

uint64_t FeatureSchema::Rank(const FeatureVector& v) const {
  if (static_cast<int>(v.size()) != FieldCount()) {
    throw std::invalid_argument("feature vector arity mismatch for " + name_);
  }
  if (v[0] >= fields_[0].domain) {
    throw std::invalid_argument("feature " + fields_[0].name +
                                " out of domain");
  }
  uint64_t key = v[0];
  for (int i = 1; i < FieldCount(); ++i) {
    if (v[i] >= fields_[i].domain) {
      throw std::invalid_argument("feature " + fields_[i].name +
                                  " out of domain");
    }
    key = (key << fields_[i].bits) + v[i];
  }
  return key;
}

FeatureVector FeatureSchema::Unrank(uint64_t key) const {
  if (key >= Capacity()) {
    throw std::invalid_argument("key beyond schema capacity");
  }
  FeatureVector v(FieldCount());
  for (int i = 0; i < FieldCount(); ++i) {
    const uint64_t mask = (uint64_t{1} << fields_[i].bits) - 1;
    v[i] = static_cast<uint32_t>((key >> shifts_[i]) & mask);
  }
  return v;
}

FeatureSchema FeatureSchema::Prefix(int fields_to_drop) const {
  const int keep = std::max(1, FieldCount() - fields_to_drop);
  std::vector<std::pair<std::string, uint32_t>> fields;
  for (int i = 0; i < keep; ++i) {
    fields.emplace_back(fields_[i].name, fields_[i].domain);
  }
  return FeatureSchema(name_ + "_bg", std::move(fields));
}

FeatureSchema FeatureSchema::Load(const std::string& name, std::istream& in) {
  std::vector<std::pair<std::string, uint32_t>> fields;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    std::istringstream parts(line);
    std::string field_name;
    if (!(parts >> field_name)) continue;  // blank line
    int64_t domain = 0;
    if (!(parts >> domain) || domain < 1) {
      throw std::runtime_error("schema " + name + " line " +
                               std::to_string(line_number) +
                               ": expected 'name domain_size'");
    }
    fields.emplace_back(field_name, static_cast<uint32_t>(domain));
  }
  return FeatureSchema(name, std::move(fields));
}

void FeatureSchema::Save(std::ostream& out) const {
  for (const SchemaField& f : fields_) {
    out << f.name << ' ' << f.domain << '\n';
  }
}

}  // namespace skat

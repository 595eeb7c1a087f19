// Copyright 2026 The rtss Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace rtss {

// Unsigned 128-bit word backing field elements and bit strings.
using u128 = unsigned __int128;

// Lowercase hex, fixed digit count, no prefix.
std::string hex_digits(u128 value, unsigned digits);

// Parses hex with or without a "0x" prefix. Throws std::invalid_argument on
// junk or on more than 32 digits.
u128 parse_hex(std::string_view text);

/// A fixed-width bit string of up to 128 bits. Bit layout is big-endian in
/// presentation: the most-significant bit of value() is the first bit of the
/// string. Used for secrets, MAC payloads/tags, PUF challenges and responses.
class BitVec {
 public:
  BitVec() = default;
  BitVec(u128 value, unsigned width);

  // Width is 4 bits per hex digit.
  static BitVec from_hex(std::string_view text);
  static BitVec random(unsigned width, std::mt19937_64& rng);

  unsigned width() const { return width_; }
  u128 value() const { return value_; }
  bool bit(unsigned index_from_msb) const;

  BitVec operator^(const BitVec& other) const;  // widths must match
  bool operator==(const BitVec& other) const = default;

  // The i-th block of `block_bits` bits, most-significant block first.
  u128 block(unsigned index, unsigned block_bits) const;

  static BitVec concat(const BitVec& high, const BitVec& low);
  BitVec take_high(unsigned bits) const;
  BitVec take_low(unsigned bits) const;

  // "0x" + lowercase hex, ceil(width/4) digits (min 1).
  std::string to_hex() const;
  // Big-endian bytes, ceil(width/8) long, value right-aligned.
  std::vector<uint8_t> to_bytes() const;
  static BitVec from_bytes(const std::vector<uint8_t>& bytes, unsigned width);

 private:
  u128 value_ = 0;
  unsigned width_ = 0;
};

}  // namespace rtss

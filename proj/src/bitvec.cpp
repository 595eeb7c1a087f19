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

#include "rtss/bitvec.hpp"

#include <stdexcept>

namespace rtss {

namespace {

u128 width_mask(unsigned width) {
  if (width == 0) return 0;
  if (width >= 128) return ~u128{0};
  return (u128{1} << width) - 1;
}

}  // namespace

std::string hex_digits(u128 value, unsigned digits) {
  static const char* kHex = "0123456789abcdef";
  std::string out(digits, '0');
  for (unsigned i = 0; i < digits; ++i) {
    out[digits - 1 - i] = kHex[static_cast<unsigned>(value & 0xF)];
    value >>= 4;
  }
  if (value != 0) throw std::invalid_argument("value does not fit in hex width");
  return out;
}

u128 parse_hex(std::string_view text) {
  if (text.size() >= 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X'))
    text.remove_prefix(2);
  if (text.empty()) throw std::invalid_argument("empty hex string");
  if (text.size() > 32) throw std::invalid_argument("hex string wider than 128 bits");
  u128 value = 0;
  for (char c : text) {
    unsigned digit;
    if (c >= '0' && c <= '9') digit = c - '0';
    else if (c >= 'a' && c <= 'f') digit = 10 + (c - 'a');
    else if (c >= 'A' && c <= 'F') digit = 10 + (c - 'A');
    else throw std::invalid_argument("bad hex digit");
    value = (value << 4) | digit;
  }
  return value;
}

BitVec::BitVec(u128 value, unsigned width) : value_(value), width_(width) {
  if (width > 128) throw std::invalid_argument("BitVec wider than 128 bits");
  if (value & ~width_mask(width)) throw std::invalid_argument("BitVec value exceeds width");
}

BitVec BitVec::from_hex(std::string_view text) {
  std::string_view digits = text;
  if (digits.size() >= 2 && digits[0] == '0' && (digits[1] == 'x' || digits[1] == 'X'))
    digits.remove_prefix(2);
  u128 value = parse_hex(digits);
  return BitVec(value, static_cast<unsigned>(digits.size()) * 4);
}

BitVec BitVec::random(unsigned width, std::mt19937_64& rng) {
  u128 value = (u128{rng()} << 64) | rng();
  return BitVec(value & width_mask(width), width);
}

bool BitVec::bit(unsigned index_from_msb) const {
  if (index_from_msb >= width_) throw std::out_of_range("bit index");
  return (value_ >> (width_ - 1 - index_from_msb)) & 1;
}

BitVec BitVec::operator^(const BitVec& other) const {
  if (width_ != other.width_) throw std::invalid_argument("BitVec width mismatch");
  return BitVec(value_ ^ other.value_, width_);
}

u128 BitVec::block(unsigned index, unsigned block_bits) const {
  if (block_bits == 0 || (index + 1) * block_bits > width_)
    throw std::out_of_range("block out of range");
  unsigned shift = width_ - (index + 1) * block_bits;
  return (value_ >> shift) & width_mask(block_bits);
}

BitVec BitVec::concat(const BitVec& high, const BitVec& low) {
  unsigned width = high.width_ + low.width_;
  if (width > 128) throw std::invalid_argument("concat exceeds 128 bits");
  return BitVec((high.value_ << low.width_) | low.value_, width);
}

BitVec BitVec::take_high(unsigned bits) const {
  if (bits > width_) throw std::out_of_range("take_high");
  return BitVec(value_ >> (width_ - bits), bits);
}

BitVec BitVec::take_low(unsigned bits) const {
  if (bits > width_) throw std::out_of_range("take_low");
  return BitVec(value_ & width_mask(bits), bits);
}

std::string BitVec::to_hex() const {
  unsigned digits = (width_ + 3) / 4;
  if (digits == 0) digits = 1;
  return "0x" + hex_digits(value_, digits);
}

std::vector<uint8_t> BitVec::to_bytes() const {
  unsigned count = (width_ + 7) / 8;
  std::vector<uint8_t> out(count);
  u128 v = value_;
  for (unsigned i = 0; i < count; ++i) {
    out[count - 1 - i] = static_cast<uint8_t>(v & 0xFF);
    v >>= 8;
  }
  return out;
}

BitVec BitVec::from_bytes(const std::vector<uint8_t>& bytes, unsigned width) {
  u128 value = 0;
  for (uint8_t b : bytes) value = (value << 8) | b;
  return BitVec(value & width_mask(width), width);
}

}  // namespace rtss

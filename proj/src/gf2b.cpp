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

#include "rtss/gf2b.hpp"

#include <stdexcept>
#include <utility>

namespace rtss {

namespace {

struct TableEntry {
  unsigned width;
  uint64_t tail;
};

// x^b + tail, all irreducible. 2..16 are re-checked by trial division at
// construction; the wider entries are standard low-weight polynomials
// (the 128-bit one is the GCM polynomial).
constexpr TableEntry kReductionTable[] = {
    {2, 0x3},     // x^2 + x + 1
    {3, 0x3},     // x^3 + x + 1
    {4, 0x3},     // x^4 + x + 1
    {8, 0x1B},    // x^8 + x^4 + x^3 + x + 1
    {16, 0x2D},   // x^16 + x^5 + x^3 + x^2 + 1
    {32, 0x8D},   // x^32 + x^7 + x^3 + x^2 + 1
    {64, 0x1B},   // x^64 + x^4 + x^3 + x + 1
    {128, 0x87},  // x^128 + x^7 + x^2 + x + 1
};

const TableEntry* table_lookup(unsigned width) {
  for (const auto& entry : kReductionTable)
    if (entry.width == width) return &entry;
  return nullptr;
}

unsigned poly_degree(u128 p) {
  unsigned deg = 0;
  while (p >>= 1) ++deg;
  return deg;
}

// Remainder of a full polynomial (x^width + tail) modulo divisor.
u128 poly_mod_full(unsigned width, u128 tail, u128 divisor) {
  unsigned ddeg = poly_degree(divisor);
  // x^width mod divisor, one multiply-by-x step at a time.
  u128 rem = 1;
  for (unsigned k = 0; k < width; ++k) {
    bool top = (rem >> (ddeg - 1)) & 1;
    rem <<= 1;
    if (top) rem ^= divisor;
  }
  // Fold in tail mod divisor.
  u128 t = tail;
  while (t != 0 && poly_degree(t) >= ddeg) t ^= divisor << (poly_degree(t) - ddeg);
  return rem ^ t;
}

}  // namespace

bool FieldSpec::is_irreducible(unsigned width_bits, u128 tail) {
  if ((tail & 1) == 0) return false;  // x divides
  if (poly_degree(tail) >= width_bits) return false;
  for (u128 d = 2; poly_degree(d) <= width_bits / 2; ++d) {
    if (poly_mod_full(width_bits, tail, d) == 0) return false;
  }
  return true;
}

FieldSpec::FieldSpec(unsigned width_bits, u128 reduction_tail)
    : width_(width_bits), tail_(reduction_tail) {
  if (width_bits < 2 || width_bits > 128)
    throw std::invalid_argument("field width must be in [2, 128]");
  if (poly_degree(reduction_tail) >= width_bits)
    throw std::invalid_argument("reduction polynomial tail degree too high");
  if (width_bits <= 16) {
    if (!is_irreducible(width_bits, reduction_tail))
      throw std::invalid_argument("reduction polynomial is not irreducible");
  } else {
    const TableEntry* entry = table_lookup(width_bits);
    if (entry == nullptr || entry->tail != reduction_tail)
      throw std::invalid_argument(
          "cannot verify irreducibility for width > 16; use a built-in polynomial");
  }
}

FieldSpec FieldSpec::from_width(unsigned width_bits) {
  if (const TableEntry* entry = table_lookup(width_bits))
    return FieldSpec(width_bits, entry->tail);
  if (width_bits >= 2 && width_bits <= 16) {
    for (u128 tail = 1; poly_degree(tail) < width_bits; tail += 2)
      if (is_irreducible(width_bits, tail)) return FieldSpec(width_bits, tail);
  }
  throw std::invalid_argument("no reduction polynomial known for this width");
}

FieldSpec FieldSpec::from_poly_hex(std::string_view text) {
  // The x^b term of a 128-bit field does not fit in a u128, so strip a
  // leading "1" by hand when the digit count implies b = 128.
  std::string_view digits = text;
  if (digits.size() >= 2 && digits[0] == '0' && (digits[1] == 'x' || digits[1] == 'X'))
    digits.remove_prefix(2);
  while (digits.size() > 1 && digits[0] == '0') digits.remove_prefix(1);
  if (digits.size() == 33 && digits[0] == '1') {
    u128 tail = parse_hex(digits.substr(1));
    return FieldSpec(128, tail);
  }
  u128 full = parse_hex(digits);
  if (full < 4) throw std::invalid_argument("reduction polynomial too small");
  unsigned width = poly_degree(full);
  return FieldSpec(width, full ^ (u128{1} << width));
}

u128 FieldSpec::element_mask() const {
  if (width_ >= 128) return ~u128{0};
  return (u128{1} << width_) - 1;
}

std::string FieldSpec::poly_hex() const {
  if (width_ == 128) return "0x1" + hex_digits(tail_, 32);
  u128 full = (u128{1} << width_) | tail_;
  unsigned digits = (width_ + 1 + 3) / 4;
  return "0x" + hex_digits(full, digits);
}

FieldElement::FieldElement(const FieldSpec& field, u128 value)
    : field_(field), value_(value) {
  if (value & ~field.element_mask())
    throw std::invalid_argument("element value exceeds field width");
}

void FieldElement::check_same_field(const FieldElement& other) const {
  if (!(field_ == other.field_))
    throw std::invalid_argument("field mismatch between operands");
}

FieldElement FieldElement::operator+(const FieldElement& other) const {
  check_same_field(other);
  return FieldElement(field_, value_ ^ other.value_);
}

FieldElement FieldElement::operator*(const FieldElement& other) const {
  check_same_field(other);
  // Shift-and-XOR with per-step reduction by the field polynomial.
  u128 a = value_;
  u128 b = other.value_;
  u128 acc = 0;
  const u128 top = u128{1} << (field_.width() - 1);
  const u128 mask = field_.element_mask();
  while (b != 0) {
    if (b & 1) acc ^= a;
    b >>= 1;
    bool carry = (a & top) != 0;
    a = (a << 1) & mask;
    if (carry) a ^= field_.tail();
  }
  return FieldElement(field_, acc);
}

FieldElement FieldElement::operator/(const FieldElement& other) const {
  return *this * other.inverse();
}

FieldElement FieldElement::inverse() const {
  if (value_ == 0) throw std::domain_error("zero has no inverse");
  // a^(2^b - 2) = prod_{i=1}^{b-1} a^(2^i)
  FieldElement square = *this;
  FieldElement out(field_, 1);
  bool first = true;
  for (unsigned i = 1; i < field_.width(); ++i) {
    square = square * square;
    out = first ? square : out * square;
    first = false;
  }
  return out;
}

FieldElement FieldElement::pow(uint64_t exponent) const {
  FieldElement result(field_, 1);
  FieldElement base = *this;
  while (exponent != 0) {
    if (exponent & 1) result = result * base;
    base = base * base;
    exponent >>= 1;
  }
  return result;
}

bool FieldElement::operator==(const FieldElement& other) const {
  return field_ == other.field_ && value_ == other.value_;
}

std::string FieldElement::to_hex() const {
  unsigned digits = (field_.width() + 3) / 4;
  if (digits == 0) digits = 1;
  return "0x" + hex_digits(value_, digits);
}

FieldElement FieldElement::from_hex(const FieldSpec& field, std::string_view text) {
  return FieldElement(field, parse_hex(text));
}

FieldElement poly_eval(std::span<const FieldElement> coeffs, const FieldElement& x) {
  if (coeffs.empty()) throw std::invalid_argument("empty coefficient list");
  FieldElement acc = coeffs.back();
  for (size_t i = coeffs.size() - 1; i-- > 0;) {
    acc = acc * x + coeffs[i];
  }
  return acc;
}

}  // namespace rtss

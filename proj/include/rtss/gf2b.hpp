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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rtss/bitvec.hpp"

namespace rtss {

/// A binary extension field GF(2^b), described by its width and the degree-b
/// reduction polynomial. The polynomial is handled as "x^b + tail" so that
/// b = 128 still fits in 128-bit words; poly_hex() prints the full polynomial
/// including the x^b term (e.g. "0x1002d" for GF(2^16)).
///
/// Irreducibility is verified by trial division at construction for b <= 16;
/// wider fields only accept the built-in table entries.
class FieldSpec {
 public:
  FieldSpec(unsigned width_bits, u128 reduction_tail);

  // Built-in reduction polynomial for the given width, or (b <= 16) the
  // smallest irreducible found by search.
  static FieldSpec from_width(unsigned width_bits);
  // Full polynomial including the x^b term, e.g. "0x13" for x^4+x+1.
  static FieldSpec from_poly_hex(std::string_view text);

  unsigned width() const { return width_; }
  u128 tail() const { return tail_; }  // reduction polynomial below x^b
  u128 element_mask() const;
  std::string poly_hex() const;

  bool operator==(const FieldSpec& other) const = default;

  // Trial-division test on x^b + tail. Practical for b <= 32.
  static bool is_irreducible(unsigned width_bits, u128 tail);

 private:
  unsigned width_;
  u128 tail_;
};

/// An element of GF(2^b). Carries its field by value; mixing elements from
/// different fields throws std::invalid_argument.
class FieldElement {
 public:
  FieldElement(const FieldSpec& field, u128 value);

  u128 value() const { return value_; }
  const FieldSpec& field() const { return field_; }
  bool is_zero() const { return value_ == 0; }

  FieldElement operator+(const FieldElement& other) const;  // XOR
  FieldElement operator*(const FieldElement& other) const;
  FieldElement operator/(const FieldElement& other) const;
  FieldElement inverse() const;  // throws std::domain_error on zero
  FieldElement pow(uint64_t exponent) const;

  bool operator==(const FieldElement& other) const;
  bool operator!=(const FieldElement& other) const { return !(*this == other); }

  // "0x" + lowercase hex, zero-padded to ceil(b/4) digits.
  std::string to_hex() const;
  static FieldElement from_hex(const FieldSpec& field, std::string_view text);

 private:
  void check_same_field(const FieldElement& other) const;

  FieldSpec field_;
  u128 value_;
};

// Horner evaluation of coeffs[0] + coeffs[1] x + ... (free to leading).
// Throws std::invalid_argument on an empty coefficient list.
FieldElement poly_eval(std::span<const FieldElement> coeffs, const FieldElement& x);

}  // namespace rtss

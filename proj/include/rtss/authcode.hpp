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

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rtss/bitvec.hpp"
#include "rtss/gf2b.hpp"
#include "rtss/sha256.hpp"

namespace rtss {

/// AMD code dimensions: g information blocks of `block_bits` each, one
/// block-wide tag. Mis-detection probability of a nonzero distortion is at
/// most g / 2^block_bits.
struct AmdParams {
  unsigned block_bits;
  unsigned block_count;

  AmdParams(unsigned block_bits, unsigned block_count);
};

/// MAC key material. AMD uses the low block_bits as a field element (must be
/// nonzero); HMAC and the keystream cipher use the full byte serialization.
struct MacKey {
  BitVec bits;

  FieldElement amd_element(const FieldSpec& field) const;
  std::vector<uint8_t> bytes() const { return bits.to_bytes(); }
};

/// Payload-plus-tag pair. The payload occupies the most-significant bits of
/// the combined value, the tag the least-significant.
struct EncodedSecret {
  BitVec payload;
  BitVec tag;

  BitVec combined() const { return BitVec::concat(payload, tag); }
  static EncodedSecret split(const BitVec& combined, unsigned tag_bits);
  std::string to_hex() const { return combined().to_hex(); }
};

// tag = S_0 K + S_1 K^2 + ... + S_{g-1} K^g over GF(2^block_bits), with S_0
// the most-significant block of the secret. Throws on zero key or when
// |secret| != g * block_bits.
EncodedSecret amd_encode(const MacKey& key, const BitVec& secret, const AmdParams& params);
bool amd_verify(const MacKey& key, const EncodedSecret& encoded, const AmdParams& params);

// HMAC-SHA256 per RFC 2104 (ipad 0x36, opad 0x5c).
Sha256::Digest hmac_sha256(std::span<const uint8_t> key, std::span<const uint8_t> message);
// Constant-pattern comparison of a full-width tag.
bool hmac_verify(std::span<const uint8_t> key, std::span<const uint8_t> message,
                 std::span<const uint8_t> tag);

enum class CipherScheme { kNull, kKeystream };
enum class MacScheme { kAmd, kHmac };

/// Encrypt-then-MAC configuration. `amd` sizes both the payload (g blocks)
/// and the tag (one block); with MacScheme::kHmac the tag is the leftmost
/// block_bits of the HMAC-SHA256 digest so the encoded secret keeps the same
/// layout.
struct EtmParams {
  CipherScheme cipher = CipherScheme::kNull;
  MacScheme mac = MacScheme::kAmd;
  AmdParams amd{4, 3};

  unsigned payload_bits() const { return amd.block_bits * amd.block_count; }
  unsigned tag_bits() const { return amd.block_bits; }
  unsigned total_bits() const { return payload_bits() + tag_bits(); }
};

// E = ENC(K, S) || MAC(K, ENC(K, S)).
EncodedSecret etm_encode(const MacKey& key, const BitVec& secret, const EtmParams& params);
// Verifies the tag first; nullopt signals cheating (never returns an
// unauthenticated payload).
std::optional<BitVec> etm_decode(const MacKey& key, const EncodedSecret& encoded,
                                 const EtmParams& params);

const char* to_string(CipherScheme scheme);
const char* to_string(MacScheme scheme);
CipherScheme cipher_from_string(const std::string& name);
MacScheme mac_from_string(const std::string& name);

}  // namespace rtss

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

#include "rtss/authcode.hpp"

#include <stdexcept>

namespace rtss {

AmdParams::AmdParams(unsigned block_bits, unsigned block_count)
    : block_bits(block_bits), block_count(block_count) {
  if (block_bits < 2 || block_bits > 128)
    throw std::invalid_argument("AMD block width must be in [2, 128]");
  if (block_count < 1) throw std::invalid_argument("AMD needs at least one block");
  // g < 2^b keeps the g/2^b bound meaningful.
  if (block_bits < 64 && static_cast<u128>(block_count) >= (u128{1} << block_bits))
    throw std::invalid_argument("AMD block count must be below 2^block_bits");
}

FieldElement MacKey::amd_element(const FieldSpec& field) const {
  u128 truncated = bits.value() & field.element_mask();
  return FieldElement(field, truncated);
}

EncodedSecret EncodedSecret::split(const BitVec& combined, unsigned tag_bits) {
  if (combined.width() < tag_bits)
    throw std::invalid_argument("encoded secret narrower than its tag");
  return EncodedSecret{combined.take_high(combined.width() - tag_bits),
                       combined.take_low(tag_bits)};
}

namespace {

BitVec amd_tag(const MacKey& key, const BitVec& payload, const AmdParams& params) {
  if (payload.width() != params.block_bits * params.block_count)
    throw std::invalid_argument("payload width must be g * block_bits");
  FieldSpec field = FieldSpec::from_width(params.block_bits);
  FieldElement k = key.amd_element(field);
  if (k.is_zero()) throw std::invalid_argument("AMD key must be nonzero");
  FieldElement acc(field, 0);
  FieldElement kpow = k;
  for (unsigned i = 0; i < params.block_count; ++i) {
    FieldElement block(field, payload.block(i, params.block_bits));
    acc = acc + block * kpow;
    kpow = kpow * k;
  }
  return BitVec(acc.value(), params.block_bits);
}

}  // namespace

EncodedSecret amd_encode(const MacKey& key, const BitVec& secret, const AmdParams& params) {
  return EncodedSecret{secret, amd_tag(key, secret, params)};
}

bool amd_verify(const MacKey& key, const EncodedSecret& encoded, const AmdParams& params) {
  if (encoded.tag.width() != params.block_bits)
    throw std::invalid_argument("tag width must be block_bits");
  return amd_tag(key, encoded.payload, params) == encoded.tag;
}

Sha256::Digest hmac_sha256(std::span<const uint8_t> key, std::span<const uint8_t> message) {
  std::array<uint8_t, Sha256::kBlockSize> padded{};
  if (key.size() > Sha256::kBlockSize) {
    auto hashed = sha256(key);
    std::copy(hashed.begin(), hashed.end(), padded.begin());
  } else {
    std::copy(key.begin(), key.end(), padded.begin());
  }

  std::array<uint8_t, Sha256::kBlockSize> ipad, opad;
  for (size_t i = 0; i < Sha256::kBlockSize; ++i) {
    ipad[i] = padded[i] ^ 0x36;
    opad[i] = padded[i] ^ 0x5c;
  }

  Sha256 inner;
  inner.update(ipad);
  inner.update(message);
  auto inner_digest = inner.finish();

  Sha256 outer;
  outer.update(opad);
  outer.update(inner_digest);
  return outer.finish();
}

bool hmac_verify(std::span<const uint8_t> key, std::span<const uint8_t> message,
                 std::span<const uint8_t> tag) {
  auto expected = hmac_sha256(key, message);
  if (tag.size() != expected.size()) return false;
  uint8_t diff = 0;
  for (size_t i = 0; i < expected.size(); ++i) diff |= expected[i] ^ tag[i];
  return diff == 0;
}

namespace {

// Keystream bytes from SHA256(key || counter), enough to cover `width` bits.
BitVec keystream(const MacKey& key, unsigned width) {
  std::vector<uint8_t> stream;
  uint32_t counter = 0;
  while (stream.size() * 8 < width) {
    Sha256 h;
    auto kb = key.bytes();
    h.update(kb);
    uint8_t ctr[4] = {static_cast<uint8_t>(counter >> 24), static_cast<uint8_t>(counter >> 16),
                      static_cast<uint8_t>(counter >> 8), static_cast<uint8_t>(counter)};
    h.update(ctr);
    auto digest = h.finish();
    stream.insert(stream.end(), digest.begin(), digest.end());
    ++counter;
  }
  stream.resize((width + 7) / 8);
  return BitVec::from_bytes(stream, width);
}

BitVec encrypt_payload(const MacKey& key, const BitVec& secret, const EtmParams& params) {
  switch (params.cipher) {
    case CipherScheme::kNull:
      return secret;
    case CipherScheme::kKeystream:
      return secret ^ keystream(key, secret.width());
  }
  throw std::logic_error("unreachable");
}

BitVec mac_payload(const MacKey& key, const BitVec& payload, const EtmParams& params) {
  switch (params.mac) {
    case MacScheme::kAmd:
      return amd_tag(key, payload, params.amd);
    case MacScheme::kHmac: {
      auto digest = hmac_sha256(key.bytes(), payload.to_bytes());
      std::vector<uint8_t> bytes(digest.begin(), digest.end());
      // Leftmost bits of the digest, standard HMAC truncation.
      unsigned bits = params.tag_bits();
      BitVec full = BitVec::from_bytes(
          std::vector<uint8_t>(bytes.begin(), bytes.begin() + (bits + 7) / 8),
          ((bits + 7) / 8) * 8);
      return full.take_high(bits);
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace

EncodedSecret etm_encode(const MacKey& key, const BitVec& secret, const EtmParams& params) {
  if (secret.width() != params.payload_bits())
    throw std::invalid_argument("secret width must be g * block_bits");
  BitVec payload = encrypt_payload(key, secret, params);
  return EncodedSecret{payload, mac_payload(key, payload, params)};
}

std::optional<BitVec> etm_decode(const MacKey& key, const EncodedSecret& encoded,
                                 const EtmParams& params) {
  if (encoded.payload.width() != params.payload_bits() ||
      encoded.tag.width() != params.tag_bits())
    throw std::invalid_argument("encoded secret has the wrong layout");
  if (params.mac == MacScheme::kAmd) {
    FieldSpec field = FieldSpec::from_width(params.amd.block_bits);
    if (key.amd_element(field).is_zero()) return std::nullopt;
  }
  if (!(mac_payload(key, encoded.payload, params) == encoded.tag)) return std::nullopt;
  return encrypt_payload(key, encoded.payload, params);  // XOR cipher is its own inverse
}

const char* to_string(CipherScheme scheme) {
  return scheme == CipherScheme::kNull ? "null" : "keystream";
}

const char* to_string(MacScheme scheme) { return scheme == MacScheme::kAmd ? "amd" : "hmac"; }

CipherScheme cipher_from_string(const std::string& name) {
  if (name == "null") return CipherScheme::kNull;
  if (name == "keystream") return CipherScheme::kKeystream;
  throw std::invalid_argument("unknown cipher scheme: " + name);
}

MacScheme mac_from_string(const std::string& name) {
  if (name == "amd") return MacScheme::kAmd;
  if (name == "hmac") return MacScheme::kHmac;
  throw std::invalid_argument("unknown mac scheme: " + name);
}

}  // namespace rtss

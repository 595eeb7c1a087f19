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

#include "rtss/pufmodel.hpp"

#include <stdexcept>

#include "rtss/sha256.hpp"

namespace rtss {

PufDevice::PufDevice(std::vector<uint8_t> device_secret, unsigned challenge_bits,
                     unsigned response_bits, double noise_rate)
    : device_secret_(std::move(device_secret)),
      challenge_bits_(challenge_bits),
      response_bits_(response_bits),
      noise_rate_(noise_rate) {
  if (challenge_bits_ == 0 || challenge_bits_ > 128)
    throw std::invalid_argument("challenge width must be in [1, 128]");
  if (response_bits_ == 0 || response_bits_ > 128)
    throw std::invalid_argument("response width must be in [1, 128]");
  if (noise_rate_ < 0.0 || noise_rate_ >= 1.0)
    throw std::invalid_argument("noise rate must be in [0, 1)");
}

BitVec PufDevice::response(const BitVec& challenge) const {
  if (challenge.width() != challenge_bits_)
    throw std::invalid_argument("challenge width mismatch");
  if (auto it = pins_.find(challenge.to_hex()); it != pins_.end()) return it->second;

  std::vector<uint8_t> stream;
  uint8_t counter = 0;
  while (stream.size() * 8 < response_bits_) {
    Sha256 h;
    h.update(device_secret_);
    auto cb = challenge.to_bytes();
    h.update(cb);
    h.update({&counter, 1});
    auto digest = h.finish();
    stream.insert(stream.end(), digest.begin(), digest.end());
    ++counter;
  }
  stream.resize((response_bits_ + 7) / 8);
  return BitVec::from_bytes(stream, response_bits_);
}

BitVec PufDevice::response(const FieldElement& challenge) const {
  return response(BitVec(challenge.value(), challenge.field().width()));
}

BitVec PufDevice::noisy_response(const BitVec& challenge, std::mt19937_64& rng) const {
  BitVec clean = response(challenge);
  if (noise_rate_ == 0.0) return clean;
  std::bernoulli_distribution flip(noise_rate_);
  u128 noise = 0;
  for (unsigned i = 0; i < response_bits_; ++i) {
    noise <<= 1;
    if (flip(rng)) noise |= 1;
  }
  return BitVec(clean.value() ^ noise, response_bits_);
}

BitVec PufDevice::noisy_response(const FieldElement& challenge, std::mt19937_64& rng) const {
  return noisy_response(BitVec(challenge.value(), challenge.field().width()), rng);
}

void PufDevice::pin_response(const BitVec& challenge, const BitVec& raw_response) {
  if (challenge.width() != challenge_bits_ || raw_response.width() != response_bits_)
    throw std::invalid_argument("pinned pair has wrong widths");
  pins_.insert_or_assign(challenge.to_hex(), raw_response);
}

namespace {

void check_repetition(unsigned width, unsigned repetition) {
  if (repetition == 0 || repetition % 2 == 0)
    throw std::invalid_argument("repetition factor must be odd");
  if (width % repetition != 0)
    throw std::invalid_argument("response width must be a multiple of the repetition factor");
}

}  // namespace

std::pair<BitVec, HelperData> fe_generate(const BitVec& response, unsigned repetition) {
  check_repetition(response.width(), repetition);
  unsigned key_bits = response.width() / repetition;
  u128 key = 0;
  for (unsigned i = 0; i < key_bits; ++i) {
    unsigned ones = 0;
    for (unsigned j = 0; j < repetition; ++j)
      if (response.bit(i * repetition + j)) ++ones;
    key = (key << 1) | (ones & 1);
  }
  BitVec key_vec(key, key_bits);
  BitVec parity = response ^ fe_embed_key(key_vec, repetition);
  return {key_vec, HelperData{parity, repetition}};
}

BitVec fe_reproduce(const BitVec& noisy_response, const HelperData& helper) {
  check_repetition(noisy_response.width(), helper.repetition);
  if (noisy_response.width() != helper.parity.width())
    throw std::invalid_argument("helper data width mismatch");
  BitVec delta = noisy_response ^ helper.parity;
  unsigned key_bits = noisy_response.width() / helper.repetition;
  u128 key = 0;
  for (unsigned i = 0; i < key_bits; ++i) {
    unsigned ones = 0;
    for (unsigned j = 0; j < helper.repetition; ++j)
      if (delta.bit(i * helper.repetition + j)) ++ones;
    key = (key << 1) | (ones > helper.repetition / 2 ? 1 : 0);
  }
  return BitVec(key, key_bits);
}

BitVec fe_embed_key(const BitVec& key, unsigned repetition) {
  if (key.width() * repetition > 128)
    throw std::invalid_argument("embedded response exceeds 128 bits");
  u128 raw = 0;
  for (unsigned i = 0; i < key.width(); ++i) {
    u128 block = key.bit(i) ? (u128{1} << repetition) - 1 : 0;
    raw = (raw << repetition) | block;
  }
  return BitVec(raw, key.width() * repetition);
}

void CrpRepository::add(ChallengeResponsePair pair) {
  for (const auto& existing : pairs_)
    if (existing.challenge == pair.challenge)
      throw std::invalid_argument("challenge already enrolled");
  pairs_.push_back(std::move(pair));
}

ChallengeResponsePair CrpRepository::draw() {
  for (auto& pair : pairs_) {
    if (!pair.used) {
      pair.used = true;
      return pair;
    }
  }
  throw std::runtime_error("CRP repository exhausted");
}

size_t CrpRepository::unused_count() const {
  size_t count = 0;
  for (const auto& pair : pairs_)
    if (!pair.used) ++count;
  return count;
}

void crp_enroll(CrpRepository& repo, HelperStore& helpers, const PufDevice& device,
                unsigned count, std::mt19937_64& rng, unsigned repetition) {
  if (count < 1) throw std::invalid_argument("enrollment count must be positive");
  for (unsigned i = 0; i < count; ++i) {
    BitVec challenge = BitVec::random(device.challenge_bits(), rng);
    bool taken = false;
    for (const auto& pair : repo.pairs())
      if (pair.challenge == challenge) taken = true;
    if (taken) {
      --i;
      continue;
    }
    BitVec raw = device.response(challenge);
    auto [key, helper] = fe_generate(raw, repetition);
    helpers.insert_or_assign(challenge.to_hex(), helper);
    repo.add(ChallengeResponsePair{challenge, key, false});
  }
}

void crp_enroll_pinned(CrpRepository& repo, HelperStore& helpers, PufDevice& device,
                       const BitVec& challenge, const BitVec& key, unsigned repetition) {
  device.pin_response(challenge, fe_embed_key(key, repetition));
  BitVec raw = device.response(challenge);
  auto [extracted, helper] = fe_generate(raw, repetition);
  if (!(extracted == key)) throw std::logic_error("pinned key failed to round-trip");
  helpers.insert_or_assign(challenge.to_hex(), helper);
  repo.add(ChallengeResponsePair{challenge, extracted, false});
}

}  // namespace rtss

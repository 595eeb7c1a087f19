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
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "rtss/bitvec.hpp"
#include "rtss/gf2b.hpp"

namespace rtss {

/// Software stand-in for a strong PUF: a keyed pseudorandom mapping from
/// challenges to raw responses, with optional per-bit read noise. The
/// device_secret plays the role of silicon variation. An override table lets
/// a test harness pin specific challenge->response mappings.
class PufDevice {
 public:
  PufDevice(std::vector<uint8_t> device_secret, unsigned challenge_bits,
            unsigned response_bits, double noise_rate);

  // Noiseless reference output; deterministic per (device_secret, challenge).
  BitVec response(const BitVec& challenge) const;
  BitVec response(const FieldElement& challenge) const;

  // Each bit flipped independently with probability noise_rate.
  BitVec noisy_response(const BitVec& challenge, std::mt19937_64& rng) const;
  BitVec noisy_response(const FieldElement& challenge, std::mt19937_64& rng) const;

  // Harness override: pins the raw response for one challenge.
  void pin_response(const BitVec& challenge, const BitVec& raw_response);

  unsigned challenge_bits() const { return challenge_bits_; }
  unsigned response_bits() const { return response_bits_; }
  double noise_rate() const { return noise_rate_; }
  const std::vector<uint8_t>& device_secret() const { return device_secret_; }
  const std::map<std::string, BitVec>& pins() const { return pins_; }

 private:
  std::vector<uint8_t> device_secret_;
  unsigned challenge_bits_;
  unsigned response_bits_;
  double noise_rate_;
  std::map<std::string, BitVec> pins_;  // challenge hex -> raw response
};

/// Repetition-code helper data: parity of each raw response bit against the
/// repetition-encoded key, so no single helper bit exposes a response bit.
struct HelperData {
  BitVec parity;
  unsigned repetition;
};

// Extracts a stable key from a raw response: key bit i is the XOR of the i-th
// r-bit block, helper = response XOR repeat(key, r). Requires r odd and
// r | response width.
std::pair<BitVec, HelperData> fe_generate(const BitVec& response, unsigned repetition = 5);

// Majority vote per block of (noisy_response XOR helper). A block with more
// than floor(r/2) flips yields a wrong key bit; that is caught downstream by
// MAC verification, so no failure is surfaced here.
BitVec fe_reproduce(const BitVec& noisy_response, const HelperData& helper);

// Repetition embedding: a raw response whose extraction yields exactly `key`.
BitVec fe_embed_key(const BitVec& key, unsigned repetition = 5);

/// One enrolled pair: the challenge and the stable key extracted from the
/// noiseless response. Single-use.
struct ChallengeResponsePair {
  BitVec challenge;
  BitVec response;  // fuzzy-extractor output on the noiseless reading
  bool used = false;
};

/// Dealer-side table of enrolled pairs, one list per client.
class CrpRepository {
 public:
  explicit CrpRepository(std::string client_id) : client_id_(std::move(client_id)) {}

  const std::string& client_id() const { return client_id_; }
  void add(ChallengeResponsePair pair);
  // Next unused pair, marked used. Throws std::runtime_error when exhausted.
  ChallengeResponsePair draw();
  size_t unused_count() const;
  const std::vector<ChallengeResponsePair>& pairs() const { return pairs_; }

 private:
  std::string client_id_;
  std::vector<ChallengeResponsePair> pairs_;
};

/// Client-side helper data, keyed by challenge hex.
using HelperStore = std::map<std::string, HelperData>;

// Queries the device noiselessly with `count` fresh random challenges and
// stores (challenge, extracted key) in the repository; helper data stays with
// the client.
void crp_enroll(CrpRepository& repo, HelperStore& helpers, const PufDevice& device,
                unsigned count, std::mt19937_64& rng, unsigned repetition = 5);

// Pins one challenge->key mapping on the device (repetition-embedded raw
// response) and enrolls it, so dealer and client agree on the pinned key
// through the normal derivation path.
void crp_enroll_pinned(CrpRepository& repo, HelperStore& helpers, PufDevice& device,
                       const BitVec& challenge, const BitVec& key, unsigned repetition = 5);

}  // namespace rtss

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

#include <functional>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "rtss/authcode.hpp"
#include "rtss/grouptest.hpp"
#include "rtss/pufmodel.hpp"
#include "rtss/rsdecode.hpp"
#include "rtss/shamir.hpp"

namespace rtss {

/// Shared dealer/client configuration. The encoded secret is one field
/// element, so block_bits * (g + 1) must equal the field width.
struct SystemConfig {
  FieldSpec field;
  unsigned holders;    // n
  unsigned threshold;  // t
  EtmParams etm;
  unsigned fe_repetition = 5;

  unsigned mac_key_bits() const { return field.width(); }
  unsigned response_bits() const { return fe_repetition * mac_key_bits(); }

  void validate() const;
};

// field_bits/(g+1)-bit MAC blocks; throws unless g+1 divides field_bits.
SystemConfig make_config(unsigned field_bits, unsigned holders, unsigned threshold,
                         MacScheme mac = MacScheme::kAmd,
                         CipherScheme cipher = CipherScheme::kNull, unsigned g = 3);

struct TraceRecord {
  int stage;  // 1..4, 5 = invitation
  std::string action;
  std::optional<std::vector<int>> subset;
  std::optional<bool> pass;
  std::vector<std::pair<std::string, std::string>> values;  // label -> hex
};
using Trace = std::vector<TraceRecord>;

// One JSON object per line: {"stage":..,"action":..,"subset":..,"pass":..,"values":{..}}.
std::string trace_to_json_lines(const Trace& trace);

/// The dealer: owns the CRP repository, encodes and deals secrets, and can
/// issue supplementary shares of the recorded dealing to invited holders.
class DealerState {
 public:
  DealerState(SystemConfig config, CrpRepository repository, uint64_t seed);

  struct Dealing {
    DealingParams params;
    FieldElement challenge;
    FieldElement encoded;
    MacKey mac_key;
    std::vector<Share> shares;
  };

  // Draws one usable CRP (pairs whose truncated AMD key is zero are burned),
  // encodes the secret, and evaluates the distribution polynomial. Middle
  // coefficients come from the dealer RNG unless supplied.
  std::vector<Share> distribute(const BitVec& secret, Trace* trace = nullptr);
  std::vector<Share> distribute(const BitVec& secret,
                                std::vector<FieldElement> middle_coeffs,
                                Trace* trace = nullptr);

  bool has_dealing() const { return dealing_.has_value(); }
  const Dealing& current_dealing() const;

  // Fresh sequential IDs past the current ones, evaluated on the recorded
  // polynomial (invitation support).
  std::vector<Share> issue_supplementary(unsigned count);

  const SystemConfig& config() const { return config_; }
  CrpRepository& repository() { return repository_; }

 private:
  SystemConfig config_;
  CrpRepository repository_;
  std::mt19937_64 rng_;
  std::optional<Dealing> dealing_;
};

/// The client: sees K only through its own PUF. All verification keys are
/// derived from a reconstructed challenge via a (possibly noisy) device read
/// plus the fuzzy extractor.
class ClientState {
 public:
  ClientState(SystemConfig config, PufDevice device, HelperStore helpers, uint64_t seed);

  MacKey derive_key(const FieldElement& challenge);

  // Stage 2: reconstruct from exactly t shares and authenticate. nullopt
  // escalates to share correction.
  std::optional<BitVec> retrieve(std::span<const Share> shares, Trace* trace = nullptr);

  struct CorrectionOutcome {
    std::optional<BitVec> secret;
    std::set<size_t> cheater_positions;  // meaningful only when secret is set
  };
  // Stage 3: Reed-Solomon correction over all n submitted shares, then the
  // stage-2 verification re-run on the recovered polynomial's coefficients.
  CorrectionOutcome correct_and_verify(std::span<const Share> shares, Trace* trace = nullptr);

  struct GroupTestOutcome {
    IdentificationResult identification;
    std::optional<BitVec> secret;
  };
  // Stage 4: adaptive group testing over the share snapshot; on
  // identification the secret is reconstructed from t honest shares.
  GroupTestOutcome group_test(std::span<const Share> shares, Trace* trace = nullptr);

  // Pass/fail oracle for one subset of a share snapshot (reconstruct, derive
  // key, authenticate). Used by stage 4 and the invitation stage.
  bool subset_passes(std::span<const Share> snapshot, std::span<const int> subset,
                     Trace* trace = nullptr, int stage = 4);

  const SystemConfig& config() const { return config_; }
  PufDevice& device() { return device_; }
  HelperStore& helpers() { return helpers_; }

 private:
  std::optional<BitVec> verify_pair(const FieldElement& encoded, const FieldElement& challenge);

  SystemConfig config_;
  PufDevice device_;
  HelperStore helpers_;
  std::mt19937_64 rng_;
};

enum class TerminalStage { kFailed = 0, kStage2 = 2, kStage3 = 3, kStage4 = 4, kInvitation = 5 };
const char* to_string(TerminalStage stage);

struct ProtocolOutcome {
  TerminalStage terminating_stage = TerminalStage::kFailed;
  std::optional<BitVec> recovered_secret;
  std::set<int> cheaters;  // holder indices into the submitted share snapshot
  Trace trace;
};

struct RunOptions {
  uint64_t seed = 0;
  // Applied once to the dealt shares; the snapshot stays fixed afterwards.
  std::function<void(std::vector<Share>&)> tamper;
  // Holders that push into the stage-2 reconstruction subset first (active
  // cheaters volunteer); remaining slots fill in seeded random order.
  std::set<int> eager_participants;
  bool enable_invitation = false;
};

// Stages run lazily 1 -> 2 -> 3 -> 4 -> invitation; every verification and
// decode lands in the trace.
ProtocolOutcome run_full(DealerState& dealer, ClientState& client, const BitVec& secret,
                         const RunOptions& options = {});

}  // namespace rtss

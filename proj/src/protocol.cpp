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

#include "rtss/protocol.hpp"

#include <algorithm>
#include <stdexcept>

#include "json.hpp"

namespace rtss {

void SystemConfig::validate() const {
  if (threshold < 2) throw std::invalid_argument("threshold must be at least 2");
  if (holders < threshold) throw std::invalid_argument("threshold exceeds holders");
  if (etm.total_bits() != field.width())
    throw std::invalid_argument("encoded secret must fill one field element");
  if (fe_repetition == 0 || fe_repetition % 2 == 0)
    throw std::invalid_argument("repetition factor must be odd");
  if (response_bits() > 128)
    throw std::invalid_argument("response width exceeds 128 bits");
  // Holder IDs 1..n must be distinct nonzero field elements.
  if (field.width() < 64 && holders >= (u128{1} << field.width()))
    throw std::invalid_argument("too many holders for the field");
}

SystemConfig make_config(unsigned field_bits, unsigned holders, unsigned threshold,
                         MacScheme mac, CipherScheme cipher, unsigned g) {
  if (g == 0 || field_bits % (g + 1) != 0)
    throw std::invalid_argument("field width must be a multiple of g+1");
  SystemConfig config{FieldSpec::from_width(field_bits), holders, threshold,
                      EtmParams{cipher, mac, AmdParams(field_bits / (g + 1), g)}, 5};
  config.validate();
  return config;
}

std::string trace_to_json_lines(const Trace& trace) {
  std::string out;
  for (const auto& record : trace) {
    nlohmann::json doc;
    doc["stage"] = record.stage;
    doc["action"] = record.action;
    if (record.subset) doc["subset"] = *record.subset;
    if (record.pass) doc["pass"] = *record.pass;
    if (!record.values.empty()) {
      nlohmann::json values;
      for (const auto& [label, hex] : record.values) values[label] = hex;
      doc["values"] = values;
    }
    out += doc.dump();
    out += '\n';
  }
  return out;
}

namespace {

void append(Trace* trace, TraceRecord record) {
  if (trace != nullptr) trace->push_back(std::move(record));
}

}  // namespace

DealerState::DealerState(SystemConfig config, CrpRepository repository, uint64_t seed)
    : config_(std::move(config)), repository_(std::move(repository)), rng_(seed) {
  config_.validate();
}

std::vector<Share> DealerState::distribute(const BitVec& secret, Trace* trace) {
  return distribute(
      secret,
      DealingParams::random_middle_coeffs(config_.field, config_.threshold, rng_), trace);
}

std::vector<Share> DealerState::distribute(const BitVec& secret,
                                           std::vector<FieldElement> middle_coeffs,
                                           Trace* trace) {
  // A CRP whose truncated AMD key would be zero cannot authenticate anything;
  // burn it and pick the next one. Pairs stay single-use either way.
  ChallengeResponsePair pair = repository_.draw();
  if (config_.etm.mac == MacScheme::kAmd) {
    FieldSpec mac_field = FieldSpec::from_width(config_.etm.amd.block_bits);
    while (MacKey{pair.response}.amd_element(mac_field).is_zero())
      pair = repository_.draw();
  }

  MacKey key{pair.response};
  EncodedSecret encoded = etm_encode(key, secret, config_.etm);
  FieldElement encoded_el(config_.field, encoded.combined().value());
  FieldElement challenge_el(config_.field, pair.challenge.value());

  DealingParams params(config_.threshold,
                       DealingParams::sequential_ids(config_.field, config_.holders),
                       std::move(middle_coeffs));
  std::vector<Share> shares = deal(encoded_el, challenge_el, params);
  dealing_ = Dealing{std::move(params), challenge_el, encoded_el, key, shares};

  append(trace, TraceRecord{1,
                            "distribute",
                            std::nullopt,
                            std::nullopt,
                            {{"challenge", challenge_el.to_hex()},
                             {"encoded", encoded_el.to_hex()}}});
  return shares;
}

const DealerState::Dealing& DealerState::current_dealing() const {
  if (!dealing_) throw std::logic_error("no dealing recorded");
  return *dealing_;
}

std::vector<Share> DealerState::issue_supplementary(unsigned count) {
  const Dealing& dealing = current_dealing();
  u128 max_id = 0;
  for (const auto& id : dealing.params.ids()) max_id = std::max(max_id, id.value());

  std::vector<FieldElement> coeffs;
  coeffs.push_back(dealing.challenge);
  for (const auto& c : dealing.params.middle_coeffs()) coeffs.push_back(c);
  coeffs.push_back(dealing.encoded);

  std::vector<Share> extra;
  extra.reserve(count);
  for (unsigned i = 1; i <= count; ++i) {
    FieldElement id(config_.field, max_id + i);
    extra.push_back(Share{id, poly_eval(coeffs, id)});
  }
  return extra;
}

ClientState::ClientState(SystemConfig config, PufDevice device, HelperStore helpers,
                         uint64_t seed)
    : config_(std::move(config)),
      device_(std::move(device)),
      helpers_(std::move(helpers)),
      rng_(seed) {
  config_.validate();
  if (device_.challenge_bits() != config_.field.width())
    throw std::invalid_argument("device challenge width must match the field");
  if (device_.response_bits() != config_.response_bits())
    throw std::invalid_argument("device response width must match the configuration");
}

MacKey ClientState::derive_key(const FieldElement& challenge) {
  BitVec chl(challenge.value(), config_.field.width());
  BitVec noisy = device_.noisy_response(chl, rng_);
  auto it = helpers_.find(chl.to_hex());
  if (it != helpers_.end()) return MacKey{fe_reproduce(noisy, it->second)};
  // Unenrolled challenge (a forged dealing): extract without helper data; the
  // resulting key fails MAC verification downstream.
  return MacKey{fe_generate(noisy, config_.fe_repetition).first};
}

std::optional<BitVec> ClientState::verify_pair(const FieldElement& encoded,
                                               const FieldElement& challenge) {
  MacKey key = derive_key(challenge);
  EncodedSecret split =
      EncodedSecret::split(BitVec(encoded.value(), config_.field.width()),
                           config_.etm.tag_bits());
  return etm_decode(key, split, config_.etm);
}

std::optional<BitVec> ClientState::retrieve(std::span<const Share> shares, Trace* trace) {
  if (shares.size() != config_.threshold)
    throw std::invalid_argument("stage 2 needs exactly t shares");
  FieldElement encoded = reconstruct_leading(shares);
  FieldElement challenge = reconstruct_free(shares);
  auto secret = verify_pair(encoded, challenge);
  append(trace, TraceRecord{2,
                            "reconstruct_verify",
                            std::nullopt,
                            secret.has_value(),
                            {{"encoded", encoded.to_hex()}, {"challenge", challenge.to_hex()}}});
  return secret;
}

ClientState::CorrectionOutcome ClientState::correct_and_verify(std::span<const Share> shares,
                                                               Trace* trace) {
  CodewordView view{{}, {}, config_.threshold};
  view.ids.reserve(shares.size());
  view.values.reserve(shares.size());
  for (const auto& share : shares) {
    view.ids.push_back(share.id);
    view.values.push_back(share.value);
  }

  auto decoded = correct_shares(view);
  if (!decoded) {
    append(trace, TraceRecord{3, "rs_decode", std::nullopt, false, {}});
    return CorrectionOutcome{std::nullopt, {}};
  }

  FieldElement encoded = decoded->recovered_poly.back();
  FieldElement challenge = decoded->recovered_poly.front();
  auto secret = verify_pair(encoded, challenge);
  std::vector<int> positions(decoded->error_positions.begin(), decoded->error_positions.end());
  append(trace, TraceRecord{3,
                            "rs_decode_verify",
                            positions,
                            secret.has_value(),
                            {{"encoded", encoded.to_hex()}, {"challenge", challenge.to_hex()}}});
  if (!secret) return CorrectionOutcome{std::nullopt, {}};
  return CorrectionOutcome{secret, decoded->error_positions};
}

bool ClientState::subset_passes(std::span<const Share> snapshot, std::span<const int> subset,
                                Trace* trace, int stage) {
  std::vector<Share> picked;
  picked.reserve(subset.size());
  for (int index : subset) picked.push_back(snapshot[index]);
  FieldElement encoded = reconstruct_leading(picked);
  FieldElement challenge = reconstruct_free(picked);
  bool pass = verify_pair(encoded, challenge).has_value();
  append(trace, TraceRecord{stage,
                            "subset_test",
                            std::vector<int>(subset.begin(), subset.end()),
                            pass,
                            {}});
  return pass;
}

ClientState::GroupTestOutcome ClientState::group_test(std::span<const Share> shares,
                                                      Trace* trace) {
  const unsigned n = static_cast<unsigned>(shares.size());
  TestFn test_fn = [&](std::span<const int> subset) {
    return subset_passes(shares, subset, trace, 4);
  };
  IdentificationResult identification = identify_adaptive(test_fn, n, config_.threshold);

  std::optional<BitVec> secret;
  if (identification.status == IdStatus::kIdentified) {
    std::vector<Share> honest;
    for (int index : identification.honest) {
      honest.push_back(shares[index]);
      if (honest.size() == config_.threshold) break;
    }
    FieldElement encoded = reconstruct_leading(honest);
    FieldElement challenge = reconstruct_free(honest);
    secret = verify_pair(encoded, challenge);
  }
  append(trace,
         TraceRecord{4,
                     "identify",
                     std::vector<int>(identification.cheaters.begin(),
                                      identification.cheaters.end()),
                     identification.status == IdStatus::kIdentified,
                     {}});
  return GroupTestOutcome{std::move(identification), std::move(secret)};
}

const char* to_string(TerminalStage stage) {
  switch (stage) {
    case TerminalStage::kStage2: return "stage2";
    case TerminalStage::kStage3: return "stage3";
    case TerminalStage::kStage4: return "stage4";
    case TerminalStage::kInvitation: return "invitation";
    case TerminalStage::kFailed: return "failed";
  }
  return "unknown";
}

ProtocolOutcome run_full(DealerState& dealer, ClientState& client, const BitVec& secret,
                         const RunOptions& options) {
  ProtocolOutcome outcome;
  const SystemConfig& config = dealer.config();
  const unsigned n = config.holders;
  const unsigned t = config.threshold;

  std::vector<Share> shares = dealer.distribute(secret, &outcome.trace);
  if (options.tamper) {
    options.tamper(shares);
    append(&outcome.trace, TraceRecord{1, "tamper", std::nullopt, std::nullopt, {}});
  }

  // Stage 2 participants: eager holders first, the rest in seeded order.
  std::vector<int> order;
  for (int index : options.eager_participants)
    if (index >= 0 && index < static_cast<int>(n)) order.push_back(index);
  std::vector<int> rest;
  for (unsigned i = 0; i < n; ++i)
    if (!options.eager_participants.contains(static_cast<int>(i)))
      rest.push_back(static_cast<int>(i));
  std::mt19937_64 rng(options.seed);
  std::shuffle(rest.begin(), rest.end(), rng);
  order.insert(order.end(), rest.begin(), rest.end());
  std::vector<Share> stage2_shares;
  std::vector<int> stage2_subset(order.begin(), order.begin() + t);
  for (int index : stage2_subset) stage2_shares.push_back(shares[index]);

  if (auto recovered = client.retrieve(stage2_shares, &outcome.trace)) {
    outcome.terminating_stage = TerminalStage::kStage2;
    outcome.recovered_secret = std::move(recovered);
    return outcome;
  }

  auto corrected = client.correct_and_verify(shares, &outcome.trace);
  if (corrected.secret) {
    outcome.terminating_stage = TerminalStage::kStage3;
    outcome.recovered_secret = std::move(corrected.secret);
    for (size_t position : corrected.cheater_positions)
      outcome.cheaters.insert(static_cast<int>(position));
    return outcome;
  }

  auto tested = client.group_test(shares, &outcome.trace);
  if (tested.identification.status == IdStatus::kIdentified && tested.secret) {
    outcome.terminating_stage = TerminalStage::kStage4;
    outcome.recovered_secret = std::move(tested.secret);
    outcome.cheaters = std::move(tested.identification.cheaters);
    return outcome;
  }

  if (options.enable_invitation) {
    std::vector<Share> extended(shares.begin(), shares.end());
    std::vector<Share> invited_shares = dealer.issue_supplementary(t);
    extended.insert(extended.end(), invited_shares.begin(), invited_shares.end());
    std::vector<int> invited;
    for (unsigned i = 0; i < t; ++i) invited.push_back(static_cast<int>(n + i));

    TestFn test_fn = [&](std::span<const int> subset) {
      return client.subset_passes(extended, subset, &outcome.trace, 5);
    };
    IdentificationResult extended_result =
        invite_and_extend(tested.identification, n, t, invited, test_fn);
    append(&outcome.trace,
           TraceRecord{5,
                       "identify",
                       std::vector<int>(extended_result.cheaters.begin(),
                                        extended_result.cheaters.end()),
                       extended_result.status == IdStatus::kIdentified,
                       {}});
    if (extended_result.status == IdStatus::kIdentified) {
      std::vector<Share> honest;
      for (int index : extended_result.honest) {
        honest.push_back(extended[index]);
        if (honest.size() == t) break;
      }
      FieldElement encoded = reconstruct_leading(honest);
      FieldElement challenge = reconstruct_free(honest);
      if (auto recovered = client.retrieve(honest, &outcome.trace); recovered) {
        outcome.terminating_stage = TerminalStage::kInvitation;
        outcome.recovered_secret = std::move(recovered);
        outcome.cheaters = std::move(extended_result.cheaters);
        return outcome;
      }
      (void)encoded;
      (void)challenge;
    }
  }

  outcome.terminating_stage = TerminalStage::kFailed;
  append(&outcome.trace, TraceRecord{4, "alarm", std::nullopt, false, {}});
  return outcome;
}

}  // namespace rtss

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

#include "rtss/shamir.hpp"

#include <set>
#include <stdexcept>

namespace rtss {

namespace {

void check_distinct_nonzero(std::span<const FieldElement> ids) {
  std::set<u128> seen;
  for (const auto& id : ids) {
    if (id.is_zero()) throw std::invalid_argument("holder ID 0 is forbidden");
    if (!seen.insert(id.value()).second)
      throw std::invalid_argument("duplicate holder ID");
  }
}

}  // namespace

DealingParams::DealingParams(unsigned threshold, std::vector<FieldElement> ids,
                             std::vector<FieldElement> middle_coeffs)
    : threshold_(threshold), ids_(std::move(ids)), middle_coeffs_(std::move(middle_coeffs)) {
  if (threshold_ < 2) throw std::invalid_argument("threshold must be at least 2");
  if (ids_.size() < threshold_) throw std::invalid_argument("threshold exceeds holders");
  if (middle_coeffs_.size() != threshold_ - 2)
    throw std::invalid_argument("middle coefficient count must be t-2");
  check_distinct_nonzero(ids_);
  const FieldSpec& field = ids_.front().field();
  for (const auto& id : ids_)
    if (!(id.field() == field)) throw std::invalid_argument("field mismatch in IDs");
  for (const auto& c : middle_coeffs_)
    if (!(c.field() == field)) throw std::invalid_argument("field mismatch in coefficients");
}

std::vector<FieldElement> DealingParams::sequential_ids(const FieldSpec& field, unsigned count) {
  std::vector<FieldElement> ids;
  ids.reserve(count);
  for (unsigned i = 1; i <= count; ++i) ids.emplace_back(field, i);
  return ids;
}

std::vector<FieldElement> DealingParams::random_middle_coeffs(const FieldSpec& field,
                                                              unsigned threshold,
                                                              std::mt19937_64& rng) {
  if (threshold < 2) throw std::invalid_argument("threshold must be at least 2");
  std::vector<FieldElement> coeffs;
  coeffs.reserve(threshold - 2);
  for (unsigned i = 0; i + 2 < threshold; ++i) {
    u128 v = (u128{rng()} << 64) | rng();
    coeffs.emplace_back(field, v & field.element_mask());
  }
  return coeffs;
}

std::vector<Share> deal(const FieldElement& encoded_secret, const FieldElement& challenge,
                        const DealingParams& params) {
  const FieldSpec& field = challenge.field();
  if (!(encoded_secret.field() == field) || !(params.ids().front().field() == field))
    throw std::invalid_argument("field mismatch in dealing inputs");

  std::vector<FieldElement> coeffs;
  coeffs.reserve(params.threshold());
  coeffs.push_back(challenge);
  for (const auto& c : params.middle_coeffs()) coeffs.push_back(c);
  coeffs.push_back(encoded_secret);

  std::vector<Share> shares;
  shares.reserve(params.holder_count());
  for (const auto& id : params.ids())
    shares.push_back(Share{id, poly_eval(coeffs, id)});
  return shares;
}

namespace {

void check_reconstruction_input(std::span<const Share> shares) {
  if (shares.size() < 2) throw std::invalid_argument("need at least two shares");
  std::vector<FieldElement> ids;
  ids.reserve(shares.size());
  for (const auto& s : shares) ids.push_back(s.id);
  check_distinct_nonzero(ids);
}

}  // namespace

FieldElement reconstruct_leading(std::span<const Share> shares) {
  check_reconstruction_input(shares);
  const FieldSpec& field = shares.front().id.field();
  FieldElement acc(field, 0);
  for (size_t i = 0; i < shares.size(); ++i) {
    FieldElement denom(field, 1);
    for (size_t j = 0; j < shares.size(); ++j)
      if (j != i) denom = denom * (shares[i].id + shares[j].id);
    acc = acc + shares[i].value / denom;
  }
  return acc;
}

FieldElement reconstruct_free(std::span<const Share> shares) {
  check_reconstruction_input(shares);
  const FieldSpec& field = shares.front().id.field();
  FieldElement acc(field, 0);
  for (size_t i = 0; i < shares.size(); ++i) {
    FieldElement num = shares[i].value;
    FieldElement denom(field, 1);
    for (size_t j = 0; j < shares.size(); ++j) {
      if (j == i) continue;
      num = num * shares[j].id;
      denom = denom * (shares[i].id + shares[j].id);
    }
    acc = acc + num / denom;
  }
  return acc;
}

}  // namespace rtss

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

#include <random>
#include <span>
#include <vector>

#include "rtss/gf2b.hpp"

namespace rtss {

/// One holder's share: public ID paired with the private polynomial value.
struct Share {
  FieldElement id;
  FieldElement value;
};

/// Parameters of one dealing. The distribution polynomial is
///   p(x) = challenge + a_1 x + ... + a_{t-2} x^{t-2} + encoded_secret x^{t-1},
/// so middle_coeffs supplies a_1..a_{t-2} (empty when t = 2).
class DealingParams {
 public:
  DealingParams(unsigned threshold, std::vector<FieldElement> ids,
                std::vector<FieldElement> middle_coeffs);

  static std::vector<FieldElement> sequential_ids(const FieldSpec& field, unsigned count);
  static std::vector<FieldElement> random_middle_coeffs(const FieldSpec& field,
                                                        unsigned threshold,
                                                        std::mt19937_64& rng);

  unsigned threshold() const { return threshold_; }
  unsigned holder_count() const { return static_cast<unsigned>(ids_.size()); }
  const std::vector<FieldElement>& ids() const { return ids_; }
  const std::vector<FieldElement>& middle_coeffs() const { return middle_coeffs_; }

 private:
  unsigned threshold_;
  std::vector<FieldElement> ids_;
  std::vector<FieldElement> middle_coeffs_;
};

// Evaluates the distribution polynomial at every holder ID. Deterministic
// given its inputs.
std::vector<Share> deal(const FieldElement& encoded_secret, const FieldElement& challenge,
                        const DealingParams& params);

// Leading coefficient (the encoded secret) from exactly t shares:
//   E = sum_i h_i / prod_{j!=i} (D_i + D_j).
FieldElement reconstruct_leading(std::span<const Share> shares);

// Free coefficient (the challenge) from exactly t shares; the Lagrange basis
// evaluated at zero:
//   CHL = sum_i h_i * prod_{j!=i} D_j / prod_{j!=i} (D_i + D_j).
FieldElement reconstruct_free(std::span<const Share> shares);

}  // namespace rtss

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

#include <optional>
#include <set>
#include <vector>

#include "rtss/gf2b.hpp"

namespace rtss {

/// n submitted shares viewed as a non-systematic (n, t, n-t+1) Reed-Solomon
/// codeword: values[i] should equal p(ids[i]) for a degree-(t-1) polynomial p.
struct CodewordView {
  std::vector<FieldElement> ids;
  std::vector<FieldElement> values;
  unsigned dimension;  // t

  unsigned max_errors() const {
    return (static_cast<unsigned>(ids.size()) - dimension) / 2;
  }
};

struct CorrectionResult {
  std::vector<FieldElement> corrected_values;
  std::set<size_t> error_positions;
  std::vector<FieldElement> recovered_poly;  // t coefficients, free..leading
};

// Berlekamp-Welch decoding up to floor((n-t)/2) errors. The linear system is
// solved by dense Gaussian elimination; the assumed error count starts at the
// radius and steps down if the system is unsolvable. Returns nullopt when no
// consistent codeword exists within the radius (escalate to group testing).
//
// When the submitted values contain a rival codeword within radius (aligned
// cheaters, see framing_demo), the decoder returns that codeword: the output
// is untrusted until secret verification passes.
std::optional<CorrectionResult> correct_shares(const CodewordView& view);

// Runs the decoder on a view where aligned cheaters outnumber honest holders,
// demonstrating that the honest minority gets "corrected". Throws
// std::runtime_error if decoding fails outright.
CorrectionResult framing_demo(const CodewordView& view);

// Solves A x = b over GF(2^b); rows are [a_0 .. a_{k-1} | b]. Underdetermined
// systems get free variables set to zero; returns nullopt when inconsistent.
std::optional<std::vector<FieldElement>> gf_solve(
    std::vector<std::vector<FieldElement>> augmented_rows, unsigned unknowns);

}  // namespace rtss

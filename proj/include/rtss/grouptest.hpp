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
#include <functional>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace rtss {

// C(n, k) in exact 64-bit arithmetic; throws on overflow.
uint64_t binomial(unsigned n, unsigned k);

/// All t-subsets of {0..n-1} in lexicographic order; one row per test. Every
/// holder appears in exactly C(n-1, t-1) rows.
struct TestPlan {
  unsigned n;
  unsigned t;
  std::vector<std::vector<int>> rows;
};

// Guard: 2 <= t <= n <= 20.
TestPlan build_plan(unsigned n, unsigned t);

/// Pass/fail outcome per test; false = verification equality (pass),
/// true = inequality (fail).
struct Syndrome {
  std::vector<bool> fails;

  std::string to_string() const;  // "0101..."
};

enum class IdStatus { kIdentified, kInsufficientHonest };

struct IdentificationResult {
  std::set<int> honest;
  std::set<int> cheaters;
  unsigned tests_run = 0;
  IdStatus status = IdStatus::kIdentified;
};

// Weight-vector identification: w = syndrome x plan over the integers; holder
// l is a cheater iff w_l = C(n-1, t-1), i.e. every test containing l failed.
// All tests failing means fewer than t honest holders exist.
IdentificationResult identify_full(const Syndrome& syndrome, const TestPlan& plan);

/// A test evaluates one t-subset of holders and reports pass (true) or fail.
/// Must be deterministic for fixed submitted shares.
using TestFn = std::function<bool(std::span<const int>)>;

// Adaptive shortcut: walk the plan in lexicographic order until the first
// passing test (dT tests), keep that subset's first t-1 members as the honest
// core, then test core+{j} for each holder j outside the passing subset.
// Runs at most dT + (n - t) tests.
IdentificationResult identify_adaptive(const TestFn& test_fn, unsigned n, unsigned t);

// Algorithm for the invitation stage: `invited` are t pre-verified honest
// holders appended to the index space (indices >= n). Identification over the
// n + t holders is seeded by the invited subset, so the first pass is
// immediate and 1 + n tests suffice.
IdentificationResult invite_and_extend(const IdentificationResult& current, unsigned n,
                                       unsigned t, std::span<const int> invited,
                                       const TestFn& test_fn);

// Audit export: {"n":., "t":., "rows":[[...]], "syndrome":"010..."} (syndrome
// included when provided).
std::string plan_to_json(const TestPlan& plan, const Syndrome* syndrome = nullptr);

}  // namespace rtss

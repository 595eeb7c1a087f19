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

#include "rtss/grouptest.hpp"

#include <stdexcept>

#include "json.hpp"

namespace rtss {

uint64_t binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  uint64_t result = 1;
  for (unsigned i = 1; i <= k; ++i) {
    uint64_t next = result * (n - k + i);
    if (next / (n - k + i) != result) throw std::overflow_error("binomial overflow");
    result = next / i;
  }
  return result;
}

namespace {

void check_plan_bounds(unsigned n, unsigned t) {
  if (t < 2 || t > n || n > 20)
    throw std::invalid_argument("group testing requires 2 <= t <= n <= 20");
}

// Lexicographic successor of a t-subset of {0..n-1}; false when done.
bool next_subset(std::vector<int>& subset, unsigned n) {
  const int t = static_cast<int>(subset.size());
  int i = t - 1;
  while (i >= 0 && subset[i] == static_cast<int>(n) - t + i) --i;
  if (i < 0) return false;
  ++subset[i];
  for (int j = i + 1; j < t; ++j) subset[j] = subset[j - 1] + 1;
  return true;
}

std::vector<int> first_subset(unsigned t) {
  std::vector<int> subset(t);
  for (unsigned i = 0; i < t; ++i) subset[i] = static_cast<int>(i);
  return subset;
}

}  // namespace

TestPlan build_plan(unsigned n, unsigned t) {
  check_plan_bounds(n, t);
  TestPlan plan{n, t, {}};
  plan.rows.reserve(binomial(n, t));
  std::vector<int> subset = first_subset(t);
  do {
    plan.rows.push_back(subset);
  } while (next_subset(subset, n));
  return plan;
}

std::string Syndrome::to_string() const {
  std::string out;
  out.reserve(fails.size());
  for (bool f : fails) out.push_back(f ? '1' : '0');
  return out;
}

IdentificationResult identify_full(const Syndrome& syndrome, const TestPlan& plan) {
  if (syndrome.fails.size() != plan.rows.size())
    throw std::invalid_argument("syndrome length does not match the plan");

  const uint64_t column_weight = binomial(plan.n - 1, plan.t - 1);
  std::vector<uint64_t> weight(plan.n, 0);
  bool all_failed = true;
  for (size_t row = 0; row < plan.rows.size(); ++row) {
    if (!syndrome.fails[row]) {
      all_failed = false;
      continue;
    }
    for (int holder : plan.rows[row]) ++weight[holder];
  }

  IdentificationResult result;
  result.tests_run = static_cast<unsigned>(plan.rows.size());
  if (all_failed) {
    result.status = IdStatus::kInsufficientHonest;
    return result;
  }
  for (unsigned l = 0; l < plan.n; ++l) {
    if (weight[l] == column_weight)
      result.cheaters.insert(static_cast<int>(l));
    else
      result.honest.insert(static_cast<int>(l));
  }
  return result;
}

IdentificationResult identify_adaptive(const TestFn& test_fn, unsigned n, unsigned t) {
  check_plan_bounds(n, t);

  IdentificationResult result;
  std::vector<int> subset = first_subset(t);
  bool found = false;
  do {
    ++result.tests_run;
    if (test_fn(subset)) {
      found = true;
      break;
    }
  } while (next_subset(subset, n));

  if (!found) {
    result.status = IdStatus::kInsufficientHonest;
    return result;
  }

  // The passing subset is honest; its first t-1 members anchor the remaining
  // singleton tests.
  for (int member : subset) result.honest.insert(member);
  std::vector<int> probe(subset.begin(), subset.end() - 1);
  probe.push_back(0);
  for (unsigned j = 0; j < n; ++j) {
    if (result.honest.contains(static_cast<int>(j))) continue;
    probe.back() = static_cast<int>(j);
    ++result.tests_run;
    if (test_fn(probe))
      result.honest.insert(static_cast<int>(j));
    else
      result.cheaters.insert(static_cast<int>(j));
  }
  return result;
}

IdentificationResult invite_and_extend(const IdentificationResult& current, unsigned n,
                                       unsigned t, std::span<const int> invited,
                                       const TestFn& test_fn) {
  if (current.status != IdStatus::kInsufficientHonest)
    throw std::invalid_argument("invitation applies to an insufficient-honest result");
  check_plan_bounds(n + t, t);
  if (invited.size() != t) throw std::invalid_argument("need exactly t invited holders");
  std::set<int> invited_set;
  for (int idx : invited) {
    if (idx < static_cast<int>(n))
      throw std::invalid_argument("invited holders must be outside the original group");
    if (!invited_set.insert(idx).second)
      throw std::invalid_argument("duplicate invited holder");
  }

  IdentificationResult result;
  std::vector<int> seed(invited.begin(), invited.end());
  ++result.tests_run;
  if (!test_fn(seed)) {
    // Pre-verified honest group failed its own test; nothing can be learned.
    result.status = IdStatus::kInsufficientHonest;
    return result;
  }
  result.honest = invited_set;

  std::vector<int> probe(seed.begin(), seed.end() - 1);
  probe.push_back(0);
  for (unsigned j = 0; j < n; ++j) {
    probe.back() = static_cast<int>(j);
    ++result.tests_run;
    if (test_fn(probe))
      result.honest.insert(static_cast<int>(j));
    else
      result.cheaters.insert(static_cast<int>(j));
  }
  return result;
}

std::string plan_to_json(const TestPlan& plan, const Syndrome* syndrome) {
  nlohmann::json doc;
  doc["n"] = plan.n;
  doc["t"] = plan.t;
  doc["rows"] = plan.rows;
  if (syndrome != nullptr) doc["syndrome"] = syndrome->to_string();
  return doc.dump();
}

}  // namespace rtss

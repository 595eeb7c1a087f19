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

#include "rtss/rsdecode.hpp"

#include <stdexcept>

namespace rtss {

std::optional<std::vector<FieldElement>> gf_solve(
    std::vector<std::vector<FieldElement>> rows, unsigned unknowns) {
  if (rows.empty()) throw std::invalid_argument("empty system");
  const FieldSpec field = rows.front().front().field();
  for (const auto& row : rows)
    if (row.size() != unknowns + 1) throw std::invalid_argument("ragged system");

  size_t pivot_row = 0;
  std::vector<size_t> pivot_col_of_row;
  for (unsigned col = 0; col < unknowns && pivot_row < rows.size(); ++col) {
    size_t found = pivot_row;
    while (found < rows.size() && rows[found][col].is_zero()) ++found;
    if (found == rows.size()) continue;
    std::swap(rows[pivot_row], rows[found]);

    FieldElement inv = rows[pivot_row][col].inverse();
    for (auto& cell : rows[pivot_row]) cell = cell * inv;
    for (size_t r = 0; r < rows.size(); ++r) {
      if (r == pivot_row || rows[r][col].is_zero()) continue;
      FieldElement factor = rows[r][col];
      for (size_t c = col; c <= unknowns; ++c)
        rows[r][c] = rows[r][c] + factor * rows[pivot_row][c];
    }
    pivot_col_of_row.push_back(col);
    ++pivot_row;
  }

  // Inconsistency: a zero row with nonzero rhs.
  for (size_t r = pivot_row; r < rows.size(); ++r)
    if (!rows[r][unknowns].is_zero()) return std::nullopt;

  std::vector<FieldElement> solution(unknowns, FieldElement(field, 0));
  for (size_t r = 0; r < pivot_col_of_row.size(); ++r)
    solution[pivot_col_of_row[r]] = rows[r][unknowns];
  return solution;
}

namespace {

// Long division; returns quotient iff the remainder is zero. Coefficients are
// free..leading, divisor's leading coefficient must be nonzero.
std::optional<std::vector<FieldElement>> exact_divide(std::vector<FieldElement> numerator,
                                                      const std::vector<FieldElement>& divisor) {
  const FieldSpec field = divisor.front().field();
  size_t dn = numerator.size();
  size_t dd = divisor.size();
  if (dn < dd) {
    for (const auto& c : numerator)
      if (!c.is_zero()) return std::nullopt;
    return std::vector<FieldElement>{FieldElement(field, 0)};
  }
  std::vector<FieldElement> quotient(dn - dd + 1, FieldElement(field, 0));
  FieldElement lead_inv = divisor.back().inverse();
  for (size_t i = dn; i-- >= dd;) {
    FieldElement q = numerator[i] * lead_inv;
    quotient[i - dd + 1] = q;
    if (!q.is_zero())
      for (size_t j = 0; j < dd; ++j)
        numerator[i - dd + 1 + j] = numerator[i - dd + 1 + j] + q * divisor[j];
    if (i == dd - 1) break;
  }
  for (const auto& c : numerator)
    if (!c.is_zero()) return std::nullopt;
  return quotient;
}

std::optional<CorrectionResult> try_error_count(const CodewordView& view, unsigned e) {
  const FieldSpec field = view.ids.front().field();
  const unsigned n = static_cast<unsigned>(view.ids.size());
  const unsigned t = view.dimension;

  // Unknowns: N coefficients (t + e of them) then E coefficients below the
  // monic leading term (e of them). Row i encodes N(D_i) = h_i * E(D_i):
  //   sum_k n_k D_i^k + h_i sum_{j<e} e_j D_i^j = h_i D_i^e.
  const unsigned unknowns = t + 2 * e;
  std::vector<std::vector<FieldElement>> rows;
  rows.reserve(n);
  for (unsigned i = 0; i < n; ++i) {
    std::vector<FieldElement> row;
    row.reserve(unknowns + 1);
    FieldElement power(field, 1);
    for (unsigned k = 0; k < t + e; ++k) {
      row.push_back(power);
      power = power * view.ids[i];
    }
    power = FieldElement(field, 1);
    for (unsigned j = 0; j < e; ++j) {
      row.push_back(view.values[i] * power);
      power = power * view.ids[i];
    }
    row.push_back(view.values[i] * power);  // h_i * D_i^e
    rows.push_back(std::move(row));
  }

  auto solution = gf_solve(std::move(rows), unknowns);
  if (!solution) return std::nullopt;

  std::vector<FieldElement> numerator(solution->begin(), solution->begin() + t + e);
  std::vector<FieldElement> locator(solution->begin() + t + e, solution->end());
  locator.emplace_back(field, 1);  // monic x^e

  auto quotient = exact_divide(std::move(numerator), locator);
  if (!quotient) return std::nullopt;
  // deg N < t+e and deg E = e, so the quotient has exactly t coefficients.
  quotient->resize(t, FieldElement(field, 0));

  CorrectionResult result;
  result.recovered_poly = *quotient;
  result.corrected_values.reserve(n);
  for (unsigned i = 0; i < n; ++i) {
    FieldElement corrected = poly_eval(result.recovered_poly, view.ids[i]);
    if (!(corrected == view.values[i])) result.error_positions.insert(i);
    result.corrected_values.push_back(corrected);
  }
  if (result.error_positions.size() > view.max_errors()) return std::nullopt;
  return result;
}

}  // namespace

std::optional<CorrectionResult> correct_shares(const CodewordView& view) {
  const unsigned n = static_cast<unsigned>(view.ids.size());
  if (view.values.size() != n) throw std::invalid_argument("ids/values size mismatch");
  if (n < view.dimension) throw std::invalid_argument("fewer shares than the dimension");
  if (view.dimension < 2) throw std::invalid_argument("dimension must be at least 2");
  {
    std::set<u128> seen;
    for (const auto& id : view.ids) {
      if (id.is_zero()) throw std::invalid_argument("holder ID 0 is forbidden");
      if (!seen.insert(id.value()).second) throw std::invalid_argument("duplicate holder ID");
    }
  }

  for (unsigned e = view.max_errors();; --e) {
    if (auto result = try_error_count(view, e)) return result;
    if (e == 0) break;
  }
  return std::nullopt;
}

CorrectionResult framing_demo(const CodewordView& view) {
  auto result = correct_shares(view);
  if (!result)
    throw std::runtime_error("framing demo expects a decodable (framed) codeword");
  return *result;
}

}  // namespace rtss

// Copyright 2026 The contractlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Textbook two-phase tableau simplex with Bland's rule. Slow and simple on
// purpose; used only as an oracle for the production solver.

#ifndef CONTRACTLAB_TESTS_TESTING_REFERENCE_SIMPLEX_H_
#define CONTRACTLAB_TESTS_TESTING_REFERENCE_SIMPLEX_H_

#include <cmath>
#include <vector>

#include "contractlab/lp.h"

namespace contractlab::testing {

struct ReferenceResult {
  LpStatus status = LpStatus::kInfeasible;
  double objective = 0;
  std::vector<double> x;
};

namespace internal {

// Column substitution x_j = offset + sign * y_j (+ second column for free
// variables, x_j = y_j - y_k).
struct Substitution {
  double offset = 0;
  double sign = 1;
  int column = -1;
  int negative_column = -1;
};

// Pivots the tableau T (rows x cols, last column is rhs) on (r, c).
inline void Pivot(std::vector<std::vector<double>>& t, int r, int c) {
  double p = t[r][c];
  for (double& v : t[r]) v /= p;
  for (size_t i = 0; i < t.size(); ++i) {
    if (static_cast<int>(i) == r || t[i][c] == 0) continue;
    double f = t[i][c];
    for (size_t j = 0; j < t[i].size(); ++j) t[i][j] -= f * t[r][j];
  }
}

// Minimizes the objective row (last row of t, reduced costs) over columns
// < limit. Returns false when unbounded.
inline bool RunBland(std::vector<std::vector<double>>& t, std::vector<int>& basis,
                     int limit) {
  const int rows = static_cast<int>(t.size()) - 1;
  const int rhs = static_cast<int>(t[0].size()) - 1;
  for (int guard = 0; guard < 100000; ++guard) {
    int enter = -1;
    for (int j = 0; j < limit; ++j) {
      if (t[rows][j] < -1e-10) {
        enter = j;
        break;
      }
    }
    if (enter < 0) return true;
    int leave = -1;
    double best = 0;
    for (int i = 0; i < rows; ++i) {
      if (t[i][enter] > 1e-10) {
        double ratio = t[i][rhs] / t[i][enter];
        if (leave < 0 || ratio < best - 1e-12 ||
            (ratio <= best + 1e-12 && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
    }
    if (leave < 0) return false;
    Pivot(t, leave, enter);
    basis[leave] = enter;
  }
  return true;
}

}  // namespace internal

inline ReferenceResult SolveReference(const LpProblem& lp) {
  using internal::Substitution;
  const int n = lp.num_vars();
  const double sense = lp.direction == LpDirection::kMaximize ? -1 : 1;
  std::vector<Substitution> sub(n);
  int cols = 0;
  // Rows in the form a.y (<=|>=|=) b.
  struct Row {
    std::vector<double> a;
    int kind;  // -1 <=, 0 =, 1 >=
    double b;
  };
  std::vector<Row> rows;
  for (int j = 0; j < n; ++j) {
    if (std::isfinite(lp.lower[j])) {
      sub[j] = {lp.lower[j], 1, cols++};
    } else if (std::isfinite(lp.upper[j])) {
      sub[j] = {lp.upper[j], -1, cols++};
    } else {
      sub[j] = {0, 1, cols, cols + 1};
      cols += 2;
    }
  }
  auto expand = [&](const std::vector<double>& coeffs, double& shift) {
    std::vector<double> a(cols, 0);
    shift = 0;
    for (int j = 0; j < n; ++j) {
      shift += coeffs[j] * sub[j].offset;
      a[sub[j].column] += coeffs[j] * sub[j].sign;
      if (sub[j].negative_column >= 0) a[sub[j].negative_column] -= coeffs[j];
    }
    return a;
  };
  for (int j = 0; j < n; ++j) {
    if (std::isfinite(lp.lower[j]) && std::isfinite(lp.upper[j])) {
      std::vector<double> a(cols, 0);
      a[sub[j].column] = 1;
      rows.push_back({a, -1, lp.upper[j] - lp.lower[j]});
    }
  }
  for (const LpRow& r : lp.rows) {
    double shift;
    std::vector<double> a = expand(r.coeffs, shift);
    if (std::isfinite(r.lo) && std::isfinite(r.hi) && r.lo == r.hi) {
      rows.push_back({a, 0, r.lo - shift});
      continue;
    }
    if (std::isfinite(r.hi)) rows.push_back({a, -1, r.hi - shift});
    if (std::isfinite(r.lo)) rows.push_back({a, 1, r.lo - shift});
  }
  // Normalize to b >= 0.
  for (Row& r : rows) {
    if (r.b < 0) {
      for (double& v : r.a) v = -v;
      r.b = -r.b;
      r.kind = -r.kind;
    }
  }
  const int m = static_cast<int>(rows.size());
  int slack_cols = 0;
  for (const Row& r : rows) slack_cols += r.kind != 0;
  int art_cols = 0;
  for (const Row& r : rows) art_cols += r.kind >= 0;
  const int total = cols + slack_cols + art_cols;
  std::vector<std::vector<double>> t(m + 1, std::vector<double>(total + 1, 0));
  std::vector<int> basis(m);
  int s = cols, art = cols + slack_cols;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < cols; ++j) t[i][j] = rows[i].a[j];
    t[i][total] = rows[i].b;
    if (rows[i].kind == -1) {
      t[i][s] = 1;
      basis[i] = s++;
    } else {
      if (rows[i].kind == 1) t[i][s++] = -1;
      t[i][art] = 1;
      basis[i] = art++;
    }
  }
  // Phase 1: minimize the sum of artificials.
  for (int i = 0; i < m; ++i) {
    if (basis[i] >= cols + slack_cols) {
      for (int j = 0; j <= total; ++j) t[m][j] -= t[i][j];
      t[m][basis[i]] += 1;
    }
  }
  internal::RunBland(t, basis, total);
  ReferenceResult result;
  if (-t[m][total] > 1e-7) return result;
  // Drive artificials out of the basis where possible.
  for (int i = 0; i < m; ++i) {
    if (basis[i] < cols + slack_cols) continue;
    for (int j = 0; j < cols + slack_cols; ++j) {
      if (std::fabs(t[i][j]) > 1e-9) {
        internal::Pivot(t, i, j);
        basis[i] = j;
        break;
      }
    }
  }
  // Phase 2.
  std::vector<double> c(cols, 0);
  double c_shift;
  {
    std::vector<double> obj(lp.objective);
    for (double& v : obj) v *= sense;
    c = expand(obj, c_shift);
  }
  std::fill(t[m].begin(), t[m].end(), 0);
  for (int j = 0; j < cols; ++j) t[m][j] = c[j];
  for (int i = 0; i < m; ++i) {
    double f = t[m][basis[i]];
    if (f == 0) continue;
    for (int j = 0; j <= total; ++j) t[m][j] -= f * t[i][j];
  }
  // Artificial columns stay out of phase 2.
  if (!internal::RunBland(t, basis, cols + slack_cols)) {
    result.status = LpStatus::kUnbounded;
    return result;
  }
  std::vector<double> y(total, 0);
  for (int i = 0; i < m; ++i) y[basis[i]] = t[i][total];
  result.x.assign(n, 0);
  for (int j = 0; j < n; ++j) {
    result.x[j] = sub[j].offset + sub[j].sign * y[sub[j].column];
    if (sub[j].negative_column >= 0) result.x[j] -= y[sub[j].negative_column];
  }
  result.objective = 0;
  for (int j = 0; j < n; ++j) result.objective += lp.objective[j] * result.x[j];
  result.status = LpStatus::kOptimal;
  return result;
}

}  // namespace contractlab::testing

#endif  // CONTRACTLAB_TESTS_TESTING_REFERENCE_SIMPLEX_H_

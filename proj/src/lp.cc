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


#include "contractlab/lp.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

namespace contractlab {
namespace {

// Dictionary-form simplex state. Variables 0..n-1 are structural, n..n+r-1
// are row activities s_i = a_i . x. Basic values satisfy x_B = M x_N.
class Simplex {
 public:
  Simplex(const LpProblem& problem, const LpOptions& options)
      : problem_(problem),
        opt_(options),
        n_(problem.num_vars()),
        r_(static_cast<int>(problem.rows.size())) {
    lo_.resize(n_ + r_);
    hi_.resize(n_ + r_);
    cost_.assign(n_ + r_, 0.0);
    double sign = problem.direction == LpDirection::kMaximize ? -1.0 : 1.0;
    for (int j = 0; j < n_; ++j) {
      lo_[j] = problem.lower[j];
      hi_[j] = problem.upper[j];
      cost_[j] = sign * problem.objective[j];
    }
    for (int i = 0; i < r_; ++i) {
      lo_[n_ + i] = problem.rows[i].lo;
      hi_[n_ + i] = problem.rows[i].hi;
    }
    x_.assign(n_ + r_, 0.0);
    for (int j = 0; j < n_; ++j) {
      if (std::isfinite(lo_[j])) {
        x_[j] = lo_[j];
      } else if (std::isfinite(hi_[j])) {
        x_[j] = hi_[j];
      }
    }
    basic_.resize(r_);
    nonbasic_.resize(n_);
    m_.assign(static_cast<size_t>(r_) * n_, 0.0);
    for (int i = 0; i < r_; ++i) {
      basic_[i] = n_ + i;
      for (int j = 0; j < n_; ++j) M(i, j) = problem.rows[i].coeffs[j];
    }
    for (int j = 0; j < n_; ++j) nonbasic_[j] = j;
    RecomputeBasics();
  }

  LpSolution Run() {
    LpSolution out;
    int limit = opt_.max_iterations > 0 ? opt_.max_iterations
                                        : 200 * (n_ + r_) + 1000;
    int verifications = 0;
    bool bland = false;
    int streak = 0;
    int since_refactor = 0;
    int iter = 0;
    for (; iter < limit; ++iter) {
      if (since_refactor >= std::max(50, r_)) {
        Refactor();
        since_refactor = 0;
      }
      bool phase1 = false;
      cb_.assign(r_, 0.0);
      for (int i = 0; i < r_; ++i) {
        int b = basic_[i];
        if (x_[b] < lo_[b] - opt_.primal_tolerance) {
          cb_[i] = -1;
          phase1 = true;
        } else if (x_[b] > hi_[b] + opt_.primal_tolerance) {
          cb_[i] = 1;
          phase1 = true;
        }
      }
      if (!phase1) {
        for (int i = 0; i < r_; ++i) cb_[i] = cost_[basic_[i]];
      }
      int enter = -1;
      int dir = 0;
      double best_score = 0;
      for (int k = 0; k < n_; ++k) {
        int v = nonbasic_[k];
        double d = phase1 ? 0.0 : cost_[v];
        for (int i = 0; i < r_; ++i) d += cb_[i] * M(i, k);
        int candidate_dir = 0;
        if (d < -opt_.dual_tolerance && CanMove(v, +1)) candidate_dir = +1;
        if (d > opt_.dual_tolerance && CanMove(v, -1)) candidate_dir = -1;
        if (candidate_dir == 0) continue;
        double score = std::abs(d);
        bool take = bland ? (enter < 0 || v < nonbasic_[enter])
                          : score > best_score;
        if (take) {
          enter = k;
          dir = candidate_dir;
          best_score = score;
        }
      }
      if (enter < 0) {
        if (phase1) {
          out.status = LpStatus::kInfeasible;
          break;
        }
        if (since_refactor > 0 && verifications < 3) {
          ++verifications;
          Refactor();
          since_refactor = 0;
          if (!BasicsFeasible()) continue;
        }
        out.status = LpStatus::kOptimal;
        break;
      }
      int leave = -1;
      double step = RatioTest(enter, dir, phase1, bland, &leave);
      int v = nonbasic_[enter];
      double flip = dir > 0 ? hi_[v] - x_[v] : x_[v] - lo_[v];
      if (leave < 0 && !std::isfinite(flip)) {
        out.status = phase1 ? LpStatus::kIterationLimit : LpStatus::kUnbounded;
        break;
      }
      if (leave < 0 || flip <= step) {
        Move(enter, dir, flip);
        x_[v] = dir > 0 ? hi_[v] : lo_[v];
        Trace(iter, phase1, v, -1, flip);
        streak = 0;
        bland = false;
        continue;
      }
      Move(enter, dir, step);
      Trace(iter, phase1, v, basic_[leave], step);
      Pivot(leave, enter);
      ++since_refactor;
      if (step <= 1e-12) {
        if (++streak > opt_.degenerate_streak) bland = true;
      } else {
        streak = 0;
        bland = false;
      }
    }
    if (iter >= limit) out.status = LpStatus::kIterationLimit;
    out.iterations = iter;
    out.x.assign(x_.begin(), x_.begin() + n_);
    for (int j = 0; j < n_; ++j) {
      if (out.x[j] < lo_[j]) out.x[j] = lo_[j];
      if (out.x[j] > hi_[j]) out.x[j] = hi_[j];
    }
    out.objective = 0;
    for (int j = 0; j < n_; ++j) out.objective += problem_.objective[j] * out.x[j];
    return out;
  }

 private:
  double& M(int i, int k) { return m_[static_cast<size_t>(i) * n_ + k]; }

  bool CanMove(int v, int dir) const {
    if (dir > 0) return hi_[v] - x_[v] > opt_.primal_tolerance;
    return x_[v] - lo_[v] > opt_.primal_tolerance;
  }

  bool BasicsFeasible() const {
    for (int b : basic_) {
      if (x_[b] < lo_[b] - opt_.primal_tolerance ||
          x_[b] > hi_[b] + opt_.primal_tolerance) {
        return false;
      }
    }
    return true;
  }

  // Largest step for the entering column; sets *leave to the blocking row or
  // -1 when no basic variable blocks.
  double RatioTest(int k, int dir, bool phase1, bool bland, int* leave) {
    const double tol = opt_.primal_tolerance;
    auto limit_of = [&](int i, double relax, double* out) {
      double g = M(i, k) * dir;
      int b = basic_[i];
      double xb = x_[b];
      if (g > opt_.pivot_tolerance) {
        if (phase1 && xb < lo_[b] - tol) {
          *out = (lo_[b] + relax - xb) / g;
          return true;
        }
        if (phase1 && xb > hi_[b] + tol) return false;
        if (!std::isfinite(hi_[b])) return false;
        *out = (hi_[b] + relax - xb) / g;
        return true;
      }
      if (g < -opt_.pivot_tolerance) {
        if (phase1 && xb > hi_[b] + tol) {
          *out = (hi_[b] - relax - xb) / g;
          return true;
        }
        if (phase1 && xb < lo_[b] - tol) return false;
        if (!std::isfinite(lo_[b])) return false;
        *out = (lo_[b] - relax - xb) / g;
        return true;
      }
      return false;
    };
    double relaxed = kInfinity;
    for (int i = 0; i < r_; ++i) {
      double t;
      if (limit_of(i, bland ? 0.0 : tol, &t)) relaxed = std::min(relaxed, t);
    }
    *leave = -1;
    if (!std::isfinite(relaxed)) return kInfinity;
    double best_step = kInfinity;
    double best_pivot = -1;
    for (int i = 0; i < r_; ++i) {
      double t;
      if (!limit_of(i, 0.0, &t)) continue;
      if (bland) {
        if (t > relaxed + 1e-12) continue;
        if (*leave < 0 || basic_[i] < basic_[*leave]) {
          *leave = i;
          best_step = t;
        }
        continue;
      }
      if (t > relaxed) continue;
      double pivot = std::abs(M(i, k));
      if (pivot > best_pivot) {
        best_pivot = pivot;
        *leave = i;
        best_step = t;
      }
    }
    return std::max(best_step, 0.0);
  }

  void Move(int k, int dir, double step) {
    if (step == 0) return;
    int v = nonbasic_[k];
    x_[v] += dir * step;
    for (int i = 0; i < r_; ++i) x_[basic_[i]] += M(i, k) * dir * step;
  }

  void Pivot(int row, int col) {
    int leaving = basic_[row];
    // Snap the leaving variable onto the bound it reached.
    double xl = x_[leaving];
    if (std::abs(xl - lo_[leaving]) <= std::abs(xl - hi_[leaving])) {
      if (std::isfinite(lo_[leaving])) x_[leaving] = lo_[leaving];
    } else if (std::isfinite(hi_[leaving])) {
      x_[leaving] = hi_[leaving];
    }
    double p = M(row, col);
    for (int k = 0; k < n_; ++k) {
      if (k != col) M(row, k) = -M(row, k) / p;
    }
    M(row, col) = 1.0 / p;
    for (int i = 0; i < r_; ++i) {
      if (i == row) continue;
      double f = M(i, col);
      if (f == 0) continue;
      for (int k = 0; k < n_; ++k) {
        if (k != col) M(i, k) += f * M(row, k);
      }
      M(i, col) = f * M(row, col);
    }
    basic_[row] = nonbasic_[col];
    nonbasic_[col] = leaving;
    RecomputeBasics();
  }

  void RecomputeBasics() {
    for (int i = 0; i < r_; ++i) {
      double s = 0;
      for (int k = 0; k < n_; ++k) s += M(i, k) * x_[nonbasic_[k]];
      x_[basic_[i]] = s;
    }
  }

  // Column of variable v in [A -I].
  double Column(int v, int row) const {
    if (v < n_) return problem_.rows[row].coeffs[v];
    return v - n_ == row ? -1.0 : 0.0;
  }

  // Rebuilds M = -B^{-1} N from the original data.
  void Refactor() {
    if (r_ == 0) return;
    const int w = r_ + n_;
    std::vector<double> a(static_cast<size_t>(r_) * w);
    auto at = [&](int i, int j) -> double& {
      return a[static_cast<size_t>(i) * w + j];
    };
    for (int i = 0; i < r_; ++i) {
      for (int j = 0; j < r_; ++j) at(i, j) = Column(basic_[j], i);
      for (int k = 0; k < n_; ++k) at(i, r_ + k) = Column(nonbasic_[k], i);
    }
    for (int c = 0; c < r_; ++c) {
      int piv = c;
      for (int i = c + 1; i < r_; ++i) {
        if (std::abs(at(i, c)) > std::abs(at(piv, c))) piv = i;
      }
      if (std::abs(at(piv, c)) < 1e-14) return;  // keep the updated M
      if (piv != c) {
        for (int j = 0; j < w; ++j) std::swap(at(piv, j), at(c, j));
      }
      double inv = 1.0 / at(c, c);
      for (int j = c; j < w; ++j) at(c, j) *= inv;
      for (int i = 0; i < r_; ++i) {
        if (i == c) continue;
        double f = at(i, c);
        if (f == 0) continue;
        for (int j = c; j < w; ++j) at(i, j) -= f * at(c, j);
      }
    }
    for (int i = 0; i < r_; ++i) {
      for (int k = 0; k < n_; ++k) M(i, k) = -at(i, r_ + k);
    }
    RecomputeBasics();
  }

  void Trace(int iter, bool phase1, int enter, int leave, double step) {
    if (!opt_.trace) return;
    double obj = 0;
    for (int j = 0; j < n_; ++j) obj += cost_[j] * x_[j];
    std::fprintf(stderr, "lp iter=%d phase=%d enter=%d leave=%d step=%.6g obj=%.12g\n",
                 iter, phase1 ? 1 : 2, enter, leave, step, obj);
    for (int i = 0; i < r_; ++i) {
      std::fprintf(stderr, "  x%-4d=%12.6g |", basic_[i], x_[basic_[i]]);
      for (int k = 0; k < n_; ++k) std::fprintf(stderr, " %10.4g", M(i, k));
      std::fprintf(stderr, "\n");
    }
  }

  const LpProblem& problem_;
  const LpOptions opt_;
  const int n_;
  const int r_;
  std::vector<double> lo_, hi_, cost_, x_, cb_;
  std::vector<int> basic_, nonbasic_;
  std::vector<double> m_;
};

void Validate(const LpProblem& p) {
  const size_t n = p.objective.size();
  if (p.lower.size() != n || p.upper.size() != n) {
    throw std::invalid_argument("LpProblem: bound vectors size mismatch");
  }
  for (size_t j = 0; j < n; ++j) {
    if (std::isnan(p.lower[j]) || std::isnan(p.upper[j]) ||
        p.lower[j] > p.upper[j]) {
      throw std::invalid_argument("LpProblem: inconsistent bounds for var " +
                                  std::to_string(j));
    }
  }
  for (size_t i = 0; i < p.rows.size(); ++i) {
    if (p.rows[i].coeffs.size() != n) {
      throw std::invalid_argument("LpProblem: row " + std::to_string(i) +
                                  " has wrong width");
    }
    if (p.rows[i].lo > p.rows[i].hi) {
      throw std::invalid_argument("LpProblem: row " + std::to_string(i) +
                                  " has lo > hi");
    }
  }
}

}  // namespace

int LpProblem::AddVariable(double lo, double hi, double cost) {
  lower.push_back(lo);
  upper.push_back(hi);
  objective.push_back(cost);
  for (LpRow& row : rows) row.coeffs.push_back(0.0);
  return num_vars() - 1;
}

std::string ToString(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal:
      return "optimal";
    case LpStatus::kInfeasible:
      return "infeasible";
    case LpStatus::kUnbounded:
      return "unbounded";
    case LpStatus::kIterationLimit:
      return "iteration_limit";
  }
  return "unknown";
}

LpSolution SolveLp(const LpProblem& problem, const LpOptions& options) {
  Validate(problem);
  Simplex simplex(problem, options);
  return simplex.Run();
}

}  // namespace contractlab

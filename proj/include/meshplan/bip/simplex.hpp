// Copyright 2026 The meshplan Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Bounded-variable dual simplex over a dense tableau.
//
// The LP is kept in the form  A x - s = 0,  lo <= (x, s) <= hi,  where s holds
// one activity variable per row. Structural variables live in [0, 1] (or a
// tighter box set by branching) and every activity variable is boxed by its
// row's relation and by the activity range implied by the [0, 1] box, so all
// variables have finite bounds. Any basis is therefore dual feasible once each
// nonbasic variable sits at the bound matching the sign of its reduced cost,
// and the solver never needs a phase 1: bound changes between branch-and-bound
// nodes only require dual simplex pivots from the current basis.
//
// Pivoting runs on slightly perturbed costs throughout. The bound reported for
// the true costs comes from the final basis: with reduced costs d, every point
// of the box satisfying A x - s = 0 has objective sum_j d_j z_j over nonbasic
// j, so minimizing each term over its box gives a valid bound within the
// perturbation of the optimum.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "meshplan/bip/model.hpp"

namespace meshplan::bip {

enum class LpStatus { kOptimal, kInfeasible, kIterationLimit };

class DualSimplex {
 public:
  explicit DualSimplex(const IPModel& model, double feasibility_tolerance = 1e-6)
      : n_(model.num_vars),
        m_(static_cast<int>(model.constraints.size())),
        cols_(n_ + m_),
        stride_(n_ + 1),
        sign_(model.sense == Sense::kMaximize ? -1.0 : 1.0),
        feas_tol_(feasibility_tolerance) {
    validate(model);
    cost_.assign(cols_, 0.0);
    for (int j = 0; j < n_; ++j) cost_[j] = sign_ * model.objective[j];
    lo_.assign(cols_, 0.0);
    hi_.assign(cols_, 1.0);
    fixed_.assign(cols_, 0);
    a_.assign(static_cast<std::size_t>(m_) * n_, 0.0);
    for (int r = 0; r < m_; ++r) {
      const auto& row = model.constraints[r];
      double act_min = 0.0, act_max = 0.0;
      for (const auto& t : row.terms) {
        a_[idx_a(r, t.var)] = t.coef;
        (t.coef < 0 ? act_min : act_max) += t.coef;
      }
      double lo = act_min, hi = act_max;
      if (row.relation != Relation::kGreaterEqual) hi = std::min(hi, row.rhs);
      if (row.relation != Relation::kLessEqual) lo = std::max(lo, row.rhs);
      if (lo > hi + feas_tol_) trivially_infeasible_ = true;
      lo_[n_ + r] = lo;
      hi_[n_ + r] = std::max(lo, hi);
      fixed_[n_ + r] = lo_[n_ + r] == hi_[n_ + r];
    }
    z_.assign(cols_, 0.0);
    for (int j = n_; j < cols_; ++j) z_[j] = lo_[j];
    d_.assign(cols_, 0.0);
    work_cost_ = cost_;
    perturb_costs();
    reinvert({});
  }

  int num_structural() const { return n_; }
  int num_rows() const { return m_; }

  /// Replaces the box of structural variable j. Takes effect on the next solve.
  void set_bounds(int j, double lo, double hi) {
    lo_[j] = lo;
    hi_[j] = hi;
  }
  double lower(int j) const { return lo_[j]; }
  double upper(int j) const { return hi_[j]; }

  /// With `exact`, finishes with pivots on the true costs so that bound()
  /// equals objective(); otherwise bound() may trail it by the perturbation.
  LpStatus solve(std::int64_t max_iterations = -1, bool exact = false) {
    if (trivially_infeasible_) return LpStatus::kInfeasible;
    for (int j = 0; j < n_; ++j)
      if (lo_[j] > hi_[j] + feas_tol_) return LpStatus::kInfeasible;
    if (max_iterations < 0) max_iterations = 50LL * (cols_ + 1) + 10000;
    refresh_values();

    std::int64_t done = 0;
    LpStatus status = iterate(max_iterations, done);
    if (status != LpStatus::kOptimal) return status;
    bound_internal_ = true_bound();
    const double value = objective_internal();
    if (!exact || value - bound_internal_ <= 1e-9 * (1.0 + std::abs(value))) return status;

    // Unperturbed cleanup; the dual is degenerate here, so this can be slow.
    work_cost_ = cost_;
    recompute_reduced_costs();
    refresh_values();
    status = iterate(max_iterations, done);
    bound_internal_ = objective_internal();
    perturb_costs();
    recompute_reduced_costs();
    return status;
  }

  /// Objective of the current primal point, in the model's own sense.
  double objective() const { return sign_ * objective_internal(); }
  /// Bound on the LP optimum in the model's sense (upper for maximize, lower
  /// for minimize) after a successful solve.
  double bound() const { return sign_ * bound_internal_; }

  std::vector<double> primal() const { return {z_.begin(), z_.begin() + n_}; }
  double value(int j) const { return z_[j]; }
  std::int64_t iterations() const { return iterations_; }

 private:
  static constexpr double kPivotTol = 1e-9;
  static constexpr double kDualTol = 1e-9;
  static constexpr double kZeroTol = 1e-12;

  // The tableau keeps one column per live nonbasic variable ("slot"), packed
  // at the front of each row, and a last column (index n_) that sums the
  // columns of nonbasic variables fixed for good (activities of equality
  // rows) times their values. Row r reads
  //   z[basis[r]] + sum_p T[r][p] z[slot_var[p]] + T[r][n_] = 0.
  std::size_t idx_a(int r, int j) const { return static_cast<std::size_t>(r) * n_ + j; }
  double* row(int r) { return tableau_.data() + static_cast<std::size_t>(r) * stride_; }
  const double* row(int r) const { return tableau_.data() + static_cast<std::size_t>(r) * stride_; }

  int reinvert_interval() const { return std::max(200, m_); }

  double objective_internal() const {
    double v = 0.0;
    for (int j = 0; j < n_; ++j) v += cost_[j] * z_[j];
    return v;
  }

  LpStatus iterate(std::int64_t max_iterations, std::int64_t& done) {
    int stall = 0;
    bool bland = false;
    double last_obj = dual_objective();
    while (true) {
      const int r = choose_leaving_row(bland);
      if (r < 0) return LpStatus::kOptimal;
      if (done >= max_iterations) return LpStatus::kIterationLimit;
      const int leaving = basis_[r];
      const bool to_lower = z_[leaving] < lo_[leaving];
      const int q = choose_entering(r, to_lower, bland);
      if (q < 0) return LpStatus::kInfeasible;
      apply_flips();
      pivot(r, q, to_lower ? lo_[leaving] : hi_[leaving]);
      ++done;
      ++iterations_;
      const double obj = dual_objective();
      if (obj > last_obj + 1e-12) {
        stall = 0;
        last_obj = obj;
      } else if (++stall > 2 * m_ + 500) {
        bland = true;  // anti-cycling fallback for the rest of this solve
      }
      if (pivots_since_reinvert_ >= reinvert_interval()) {
        reinvert(basis_);
        refresh_values();
      }
    }
  }

  double dual_objective() const {
    double v = 0.0;
    for (int j = 0; j < cols_; ++j) v += work_cost_[j] * z_[j];
    return v;
  }

  /// Fixed pseudo-random cost shifts of size about 1e-6; they break the ties
  /// among the many zero-cost columns.
  void perturb_costs() {
    for (int j = 0; j < cols_; ++j) {
      std::uint64_t h = static_cast<std::uint64_t>(j + 1) * 0x9E3779B97F4A7C15ULL;
      h ^= h >> 29;
      h *= 0xBF58476D1CE4E5B9ULL;
      h ^= h >> 32;
      const double xi = 1e-6 * (1.0 + static_cast<double>(h % 1000003) / 1000003.0) *
                        (1.0 + std::abs(cost_[j]));
      work_cost_[j] = cost_[j] + ((h >> 40) & 1 ? xi : -xi);
    }
  }

  double true_bound() const {
    std::vector<double>& d = scratch_;
    d.assign(live_ + 1, 0.0);
    for (int p = 0; p < live_; ++p) d[p] = cost_[slot_var_[p]];
    for (int r = 0; r < m_; ++r) {
      const double cb = cost_[basis_[r]];
      if (cb == 0.0) continue;
      const double* t = row(r);
      for (int p = 0; p < live_; ++p) d[p] -= cb * t[p];
      d[live_] -= cb * t[n_];
    }
    double v = d[live_] + dead_cost_;
    for (int p = 0; p < live_; ++p) {
      const int j = slot_var_[p];
      v += std::min(d[p] * lo_[j], d[p] * hi_[j]);
    }
    return v;
  }

  void recompute_reduced_costs() {
    std::fill(d_.begin(), d_.end(), 0.0);
    for (int p = 0; p < live_; ++p) d_[slot_var_[p]] = work_cost_[slot_var_[p]];
    for (int r = 0; r < m_; ++r) {
      const double cb = work_cost_[basis_[r]];
      if (cb == 0.0) continue;
      const double* t = row(r);
      for (int p = 0; p < live_; ++p) d_[slot_var_[p]] -= cb * t[p];
    }
  }

  /// Rebuilds the tableau for the requested basis from the slack basis by
  /// Gauss-Jordan pivots. Structural columns that turn out dependent stay
  /// nonbasic and their row keeps its activity variable.
  void reinvert(std::vector<int> target) {
    tableau_.assign(static_cast<std::size_t>(m_) * stride_, 0.0);
    basis_.resize(m_);
    row_of_.assign(cols_, -1);
    slot_of_.assign(cols_, -1);
    slot_var_.assign(n_, -1);
    live_ = n_;
    dead_cost_ = 0.0;
    for (int j = 0; j < n_; ++j) {
      slot_var_[j] = j;
      slot_of_[j] = j;
    }
    for (int r = 0; r < m_; ++r) {
      double* t = row(r);
      for (int j = 0; j < n_; ++j) t[j] = -a_[idx_a(r, j)];
      basis_[r] = n_ + r;
      row_of_[n_ + r] = r;
    }
    std::vector<char> wanted(cols_, 0);
    for (int v : target) wanted[v] = 1;
    std::vector<int> structurals;
    for (int v : target)
      if (v < n_) structurals.push_back(v);
    std::sort(structurals.begin(), structurals.end());
    for (int j : structurals) {
      const int p = slot_of_[j];
      int best = -1;
      double best_mag = 1e-7;
      for (int r = 0; r < m_; ++r) {
        const int b = basis_[r];
        if (b < n_ || wanted[b]) continue;
        const double mag = std::abs(row(r)[p]);
        if (mag > best_mag) {
          best_mag = mag;
          best = r;
        }
      }
      if (best >= 0) pivot_tableau(best, j);
    }
    for (int p = live_ - 1; p >= 0; --p)
      if (fixed_[slot_var_[p]]) retire_slot(p);
    recompute_reduced_costs();
    pivots_since_reinvert_ = 0;
  }

  /// Folds the column of a fixed nonbasic variable into the last column and
  /// moves the last live slot into its place.
  void retire_slot(int p) {
    const int j = slot_var_[p];
    z_[j] = lo_[j];
    dead_cost_ += cost_[j] * z_[j];
    const int last = live_ - 1;
    for (int i = 0; i < m_; ++i) {
      double* t = row(i);
      if (z_[j] != 0.0) t[n_] += t[p] * z_[j];
      t[p] = t[last];
      t[last] = 0.0;
    }
    slot_of_[j] = -1;
    if (p != last) {
      slot_var_[p] = slot_var_[last];
      slot_of_[slot_var_[p]] = p;
    }
    slot_var_[last] = -1;
    d_[j] = 0.0;
    --live_;
  }

  /// Puts every nonbasic variable at the bound its reduced cost prefers and
  /// recomputes the basic values from scratch.
  void refresh_values() {
    nonzero_slots_.clear();
    for (int p = 0; p < live_; ++p) {
      const int j = slot_var_[p];
      if (d_[j] > kDualTol) {
        z_[j] = lo_[j];
      } else if (d_[j] < -kDualTol) {
        z_[j] = hi_[j];
      } else if (z_[j] != lo_[j] && z_[j] != hi_[j]) {
        z_[j] = lo_[j];
      }
      if (z_[j] != 0.0) nonzero_slots_.push_back(p);
    }
    for (int r = 0; r < m_; ++r) {
      const double* t = row(r);
      double v = -t[n_];
      for (int p : nonzero_slots_) v -= t[p] * z_[slot_var_[p]];
      z_[basis_[r]] = v;
    }
  }

  int choose_leaving_row(bool bland) const {
    int best = -1;
    double best_viol = 0.0;
    for (int r = 0; r < m_; ++r) {
      const int b = basis_[r];
      const double viol = std::max(lo_[b] - z_[b], z_[b] - hi_[b]);
      if (viol <= feas_tol_) continue;
      if (bland) {
        if (best < 0 || b < basis_[best]) best = r;
      } else if (viol > best_viol + 1e-12 || (viol > best_viol - 1e-12 && best >= 0 && b < basis_[best])) {
        best = r;
        best_viol = viol;
      }
    }
    return best;
  }

  /// Dual ratio test. Outside Bland mode this is the bound-flipping (long
  /// step) variant: breakpoints are passed, and their variables flipped to the
  /// opposite bound, while the dual objective keeps improving.
  int choose_entering(int r, bool to_lower, bool bland) {
    const double* t = row(r);
    auto eligible = [&](int p) {
      const int j = slot_var_[p];
      if (hi_[j] - lo_[j] <= 0.0) return false;
      const bool at_lower = z_[j] <= lo_[j];
      const double alpha = t[p];
      if (to_lower) return at_lower ? alpha < -kPivotTol : alpha > kPivotTol;
      return at_lower ? alpha > kPivotTol : alpha < -kPivotTol;
    };
    flips_.clear();
    if (bland) {
      int best = -1;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (int p = 0; p < live_; ++p) {
        if (!eligible(p)) continue;
        const int j = slot_var_[p];
        const double ratio = std::abs(d_[j]) / std::abs(t[p]);
        if (ratio < best_ratio - 1e-12 || (ratio <= best_ratio + 1e-12 && j < best)) {
          best_ratio = std::min(best_ratio, ratio);
          best = j;
        }
      }
      return best;
    }
    breakpoints_.clear();
    for (int p = 0; p < live_; ++p)
      if (eligible(p)) {
        const int j = slot_var_[p];
        breakpoints_.push_back({std::abs(d_[j]) / std::abs(t[p]), std::abs(t[p]), j});
      }
    if (breakpoints_.empty()) return -1;
    std::sort(breakpoints_.begin(), breakpoints_.end(), [](const Breakpoint& a, const Breakpoint& b) {
      if (a.ratio != b.ratio) return a.ratio < b.ratio;
      if (a.alpha != b.alpha) return a.alpha > b.alpha;
      return a.var < b.var;
    });
    const int leaving = basis_[r];
    double slope = to_lower ? lo_[leaving] - z_[leaving] : z_[leaving] - hi_[leaving];
    std::size_t stop = 0;
    for (; stop < breakpoints_.size(); ++stop) {
      const auto& bp = breakpoints_[stop];
      const double after = slope - bp.alpha * (hi_[bp.var] - lo_[bp.var]);
      if (after <= feas_tol_ || stop + 1 == breakpoints_.size()) break;
      slope = after;
    }
    if (stop + 1 == breakpoints_.size()) {
      const auto& bp = breakpoints_[stop];
      if (slope - bp.alpha * (hi_[bp.var] - lo_[bp.var]) > feas_tol_) return -1;
    }
    // Among breakpoints tied with the stopping one, enter the largest pivot.
    std::size_t pick = stop;
    for (std::size_t k = stop + 1; k < breakpoints_.size(); ++k) {
      if (breakpoints_[k].ratio > breakpoints_[stop].ratio + 1e-12) break;
      if (breakpoints_[k].alpha > breakpoints_[pick].alpha) pick = k;
    }
    for (std::size_t k = 0; k < stop; ++k) flips_.push_back(breakpoints_[k].var);
    if (pick != stop) flips_.push_back(breakpoints_[stop].var);
    return breakpoints_[pick].var;
  }

  /// Moves nonbasic j to `target` and shifts the basic values accordingly.
  void move_nonbasic(int j, double target) {
    const double delta = target - z_[j];
    const int p = slot_of_[j];
    for (int i = 0; i < m_; ++i) {
      const double tij = row(i)[p];
      if (tij != 0.0) z_[basis_[i]] -= tij * delta;
    }
    z_[j] = target;
  }

  void apply_flips() {
    for (int j : flips_) move_nonbasic(j, z_[j] <= lo_[j] ? hi_[j] : lo_[j]);
    flips_.clear();
  }

  void pivot(int r, int q, double leaving_target) {
    const int leaving = basis_[r];
    const int pq = slot_of_[q];
    const double alpha = row(r)[pq];
    // Primal step: move the entering variable so the leaving one hits its bound.
    const double step = (leaving_target - z_[leaving]) / (-alpha);
    if (step != 0.0) {
      for (int i = 0; i < m_; ++i) {
        const double tiq = row(i)[pq];
        if (tiq != 0.0) z_[basis_[i]] -= tiq * step;
      }
      z_[q] += step;
    }
    z_[leaving] = leaving_target;
    pivot_tableau(r, q);
    // Dual update; slot pq now belongs to the leaving variable.
    const double dq = d_[q];
    const double* pr = row(r);
    if (dq != 0.0) {
      for (int p : pivot_nz_)
        if (p < live_) d_[slot_var_[p]] -= dq * pr[p];
    }
    d_[q] = 0.0;
    // Keep nonbasic variables dual feasible in the presence of round-off by
    // flipping them to the preferred bound.
    for (int p : pivot_nz_) {
      if (p >= live_) continue;
      const int k = slot_var_[p];
      if ((d_[k] > kDualTol && z_[k] != lo_[k]) || (d_[k] < -kDualTol && z_[k] != hi_[k]))
        move_nonbasic(k, d_[k] > 0 ? lo_[k] : hi_[k]);
    }
    if (fixed_[leaving]) retire_slot(pq);
    ++pivots_since_reinvert_;
  }

  /// Exchanges basic basis_[r] with nonbasic q; the leaving variable takes
  /// q's slot.
  void pivot_tableau(int r, int q) {
    const int pq = slot_of_[q];
    double* pr = row(r);
    const double inv = 1.0 / pr[pq];
    pr[pq] = 1.0;  // the leaving variable's unit column, scaled below
    pivot_nz_.clear();
    auto scale = [&](int k) {
      if (pr[k] == 0.0) return;
      pr[k] *= inv;
      if (std::abs(pr[k]) < kZeroTol) {
        pr[k] = 0.0;
        return;
      }
      pivot_nz_.push_back(k);
    };
    for (int k = 0; k < live_; ++k) scale(k);
    scale(n_);
    // Entries are either zero or above kZeroTol, so the contiguous sweep gives
    // the same numbers as the indexed one.
    const bool dense = 4 * pivot_nz_.size() > static_cast<std::size_t>(live_);
    for (int i = 0; i < m_; ++i) {
      if (i == r) continue;
      double* pi = row(i);
      const double f = pi[pq];
      if (f == 0.0) continue;
      pi[pq] = 0.0;
      if (dense) {
        for (int k = 0; k < live_; ++k) {
          const double v = pi[k] - f * pr[k];
          pi[k] = std::abs(v) < kZeroTol ? 0.0 : v;
        }
        const double v = pi[n_] - f * pr[n_];
        pi[n_] = std::abs(v) < kZeroTol ? 0.0 : v;
        continue;
      }
      for (int k : pivot_nz_) {
        double v = pi[k] - f * pr[k];
        pi[k] = std::abs(v) < kZeroTol ? 0.0 : v;
      }
    }
    const int leaving = basis_[r];
    row_of_[leaving] = -1;
    slot_of_[leaving] = pq;
    slot_var_[pq] = leaving;
    slot_of_[q] = -1;
    basis_[r] = q;
    row_of_[q] = r;
  }

  int n_, m_, cols_, stride_;
  double sign_;
  double feas_tol_;
  bool trivially_infeasible_ = false;
  std::vector<double> a_;
  std::vector<double> cost_, work_cost_, lo_, hi_, z_, d_;
  std::vector<char> fixed_;
  double bound_internal_ = 0.0;
  double dead_cost_ = 0.0;
  mutable std::vector<double> scratch_;
  std::vector<double> tableau_;
  std::vector<int> basis_, row_of_, slot_of_, slot_var_;
  int live_ = 0;
  struct Breakpoint {
    double ratio;
    double alpha;
    int var;
  };
  std::vector<Breakpoint> breakpoints_;
  std::vector<int> flips_;
  std::vector<int> pivot_nz_, nonzero_slots_;
  std::int64_t iterations_ = 0;
  int pivots_since_reinvert_ = 0;
};

struct LpRelaxation {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<double> values;
  double bound = 0.0;  // upper bound for maximize, lower bound for minimize
  std::int64_t iterations = 0;
};

/// Solves the model with every variable relaxed to [0, 1].
inline LpRelaxation lp_relax(const IPModel& model, double feasibility_tolerance = 1e-6) {
  DualSimplex lp(model, feasibility_tolerance);
  LpRelaxation out;
  out.status = lp.solve(-1, /*exact=*/true);
  if (out.status == LpStatus::kIterationLimit) {
    throw SolverError("LP relaxation hit the iteration limit (" +
                      std::to_string(lp.iterations()) + " pivots); possible cycling");
  }
  out.iterations = lp.iterations();
  if (out.status == LpStatus::kOptimal) {
    out.values = lp.primal();
    out.bound = lp.bound();
  }
  return out;
}

}  // namespace meshplan::bip

#include "asymparb/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace asymparb::lp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Dense LU solve with partial pivoting; returns false on a singular system.
bool lu_solve(std::vector<std::vector<double>> a, std::vector<double> b,
              std::vector<double>& out) {
  const int n = static_cast<int>(a.size());
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  for (int k = 0; k < n; ++k) {
    int piv = k;
    double best = std::abs(a[k][k]);
    for (int i = k + 1; i < n; ++i)
      if (std::abs(a[i][k]) > best) {
        best = std::abs(a[i][k]);
        piv = i;
      }
    if (best < 1e-13) return false;
    std::swap(a[k], a[piv]);
    std::swap(b[k], b[piv]);
    for (int i = k + 1; i < n; ++i) {
      double f = a[i][k] / a[k][k];
      if (f == 0.0) continue;
      a[i][k] = 0.0;
      for (int j = k + 1; j < n; ++j) a[i][j] -= f * a[k][j];
      b[i] -= f * b[k];
    }
  }
  out.assign(n, 0.0);
  for (int i = n - 1; i >= 0; --i) {
    double s = b[i];
    for (int j = i + 1; j < n; ++j) s -= a[i][j] * out[j];
    out[i] = s / a[i][i];
  }
  return true;
}

}  // namespace

SimplexSolver::SimplexSolver(LinearProgram base) : base_(std::move(base)) {
  if (base_.lower.empty()) base_.lower.assign(base_.num_vars, 0.0);
  if (base_.upper.empty()) base_.upper.assign(base_.num_vars, kInf);
  if (static_cast<int>(base_.objective.size()) != base_.num_vars ||
      static_cast<int>(base_.lower.size()) != base_.num_vars ||
      static_cast<int>(base_.upper.size()) != base_.num_vars)
    throw LpError("simplex: inconsistent problem dimensions");
  for (const Row& r : base_.rows)
    if (static_cast<int>(r.a.size()) != base_.num_vars)
      throw LpError("simplex: row width != num_vars");
  for (int j = 0; j < base_.num_vars; ++j)
    if (base_.lower[j] > base_.upper[j]) {
      feasibility_ = SolveStatus::infeasible;
      return;
    }
  build_canonical();
  feasibility_ = run_phase1();
}

void SimplexSolver::build_canonical() {
  vmap_.resize(base_.num_vars);
  n_canon_ = 0;
  for (int j = 0; j < base_.num_vars; ++j) {
    VarMap& m = vmap_[j];
    const double lo = base_.lower[j], hi = base_.upper[j];
    if (lo > -kInf) {
      m.kind = VarMap::shifted;
      m.shift = lo;
      m.col = n_canon_++;
    } else if (hi < kInf) {
      m.kind = VarMap::mirrored;
      m.shift = hi;
      m.col = n_canon_++;
    } else {
      m.kind = VarMap::free_pair;
      m.col = n_canon_++;
      m.col_neg = n_canon_++;
    }
  }

  struct RawRow {
    std::vector<double> a;
    RowSense sense;
    double rhs;
  };
  std::vector<RawRow> raw;
  raw.reserve(base_.rows.size() + base_.num_vars);
  for (const Row& r : base_.rows) {
    RawRow rr{std::vector<double>(n_canon_, 0.0), r.sense, r.rhs};
    for (int j = 0; j < base_.num_vars; ++j) {
      double c = r.a[j];
      if (c == 0.0) continue;
      const VarMap& m = vmap_[j];
      switch (m.kind) {
        case VarMap::shifted:
          rr.a[m.col] += c;
          rr.rhs -= c * m.shift;
          break;
        case VarMap::mirrored:
          rr.a[m.col] -= c;
          rr.rhs -= c * m.shift;
          break;
        case VarMap::free_pair:
          rr.a[m.col] += c;
          rr.a[m.col_neg] -= c;
          break;
      }
    }
    raw.push_back(std::move(rr));
  }
  // finite ranges on shifted variables become bound rows
  for (int j = 0; j < base_.num_vars; ++j) {
    const VarMap& m = vmap_[j];
    if (m.kind == VarMap::shifted && base_.upper[j] < kInf) {
      RawRow rr{std::vector<double>(n_canon_, 0.0), RowSense::le,
                base_.upper[j] - base_.lower[j]};
      rr.a[m.col] = 1.0;
      raw.push_back(std::move(rr));
    }
  }

  n_slack_ = 0;
  for (const RawRow& rr : raw)
    if (rr.sense != RowSense::eq) ++n_slack_;

  const int m = static_cast<int>(raw.size());
  orig_rows_.assign(m, std::vector<double>(n_canon_ + n_slack_, 0.0));
  orig_b_.assign(m, 0.0);
  std::vector<int> basic_col(m, -1);
  int slack_at = n_canon_;
  for (int i = 0; i < m; ++i) {
    RawRow& rr = raw[i];
    double sgn = rr.rhs < 0.0 ? -1.0 : 1.0;
    for (int j = 0; j < n_canon_; ++j) orig_rows_[i][j] = sgn * rr.a[j];
    orig_b_[i] = sgn * rr.rhs;
    if (rr.sense != RowSense::eq) {
      double s = (rr.sense == RowSense::le) ? 1.0 : -1.0;
      orig_rows_[i][slack_at] = sgn * s;
      if (sgn * s > 0.0) basic_col[i] = slack_at;
      ++slack_at;
    }
  }
  n_artif_ = 0;
  for (int i = 0; i < m; ++i)
    if (basic_col[i] < 0) ++n_artif_;
  active_cols_ = n_canon_ + n_slack_;
  const int total = active_cols_ + n_artif_;

  tab_.assign(m, std::vector<double>(total, 0.0));
  b_ = orig_b_;
  basis_.assign(m, -1);
  int artif_at = active_cols_;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < active_cols_; ++j) tab_[i][j] = orig_rows_[i][j];
    if (basic_col[i] >= 0) {
      basis_[i] = basic_col[i];
    } else {
      tab_[i][artif_at] = 1.0;
      basis_[i] = artif_at;
      ++artif_at;
    }
  }
}

void SimplexSolver::pivot(int row, int col, std::vector<double>& objective_row,
                          double& objective_val) {
  const int m = static_cast<int>(tab_.size());
  const int total = static_cast<int>(tab_[row].size());
  double piv = tab_[row][col];
  double inv = 1.0 / piv;
  for (int j = 0; j < total; ++j) tab_[row][j] *= inv;
  tab_[row][col] = 1.0;
  b_[row] *= inv;
  for (int i = 0; i < m; ++i) {
    if (i == row) continue;
    double f = tab_[i][col];
    if (f == 0.0) continue;
    for (int j = 0; j < total; ++j) tab_[i][j] -= f * tab_[row][j];
    tab_[i][col] = 0.0;
    b_[i] -= f * b_[row];
    if (b_[i] < 0.0 && b_[i] > -1e-12) b_[i] = 0.0;
  }
  double f = objective_row[col];
  if (f != 0.0) {
    for (int j = 0; j < total; ++j) objective_row[j] -= f * tab_[row][j];
    objective_row[col] = 0.0;
    objective_val += f * b_[row];
  }
  basis_[row] = col;
}

SolveStatus SimplexSolver::pivot_loop(std::vector<double>& objective_row,
                                      double& objective_val, int& iterations) {
  const int m = static_cast<int>(tab_.size());
  const long max_iter = 20000 + 200L * (m + active_cols_);
  for (long it = 0;; ++it) {
    if (it > max_iter) return SolveStatus::numerical_error;
    // Bland: lowest-index improving column
    int enter = -1;
    for (int j = 0; j < active_cols_; ++j)
      if (objective_row[j] > kTol) {
        enter = j;
        break;
      }
    if (enter < 0) return SolveStatus::optimal;
    int leave = -1;
    double best = kInf;
    for (int i = 0; i < m; ++i) {
      double a = tab_[i][enter];
      if (a > kTol) {
        double ratio = b_[i] / a;
        if (ratio < best - 1e-12 ||
            (ratio < best + 1e-12 && (leave < 0 || basis_[i] < basis_[leave]))) {
          best = ratio;
          leave = i;
        }
      }
    }
    if (leave < 0) return SolveStatus::unbounded;
    pivot(leave, enter, objective_row, objective_val);
    ++iterations;
  }
}

SolveStatus SimplexSolver::run_phase1() {
  const int m = static_cast<int>(tab_.size());
  if (m == 0) return SolveStatus::optimal;
  if (n_artif_ == 0) return SolveStatus::optimal;

  const int total = active_cols_ + n_artif_;
  // maximize -(sum of artificials)
  std::vector<double> obj(total, 0.0);
  double val = 0.0;
  for (int i = 0; i < m; ++i) {
    if (basis_[i] >= active_cols_) {
      // reduced costs: c_j - c_B B^-1 A_j with c_artif = -1
      for (int j = 0; j < total; ++j) obj[j] += tab_[i][j];
      val -= b_[i];
    }
  }
  for (int i = 0; i < m; ++i)
    if (basis_[i] >= active_cols_) obj[basis_[i]] = 0.0;
  // artificial columns never re-enter: pivot_loop only scans j < active_cols_

  int iters = 0;
  SolveStatus st = pivot_loop(obj, val, iters);
  if (st != SolveStatus::optimal) {
    std::fprintf(stderr, "phase1: st=%d iters=%d val=%g m=%d cols=%d\n",
                 (int)st, iters, val, (int)tab_.size(), active_cols_);
    return SolveStatus::numerical_error;
  }
  if (val < -1e-7) return SolveStatus::infeasible;

  // Drive remaining artificials out of the basis; drop redundant rows.
  for (int i = static_cast<int>(tab_.size()) - 1; i >= 0; --i) {
    if (basis_[i] < active_cols_) continue;
    int col = -1;
    for (int j = 0; j < active_cols_; ++j)
      if (std::abs(tab_[i][j]) > 1e-7) {
        col = j;
        break;
      }
    if (col >= 0) {
      std::vector<double> dummy(tab_[i].size(), 0.0);
      double dval = 0.0;
      pivot(i, col, dummy, dval);
    } else {
      tab_.erase(tab_.begin() + i);
      b_.erase(b_.begin() + i);
      basis_.erase(basis_.begin() + i);
      orig_rows_.erase(orig_rows_.begin() + i);
      orig_b_.erase(orig_b_.begin() + i);
    }
  }
  return SolveStatus::optimal;
}

bool SimplexSolver::refine_basic_values() {
  const int m = static_cast<int>(tab_.size());
  values_.assign(active_cols_, 0.0);
  if (m == 0) return true;
  std::vector<std::vector<double>> bmat(m, std::vector<double>(m, 0.0));
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < m; ++k) bmat[i][k] = orig_rows_[i][basis_[k]];
  std::vector<double> z;
  if (!lu_solve(std::move(bmat), orig_b_, z)) {
    // fall back on the tableau values
    for (int i = 0; i < m; ++i) values_[basis_[i]] = b_[i];
    return true;
  }
  for (int k = 0; k < m; ++k) values_[basis_[k]] = std::max(z[k], 0.0);
  return true;
}

std::vector<double> SimplexSolver::extract_x() const {
  std::vector<double> x(base_.num_vars, 0.0);
  for (int j = 0; j < base_.num_vars; ++j) {
    const VarMap& m = vmap_[j];
    switch (m.kind) {
      case VarMap::shifted:
        x[j] = m.shift + values_[m.col];
        break;
      case VarMap::mirrored:
        x[j] = m.shift - values_[m.col];
        break;
      case VarMap::free_pair:
        x[j] = values_[m.col] - values_[m.col_neg];
        break;
    }
  }
  return x;
}

double SimplexSolver::max_row_violation(const std::vector<double>& x) const {
  return max_violation(base_, x);
}

Solution SimplexSolver::maximize(const std::vector<double>& objective) {
  Solution sol;
  if (static_cast<int>(objective.size()) != base_.num_vars)
    throw LpError("simplex: objective size != num_vars");
  if (feasibility_ == SolveStatus::infeasible) {
    sol.status = SolveStatus::infeasible;
    return sol;
  }
  if (feasibility_ == SolveStatus::numerical_error) {
    sol.status = SolveStatus::numerical_error;
    sol.note = "phase 1 failed";
    return sol;
  }

  const int total = tab_.empty() ? active_cols_ + n_artif_
                                 : static_cast<int>(tab_[0].size());
  std::vector<double> cc(total, 0.0);
  for (int j = 0; j < base_.num_vars; ++j) {
    double c = objective[j];
    if (c == 0.0) continue;
    const VarMap& m = vmap_[j];
    switch (m.kind) {
      case VarMap::shifted:
        cc[m.col] += c;
        break;
      case VarMap::mirrored:
        cc[m.col] -= c;
        break;
      case VarMap::free_pair:
        cc[m.col] += c;
        cc[m.col_neg] -= c;
        break;
    }
  }
  // reduced costs relative to the current basis
  std::vector<double> obj = cc;
  double val = 0.0;
  const int m = static_cast<int>(tab_.size());
  for (int i = 0; i < m; ++i) {
    double cb = cc[basis_[i]];
    if (cb == 0.0) continue;
    for (int j = 0; j < total; ++j) obj[j] -= cb * tab_[i][j];
    val += cb * b_[i];
  }
  for (int i = 0; i < m; ++i) obj[basis_[i]] = 0.0;

  int iterations = 0;
  SolveStatus st = pivot_loop(obj, val, iterations);
  sol.iterations = iterations;
  if (st != SolveStatus::optimal) {
    sol.status = st;
    if (st == SolveStatus::numerical_error) sol.note = "iteration cap exceeded";
    return sol;
  }
  refine_basic_values();
  sol.x = extract_x();
  sol.objective = 0.0;
  for (int j = 0; j < base_.num_vars; ++j) sol.objective += objective[j] * sol.x[j];
  double violation = max_row_violation(sol.x);
  if (violation > 1e-8) {
    sol.status = SolveStatus::numerical_error;
    sol.note = "constraint violation " + std::to_string(violation) + " at the optimum";
    return sol;
  }
  sol.status = SolveStatus::optimal;
  return sol;
}

Solution solve(const LinearProgram& lp) {
  SimplexSolver solver(lp);
  std::vector<double> obj = lp.objective;
  if (!lp.maximize)
    for (double& c : obj) c = -c;
  Solution sol = solver.maximize(obj);
  if (sol.status == SolveStatus::optimal && !lp.maximize) sol.objective = -sol.objective;
  return sol;
}

double max_violation(const LinearProgram& lp, const std::vector<double>& x) {
  double worst = 0.0;
  for (const Row& r : lp.rows) {
    double lhs = 0.0;
    for (int j = 0; j < lp.num_vars; ++j) lhs += r.a[j] * x[j];
    double v = 0.0;
    switch (r.sense) {
      case RowSense::le: v = lhs - r.rhs; break;
      case RowSense::ge: v = r.rhs - lhs; break;
      case RowSense::eq: v = std::abs(lhs - r.rhs); break;
    }
    worst = std::max(worst, v);
  }
  for (int j = 0; j < lp.num_vars; ++j) {
    if (!lp.lower.empty()) worst = std::max(worst, lp.lower[j] - x[j]);
    if (!lp.upper.empty()) worst = std::max(worst, x[j] - lp.upper[j]);
  }
  return worst;
}

}  // namespace asymparb::lp

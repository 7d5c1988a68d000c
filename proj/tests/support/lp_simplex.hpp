#pragma once

// Test-only oracle: the transportation problem posed as a generic LP and
// solved by a dense two-phase tableau simplex with Bland's rule. Shares no
// code with the production network simplex; used to cross-check optima.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace lp_oracle {

inline constexpr double kEnterTol = 1e-10;
inline constexpr double kPivotTol = 1e-11;

class DenseSimplex {
 public:
  // minimize c.x  s.t.  A x = b, x >= 0  (b must be nonnegative).
  DenseSimplex(std::vector<std::vector<double>> a, std::vector<double> b,
               std::vector<double> c)
      : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {}

  double solve() {
    const std::size_t rows = a_.size();
    const std::size_t cols = c_.size();

    // Phase 1 tableau: [A | I | b], artificial basis.
    tableau_.assign(rows, std::vector<double>(cols + rows + 1, 0.0));
    basis_.resize(rows);
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < cols; ++j) tableau_[i][j] = a_[i][j];
      tableau_[i][cols + i] = 1.0;
      tableau_[i][cols + rows] = b_[i];
      basis_[i] = cols + i;
    }

    std::vector<double> phase1_cost(cols + rows, 0.0);
    for (std::size_t j = cols; j < cols + rows; ++j) phase1_cost[j] = 1.0;
    run_phase(phase1_cost, cols + rows);
    if (objective(phase1_cost) > 1e-7)
      throw std::runtime_error("lp oracle: infeasible");

    drive_out_artificials(cols);

    std::vector<double> phase2_cost = c_;
    phase2_cost.resize(cols + rows, 0.0);
    run_phase(phase2_cost, cols);  // artificial columns never re-enter
    return objective(phase2_cost);
  }

 private:
  double objective(const std::vector<double>& cost) const {
    double z = 0.0;
    for (std::size_t i = 0; i < basis_.size(); ++i)
      z += cost[basis_[i]] * tableau_[i].back();
    return z;
  }

  void pivot(std::size_t row, std::size_t col) {
    const double inv = 1.0 / tableau_[row][col];
    for (double& v : tableau_[row]) v *= inv;
    for (std::size_t i = 0; i < tableau_.size(); ++i) {
      if (i == row) continue;
      const double factor = tableau_[i][col];
      if (factor == 0.0) continue;
      for (std::size_t j = 0; j < tableau_[i].size(); ++j)
        tableau_[i][j] -= factor * tableau_[row][j];
      tableau_[i][col] = 0.0;
    }
    basis_[row] = col;
  }

  // Bland's rule on entering (lowest eligible index) and leaving (lowest
  // basis index among minimal ratios): finite termination, no cycling.
  void run_phase(const std::vector<double>& cost, std::size_t priced_cols) {
    const std::size_t rows = tableau_.size();
    for (std::size_t guard = 0; guard < 200000; ++guard) {
      // Reduced costs via the basic cost multipliers.
      std::size_t enter = priced_cols;
      for (std::size_t j = 0; j < priced_cols; ++j) {
        double r = cost[j];
        for (std::size_t i = 0; i < rows; ++i)
          r -= cost[basis_[i]] * tableau_[i][j];
        if (r < -kEnterTol) {
          enter = j;
          break;
        }
      }
      if (enter == priced_cols) return;  // optimal

      std::size_t leave = rows;
      double best_ratio = 0.0;
      for (std::size_t i = 0; i < rows; ++i) {
        if (tableau_[i][enter] <= kPivotTol) continue;
        const double ratio = tableau_[i].back() / tableau_[i][enter];
        if (leave == rows || ratio < best_ratio - 1e-15 ||
            (std::abs(ratio - best_ratio) <= 1e-15 &&
             basis_[i] < basis_[leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (leave == rows) throw std::runtime_error("lp oracle: unbounded");
      pivot(leave, enter);
    }
    throw std::runtime_error("lp oracle: iteration limit");
  }

  void drive_out_artificials(std::size_t cols) {
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      if (basis_[i] < cols) continue;
      for (std::size_t j = 0; j < cols; ++j) {
        if (std::abs(tableau_[i][j]) > 1e-9) {
          pivot(i, j);
          break;
        }
      }
    }
  }

  std::vector<std::vector<double>> a_;
  std::vector<double> b_;
  std::vector<double> c_;
  std::vector<std::vector<double>> tableau_;
  std::vector<std::size_t> basis_;
};

// Optimal transportation cost (before the 1/p root) between masses `a` and
// `b` under the dense cost matrix (row-major m x n).
inline double transport_optimum(const std::vector<double>& a,
                                const std::vector<double>& b,
                                const std::vector<double>& cost_matrix) {
  const std::size_t m = a.size();
  const std::size_t n = b.size();
  // Row sums = a (m rows) and column sums = b (first n-1 columns; the last
  // one is implied by mass balance and would make the system rank-deficient).
  std::vector<std::vector<double>> rows;
  std::vector<double> rhs;
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<double> row(m * n, 0.0);
    for (std::size_t j = 0; j < n; ++j) row[i * n + j] = 1.0;
    rows.push_back(std::move(row));
    rhs.push_back(a[i]);
  }
  for (std::size_t j = 0; j + 1 < n; ++j) {
    std::vector<double> row(m * n, 0.0);
    for (std::size_t i = 0; i < m; ++i) row[i * n + j] = 1.0;
    rows.push_back(std::move(row));
    rhs.push_back(b[j]);
  }
  DenseSimplex lp(std::move(rows), std::move(rhs), cost_matrix);
  return lp.solve();
}

}  // namespace lp_oracle

#include "pitchkde/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "pitchkde/detail/network_simplex.hpp"

namespace pitchkde {

DiscreteDistribution::DiscreteDistribution(std::vector<Vec2> support,
                                           std::vector<double> mass)
    : support_(std::move(support)), mass_(std::move(mass)) {
  if (support_.empty())
    throw DegenerateInputError("DiscreteDistribution: empty support");
  if (support_.size() != mass_.size())
    throw InvalidArgumentError(
        "DiscreteDistribution: support/mass length mismatch");
  double total = 0.0;
  for (double m : mass_) {
    if (!std::isfinite(m) || m < 0.0)
      throw InvalidArgumentError("DiscreteDistribution: negative mass");
    total += m;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw InvalidArgumentError("DiscreteDistribution: mass must sum to 1");
  for (const Vec2& p : support_)
    if (!std::isfinite(p.x) || !std::isfinite(p.y))
      throw InvalidArgumentError("DiscreteDistribution: non-finite support");
}

void CostSpec::validate() const {
  if (!std::isfinite(p) || p < 1.0)
    throw InvalidArgumentError("CostSpec: p must be >= 1");
  if (!std::isfinite(norm_order) || norm_order < 1.0)
    throw InvalidArgumentError("CostSpec: norm_order must be >= 1");
}

double ground_cost(Vec2 a, Vec2 b, const CostSpec& cost) {
  cost.validate();
  const double dx = std::abs(a.x - b.x);
  const double dy = std::abs(a.y - b.y);
  double norm;
  if (cost.norm_order == 1.0)
    norm = dx + dy;
  else if (cost.norm_order == 2.0)
    norm = std::sqrt(dx * dx + dy * dy);
  else
    norm = std::pow(std::pow(dx, cost.norm_order) +
                        std::pow(dy, cost.norm_order),
                    1.0 / cost.norm_order);
  if (cost.p == 1.0) return norm;
  if (cost.p == 2.0) return norm * norm;
  return std::pow(norm, cost.p);
}

DiscreteDistribution discretize(const DensityGrid& grid, double mass_floor) {
  if (!std::isfinite(mass_floor) || mass_floor < 0.0 || mass_floor >= 1.0)
    throw InvalidArgumentError("discretize: mass_floor must be in [0, 1)");
  const double area = grid.spec().cell_area();
  double total = 0.0;
  for (double v : grid.values()) {
    if (v < 0.0)
      throw InvalidArgumentError("discretize: negative grid value");
    total += v * area;
  }
  if (total <= 0.0)
    throw DegenerateInputError("discretize: grid carries no mass");

  std::vector<Vec2> support;
  std::vector<double> mass;
  const int rows = grid.rows();
  const int cols = grid.cols();
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const double normalized = grid.at(r, c) * area / total;
      if (normalized < mass_floor) continue;
      support.push_back(grid.spec().cell_center(r, c));
      mass.push_back(normalized);
    }
  }
  if (support.empty())
    throw FloorTooAggressiveError(
        "discretize: mass_floor pruned every cell; lower the floor");

  const double kept = std::accumulate(mass.begin(), mass.end(), 0.0);
  for (double& m : mass) m /= kept;
  return DiscreteDistribution(std::move(support), std::move(mass));
}

namespace {

// Rebalance demands so both sides total the same mass to the last ulp; the
// simplex assumes exact balance.
std::vector<double> balanced_demand(const DiscreteDistribution& mu,
                                    const DiscreteDistribution& nu) {
  const double sa =
      std::accumulate(mu.mass().begin(), mu.mass().end(), 0.0);
  const double sb =
      std::accumulate(nu.mass().begin(), nu.mass().end(), 0.0);
  std::vector<double> demand = nu.mass();
  const double scale = sa / sb;
  double acc = 0.0;
  std::size_t largest = 0;
  for (std::size_t j = 0; j < demand.size(); ++j) {
    demand[j] *= scale;
    acc += demand[j];
    if (demand[j] > demand[largest]) largest = j;
  }
  demand[largest] += sa - acc;
  if (demand[largest] < 0.0) demand[largest] = 0.0;
  return demand;
}

template <class CostFn>
ExactResult solve_exact(const DiscreteDistribution& mu,
                        const DiscreteDistribution& nu, double p,
                        CostFn cost_fn) {
  detail::TransportSimplex<CostFn> simplex(mu.mass(), balanced_demand(mu, nu),
                                           std::move(cost_fn));
  simplex.solve();
  ExactResult result;
  const double total = std::max(0.0, simplex.objective());
  result.distance = p == 1.0 ? total
                   : p == 2.0 ? std::sqrt(total)
                              : std::pow(total, 1.0 / p);
  simplex.for_each_flow([&](int i, int j, double f) {
    result.plan.flows.push_back({i, j, f});
  });
  return result;
}

}  // namespace

ExactResult wasserstein_exact(const DiscreteDistribution& mu,
                              const DiscreteDistribution& nu,
                              const CostSpec& cost) {
  cost.validate();
  const Vec2* a = mu.support().data();
  const Vec2* b = nu.support().data();

  // Specialized cost kernels: pricing evaluates these billions of times.
  if (cost.norm_order == 1.0 && cost.p == 1.0) {
    return solve_exact(mu, nu, cost.p, [a, b](std::size_t i, std::size_t j) {
      return std::abs(a[i].x - b[j].x) + std::abs(a[i].y - b[j].y);
    });
  }
  if (cost.norm_order == 2.0 && cost.p == 1.0) {
    return solve_exact(mu, nu, cost.p, [a, b](std::size_t i, std::size_t j) {
      const double dx = a[i].x - b[j].x;
      const double dy = a[i].y - b[j].y;
      return std::sqrt(dx * dx + dy * dy);
    });
  }
  if (cost.norm_order == 2.0 && cost.p == 2.0) {
    return solve_exact(mu, nu, cost.p, [a, b](std::size_t i, std::size_t j) {
      const double dx = a[i].x - b[j].x;
      const double dy = a[i].y - b[j].y;
      return dx * dx + dy * dy;
    });
  }
  const CostSpec spec = cost;
  return solve_exact(mu, nu, cost.p, [a, b, spec](std::size_t i, std::size_t j) {
    return ground_cost(a[i], b[j], spec);
  });
}

namespace {

double log_sum_exp(const std::vector<double>& terms) {
  double mx = -std::numeric_limits<double>::infinity();
  for (double t : terms) mx = std::max(mx, t);
  if (!std::isfinite(mx)) return mx;
  double acc = 0.0;
  for (double t : terms) acc += std::exp(t - mx);
  return mx + std::log(acc);
}

}  // namespace

SinkhornResult wasserstein_sinkhorn(const DiscreteDistribution& mu,
                                    const DiscreteDistribution& nu,
                                    const CostSpec& cost, double epsilon,
                                    int max_iters, double tol) {
  cost.validate();
  if (!std::isfinite(epsilon) || epsilon <= 0.0)
    throw InvalidArgumentError("sinkhorn: epsilon must be positive");
  if (max_iters < 1) throw InvalidArgumentError("sinkhorn: max_iters < 1");

  const std::size_t m = mu.size();
  const std::size_t n = nu.size();
  const auto& a = mu.mass();
  const auto& b = nu.mass();

  // Materialize C when affordable; otherwise recompute per sweep.
  const bool cache_costs = m * n <= std::size_t(4) * 1024 * 1024;
  std::vector<double> cmat;
  if (cache_costs) {
    cmat.resize(m * n);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j)
        cmat[i * n + j] = ground_cost(mu.support()[i], nu.support()[j], cost);
  }
  auto cost_at = [&](std::size_t i, std::size_t j) {
    return cache_costs ? cmat[i * n + j]
                       : ground_cost(mu.support()[i], nu.support()[j], cost);
  };

  const double neg_inf = -std::numeric_limits<double>::infinity();
  std::vector<double> log_a(m), log_b(n);
  for (std::size_t i = 0; i < m; ++i)
    log_a[i] = a[i] > 0.0 ? std::log(a[i]) : neg_inf;
  for (std::size_t j = 0; j < n; ++j)
    log_b[j] = b[j] > 0.0 ? std::log(b[j]) : neg_inf;

  std::vector<double> f(m, 0.0), g(n, 0.0), terms;
  SinkhornResult result;

  for (int it = 1; it <= max_iters; ++it) {
    // f-update makes row marginals exact, g-update the columns; the row
    // residual after the g-update measures convergence.
    for (std::size_t i = 0; i < m; ++i) {
      if (log_a[i] == neg_inf) {
        f[i] = neg_inf;
        continue;
      }
      terms.assign(n, neg_inf);
      for (std::size_t j = 0; j < n; ++j)
        if (g[j] != neg_inf)
          terms[j] = (g[j] - cost_at(i, j)) / epsilon;
      f[i] = epsilon * (log_a[i] - log_sum_exp(terms));
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (log_b[j] == neg_inf) {
        g[j] = neg_inf;
        continue;
      }
      terms.assign(m, neg_inf);
      for (std::size_t i = 0; i < m; ++i)
        if (f[i] != neg_inf)
          terms[i] = (f[i] - cost_at(i, j)) / epsilon;
      g[j] = epsilon * (log_b[j] - log_sum_exp(terms));
    }

    double err = 0.0;
    double plan_cost = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      double row = 0.0;
      if (f[i] != neg_inf) {
        for (std::size_t j = 0; j < n; ++j) {
          if (g[j] == neg_inf) continue;
          const double c = cost_at(i, j);
          const double gamma = std::exp((f[i] + g[j] - c) / epsilon);
          row += gamma;
          plan_cost += gamma * c;
        }
      }
      err = std::max(err, std::abs(row - a[i]));
    }

    result.iterations = it;
    result.marginal_error = err;
    if (err < tol) {
      result.converged = true;
      result.distance = cost.p == 1.0 ? plan_cost
                        : std::pow(std::max(0.0, plan_cost), 1.0 / cost.p);
      return result;
    }
    if (it == max_iters) {
      result.distance = cost.p == 1.0 ? plan_cost
                        : std::pow(std::max(0.0, plan_cost), 1.0 / cost.p);
    }
  }
  result.converged = false;
  return result;
}

}  // namespace pitchkde

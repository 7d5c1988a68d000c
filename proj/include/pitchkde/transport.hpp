#pragma once

#include <cstddef>
#include <vector>

#include "pitchkde/errors.hpp"
#include "pitchkde/kde.hpp"

namespace pitchkde {

// Probability mass on a finite set of locations (grid cell centers).
class DiscreteDistribution {
 public:
  DiscreteDistribution(std::vector<Vec2> support, std::vector<double> mass);

  const std::vector<Vec2>& support() const { return support_; }
  const std::vector<double>& mass() const { return mass_; }
  std::size_t size() const { return support_.size(); }

 private:
  std::vector<Vec2> support_;
  std::vector<double> mass_;
};

// Ground cost |a-b|_norm_order ^ p. p is the Wasserstein order; norm_order
// selects the underlying L_p norm (1 = Manhattan, 2 = Euclidean).
struct CostSpec {
  double p = 1.0;
  double norm_order = 1.0;

  void validate() const;
};

double ground_cost(Vec2 a, Vec2 b, const CostSpec& cost);

// Converts a density grid to cell-center masses (value * cell_area),
// drops cells whose normalized mass falls below mass_floor, and
// renormalizes the survivors to total mass one.
DiscreteDistribution discretize(const DensityGrid& grid, double mass_floor);

struct TransportPlan {
  struct Flow {
    int from = 0;  // index into mu support
    int to = 0;    // index into nu support
    double mass = 0.0;
  };
  std::vector<Flow> flows;
};

struct ExactResult {
  double distance = 0.0;  // (minimal plan cost)^(1/p)
  TransportPlan plan;
};

// Exact p-Wasserstein distance via a transportation-specialized network
// simplex. Ground costs are produced on demand, so memory stays
// O(support sizes) even though the arc set is the complete bipartite graph.
ExactResult wasserstein_exact(const DiscreteDistribution& mu,
                              const DiscreteDistribution& nu,
                              const CostSpec& cost);

struct SinkhornResult {
  double distance = 0.0;  // (sum gamma * cost)^(1/p) of the final plan
  bool converged = false;
  int iterations = 0;
  double marginal_error = 0.0;  // worst L_inf marginal violation at exit
};

// Entropic-regularized approximation (log-domain scaling iterations).
// Non-convergence within max_iters is reported, not thrown.
SinkhornResult wasserstein_sinkhorn(const DiscreteDistribution& mu,
                                    const DiscreteDistribution& nu,
                                    const CostSpec& cost, double epsilon,
                                    int max_iters = 5000, double tol = 1e-9);

}  // namespace pitchkde

#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "pitchkde/errors.hpp"

namespace pitchkde::detail {

// Primal network simplex specialized to the dense transportation problem:
// m sources with supplies, n sinks with demands, the complete bipartite arc
// set. Arc costs come from CostFn(i, j) on demand, so nothing of size m*n is
// ever stored; state is O(m + n).
//
// Every arc is directed source -> sink, so the orientation of a tree arc is
// implied by the kind of its child node. The initial basis is the
// northwest-corner staircase (no artificial arcs, which keeps potentials at
// cost scale instead of big-M scale). Pricing is Dantzig-style block search;
// potentials of a re-hung subtree are recomputed from the new parent, which
// keeps the duals free of accumulated drift.
template <class CostFn>
class TransportSimplex {
 public:
  // Supplies and demands must total the same mass (caller rebalances).
  TransportSimplex(const std::vector<double>& supply,
                   const std::vector<double>& demand, CostFn cost)
      : m_(supply.size()),
        n_(demand.size()),
        cost_fn_(std::move(cost)),
        parent_(m_ + n_, -1),
        first_child_(m_ + n_, -1),
        next_sib_(m_ + n_, -1),
        prev_sib_(m_ + n_, -1),
        flow_(m_ + n_, 0.0),
        arc_cost_(m_ + n_, 0.0),
        pi_(m_ + n_, 0.0),
        depth_(m_ + n_, 0) {
    if (m_ == 0 || n_ == 0)
      throw DegenerateInputError("transport: empty support");

    double max_cost = 0.0;
    for (std::size_t i = 0; i < m_; ++i)
      for (std::size_t j = 0; j < n_; ++j)
        max_cost = std::max(max_cost, cost_fn_(i, j));
    enter_eps_ = 1e-11 * (1.0 + max_cost);
    block_size_ = std::max<std::size_t>(
        64, static_cast<std::size_t>(
                std::sqrt(static_cast<double>(m_) * static_cast<double>(n_))));

    build_northwest_basis(supply, demand);
  }

  void solve() {
    const std::size_t pivot_cap = 300 * (m_ + n_) + 100000;
    std::size_t pivots = 0;
    std::size_t in_i = 0, in_j = 0;
    while (find_entering(in_i, in_j)) {
      pivot(in_i, in_j);
      if (++pivots > pivot_cap)
        throw Error("transport simplex: pivot limit exceeded");
    }
  }

  double objective() const {
    double total = 0.0;
    for (std::size_t v = 1; v < m_ + n_; ++v)
      total += flow_[v] * arc_cost_[v];
    return total;
  }

  // emit(source_index, sink_index, flow) for every positive basic flow.
  template <class Emit>
  void for_each_flow(Emit emit) const {
    for (std::size_t v = 1; v < m_ + n_; ++v) {
      if (flow_[v] <= 0.0) continue;
      if (v < m_)
        emit(static_cast<int>(v), parent_[v] - static_cast<int>(m_), flow_[v]);
      else
        emit(parent_[v], static_cast<int>(v - m_), flow_[v]);
    }
  }

 private:
  bool is_source(int v) const { return static_cast<std::size_t>(v) < m_; }

  void attach(int child, int parent) {
    parent_[child] = parent;
    prev_sib_[child] = -1;
    next_sib_[child] = first_child_[parent];
    if (first_child_[parent] >= 0) prev_sib_[first_child_[parent]] = child;
    first_child_[parent] = child;
  }

  void detach(int child) {
    const int p = parent_[child];
    if (prev_sib_[child] >= 0)
      next_sib_[prev_sib_[child]] = next_sib_[child];
    else
      first_child_[p] = next_sib_[child];
    if (next_sib_[child] >= 0) prev_sib_[next_sib_[child]] = prev_sib_[child];
    parent_[child] = -1;
    prev_sib_[child] = next_sib_[child] = -1;
  }

  // Staircase walk from (0,0) to (m-1,n-1). Each step consumes whichever of
  // the current supply/demand remainder is smaller and introduces exactly
  // one new node, so the chosen arcs form a spanning tree rooted at source 0.
  void build_northwest_basis(const std::vector<double>& supply,
                             const std::vector<double>& demand) {
    std::size_t i = 0, j = 0;
    double a_rem = supply[0];
    double b_rem = demand[0];

    const int first_sink = static_cast<int>(m_);
    attach(first_sink, 0);
    flow_[first_sink] = std::min(a_rem, b_rem);
    arc_cost_[first_sink] = cost_fn_(0, 0);

    while (i + 1 < m_ || j + 1 < n_) {
      int child;
      if ((a_rem <= b_rem && i + 1 < m_) || j + 1 == n_) {
        b_rem -= a_rem;
        ++i;
        a_rem = supply[i];
        child = static_cast<int>(i);
        attach(child, static_cast<int>(m_ + j));
      } else {
        a_rem -= b_rem;
        ++j;
        b_rem = demand[j];
        child = static_cast<int>(m_ + j);
        attach(child, static_cast<int>(i));
      }
      flow_[child] = std::max(0.0, std::min(a_rem, b_rem));
      arc_cost_[child] = cost_fn_(i, j);
    }

    pi_[0] = 0.0;
    depth_[0] = 0;
    for (int c = first_child_[0]; c >= 0; c = next_sib_[c]) refresh_subtree(c);
  }

  // Block search over the implicit arc matrix: scan blocks cyclically and
  // pivot on the most negative reduced cost in the first block containing
  // one. Returns false when a full sweep finds nothing below -eps.
  bool find_entering(std::size_t& in_i, std::size_t& in_j) {
    const std::size_t arc_count = m_ * n_;
    std::size_t i = next_arc_ / n_;
    std::size_t j = next_arc_ % n_;
    std::size_t checked = 0;
    double best = -enter_eps_;
    std::size_t best_i = 0, best_j = 0;
    bool found = false;

    while (checked < arc_count) {
      const std::size_t todo = std::min(block_size_, arc_count - checked);
      for (std::size_t k = 0; k < todo; ++k) {
        const double r = cost_fn_(i, j) + pi_[i] - pi_[m_ + j];
        if (r < best) {
          best = r;
          best_i = i;
          best_j = j;
          found = true;
        }
        if (++j == n_) {
          j = 0;
          if (++i == m_) i = 0;
        }
      }
      checked += todo;
      if (found) {
        next_arc_ = i * n_ + j;
        in_i = best_i;
        in_j = best_j;
        return true;
      }
    }
    return false;
  }

  void pivot(std::size_t in_i, std::size_t in_j) {
    const int u = static_cast<int>(in_i);
    const int v = static_cast<int>(m_ + in_j);
    const double entering_cost = cost_fn_(in_i, in_j);

    // Join = lowest common ancestor of the entering arc's endpoints.
    int a = u, b = v;
    while (a != b) {
      if (depth_[a] > depth_[b]) {
        a = parent_[a];
      } else if (depth_[b] > depth_[a]) {
        b = parent_[b];
      } else {
        a = parent_[a];
        b = parent_[b];
      }
    }
    const int join = a;

    // Min-ratio test. Pushing delta along u->v drains source-side arcs on
    // the u-path and sink-side arcs on the v-path; u itself (a source) or v
    // itself (a sink) guarantees a bound.
    double delta = std::numeric_limits<double>::infinity();
    int out_node = -1;
    bool out_on_u_path = true;
    for (int w = u; w != join; w = parent_[w]) {
      if (is_source(w) && flow_[w] < delta) {
        delta = flow_[w];
        out_node = w;
        out_on_u_path = true;
      }
    }
    for (int w = v; w != join; w = parent_[w]) {
      if (!is_source(w) && flow_[w] <= delta) {
        delta = flow_[w];
        out_node = w;
        out_on_u_path = false;
      }
    }

    for (int w = u; w != join; w = parent_[w])
      flow_[w] += is_source(w) ? -delta : delta;
    for (int w = v; w != join; w = parent_[w])
      flow_[w] += is_source(w) ? delta : -delta;

    // Replace the leaving arc with the entering one: re-root the cut
    // subtree at the entering endpoint it contains (q), then hang it off
    // the other endpoint (s).
    const int q = out_on_u_path ? u : v;
    const int s = out_on_u_path ? v : u;

    // Chain q = c0, c1, ..., ck = out_node. Reverse it top-down: node c_t
    // takes over the arc record stored at c_{t-1}, whose old value is still
    // intact when step t runs.
    chain_.clear();
    for (int w = q; w != out_node; w = parent_[w]) chain_.push_back(w);
    chain_.push_back(out_node);

    detach(out_node);
    for (std::size_t t = chain_.size(); t-- > 1;) {
      const int child = chain_[t];
      const int new_parent = chain_[t - 1];
      if (t + 1 < chain_.size()) detach(child);
      flow_[child] = flow_[new_parent];
      arc_cost_[child] = arc_cost_[new_parent];
      attach(child, new_parent);
    }
    if (chain_.size() > 1) detach(q);
    flow_[q] = delta;
    arc_cost_[q] = entering_cost;
    attach(q, s);

    refresh_subtree(q);
  }

  // Recompute potentials and depths below q from its (already final)
  // parent: tree arcs satisfy cost + pi[src] - pi[dst] = 0.
  void refresh_subtree(int q) {
    stack_.clear();
    stack_.push_back(q);
    while (!stack_.empty()) {
      const int w = stack_.back();
      stack_.pop_back();
      const int p = parent_[w];
      depth_[w] = depth_[p] + 1;
      pi_[w] = is_source(w) ? pi_[p] - arc_cost_[w] : pi_[p] + arc_cost_[w];
      for (int c = first_child_[w]; c >= 0; c = next_sib_[c])
        stack_.push_back(c);
    }
  }

  std::size_t m_;
  std::size_t n_;
  CostFn cost_fn_;

  std::vector<int> parent_;
  std::vector<int> first_child_;
  std::vector<int> next_sib_;
  std::vector<int> prev_sib_;
  std::vector<double> flow_;      // flow on the arc between node and parent
  std::vector<double> arc_cost_;  // cost of that arc
  std::vector<double> pi_;
  std::vector<int> depth_;

  std::vector<int> chain_;
  std::vector<int> stack_;

  std::size_t block_size_ = 64;
  std::size_t next_arc_ = 0;
  double enter_eps_ = 1e-11;
};

}  // namespace pitchkde::detail

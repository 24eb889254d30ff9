#pragma once

#include <cstdint>
#include <vector>

#include "mfgl/gibbs.hpp"

namespace mfgl {

inline constexpr std::int64_t kDefaultTransportStates = 256;
inline constexpr double kTransportScale = 1e12;

struct TransportResult {
  /// Transport cost under the Hamming ground metric.
  double cost = 0.0;
  /// False for the tree-routing upper bound returned above the cap.
  bool exact = true;
  /// Vertex potentials (integer, 1-Lipschitz in Hamming distance) of the
  /// optimal dual; empty when exact is false.
  std::vector<std::int64_t> potential;
  /// sum_v potential(v) (b(v) - a(v)) evaluated on the unrounded masses.
  double dual_value = 0.0;
  /// Dual feasibility, complementary slackness and zero duality gap on the
  /// scaled integer problem all hold.
  bool certified = false;
};

/// Wasserstein-1 distance with ground cost (1/2)||x - y||_1, i.e. Hamming
/// distance, solved as min-cost transshipment on the hypercube graph with
/// masses scaled to integers over kTransportScale.
///
/// Above max_states vertices, throws CapExceeded unless allow_bound is set,
/// in which case a spanning-tree routing upper bound is returned with
/// exact = false.
TransportResult w1_transport(const DenseMeasure& a, const DenseMeasure& b,
                             std::int64_t max_states = kDefaultTransportStates,
                             bool allow_bound = false);

double w1_exact(const DenseMeasure& a, const DenseMeasure& b,
                std::int64_t max_states = kDefaultTransportStates);

/// Upper bound on W1 from routing every imbalance along the binomial
/// spanning tree rooted at vertex 0.
double w1_tree_bound(const DenseMeasure& a, const DenseMeasure& b);

/// Masses rounded to integers summing to kTransportScale; the rounding
/// residual is put on the largest atom.
std::vector<std::int64_t> scaled_masses(const DenseMeasure& m);

}  // namespace mfgl

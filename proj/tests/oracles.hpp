#ifndef SCNMINE_TESTS_ORACLES_HPP
#define SCNMINE_TESTS_ORACLES_HPP

// Brute-force oracles, independent of the implementation paths they check.
// Everything here recomputes results from first principles: permutation
// enumeration for assignments, plain recursion for tree distances, exhaustive
// path enumeration for DTW.

#include <vector>

#include "rng.hpp"
#include "scene_graph.hpp"
#include "tree_metric.hpp"

namespace scn::testing {

/// Minimum of <C, P>/n over all permutation matrices P.
double oracle_assignment_min(const std::vector<std::vector<double>>& cost);

/// Recursive tree distance with permutation enumeration at every OT call.
double oracle_tree_distance(const ComputationTree& a, const ComputationTree& b,
                            const MetricConfig& cfg);

/// Minimum accumulated cost over all monotone corner-to-corner paths,
/// enumerated without dynamic programming (row-major M x N costs).
double oracle_dtw_min(const std::vector<std::vector<double>>& costs);

/// Random computation tree: depth <= max_depth, branching <= max_branching.
ComputationTree random_tree(Rng& rng, int max_depth, int max_branching);

}  // namespace scn::testing

#endif

#pragma once

#include <vector>

#include "symdet/geometry.hpp"
#include "symdet/group_actions.hpp"
#include "symdet/transport.hpp"

namespace symdet {

struct ElementCost {
    GroupElement element;
    double squared_distance;  ///< d(X, gX)^2
};

/// Group-orbit cost: mean of d(X, gX)^2 over all 2n elements of D_n,
/// identity included.
struct CostReport {
    int group_n = 0;
    std::vector<ElementCost> per_element;
    double mean_cost = 0.0;
};

/// Squared Wasserstein distance between X and gX.
double element_cost(const GroupElement& g, const PointCloud& cloud, const TransportConfig& cfg = {});

CostReport group_cost(const DihedralGroup& group, const PointCloud& cloud, const TransportConfig& cfg = {});

/// Orbit cost over an arbitrary list of elements (e.g. a conjugated element set).
double mean_element_cost(const std::vector<GroupElement>& elements, const PointCloud& cloud,
                         const TransportConfig& cfg = {});

struct OccamResult {
    double lhs = 0.0;          ///< mean cost over the smaller group's elements
    double rhs = 0.0;          ///< mean cost over the elements only in the larger group
    bool simpler_preferred = false;
    double small_mean = 0.0;   ///< C(small, X)
    double large_mean = 0.0;   ///< C(large, X)
};

/// Compares the average cost of the smaller group's transformations with the
/// average over the complement inside the larger group. `simpler_preferred`
/// holds iff lhs < rhs by more than cfg.tolerance, which is equivalent to
/// C(small) < C(large). Throws ValidationError unless small.n divides large.n
/// strictly.
OccamResult occam_criterion(const DihedralGroup& small, const DihedralGroup& large, const PointCloud& cloud,
                            const TransportConfig& cfg = {});

/// Perturbation bound 4 M d + 4 d^2 on |C(G, X) - C(G, Y)| where d = d(X, Y)
/// and M bounds every d(X, gX).
double stability_bound(double max_element_distance, double perturbation);

}  // namespace symdet

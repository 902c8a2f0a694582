#include "symdet/orbit_cost.hpp"

#include <string>

#include "symdet/error.hpp"

namespace symdet {

double element_cost(const GroupElement& g, const PointCloud& cloud, const TransportConfig& cfg) {
    if (g.is_identity()) return 0.0;
    const double d = wasserstein(cloud, apply_element(g, cloud), cfg).distance;
    return d * d;
}

CostReport group_cost(const DihedralGroup& group, const PointCloud& cloud, const TransportConfig& cfg) {
    cfg.validate();
    CostReport report;
    report.group_n = group.n();
    double sum = 0.0;
    for (const auto& g : group.elements()) {
        const double c = element_cost(g, cloud, cfg);
        report.per_element.push_back({g, c});
        sum += c;
    }
    report.mean_cost = sum / static_cast<double>(report.per_element.size());
    return report;
}

double mean_element_cost(const std::vector<GroupElement>& elements, const PointCloud& cloud,
                         const TransportConfig& cfg) {
    if (elements.empty()) throw ValidationError("element list must be nonempty");
    double sum = 0.0;
    for (const auto& g : elements) sum += element_cost(g, cloud, cfg);
    return sum / static_cast<double>(elements.size());
}

OccamResult occam_criterion(const DihedralGroup& small, const DihedralGroup& large, const PointCloud& cloud,
                            const TransportConfig& cfg) {
    if (!small.is_subgroup_of(large) || small.n() == large.n())
        throw ValidationError("D_" + std::to_string(small.n()) + " is not a proper subgroup of D_" +
                              std::to_string(large.n()));
    const CostReport report = group_cost(large, cloud, cfg);

    double inside = 0.0, outside = 0.0;
    int n_inside = 0, n_outside = 0;
    for (const auto& [g, c] : report.per_element) {
        if (small.contains(g)) {
            inside += c;
            ++n_inside;
        } else {
            outside += c;
            ++n_outside;
        }
    }

    OccamResult out;
    out.lhs = inside / n_inside;
    out.rhs = outside / n_outside;
    out.simpler_preferred = out.lhs < out.rhs - cfg.tolerance;
    out.small_mean = out.lhs;
    out.large_mean = report.mean_cost;
    return out;
}

double stability_bound(double max_element_distance, double perturbation) {
    if (!(max_element_distance >= 0.0) || !(perturbation >= 0.0))
        throw ValidationError("stability bound needs M >= 0 and d >= 0");
    return 4.0 * max_element_distance * perturbation + 4.0 * perturbation * perturbation;
}

}  // namespace symdet

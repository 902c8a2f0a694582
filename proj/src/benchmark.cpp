#include "symdet/benchmark.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "symdet/error.hpp"
#include "symdet/orbit_cost.hpp"

namespace symdet {

std::vector<ElementDistance> elementwise_distances(const DihedralGroup& group, const PointCloud& cloud,
                                                   const TransportConfig& cfg) {
    std::vector<ElementDistance> out;
    for (const auto& g : group.elements()) out.push_back({g, std::sqrt(element_cost(g, cloud, cfg))});
    return out;
}

std::vector<CandidateProfile> profile_candidates(const std::vector<int>& candidates, const PointCloud& cloud,
                                                 const TransportConfig& cfg) {
    if (candidates.empty()) throw ValidationError("candidate list is empty");
    std::vector<CandidateProfile> out;
    for (int n : candidates) {
        CandidateProfile p;
        p.n = n;
        p.distances = elementwise_distances(DihedralGroup(n), cloud, cfg);
        for (const auto& e : p.distances) p.max_elementwise = std::max(p.max_elementwise, e.distance);
        out.push_back(std::move(p));
    }
    return out;
}

std::vector<int> Classification::accepted() const {
    std::vector<int> out;
    for (const auto& o : outcomes)
        if (o.accepted) out.push_back(o.candidate_n);
    return out;
}

std::string Classification::label() const {
    switch (kind) {
        case Kind::none: return "none";
        case Kind::ambiguous: return "ambiguous";
        case Kind::unique: return std::to_string(n);
    }
    return "none";
}

Classification threshold_classify(const std::vector<CandidateProfile>& profiles, double upsilon) {
    if (!(upsilon > 0.0)) throw ValidationError("threshold must be > 0");
    Classification c;
    for (const auto& p : profiles) c.outcomes.push_back({p.n, p.max_elementwise, p.max_elementwise < upsilon});

    const auto acc = c.accepted();
    if (acc.empty()) return c;
    int best = 0;
    for (int candidate : acc) {
        const bool covers = std::all_of(acc.begin(), acc.end(), [&](int m) { return candidate % m == 0; });
        if (covers) best = std::max(best, candidate);
    }
    if (best == 0) {
        c.kind = Classification::Kind::ambiguous;
    } else {
        c.kind = Classification::Kind::unique;
        c.n = best;
    }
    return c;
}

Classification threshold_classify(const std::vector<int>& candidates, const PointCloud& cloud, double upsilon,
                                  const TransportConfig& cfg) {
    return threshold_classify(profile_candidates(candidates, cloud, cfg), upsilon);
}

bool SweepReport::has_window_for(int n) const { return window_for(n).has_value(); }

std::optional<RobustWindow> SweepReport::window_for(int n) const {
    for (const auto& w : robust_windows)
        if (w.n == n) return w;
    return std::nullopt;
}

SweepReport threshold_sweep(const std::vector<CandidateProfile>& profiles, const std::vector<double>& grid) {
    if (profiles.empty()) throw ValidationError("candidate list is empty");
    if (grid.empty()) throw ValidationError("threshold grid is empty");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(grid[i] > 0.0) || !std::isfinite(grid[i])) throw ValidationError("threshold grid must be positive");
        if (i > 0 && !(grid[i] > grid[i - 1])) throw ValidationError("threshold grid must be strictly ascending");
    }

    SweepReport report;
    report.grid = grid;
    for (const auto& p : profiles) {
        report.candidates.push_back(p.n);
        report.max_elementwise.push_back(p.max_elementwise);
    }

    // single-acceptance index per grid row, or npos
    constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> single(grid.size(), npos);
    for (std::size_t r = 0; r < grid.size(); ++r) {
        SweepRow row;
        row.upsilon = grid[r];
        row.classification = threshold_classify(profiles, grid[r]);
        std::size_t count = 0;
        for (std::size_t k = 0; k < profiles.size(); ++k) {
            row.accepted.push_back(row.classification.outcomes[k].accepted);
            if (row.accepted.back()) {
                ++count;
                single[r] = k;
            }
        }
        if (count != 1) single[r] = npos;
        report.rows.push_back(std::move(row));
    }

    for (std::size_t r = 0; r < grid.size();) {
        if (single[r] == npos) {
            ++r;
            continue;
        }
        const std::size_t k = single[r];
        std::size_t end = r;
        while (end + 1 < grid.size() && single[end + 1] == k) ++end;

        RobustWindow w;
        w.n = profiles[k].n;
        w.lo = profiles[k].max_elementwise;
        w.hi = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < profiles.size(); ++j)
            if (j != k && profiles[j].max_elementwise >= w.lo) w.hi = std::min(w.hi, profiles[j].max_elementwise);
        w.grid_lo = grid[r];
        w.grid_hi = grid[end];
        report.robust_windows.push_back(w);
        r = end + 1;
    }
    return report;
}

SweepReport threshold_sweep(const std::vector<int>& candidates, const PointCloud& cloud,
                            const std::vector<double>& grid, const TransportConfig& cfg) {
    return threshold_sweep(profile_candidates(candidates, cloud, cfg), grid);
}

std::vector<double> default_grid(const std::vector<CandidateProfile>& profiles, std::size_t points) {
    if (points < 2) throw ValidationError("grid needs at least two points");
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (const auto& p : profiles)
        for (const auto& e : p.distances)
            if (!e.element.is_identity() && e.distance > 0.0) {
                lo = std::min(lo, e.distance);
                hi = std::max(hi, e.distance);
            }
    if (!(hi > 0.0)) throw ValidationError("all element-wise distances vanish; no grid to build");
    const double a = std::log(0.5 * lo);
    const double b = std::log(2.0 * hi);
    std::vector<double> grid(points);
    for (std::size_t i = 0; i < points; ++i)
        grid[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(points - 1));
    return grid;
}

}  // namespace symdet

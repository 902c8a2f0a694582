#pragma once

#include <optional>
#include <string>
#include <vector>

#include "symdet/geometry.hpp"
#include "symdet/group_actions.hpp"
#include "symdet/transport.hpp"

namespace symdet {

// Deterministic threshold baseline: a candidate D_n is accepted at threshold
// upsilon when every element-wise distance d(X, gX), g in D_n, is below upsilon.

struct ElementDistance {
    GroupElement element;
    double distance;  ///< un-squared W2
};

/// d(X, gX) for each element of `group`, in enumeration order.
std::vector<ElementDistance> elementwise_distances(const DihedralGroup& group, const PointCloud& cloud,
                                                   const TransportConfig& cfg = {});

/// Distances of one candidate, computed once and reused across thresholds.
struct CandidateProfile {
    int n = 0;
    std::vector<ElementDistance> distances;
    double max_elementwise = 0.0;
};

std::vector<CandidateProfile> profile_candidates(const std::vector<int>& candidates, const PointCloud& cloud,
                                                 const TransportConfig& cfg = {});

struct ThresholdOutcome {
    int candidate_n = 0;
    double max_elementwise = 0.0;
    bool accepted = false;
};

struct Classification {
    enum class Kind { none, unique, ambiguous };

    Kind kind = Kind::none;
    int n = 0;  ///< valid when kind == unique
    std::vector<ThresholdOutcome> outcomes;

    std::vector<int> accepted() const;
    std::string label() const;  ///< "none", "ambiguous" or the decimal n
};

/// Classification: the largest accepted n that every accepted candidate
/// divides (all accepted groups are its subgroups); `none` when nothing is
/// accepted, `ambiguous` when no such n exists.
Classification threshold_classify(const std::vector<CandidateProfile>& profiles, double upsilon);
Classification threshold_classify(const std::vector<int>& candidates, const PointCloud& cloud, double upsilon,
                                  const TransportConfig& cfg = {});

/// Threshold interval on which exactly one candidate is accepted.
struct RobustWindow {
    double lo = 0.0;  ///< exact crossing: the candidate's max element-wise distance
    double hi = 0.0;  ///< exact crossing: the next-smallest max element-wise distance (inf if none)
    int n = 0;
    double grid_lo = 0.0;  ///< first grid threshold inside the window
    double grid_hi = 0.0;  ///< last grid threshold inside the window
};

struct SweepRow {
    double upsilon = 0.0;
    std::vector<bool> accepted;  ///< parallel to SweepReport::candidates
    Classification classification;
};

struct SweepReport {
    std::vector<int> candidates;
    std::vector<double> max_elementwise;
    std::vector<double> grid;
    std::vector<SweepRow> rows;
    std::vector<RobustWindow> robust_windows;

    bool has_window_for(int n) const;
    std::optional<RobustWindow> window_for(int n) const;
};

/// Classifies every grid threshold. Robust windows are maximal runs of grid
/// points where a single candidate is accepted, reported with their exact
/// crossing endpoints. Throws ValidationError unless the grid is nonempty,
/// ascending and positive.
SweepReport threshold_sweep(const std::vector<CandidateProfile>& profiles, const std::vector<double>& grid);
SweepReport threshold_sweep(const std::vector<int>& candidates, const PointCloud& cloud,
                            const std::vector<double>& grid, const TransportConfig& cfg = {});

/// `points` log-spaced thresholds from 0.5x the smallest positive to 2x the
/// largest non-identity element-wise distance.
std::vector<double> default_grid(const std::vector<CandidateProfile>& profiles, std::size_t points = 200);

}  // namespace symdet

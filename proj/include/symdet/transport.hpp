#pragma once

#include <cstddef>
#include <vector>

#include "symdet/geometry.hpp"

namespace symdet {

struct TransportConfig {
    double p = 2.0;            ///< Wasserstein order, >= 1
    double tolerance = 1e-9;   ///< slack used when comparing costs

    void validate() const;
};

/// Dense row-major square matrix of pairing costs.
class CostMatrix {
public:
    explicit CostMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

    std::size_t size() const noexcept { return n_; }
    double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * n_ + j]; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * n_ + j]; }

private:
    std::size_t n_;
    std::vector<double> data_;
};

struct TransportResult {
    std::vector<std::size_t> assignment;  ///< source i is paired with target assignment[i]
    double total_cost = 0.0;              ///< sum_i |x_i - y_assignment[i]|^p / N
    double distance = 0.0;                ///< total_cost^(1/p)
};

/// Entry (i, j) = |x_i - y_j|^p. Throws SizeMismatchError unless |X| = |Y|.
CostMatrix cost_matrix(const PointCloud& x, const PointCloud& y, double p);

/// Minimum-cost perfect matching on a square matrix (shortest augmenting
/// paths with dual potentials, O(N^3)). Returns row -> column.
std::vector<std::size_t> solve_assignment(const CostMatrix& cost);

/// Mean cost of a given pairing, summed in row order.
double assignment_cost(const CostMatrix& cost, const std::vector<std::size_t>& assignment);

/// Exact p-Wasserstein distance between the uniform empirical measures of two
/// equal-size clouds. Throws SizeMismatchError, or NumericError on non-finite costs.
TransportResult wasserstein(const PointCloud& x, const PointCloud& y, const TransportConfig& cfg = {});

/// Exhaustive search over all N! pairings. Validation oracle; N <= 8.
TransportResult brute_force_wasserstein(const PointCloud& x, const PointCloud& y, const TransportConfig& cfg = {});

inline constexpr std::size_t kBruteForceLimit = 8;

}  // namespace symdet

#include "symdet/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "symdet/error.hpp"

namespace symdet {

void TransportConfig::validate() const {
    if (!(p >= 1.0) || !std::isfinite(p)) throw ValidationError("Wasserstein order p must be >= 1");
    if (!(tolerance > 0.0)) throw ValidationError("transport tolerance must be > 0");
}

namespace {

double pair_cost(Point a, Point b, double p) noexcept {
    const double sq = squared_distance(a, b);
    if (p == 2.0) return sq;
    if (p == 1.0) return std::sqrt(sq);
    return std::pow(std::sqrt(sq), p);
}

void check_sizes(const PointCloud& x, const PointCloud& y) {
    if (x.size() != y.size())
        throw SizeMismatchError("transport requires equal cardinalities, got " + std::to_string(x.size()) + " and " +
                                std::to_string(y.size()));
}

TransportResult finish(const CostMatrix& cost, std::vector<std::size_t> assignment, double p) {
    TransportResult out;
    out.total_cost = std::max(0.0, assignment_cost(cost, assignment));
    out.distance = p == 2.0 ? std::sqrt(out.total_cost) : std::pow(out.total_cost, 1.0 / p);
    out.assignment = std::move(assignment);
    return out;
}

}  // namespace

CostMatrix cost_matrix(const PointCloud& x, const PointCloud& y, double p) {
    check_sizes(x, y);
    const std::size_t n = x.size();
    CostMatrix c(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) c(i, j) = pair_cost(x[i], y[j], p);
    return c;
}

double assignment_cost(const CostMatrix& cost, const std::vector<std::size_t>& assignment) {
    double total = 0.0;
    for (std::size_t i = 0; i < assignment.size(); ++i) total += cost(i, assignment[i]);
    return total / static_cast<double>(cost.size());
}

std::vector<std::size_t> solve_assignment(const CostMatrix& cost) {
    const std::size_t n = cost.size();
    constexpr double inf = std::numeric_limits<double>::infinity();

    // 1-based arrays; column 0 is the virtual source of each augmenting path.
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
    std::vector<std::size_t> match(n + 1, 0), way(n + 1, 0);
    std::vector<char> used(n + 1);

    for (std::size_t row = 1; row <= n; ++row) {
        match[0] = row;
        std::size_t col0 = 0;
        std::fill(minv.begin(), minv.end(), inf);
        std::fill(used.begin(), used.end(), 0);
        do {
            used[col0] = 1;
            const std::size_t i0 = match[col0];
            double delta = inf;
            std::size_t col1 = 0;
            for (std::size_t j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double reduced = cost(i0 - 1, j - 1) - u[i0] - v[j];
                if (reduced < minv[j]) {
                    minv[j] = reduced;
                    way[j] = col0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    col1 = j;
                }
            }
            for (std::size_t j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[match[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            col0 = col1;
        } while (match[col0] != 0);
        do {
            const std::size_t col1 = way[col0];
            match[col0] = match[col1];
            col0 = col1;
        } while (col0 != 0);
    }

    std::vector<std::size_t> assignment(n);
    for (std::size_t j = 1; j <= n; ++j) assignment[match[j] - 1] = j - 1;
    return assignment;
}

TransportResult wasserstein(const PointCloud& x, const PointCloud& y, const TransportConfig& cfg) {
    cfg.validate();
    const CostMatrix cost = cost_matrix(x, y, cfg.p);
    for (std::size_t i = 0; i < cost.size(); ++i)
        for (std::size_t j = 0; j < cost.size(); ++j)
            if (!std::isfinite(cost(i, j))) throw NumericError("non-finite transport cost");
    return finish(cost, solve_assignment(cost), cfg.p);
}

TransportResult brute_force_wasserstein(const PointCloud& x, const PointCloud& y, const TransportConfig& cfg) {
    cfg.validate();
    check_sizes(x, y);
    if (x.size() > kBruteForceLimit)
        throw ValidationError("brute-force transport limited to N <= " + std::to_string(kBruteForceLimit));
    const CostMatrix cost = cost_matrix(x, y, cfg.p);

    std::vector<std::size_t> perm(x.size());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::vector<std::size_t> best = perm;
    double best_cost = assignment_cost(cost, perm);
    while (std::next_permutation(perm.begin(), perm.end())) {
        const double c = assignment_cost(cost, perm);
        if (c < best_cost) {
            best_cost = c;
            best = perm;
        }
    }
    if (!std::isfinite(best_cost)) throw NumericError("non-finite transport cost");
    return finish(cost, std::move(best), cfg.p);
}

}  // namespace symdet

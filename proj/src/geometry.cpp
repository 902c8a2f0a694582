#include "symdet/geometry.hpp"

#include <cmath>
#include <limits>

#include "symdet/error.hpp"

namespace symdet {

double squared_distance(Point a, Point b) noexcept {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return dx * dx + dy * dy;
}

double norm(Point p) noexcept { return std::hypot(p.x, p.y); }

PointCloud::PointCloud(std::vector<Point> points) : points_(std::move(points)) {
    if (points_.empty()) throw ValidationError("point cloud must contain at least one point");
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (!std::isfinite(points_[i].x) || !std::isfinite(points_[i].y))
            throw ValidationError("point " + std::to_string(i) + " has a non-finite coordinate");
    }
}

double PointCloud::radius() const noexcept {
    double r = 0.0;
    for (const auto& p : points_) r = std::max(r, norm(p));
    return r;
}

bool same_multiset(const PointCloud& a, const PointCloud& b, double tol) {
    if (a.size() != b.size()) return false;
    std::vector<bool> used(b.size(), false);
    for (const auto& p : a) {
        std::size_t best = b.size();
        double best_d = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (used[j]) continue;
            const double d = squared_distance(p, b[j]);
            if (d < best_d) {
                best_d = d;
                best = j;
            }
        }
        if (best == b.size() || std::sqrt(best_d) > tol) return false;
        used[best] = true;
    }
    return true;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) noexcept {
    std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace symdet

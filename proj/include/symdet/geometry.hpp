#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace symdet {

using Rng = std::mt19937_64;

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point&, const Point&) = default;
};

double squared_distance(Point a, Point b) noexcept;
double norm(Point p) noexcept;

/// Ordered, nonempty set of finite planar points. Carries the uniform
/// empirical measure implicitly (weight 1/N per point).
class PointCloud {
public:
    /// Throws ValidationError when empty or when any coordinate is non-finite.
    explicit PointCloud(std::vector<Point> points);

    std::size_t size() const noexcept { return points_.size(); }
    const Point& operator[](std::size_t i) const { return points_[i]; }
    std::span<const Point> points() const noexcept { return points_; }

    auto begin() const noexcept { return points_.begin(); }
    auto end() const noexcept { return points_.end(); }

    /// Largest distance of any point from the origin.
    double radius() const noexcept;

    friend bool operator==(const PointCloud&, const PointCloud&) = default;

private:
    std::vector<Point> points_;
};

/// True when `a` and `b` coincide as multisets up to `tol` per point
/// (greedy nearest matching; intended for small test clouds).
bool same_multiset(const PointCloud& a, const PointCloud& b, double tol);

/// Deterministic seed derivation for independent random streams
/// (SplitMix64 finalizer over master seed and stream index).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) noexcept;

}  // namespace symdet

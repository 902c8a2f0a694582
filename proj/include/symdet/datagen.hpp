#pragma once

#include <cstdint>

#include "symdet/geometry.hpp"
#include "symdet/group_actions.hpp"

namespace symdet {

/// D_n-equivariant planar map
///   f(z) = (alpha |z|^2 + beta (z^n + conj(z)^n) / 2 + lambda_map) z + gamma conj(z)^(n-1).
/// Defaults produce an attractor with D_3 symmetry.
struct CGParams {
    double alpha = 1.0;
    double beta = 0.0;
    double gamma = 0.5;
    double lambda_map = -1.804;
    int n = 3;

    void validate() const;
};

struct NoiseSpec {
    double sigma = 0.0;  ///< isotropic Gaussian std per coordinate
    std::uint64_t seed = 0;

    void validate() const;
};

enum class NoiseMode {
    observational,  ///< added to recorded points only
    dynamical,      ///< added to every iterate and fed back into the map
};

struct TrajectoryOptions {
    Point z0{0.1, 0.1};
    long transient = 1000;
    long stride = 1;  ///< record every stride-th iterate after the transient
    double escape_radius = 1e6;
    NoiseMode mode = NoiseMode::observational;
};

/// One application of the map. Throws DivergenceError when |f(z)| exceeds
/// `escape_radius` or is not finite.
Point cg_step(Point z, const CGParams& params, double escape_radius = 1e6);

/// Iterates the map from opts.z0, discards opts.transient iterates and records
/// `count` points, one every opts.stride iterates.
PointCloud cg_trajectory(const CGParams& params, std::size_t count, const NoiseSpec& noise,
                         const TrajectoryOptions& opts = {});

PointCloud add_noise(const PointCloud& cloud, const NoiseSpec& noise);

struct D12Options {
    std::size_t motif_size = 8;
    RadiusRange radii{1.0, 3.0};
    double sigma = 0.05;
};

/// Motif of 8 points in the D_12 fundamental sector, replicated to 192 points,
/// plus Gaussian noise. Motif and noise use independent streams of `seed`.
PointCloud make_d12_dataset(std::uint64_t seed, const D12Options& opts = {});

/// Motif replication for any order n (make_d12_dataset with n = 12).
PointCloud make_motif_dataset(int n, std::uint64_t seed, const D12Options& opts = {});

}  // namespace symdet

#include "symdet/datagen.hpp"

#include <cmath>
#include <complex>
#include <vector>

#include "symdet/error.hpp"

namespace symdet {

using cplx = std::complex<double>;

void CGParams::validate() const {
    if (n < 2) throw ValidationError("map symmetry order n must be >= 2");
    if (!std::isfinite(alpha) || !std::isfinite(beta) || !std::isfinite(gamma) || !std::isfinite(lambda_map))
        throw ValidationError("map parameters must be finite");
}

void NoiseSpec::validate() const {
    if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw ValidationError("noise sigma must be finite and >= 0");
}

namespace {

cplx ipow(cplx z, int e) {
    cplx out{1.0, 0.0};
    for (int i = 0; i < e; ++i) out *= z;
    return out;
}

}  // namespace

Point cg_step(Point p, const CGParams& params, double escape_radius) {
    const cplx z{p.x, p.y};
    const cplx zc = std::conj(z);
    const int n = params.n;
    const cplx zn = ipow(z, n);
    const cplx bracket = params.alpha * std::norm(z) + params.beta * (zn + std::conj(zn)) / 2.0 + params.lambda_map;
    const cplx f = bracket * z + params.gamma * ipow(zc, n - 1);
    if (!std::isfinite(f.real()) || !std::isfinite(f.imag()) || std::abs(f) > escape_radius)
        throw DivergenceError("map iterate escaped radius " + std::to_string(escape_radius));
    return {f.real(), f.imag()};
}

PointCloud cg_trajectory(const CGParams& params, std::size_t count, const NoiseSpec& noise,
                         const TrajectoryOptions& opts) {
    params.validate();
    noise.validate();
    if (count < 1) throw ValidationError("trajectory count must be >= 1");
    if (opts.transient < 0) throw ValidationError("transient must be >= 0");
    if (opts.stride < 1) throw ValidationError("stride must be >= 1");

    Rng rng(noise.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const bool dynamical = opts.mode == NoiseMode::dynamical && noise.sigma > 0.0;

    Point z = opts.z0;
    std::vector<Point> pts;
    pts.reserve(count);
    const long total = opts.transient + static_cast<long>(count) * opts.stride;
    for (long it = 0; it < total; ++it) {
        try {
            z = cg_step(z, params, opts.escape_radius);
        } catch (const DivergenceError&) {
            throw DivergenceError("map iterate escaped radius " + std::to_string(opts.escape_radius), it + 1);
        }
        if (dynamical) {
            z.x += noise.sigma * gauss(rng);
            z.y += noise.sigma * gauss(rng);
        }
        if (it >= opts.transient && (it - opts.transient) % opts.stride == opts.stride - 1) pts.push_back(z);
    }
    PointCloud cloud(std::move(pts));
    if (opts.mode == NoiseMode::observational) return add_noise(cloud, noise);
    return cloud;
}

PointCloud add_noise(const PointCloud& cloud, const NoiseSpec& noise) {
    noise.validate();
    if (noise.sigma == 0.0) return cloud;
    Rng rng(noise.seed);
    std::normal_distribution<double> gauss(0.0, noise.sigma);
    std::vector<Point> pts(cloud.begin(), cloud.end());
    for (auto& p : pts) {
        p.x += gauss(rng);
        p.y += gauss(rng);
    }
    return PointCloud(std::move(pts));
}

PointCloud make_motif_dataset(int n, std::uint64_t seed, const D12Options& opts) {
    Rng motif_rng(derive_seed(seed, 0));
    const PointCloud motif = sample_fundamental_domain(n, opts.motif_size, opts.radii, motif_rng);
    return add_noise(replicate_motif(motif, n), NoiseSpec{opts.sigma, derive_seed(seed, 1)});
}

PointCloud make_d12_dataset(std::uint64_t seed, const D12Options& opts) {
    return make_motif_dataset(12, seed, opts);
}

}  // namespace symdet

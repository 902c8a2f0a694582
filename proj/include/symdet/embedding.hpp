#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "symdet/geometry.hpp"

namespace symdet {

/// Finite 1-D signal of at least 4 samples. `cycle_length` optionally records
/// the samples per period (e.g. 101 for cycle-normalized gait data).
class TimeSeries {
public:
    explicit TimeSeries(std::vector<double> samples, std::optional<std::size_t> cycle_length = std::nullopt);

    std::size_t size() const noexcept { return samples_.size(); }
    std::span<const double> samples() const noexcept { return samples_; }
    double operator[](std::size_t i) const { return samples_[i]; }
    std::optional<std::size_t> cycle_length() const noexcept { return cycle_length_; }

private:
    std::vector<double> samples_;
    std::optional<std::size_t> cycle_length_;
};

inline constexpr std::size_t kMinSeriesLength = 4;
inline constexpr double kDegeneratePhaseRadius = 1e-12;

/// Mean-removed analytic signal A + iH(A), one planar point per sample.
/// Frequency-domain construction: negative bins zeroed, positive bins doubled,
/// DC and Nyquist kept.
std::vector<Point> analytic_signal(const TimeSeries& series);

/// Angle of each point in (-pi, pi]. Throws DegeneratePhaseError within
/// kDegeneratePhaseRadius of the origin.
std::vector<double> instantaneous_phase(std::span<const Point> signal);

/// Unit-circle cloud exp(i phi(t)).
PointCloud phase_embed(const TimeSeries& series);

/// Pointwise mean. Throws SizeMismatchError on differing lengths.
TimeSeries average_cycles(std::span<const TimeSeries> series);

/// Splits a series into consecutive cycles of `cycle_length` samples; a
/// trailing partial cycle is an error.
std::vector<TimeSeries> split_cycles(const TimeSeries& series, std::size_t cycle_length);

}  // namespace symdet

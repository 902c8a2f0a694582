#include "symdet/embedding.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <mutex>
#include <numbers>
#include <numeric>
#include <string>

#include "symdet/error.hpp"

namespace symdet {

namespace {

// FFTW's planner is not reentrant.
std::mutex planner_mutex;

class FftPlan {
public:
    FftPlan(std::vector<std::complex<double>>& buffer, int sign) {
        auto* data = reinterpret_cast<fftw_complex*>(buffer.data());
        std::lock_guard lock(planner_mutex);
        plan_ = fftw_plan_dft_1d(static_cast<int>(buffer.size()), data, data, sign, FFTW_ESTIMATE);
        if (!plan_) throw NumericError("FFT planning failed");
    }
    ~FftPlan() {
        std::lock_guard lock(planner_mutex);
        fftw_destroy_plan(plan_);
    }
    FftPlan(const FftPlan&) = delete;
    FftPlan& operator=(const FftPlan&) = delete;

    void execute() { fftw_execute(plan_); }

private:
    fftw_plan plan_;
};

}  // namespace

TimeSeries::TimeSeries(std::vector<double> samples, std::optional<std::size_t> cycle_length)
    : samples_(std::move(samples)), cycle_length_(cycle_length) {
    if (samples_.size() < kMinSeriesLength)
        throw ValidationError("time series needs at least " + std::to_string(kMinSeriesLength) + " samples");
    for (std::size_t i = 0; i < samples_.size(); ++i)
        if (!std::isfinite(samples_[i])) throw ValidationError("non-finite sample at index " + std::to_string(i));
    if (cycle_length_ && *cycle_length_ == 0) throw ValidationError("cycle length must be >= 1");
}

std::vector<Point> analytic_signal(const TimeSeries& series) {
    const std::size_t n = series.size();
    const auto s = series.samples();
    const double mean = std::accumulate(s.begin(), s.end(), 0.0) / static_cast<double>(n);

    std::vector<std::complex<double>> buf(n);
    for (std::size_t i = 0; i < n; ++i) buf[i] = {s[i] - mean, 0.0};

    FftPlan forward(buf, FFTW_FORWARD);
    FftPlan backward(buf, FFTW_BACKWARD);
    forward.execute();
    const std::size_t half = n / 2;
    for (std::size_t k = 1; k < n; ++k) {
        if (k < half || (k == half && n % 2 == 1))
            buf[k] *= 2.0;
        else if (k > half)
            buf[k] = 0.0;
    }
    backward.execute();

    std::vector<Point> out(n);
    const double scale = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = {buf[i].real() * scale, buf[i].imag() * scale};
    return out;
}

std::vector<double> instantaneous_phase(std::span<const Point> signal) {
    std::vector<double> phase(signal.size());
    for (std::size_t i = 0; i < signal.size(); ++i) {
        if (norm(signal[i]) < kDegeneratePhaseRadius) throw DegeneratePhaseError(i);
        double a = std::atan2(signal[i].y, signal[i].x);
        if (a <= -std::numbers::pi) a = std::numbers::pi;
        phase[i] = a;
    }
    return phase;
}

PointCloud phase_embed(const TimeSeries& series) {
    const auto phase = instantaneous_phase(analytic_signal(series));
    std::vector<Point> pts;
    pts.reserve(phase.size());
    for (double a : phase) pts.push_back({std::cos(a), std::sin(a)});
    return PointCloud(std::move(pts));
}

TimeSeries average_cycles(std::span<const TimeSeries> series) {
    if (series.empty()) throw ValidationError("nothing to average");
    const std::size_t len = series.front().size();
    std::vector<double> acc(len, 0.0);
    for (const auto& ts : series) {
        if (ts.size() != len)
            throw SizeMismatchError("cannot average series of lengths " + std::to_string(len) + " and " +
                                    std::to_string(ts.size()));
        for (std::size_t i = 0; i < len; ++i) acc[i] += ts[i];
    }
    for (double& v : acc) v /= static_cast<double>(series.size());
    return TimeSeries(std::move(acc), series.front().cycle_length());
}

std::vector<TimeSeries> split_cycles(const TimeSeries& series, std::size_t cycle_length) {
    if (cycle_length < kMinSeriesLength) throw ValidationError("cycle length too short");
    if (series.size() % cycle_length != 0)
        throw SizeMismatchError("series length " + std::to_string(series.size()) +
                                " is not a multiple of the cycle length " + std::to_string(cycle_length));
    std::vector<TimeSeries> out;
    const auto s = series.samples();
    for (std::size_t start = 0; start < s.size(); start += cycle_length)
        out.emplace_back(std::vector<double>(s.begin() + start, s.begin() + start + cycle_length), cycle_length);
    return out;
}

}  // namespace symdet

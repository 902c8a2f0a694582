#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "symdet/geometry.hpp"
#include "symdet/transport.hpp"

namespace symdet {

/// Sampler settings for the Gibbs posterior P(n | X) ~ exp(-lambda C(D_n, X))
/// over the finite lattice n_min..n_max with a uniform prior.
struct InferenceConfig {
    double lambda = 250.0;
    int n_min = 2;
    int n_max = 30;
    long iterations = 20000;
    std::optional<long> burn_in;  ///< defaults to 10% of iterations
    double local_move_prob = 0.95;
    std::uint64_t seed = 0;

    void validate() const;
    long effective_burn_in() const noexcept { return burn_in.value_or(iterations / 10); }
    int lattice_size() const noexcept { return n_max - n_min + 1; }
    bool in_lattice(int n) const noexcept { return n >= n_min && n <= n_max; }
};

/// Source of the orbit cost C(D_n, X) for each lattice point.
class CostModel {
public:
    virtual ~CostModel() = default;
    virtual double cost(int n) = 0;
};

/// Orbit costs of a point cloud, computed on demand. With caching enabled each
/// n is evaluated at most once; disabling it recomputes on every call, which
/// yields the same values since the cost is deterministic.
class CloudCostModel final : public CostModel {
public:
    CloudCostModel(PointCloud cloud, TransportConfig transport = {}, bool caching = true);

    double cost(int n) override;

    const std::map<int, double>& cache() const noexcept { return cache_; }
    long evaluations() const noexcept { return evaluations_; }
    const PointCloud& cloud() const noexcept { return cloud_; }

private:
    PointCloud cloud_;
    TransportConfig transport_;
    bool caching_;
    std::map<int, double> cache_;
    long evaluations_ = 0;
};

/// Fixed table of costs, e.g. precomputed or synthetic.
class TableCostModel final : public CostModel {
public:
    explicit TableCostModel(std::map<int, double> costs);
    double cost(int n) override;

private:
    std::map<int, double> costs_;
};

struct MoveCounters {
    long attempted = 0;
    long accepted = 0;

    long rejected() const noexcept { return attempted - accepted; }
    double rate() const noexcept { return attempted ? static_cast<double>(accepted) / attempted : 0.0; }
};

struct ChainState {
    int n = 0;
    double cost = 0.0;
    MoveCounters local;
    MoveCounters jump;
};

struct ChainRecord {
    double beta = 1.0;
    std::vector<int> trace;  ///< post-burn-in states
    MoveCounters local;
    MoveCounters jump;
    std::map<int, double> cost_cache;
};

struct TemperatureLadder {
    std::vector<double> betas{1.0};  ///< strictly decreasing, betas[0] = 1
    long swap_interval = 10;

    /// betas[k] = ratio^k for k < chains.
    static TemperatureLadder geometric(int chains, double ratio = 0.5, long swap_interval = 10);
    void validate() const;
};

struct PosteriorSummary {
    std::map<int, double> probs;  ///< every lattice point, normalized
    int map_estimate = 0;
    double map_prob = 0.0;
    double local_acceptance = 0.0;
    double jump_acceptance = 0.0;
    double overall_acceptance = 0.0;
    long effective_length = 0;            ///< number of post-burn-in samples
    std::optional<double> swap_acceptance;  ///< tempered runs only
};

/// Metropolis acceptance probability min(1, exp(-beta lambda (c_new - c_old))).
double acceptance_probability(double cost_old, double cost_new, double lambda, double beta) noexcept;

/// Replica-exchange acceptance min(1, exp((beta_k - beta_l) lambda (c_k - c_l))).
double swap_probability(double beta_k, double beta_l, double cost_k, double cost_l, double lambda) noexcept;

/// -lambda C(D_n, X); the uniform prior is dropped. Throws ValidationError off-lattice.
double log_unnormalized_posterior(int n, CostModel& costs, const InferenceConfig& cfg);
double log_unnormalized_posterior(int n, const PointCloud& cloud, const InferenceConfig& cfg);

/// Normalized posterior by enumeration of the whole lattice (at most 64 points).
PosteriorSummary exact_posterior(CostModel& costs, const InferenceConfig& cfg);
PosteriorSummary exact_posterior(const PointCloud& cloud, const InferenceConfig& cfg);

inline constexpr int kMaxEnumeratedCandidates = 64;

/// One compound-proposal Metropolis step at inverse temperature `beta`.
/// With probability local_move_prob proposes n +/- 1 (off-lattice proposals
/// are rejected in place), otherwise a uniform jump to another lattice point.
ChainState mh_step(const ChainState& state, CostModel& costs, const InferenceConfig& cfg, double beta, Rng& rng);

struct ChainResult {
    ChainRecord record;
    PosteriorSummary summary;
};

struct TemperedResult {
    std::vector<ChainRecord> chains;  ///< chains[0] is the cold chain
    PosteriorSummary summary;
    MoveCounters swaps;
};

/// Random stream of chain `k` under master seed `seed`.
Rng chain_rng(std::uint64_t seed, std::size_t k);

ChainResult run_chain(CostModel& costs, const InferenceConfig& cfg);
ChainResult run_chain(const PointCloud& cloud, const InferenceConfig& cfg);

/// Metropolis-coupled chains on `ladder`; every swap_interval iterations one
/// uniformly chosen adjacent pair attempts a state swap. Summarizes the cold chain.
TemperedResult run_mc3(CostModel& costs, const InferenceConfig& cfg, const TemperatureLadder& ladder);
TemperedResult run_mc3(const PointCloud& cloud, const InferenceConfig& cfg, const TemperatureLadder& ladder);

/// Visit frequencies of the post-burn-in trace; MAP ties go to the smaller n.
PosteriorSummary summarize(const ChainRecord& record, const InferenceConfig& cfg);

/// Half the L1 distance between two distributions on the same support.
double total_variation(const std::map<int, double>& a, const std::map<int, double>& b);

}  // namespace symdet

#include "symdet/inference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "symdet/error.hpp"
#include "symdet/group_actions.hpp"
#include "symdet/orbit_cost.hpp"

namespace symdet {

void InferenceConfig::validate() const {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw ValidationError("lambda must be a finite positive number");
    if (n_min < 2) throw ValidationError("n_min must be >= 2");
    if (n_max < n_min) throw ValidationError("n_max must be >= n_min");
    if (iterations < 1) throw ValidationError("iterations must be >= 1");
    if (effective_burn_in() < 0 || effective_burn_in() >= iterations)
        throw ValidationError("burn-in must satisfy 0 <= burn_in < iterations");
    if (!(local_move_prob >= 0.0 && local_move_prob <= 1.0))
        throw ValidationError("local move probability must lie in [0, 1]");
}

CloudCostModel::CloudCostModel(PointCloud cloud, TransportConfig transport, bool caching)
    : cloud_(std::move(cloud)), transport_(transport), caching_(caching) {
    transport_.validate();
}

double CloudCostModel::cost(int n) {
    if (caching_) {
        if (auto it = cache_.find(n); it != cache_.end()) return it->second;
    }
    ++evaluations_;
    const double c = group_cost(DihedralGroup(n), cloud_, transport_).mean_cost;
    cache_[n] = c;
    return c;
}

TableCostModel::TableCostModel(std::map<int, double> costs) : costs_(std::move(costs)) {
    for (const auto& [n, c] : costs_)
        if (!std::isfinite(c) || c < 0.0) throw ValidationError("cost for n=" + std::to_string(n) + " is invalid");
}

double TableCostModel::cost(int n) {
    auto it = costs_.find(n);
    if (it == costs_.end()) throw ValidationError("no cost tabulated for n=" + std::to_string(n));
    return it->second;
}

TemperatureLadder TemperatureLadder::geometric(int chains, double ratio, long swap_interval) {
    if (chains < 1) throw ValidationError("ladder needs at least one chain");
    if (!(ratio > 0.0 && ratio < 1.0)) throw ValidationError("ladder ratio must lie in (0, 1)");
    TemperatureLadder ladder;
    ladder.betas.clear();
    for (int k = 0; k < chains; ++k) ladder.betas.push_back(std::pow(ratio, k));
    ladder.swap_interval = swap_interval;
    ladder.validate();
    return ladder;
}

void TemperatureLadder::validate() const {
    if (betas.empty() || betas.front() != 1.0) throw ValidationError("ladder must start with the cold chain beta = 1");
    for (std::size_t k = 1; k < betas.size(); ++k)
        if (!(betas[k] > 0.0 && betas[k] < betas[k - 1]))
            throw ValidationError("ladder betas must be positive and strictly decreasing");
    if (swap_interval < 1) throw ValidationError("swap interval must be >= 1");
}

double acceptance_probability(double cost_old, double cost_new, double lambda, double beta) noexcept {
    const double log_ratio = -beta * lambda * (cost_new - cost_old);
    return log_ratio >= 0.0 ? 1.0 : std::exp(log_ratio);
}

double swap_probability(double beta_k, double beta_l, double cost_k, double cost_l, double lambda) noexcept {
    const double log_ratio = (beta_k - beta_l) * lambda * (cost_k - cost_l);
    return log_ratio >= 0.0 ? 1.0 : std::exp(log_ratio);
}

double log_unnormalized_posterior(int n, CostModel& costs, const InferenceConfig& cfg) {
    if (!cfg.in_lattice(n))
        throw ValidationError("n=" + std::to_string(n) + " outside lattice [" + std::to_string(cfg.n_min) + ", " +
                              std::to_string(cfg.n_max) + "]");
    return -cfg.lambda * costs.cost(n);
}

double log_unnormalized_posterior(int n, const PointCloud& cloud, const InferenceConfig& cfg) {
    CloudCostModel costs(cloud);
    return log_unnormalized_posterior(n, costs, cfg);
}

namespace {

int map_of(const std::map<int, double>& probs, double& best) {
    int arg = probs.begin()->first;
    best = -1.0;
    for (const auto& [n, p] : probs) {
        if (p > best) {  // ascending keys: strict > keeps the smaller n on ties
            best = p;
            arg = n;
        }
    }
    return arg;
}

}  // namespace

PosteriorSummary exact_posterior(CostModel& costs, const InferenceConfig& cfg) {
    cfg.validate();
    if (cfg.lattice_size() > kMaxEnumeratedCandidates)
        throw ValidationError("exact enumeration limited to " + std::to_string(kMaxEnumeratedCandidates) +
                              " candidates");
    std::map<int, double> logp;
    double top = -std::numeric_limits<double>::infinity();
    for (int n = cfg.n_min; n <= cfg.n_max; ++n) {
        logp[n] = log_unnormalized_posterior(n, costs, cfg);
        top = std::max(top, logp[n]);
    }
    double z = 0.0;
    for (auto& [n, lp] : logp) {
        lp = std::exp(lp - top);
        z += lp;
    }
    PosteriorSummary s;
    for (const auto& [n, w] : logp) s.probs[n] = w / z;
    s.map_estimate = map_of(s.probs, s.map_prob);
    return s;
}

PosteriorSummary exact_posterior(const PointCloud& cloud, const InferenceConfig& cfg) {
    CloudCostModel costs(cloud);
    return exact_posterior(costs, cfg);
}

ChainState mh_step(const ChainState& state, CostModel& costs, const InferenceConfig& cfg, double beta, Rng& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    ChainState next = state;

    const bool local = unit(rng) < cfg.local_move_prob;
    MoveCounters& counter = local ? next.local : next.jump;
    ++counter.attempted;

    int proposal;
    if (local) {
        proposal = state.n + (std::bernoulli_distribution(0.5)(rng) ? 1 : -1);
    } else {
        if (cfg.lattice_size() < 2) return next;
        // uniform over the lattice minus the current state
        proposal = std::uniform_int_distribution<int>(cfg.n_min, cfg.n_max - 1)(rng);
        if (proposal >= state.n) ++proposal;
    }
    if (!cfg.in_lattice(proposal)) return next;

    const double proposal_cost = costs.cost(proposal);
    const double u = unit(rng);
    if (u < acceptance_probability(state.cost, proposal_cost, cfg.lambda, beta)) {
        next.n = proposal;
        next.cost = proposal_cost;
        ++counter.accepted;
    }
    return next;
}

Rng chain_rng(std::uint64_t seed, std::size_t k) { return Rng(derive_seed(seed, k)); }

namespace {

ChainState initial_state(CostModel& costs, const InferenceConfig& cfg, Rng& rng) {
    ChainState s;
    s.n = std::uniform_int_distribution<int>(cfg.n_min, cfg.n_max)(rng);
    s.cost = costs.cost(s.n);
    return s;
}

void finish_record(ChainRecord& rec, const ChainState& s, CostModel& costs) {
    rec.local = s.local;
    rec.jump = s.jump;
    if (auto* cloud = dynamic_cast<CloudCostModel*>(&costs)) {
        rec.cost_cache = cloud->cache();
    } else {
        for (int n : rec.trace) rec.cost_cache.try_emplace(n, costs.cost(n));
    }
}

}  // namespace

ChainResult run_chain(CostModel& costs, const InferenceConfig& cfg) {
    cfg.validate();
    Rng rng = chain_rng(cfg.seed, 0);
    ChainState state = initial_state(costs, cfg, rng);

    ChainResult out;
    const long burn = cfg.effective_burn_in();
    out.record.trace.reserve(static_cast<std::size_t>(cfg.iterations - burn));
    for (long it = 0; it < cfg.iterations; ++it) {
        state = mh_step(state, costs, cfg, 1.0, rng);
        if (it >= burn) out.record.trace.push_back(state.n);
    }
    finish_record(out.record, state, costs);
    out.summary = summarize(out.record, cfg);
    return out;
}

ChainResult run_chain(const PointCloud& cloud, const InferenceConfig& cfg) {
    CloudCostModel costs(cloud);
    return run_chain(costs, cfg);
}

TemperedResult run_mc3(CostModel& costs, const InferenceConfig& cfg, const TemperatureLadder& ladder) {
    cfg.validate();
    ladder.validate();
    const std::size_t k_chains = ladder.betas.size();

    std::vector<Rng> rngs;
    std::vector<ChainState> states;
    for (std::size_t k = 0; k < k_chains; ++k) {
        rngs.push_back(chain_rng(cfg.seed, k));
        states.push_back(initial_state(costs, cfg, rngs.back()));
    }
    Rng swap_rng = chain_rng(cfg.seed, k_chains);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    TemperedResult out;
    out.chains.resize(k_chains);
    const long burn = cfg.effective_burn_in();
    for (std::size_t k = 0; k < k_chains; ++k) out.chains[k].beta = ladder.betas[k];

    for (long it = 0; it < cfg.iterations; ++it) {
        for (std::size_t k = 0; k < k_chains; ++k)
            states[k] = mh_step(states[k], costs, cfg, ladder.betas[k], rngs[k]);

        if (k_chains > 1 && (it + 1) % ladder.swap_interval == 0) {
            const std::size_t k = std::uniform_int_distribution<std::size_t>(0, k_chains - 2)(swap_rng);
            ++out.swaps.attempted;
            const double p = swap_probability(ladder.betas[k], ladder.betas[k + 1], states[k].cost,
                                              states[k + 1].cost, cfg.lambda);
            if (unit(swap_rng) < p) {
                std::swap(states[k].n, states[k + 1].n);
                std::swap(states[k].cost, states[k + 1].cost);
                ++out.swaps.accepted;
            }
        }
        if (it >= burn)
            for (std::size_t k = 0; k < k_chains; ++k) out.chains[k].trace.push_back(states[k].n);
    }
    for (std::size_t k = 0; k < k_chains; ++k) finish_record(out.chains[k], states[k], costs);

    out.summary = summarize(out.chains.front(), cfg);
    if (k_chains > 1) out.summary.swap_acceptance = out.swaps.rate();
    return out;
}

TemperedResult run_mc3(const PointCloud& cloud, const InferenceConfig& cfg, const TemperatureLadder& ladder) {
    CloudCostModel costs(cloud);
    return run_mc3(costs, cfg, ladder);
}

PosteriorSummary summarize(const ChainRecord& record, const InferenceConfig& cfg) {
    if (record.trace.empty()) throw ValidationError("cannot summarize an empty trace");
    PosteriorSummary s;
    for (int n = cfg.n_min; n <= cfg.n_max; ++n) s.probs[n] = 0.0;
    for (int n : record.trace) {
        if (!cfg.in_lattice(n)) throw ValidationError("trace contains off-lattice state " + std::to_string(n));
        s.probs[n] += 1.0;
    }
    const double total = static_cast<double>(record.trace.size());
    for (auto& [n, p] : s.probs) p /= total;
    s.map_estimate = map_of(s.probs, s.map_prob);
    s.local_acceptance = record.local.rate();
    s.jump_acceptance = record.jump.rate();
    const long attempts = record.local.attempted + record.jump.attempted;
    s.overall_acceptance =
        attempts ? static_cast<double>(record.local.accepted + record.jump.accepted) / attempts : 0.0;
    s.effective_length = static_cast<long>(record.trace.size());
    return s;
}

double total_variation(const std::map<int, double>& a, const std::map<int, double>& b) {
    double sum = 0.0;
    for (const auto& [n, p] : a) {
        auto it = b.find(n);
        sum += std::abs(p - (it == b.end() ? 0.0 : it->second));
    }
    for (const auto& [n, q] : b)
        if (!a.count(n)) sum += std::abs(q);
    return 0.5 * sum;
}

}  // namespace symdet

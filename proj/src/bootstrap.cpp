#include "evstudy/bootstrap.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <thread>

#include "evstudy/rng.hpp"

namespace evstudy {

namespace {

double run_scenario(std::span<const double> pool, int n_days, std::uint64_t seed,
                    std::uint64_t index, ModelKind mode) {
    SplitMix64 rng(substream_seed(seed, index));
    const std::uint64_t pool_size = pool.size();
    if (mode == ModelKind::Additive) {
        double sum = 0.0;
        for (int d = 0; d < n_days; ++d) sum += pool[rng.next_below(pool_size)];
        return sum;
    }
    double gross = 1.0;
    for (int d = 0; d < n_days; ++d) gross *= 1.0 + pool[rng.next_below(pool_size)];
    return gross - 1.0;
}

}  // namespace

std::uint64_t pool_fingerprint(std::span<const double> pool) {
    std::uint64_t hash = 0xCBF29CE484222325ULL;
    for (double v : pool) {
        std::uint64_t bits = std::bit_cast<std::uint64_t>(v);
        for (int byte = 0; byte < 8; ++byte) {
            hash ^= (bits >> (8 * byte)) & 0xFF;
            hash *= 0x100000001B3ULL;
        }
    }
    return hash;
}

EmpiricalDistribution generate(std::span<const double> pool, int n_days,
                               const ScenarioConfig& config, unsigned workers) {
    if (pool.size() < 2)
        throw std::invalid_argument("resampling pool needs at least 2 abnormal returns, has " +
                                    std::to_string(pool.size()));
    if (n_days < 1)
        throw std::invalid_argument("scenario length must be at least 1 day");
    if (config.scenario_count < 1)
        throw std::invalid_argument("scenario count must be at least 1");
    if (config.combine_mode == ModelKind::Multiplicative) {
        for (double a : pool)
            if (a <= -1.0)
                throw std::runtime_error(
                    "pool abnormal return <= -1 outside multiplicative domain");
    }

    EmpiricalDistribution dist;
    dist.n_days = n_days;
    dist.combine_mode = config.combine_mode;
    dist.provenance = {config.seed, config.scenario_count, pool_fingerprint(pool)};
    dist.values.resize(config.scenario_count);

    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(
        std::min<std::uint64_t>(workers, config.scenario_count));

    auto fill_range = [&](std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t i = begin; i < end; ++i)
            dist.values[i] = run_scenario(pool, n_days, config.seed, i, config.combine_mode);
    };

    if (workers <= 1) {
        fill_range(0, config.scenario_count);
    } else {
        // disjoint slot ranges; scenario values never depend on the partition
        std::vector<std::thread> threads;
        threads.reserve(workers);
        const std::uint64_t chunk = (config.scenario_count + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            const std::uint64_t begin = static_cast<std::uint64_t>(w) * chunk;
            const std::uint64_t end = std::min(begin + chunk, config.scenario_count);
            if (begin >= end) break;
            threads.emplace_back(fill_range, begin, end);
        }
        for (auto& t : threads) t.join();
    }

    std::sort(dist.values.begin(), dist.values.end());
    return dist;
}

double percentile_of(const EmpiricalDistribution& dist, double observed) {
    if (dist.values.empty())
        throw std::invalid_argument("cannot query an empty distribution");
    const auto first = std::lower_bound(dist.values.begin(), dist.values.end(), observed);
    const auto past = std::upper_bound(first, dist.values.end(), observed);
    const double below = static_cast<double>(first - dist.values.begin());
    const double equal = static_cast<double>(past - first);
    return (below + 0.5 * equal) / static_cast<double>(dist.values.size());
}

}  // namespace evstudy

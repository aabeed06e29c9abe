#include "seqrac/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <thread>

#include "seqrac/errors.hpp"
#include "seqrac/rng.hpp"

namespace seqrac {

namespace {

struct BlockTally {
    std::vector<std::int64_t> successes;
    std::vector<std::int64_t> asked_first;
    std::vector<Vec3> residual_sum;

    explicit BlockTally(std::size_t receivers)
        : successes(receivers, 0), asked_first(receivers, 0), residual_sum(receivers, Vec3::Zero()) {}
};

// expected[k][x] is the Bloch vector after receivers 1..k+1 averaged over
// their outcomes and inputs, for Alice's input x.
std::vector<std::array<Vec3, 4>> expected_posts(const SimulationConfig& config) {
    std::vector<std::array<Vec3, 4>> out(config.steps.size());
    for (std::size_t x = 0; x < 4; ++x) {
        DensityOp rho = config.prep.states()[x];
        for (std::size_t k = 0; k < config.steps.size(); ++k) {
            rho = nonselective_step(rho, config.steps[k]);
            out[k][x] = rho.bloch_vector();
        }
    }
    return out;
}

Sign sample_sign(const SelectiveOutcome& o, double u) {
    Sign s = u < o.prob_plus ? Sign::plus : Sign::minus;
    // A branch below the zero-probability floor has no post state; the draw
    // is moved to the other branch.
    if (o.probability(s) < kZeroBranchProbability) {
        s = s == Sign::plus ? Sign::minus : Sign::plus;
    }
    return s;
}

void run_block(const SimulationConfig& config, const std::vector<std::array<Vec3, 4>>& expected,
               std::int64_t begin, std::int64_t end, BlockTally& tally) {
    const std::size_t n = config.steps.size();
    for (std::int64_t shot = begin; shot < end; ++shot) {
        CounterRng rng(config.seed, static_cast<std::uint64_t>(shot));
        const int x1 = rng.bit() ? 1 : 0;
        const int x2 = rng.bit() ? 1 : 0;
        const std::size_t x = static_cast<std::size_t>(2 * x1 + x2);
        DensityOp rho = config.prep.states()[x];
        for (std::size_t k = 0; k < n; ++k) {
            const bool first = !rng.bit();
            const auto& step = config.steps[k];
            const SelectiveOutcome o =
                selective_outcome(rho, first ? step.first_measurement() : step.second_measurement());
            const Sign s = sample_sign(o, rng.uniform());
            const int target = first ? x1 : x2;
            if (outcome_to_guess(s) == target) {
                ++tally.successes[k];
            }
            if (first) {
                ++tally.asked_first[k];
            }
            rho = o.post(s);
            tally.residual_sum[k] += rho.bloch_vector() - expected[k][x];
        }
    }
}

}  // namespace

int outcome_to_guess(Sign s) { return s == Sign::plus ? 0 : 1; }

unsigned default_thread_count() {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("SEQRAC_THREADS")) {
        char* tail = nullptr;
        const long cap = std::strtol(env, &tail, 10);
        if (tail != env && cap >= 1) {
            hw = std::min(hw, static_cast<unsigned>(cap));
        }
    }
    return hw;
}

SimulationResult run(const SimulationConfig& config, unsigned threads) {
    if (config.steps.empty()) {
        throw DomainError("simulation: at least one receiver is required");
    }
    if (config.shots < 1) {
        throw DomainError("simulation: shots must be positive");
    }
    const std::size_t n = config.steps.size();
    const auto expected = expected_posts(config);

    const std::int64_t blocks = (config.shots + kShotsPerBlock - 1) / kShotsPerBlock;
    std::vector<BlockTally> tallies(static_cast<std::size_t>(blocks), BlockTally(n));
    if (threads == 0) {
        threads = default_thread_count();
    }
    threads = static_cast<unsigned>(std::min<std::int64_t>(threads, blocks));

    auto worker = [&](unsigned id) {
        for (std::int64_t b = id; b < blocks; b += threads) {
            const std::int64_t begin = b * kShotsPerBlock;
            const std::int64_t end = std::min(config.shots, begin + kShotsPerBlock);
            run_block(config, expected, begin, end, tallies[static_cast<std::size_t>(b)]);
        }
    };
    if (threads <= 1) {
        worker(0);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back(worker, t);
        }
    }

    SimulationResult result;
    result.seed = config.seed;
    result.rng_algorithm = std::string(kRngAlgorithm);
    result.receivers.resize(n);
    std::vector<Vec3> residual(n, Vec3::Zero());
    for (const auto& t : tallies) {
        for (std::size_t k = 0; k < n; ++k) {
            result.receivers[k].successes += t.successes[k];
            result.receivers[k].asked_first += t.asked_first[k];
            residual[k] += t.residual_sum[k];
        }
    }
    for (std::size_t k = 0; k < n; ++k) {
        auto& r = result.receivers[k];
        r.shots_counted = config.shots;
        r.asked_second = config.shots - r.asked_first;
        r.empirical_success = static_cast<double>(r.successes) / static_cast<double>(config.shots);
        r.standard_error =
            std::sqrt(r.empirical_success * (1.0 - r.empirical_success) / static_cast<double>(config.shots));
        r.post_state_residual = residual[k] / static_cast<double>(config.shots);
    }
    return result;
}

}  // namespace seqrac

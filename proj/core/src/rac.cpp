#include "seqrac/rac.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/format.h>

#include "seqrac/errors.hpp"

namespace seqrac {

PreparationFamily square_preparations(double omega, double r) {
    if (!(omega > 0.0 && omega < std::numbers::pi / 2)) {
        throw DomainError(fmt::format("square preparations: omega {} outside (0, pi/2)", omega));
    }
    if (!(r > 0.0 && r <= 1.0)) {
        throw DomainError(fmt::format("square preparations: r {} outside (0, 1]", r));
    }
    const double c = std::cos(omega);
    const double s = r * std::sin(omega);
    std::array<DensityOp, 4> states;
    for (int x1 = 0; x1 < 2; ++x1) {
        for (int x2 = 0; x2 < 2; ++x2) {
            const double s1 = x1 == 0 ? 1.0 : -1.0;
            const double s2 = x2 == 0 ? 1.0 : -1.0;
            states[static_cast<std::size_t>(2 * x1 + x2)] = DensityOp::from_bloch(Vec3(s1 * c, 0.0, s2 * s));
        }
    }
    return PreparationFamily(states);
}

std::pair<DensityOp, DensityOp> marginals(const PreparationFamily& prep, TargetBit y) {
    auto mix = [](const DensityOp& a, const DensityOp& b) {
        return DensityOp::from_bloch(0.5 * (a.bloch_vector() + b.bloch_vector()));
    };
    if (y == TargetBit::first) {
        return {mix(prep.at(0, 0), prep.at(0, 1)), mix(prep.at(1, 0), prep.at(1, 1))};
    }
    return {mix(prep.at(0, 0), prep.at(1, 0)), mix(prep.at(0, 1), prep.at(1, 1))};
}

DistinguishabilityPair delta_pair(const PreparationFamily& prep) {
    const auto [a0, a1] = marginals(prep, TargetBit::first);
    const auto [b0, b1] = marginals(prep, TargetBit::second);
    return {0.5 * trace_norm(a0.op() - a1.op()), 0.5 * trace_norm(b0.op() - b1.op())};
}

double avg_success(const PreparationFamily& prep, const UnsharpBinaryMeasurement& m1,
                   const UnsharpBinaryMeasurement& m2) {
    double total = 0.0;
    for (int x1 = 0; x1 < 2; ++x1) {
        for (int x2 = 0; x2 < 2; ++x2) {
            const HermitianOp rho = prep.at(x1, x2).op();
            total += trace_of_product(rho, m1.effect(x1 == 0 ? Sign::plus : Sign::minus));
            total += trace_of_product(rho, m2.effect(x2 == 0 ? Sign::plus : Sign::minus));
        }
    }
    return total / 8.0;
}

double success_bound(const DistinguishabilityPair& dp, double lambda1, double lambda2) {
    return 0.5 + 0.25 * (lambda1 * dp.delta1 + lambda2 * dp.delta2);
}

bool advantage_predicate(const DistinguishabilityPair& dp, double lambda1, double lambda2) {
    return lambda1 * dp.delta1 + lambda2 * dp.delta2 > 1.0;
}

ThresholdReport thresholds_or_sentinel(const DistinguishabilityPair& dp) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    const double sum = dp.delta1 + dp.delta2;
    ThresholdReport report{dp, inf, inf, sum > 1.0};
    if (sum >= kThresholdDenominatorFloor) {
        report.lambda_symmetric_critical = 1.0 / sum;
    }
    if (dp.delta2 >= kThresholdDenominatorFloor) {
        report.lambda_asymmetric_critical = (1.0 - dp.delta1) / dp.delta2;
    }
    return report;
}

ThresholdReport thresholds(const DistinguishabilityPair& dp) {
    const ThresholdReport report = thresholds_or_sentinel(dp);
    if (std::isinf(report.lambda_symmetric_critical) || std::isinf(report.lambda_asymmetric_critical)) {
        throw DegenerateThreshold(
            fmt::format("thresholds: degenerate denominator at ({:.17g}, {:.17g})", dp.delta1, dp.delta2));
    }
    return report;
}

Vec3 random_bloch_vector(CounterRng& rng, SamplingLaw law) {
    if (law == SamplingLaw::sphere) {
        const double z = 2.0 * rng.uniform() - 1.0;
        const double phi = 2.0 * std::numbers::pi * rng.uniform();
        const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
        return {rho * std::cos(phi), rho * std::sin(phi), z};
    }
    for (;;) {
        const Vec3 v(2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0);
        if (v.squaredNorm() <= 1.0) {
            return v;
        }
    }
}

PreparationFamily random_family(CounterRng& rng, SamplingLaw law) {
    std::array<DensityOp, 4> states;
    for (auto& s : states) {
        s = DensityOp::from_bloch(random_bloch_vector(rng, law));
    }
    return PreparationFamily(states);
}

double max_squared_distinguishability(std::span<const PreparationFamily> families) {
    double best = 0.0;
    for (const auto& f : families) {
        best = std::max(best, delta_pair(f).squared_sum());
    }
    return best;
}

double theorem1_sampler(std::int64_t count, std::uint64_t seed, SamplingLaw law) {
    if (count < 1) {
        throw DomainError("theorem1 sampler: count must be positive");
    }
    double best = 0.0;
    for (std::int64_t i = 0; i < count; ++i) {
        CounterRng rng(seed, static_cast<std::uint64_t>(i));
        best = std::max(best, delta_pair(random_family(rng, law)).squared_sum());
    }
    return best;
}

}  // namespace seqrac

#pragma once

// Single-round 2 -> 1 random access code: Alice's four preparations, the
// marginal ensembles Bob has to discriminate, and the success bounds.

#include <array>
#include <cstdint>
#include <span>
#include <utility>

#include "seqrac/channel.hpp"
#include "seqrac/qubit.hpp"
#include "seqrac/rng.hpp"

namespace seqrac {

// Which of Alice's two bits Bob is asked for.
enum class TargetBit : int { first = 1, second = 2 };

class PreparationFamily {
public:
    PreparationFamily() = default;
    // Indexed as states[2 * x1 + x2].
    explicit PreparationFamily(const std::array<DensityOp, 4>& states) : states_(states) {}

    const DensityOp& at(int x1, int x2) const { return states_.at(static_cast<std::size_t>(2 * x1 + x2)); }
    const std::array<DensityOp, 4>& states() const { return states_; }

    // Every state equal to rho.
    static PreparationFamily uniform(const DensityOp& rho) { return PreparationFamily({rho, rho, rho, rho}); }

private:
    std::array<DensityOp, 4> states_{};
};

struct DistinguishabilityPair {
    double delta1 = 0.0;
    double delta2 = 0.0;

    double operator[](TargetBit y) const { return y == TargetBit::first ? delta1 : delta2; }
    double squared_sum() const { return delta1 * delta1 + delta2 * delta2; }
};

// Bloch vectors ((-1)^x1 cos w, 0, (-1)^x2 r sin w); realises
// (Delta1, Delta2) = (cos w, r sin w) with B1 = x and B2 = z.
// Throws DomainError unless w in (0, pi/2) and r in (0, 1].
PreparationFamily square_preparations(double omega, double r);

// Equal-weight mixtures (rho_0^(y), rho_1^(y)) for bit y.
std::pair<DensityOp, DensityOp> marginals(const PreparationFamily& prep, TargetBit y);

DistinguishabilityPair delta_pair(const PreparationFamily& prep);

// Born-rule average over uniform x in {0,1}^2 and y in {1,2}; outcome +
// is read as bit 0.
double avg_success(const PreparationFamily& prep, const UnsharpBinaryMeasurement& m1,
                   const UnsharpBinaryMeasurement& m2);

// 1/2 + (lambda1 Delta1 + lambda2 Delta2) / 4, the value reached by Helstrom-aligned observables.
double success_bound(const DistinguishabilityPair& dp, double lambda1, double lambda2);

// Strict lambda1 Delta1 + lambda2 Delta2 > 1.
bool advantage_predicate(const DistinguishabilityPair& dp, double lambda1, double lambda2);

inline constexpr double kClassicalBound = 0.75;

struct ThresholdReport {
    DistinguishabilityPair delta_pair;
    double lambda_symmetric_critical;   // 1 / (Delta1 + Delta2)
    double lambda_asymmetric_critical;  // (1 - Delta1) / Delta2
    bool classical_simplex_violated;    // Delta1 + Delta2 > 1
};

inline constexpr double kThresholdDenominatorFloor = 1e-15;

// Throws DegenerateThreshold when a denominator is below 1e-15.
ThresholdReport thresholds(const DistinguishabilityPair& dp);

// Same values, with +inf in place of the degenerate thresholds.
ThresholdReport thresholds_or_sentinel(const DistinguishabilityPair& dp);

enum class SamplingLaw { ball, sphere };

Vec3 random_bloch_vector(CounterRng& rng, SamplingLaw law);
PreparationFamily random_family(CounterRng& rng, SamplingLaw law);

// Draws count random families (Bloch vectors uniform in the ball or on the
// sphere) and returns the largest Delta1^2 + Delta2^2 seen.
double theorem1_sampler(std::int64_t count, std::uint64_t seed, SamplingLaw law = SamplingLaw::ball);

// Largest Delta1^2 + Delta2^2 over an explicit list of families.
double max_squared_distinguishability(std::span<const PreparationFamily> families);

}  // namespace seqrac

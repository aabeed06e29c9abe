#pragma once

// Unsharp dichotomic measurements, their Luders instruments and the
// non-selective channel a receiver leaves behind.

#include <optional>

#include "seqrac/qubit.hpp"

namespace seqrac {

enum class Sign : int { plus = +1, minus = -1 };

inline double sign_value(Sign s) { return static_cast<double>(static_cast<int>(s)); }

// Positive square roots of the POVM elements: K+- = alpha*1 +- beta*B.
struct KrausPair {
    double alpha;
    double beta;
    HermitianOp k_plus;
    HermitianOp k_minus;

    const HermitianOp& operator[](Sign s) const { return s == Sign::plus ? k_plus : k_minus; }
};

KrausPair kraus_pair(const SharpObservable& b, double lambda);

// E_+- = (1 +- lambda B) / 2 with lambda in [0, 1].
class UnsharpBinaryMeasurement {
public:
    // Throws DomainError for lambda outside [0, 1].
    UnsharpBinaryMeasurement(SharpObservable observable, double lambda);

    static UnsharpBinaryMeasurement sharp(SharpObservable observable) { return {observable, 1.0}; }

    const SharpObservable& observable() const { return observable_; }
    double lambda() const { return lambda_; }

    HermitianOp effect(Sign s) const;
    KrausPair kraus() const { return kraus_pair(observable_, lambda_); }

private:
    SharpObservable observable_;
    double lambda_;
};

// Branch probability below which the post-measurement state is undefined.
inline constexpr double kZeroBranchProbability = 1e-15;

struct SelectiveOutcome {
    double prob_plus = 0.0;
    double prob_minus = 0.0;
    std::optional<DensityOp> post_plus;
    std::optional<DensityOp> post_minus;

    double probability(Sign s) const { return s == Sign::plus ? prob_plus : prob_minus; }

    // Throws ZeroProbabilityBranch when the branch has probability < 1e-15.
    const DensityOp& post(Sign s) const;
};

// Born probabilities and Luders post-measurement states.
SelectiveOutcome selective_outcome(const DensityOp& rho, const UnsharpBinaryMeasurement& m);

// sum_b P_b rho P_b with P_+- = (1 +- B)/2.
DensityOp projective_dephase(const DensityOp& rho, const SharpObservable& b);

// One receiver: projective B1 when asked for bit 1, unsharp B2 at lambda
// when asked for bit 2.
class SequentialChannelStep {
public:
    // Throws DomainError for lambda outside [0, 1].
    SequentialChannelStep(SharpObservable b1, SharpObservable b2, double lambda);

    const SharpObservable& b1() const { return b1_; }
    const SharpObservable& b2() const { return b2_; }
    double lambda() const { return lambda_; }
    bool anticommuting() const { return anticommuting_; }

    UnsharpBinaryMeasurement first_measurement() const { return UnsharpBinaryMeasurement::sharp(b1_); }
    UnsharpBinaryMeasurement second_measurement() const { return {b2_, lambda_}; }

private:
    SharpObservable b1_;
    SharpObservable b2_;
    double lambda_;
    bool anticommuting_;
};

// Equal mixture of the dephasing branch and the unsharp Luders branch,
// applied to an arbitrary Hermitian operator (the map is linear and
// self-dual, so it transports observables as well as states).
HermitianOp apply_channel(const HermitianOp& a, const SequentialChannelStep& step);

DensityOp nonselective_step(const DensityOp& rho, const SequentialChannelStep& step);

// Closed-form image of B1 or B2 under the channel, including the
// anticommutator corrections. Any other observable is transported with
// apply_channel.
HermitianOp transport_observable(const SharpObservable& b, const SequentialChannelStep& step);

}  // namespace seqrac

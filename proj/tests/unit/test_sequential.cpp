#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "oracle/matrix_oracle.hpp"
#include "seqrac/errors.hpp"
#include "seqrac/sequential.hpp"

using namespace seqrac;

namespace {

std::vector<SequentialChannelStep> xz_steps(std::initializer_list<double> lambdas) {
    std::vector<SequentialChannelStep> out;
    for (double l : lambdas) {
        out.emplace_back(SharpObservable::x(), SharpObservable::z(), l);
    }
    return out;
}

}  // namespace

TEST(Propagate, SharpReceiverHalvesBoth) {
    const auto trace = propagate(square_preparations(std::numbers::pi / 4, 1.0), xz_steps({1.0}));
    ASSERT_EQ(trace.receivers(), 1U);
    ASSERT_EQ(trace.entries.size(), 2U);
    EXPECT_NEAR(trace.entries[1].exact.delta1, 0.353553390593274, 1e-15);
    EXPECT_NEAR(trace.entries[1].exact.delta2, 0.353553390593274, 1e-15);
    EXPECT_FALSE(trace.entries[1].success_probability.has_value());
}

TEST(Propagate, TrivialReceiverKeepsFirstBit) {
    const auto prep = square_preparations(0.7, 0.6);
    const auto trace = propagate(prep, xz_steps({0.0}));
    EXPECT_NEAR(trace.entries[1].exact.delta1, trace.entries[0].exact.delta1, 1e-15);
    EXPECT_NEAR(trace.entries[1].exact.delta2, 0.5 * trace.entries[0].exact.delta2, 1e-15);
}

TEST(Propagate, TwoReceiverExample) {
    const auto trace = propagate(square_preparations(0.3, 1.0), xz_steps({0.5, 0.8}));
    EXPECT_NEAR(trace.entries[1].exact.delta1, 0.891341078935308, 1e-15);
    EXPECT_NEAR(trace.entries[1].exact.delta2, 0.147760103330670, 1e-15);
    EXPECT_NEAR(*trace.entries[0].success_probability, 0.775774148114069, 1e-15);
    EXPECT_NEAR(*trace.entries[1].success_probability, 0.752387290399961, 1e-15);
    EXPECT_LT(trace.max_discrepancy(), 1e-15);
}

TEST(Propagate, MatchesMatrixOracleChain) {
    const double w = 0.9;
    const double r = 0.7;
    const std::vector<double> lambdas{0.3, 0.9, 0.5, 1.0, 0.2};
    std::vector<SequentialChannelStep> steps;
    for (double l : lambdas) {
        steps.emplace_back(SharpObservable::x(), SharpObservable::z(), l);
    }
    const auto trace = propagate(square_preparations(w, r), steps);
    const auto born = born_rule_successes(square_preparations(w, r), steps);

    oracle::Family fam = oracle::square_family(w, r, Vec3::UnitX(), Vec3::UnitZ());
    for (std::size_t k = 0; k <= lambdas.size(); ++k) {
        const auto ref = oracle::deltas(fam);
        EXPECT_NEAR(trace.entries[k].exact.delta1, ref[0], 1e-14) << k;
        EXPECT_NEAR(trace.entries[k].exact.delta2, ref[1], 1e-14) << k;
        EXPECT_NEAR(trace.entries[k].exact.delta2, r * std::sin(w) / std::pow(2.0, k), 1e-15);
        if (k == lambdas.size()) {
            break;
        }
        EXPECT_NEAR(born[k], oracle::success(fam, oracle::pauli(1), 1.0, oracle::pauli(3), lambdas[k]), 1e-14);
        for (auto& rho : fam) {
            rho = oracle::channel(rho, oracle::pauli(1), oracle::pauli(3), lambdas[k]);
        }
    }
}

TEST(Propagate, RejectsInconsistentAxes) {
    const auto prep = square_preparations(0.3, 1.0);
    std::vector<SequentialChannelStep> tilted{
        {SharpObservable::x(), SharpObservable::along(Vec3(1, 0, 1)), 0.5}};
    EXPECT_THROW(propagate(prep, tilted), AxisError);
    std::vector<SequentialChannelStep> mixed{{SharpObservable::x(), SharpObservable::z(), 0.5},
                                             {SharpObservable::z(), SharpObservable::x(), 0.5}};
    EXPECT_THROW(propagate(prep, mixed), AxisError);
    std::vector<SequentialChannelStep> swapped{{SharpObservable::y(), SharpObservable::z(), 0.5}};
    EXPECT_THROW(propagate(prep, swapped), AlignmentError);
}

TEST(PerBobSuccess, Examples) {
    const double s = 1 / std::numbers::sqrt2;
    EXPECT_NEAR(per_bob_success({s, s}, 1.0), 0.853553390593274, 1e-15);
    EXPECT_DOUBLE_EQ(per_bob_success({0.0, 0.0}, 0.3), 0.5);
    EXPECT_NEAR(per_bob_success({0.891344, 0.147760}, 0.8), 0.752388, 1e-6);
}

TEST(Contract, Factors) {
    const auto c = contract({0.9, 0.4}, 0.8);
    EXPECT_NEAR(c.delta1, 0.8 * 0.9, 1e-15);
    EXPECT_NEAR(c.delta2, 0.2, 1e-15);
}

TEST(ViolationProbe, OrthogonalIsExact) {
    EXPECT_LT(lemma2_violation_probe(square_preparations(0.3, 1.0), xz_steps({0.8, 0.8, 0.8})), 1e-12);
}

TEST(ViolationProbe, SixtyDegreeTiltBreaksRecursion) {
    const auto b2 = SharpObservable::along(Vec3(std::cos(std::numbers::pi / 3), 0, std::sin(std::numbers::pi / 3)));
    std::vector<SequentialChannelStep> steps(3, SequentialChannelStep(SharpObservable::x(), b2, 0.8));
    EXPECT_GT(lemma2_violation_probe(square_preparations(0.3, 1.0), steps), 1e-6);
}

TEST(ViolationProbe, MonotoneNearOrthogonal) {
    const auto prep = square_preparations(0.3, 1.0);
    double previous = -1.0;
    for (double tilt : {0.0, 2.5e-4, 5e-4, 7.5e-4, 1e-3}) {
        const double a = std::numbers::pi / 2 - tilt;
        const auto b2 = SharpObservable::along(Vec3(std::cos(a), 0, std::sin(a)));
        std::vector<SequentialChannelStep> steps(3, SequentialChannelStep(SharpObservable::x(), b2, 0.8));
        const double d = lemma2_violation_probe(prep, steps);
        if (tilt > 0) {
            EXPECT_GT(d, 0.0);
        }
        EXPECT_GE(d, previous);
        previous = d;
    }
}

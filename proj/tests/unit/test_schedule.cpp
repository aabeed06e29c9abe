#include <cmath>

#include <gtest/gtest.h>

#include "oracle/schedule_oracle.hpp"
#include "seqrac/errors.hpp"
#include "seqrac/schedule.hpp"

using namespace seqrac;

namespace {

double rel_to_oracle(const WideReal& got, const oracle::Big& ref) {
    const oracle::Big g(to_decimal(got));
    return static_cast<double>(abs(g - ref) / abs(ref));
}

}  // namespace

TEST(LambdaSequence, HeadlineValues) {
    const Schedule s = lambda_sequence({WideReal("0.0315"), 1.0, 1e-4, 4});
    ASSERT_EQ(s.stages.size(), 4U);
    EXPECT_NEAR(static_cast<double>(s.stages[0].lambda), 0.015752877587607, 1e-14);
    EXPECT_NEAR(static_cast<double>(s.stages[1].lambda), 0.035444029312765, 1e-14);
    EXPECT_NEAR(static_cast<double>(s.stages[2].lambda), 0.110770789609049, 1e-14);
    EXPECT_NEAR(static_cast<double>(s.stages[3].lambda), 1.002530146068273, 1e-14);
    const auto rep = feasibility_report(s);
    EXPECT_FALSE(rep.feasible);
    EXPECT_TRUE(rep.monotone_doubling);
    EXPECT_EQ(rep.first_failure, 4);
}

TEST(LambdaSequence, AgreesWithDirectFormulaInMpfr) {
    for (const char* w : {"0.0315", "0.03125", "0.3", "1e-6", "1e-40", "1.4"}) {
        const Schedule s = lambda_sequence({WideReal(w), 1.0, 1e-4, 6});
        const auto ref = oracle::direct_schedule(w, 1.0, 1e-4, 6);
        ASSERT_EQ(s.stages.size(), ref.stages.size()) << w;
        for (std::size_t k = 0; k < s.stages.size(); ++k) {
            EXPECT_LT(rel_to_oracle(s.stages[k].lambda, ref.stages[k].lambda), 1e-40) << w << " k=" << k + 1;
            EXPECT_LT(rel_to_oracle(s.stages[k].margin, ref.stages[k].margin), 1e-30) << w << " k=" << k + 1;
        }
    }
}

TEST(LambdaSequence, FeasibleJustBelowBoundary) {
    const Schedule s = lambda_sequence({WideReal("0.03125"), 1.0, 1e-4, 4});
    const auto rep = feasibility_report(s);
    EXPECT_TRUE(rep.feasible);
    EXPECT_TRUE(rep.monotone_doubling);
    EXPECT_FALSE(rep.first_failure.has_value());
    EXPECT_NEAR(static_cast<double>(s.stages[3].lambda), 0.994542728443741, 1e-14);
    for (const auto& st : s.stages) {
        EXPECT_GT(st.margin, 0);
        EXPECT_GT(st.success, WideReal("0.75"));
    }
}

TEST(LambdaSequence, SingleReceiverBaseCase) {
    for (double w : {1e-3, 0.3, 1.0, 1.5}) {
        const Schedule s = lambda_sequence({WideReal(w), 0.8, 1e-3, 1});
        EXPECT_NEAR(static_cast<double>(s.stages[0].lambda), 1.001 * std::tan(w / 2) / 0.8, 1e-15);
    }
}

TEST(LambdaSequence, LargeOmegaExhaustsBudget) {
    const auto rep = feasibility_report(lambda_sequence({WideReal(1.0), 1.0, 1e-4, 4}));
    EXPECT_FALSE(rep.feasible);
    ASSERT_TRUE(rep.first_failure.has_value());
    EXPECT_LT(*rep.first_failure, 4);
    EXPECT_EQ(*rep.first_failure, 2);
}

TEST(LambdaSequence, RejectsBadParameters) {
    EXPECT_THROW(lambda_sequence({WideReal(0), 1.0, 1e-4, 4}), DomainError);
    EXPECT_THROW(lambda_sequence({wide_pi() / 2, 1.0, 1e-4, 4}), DomainError);
    EXPECT_THROW(lambda_sequence({WideReal(0.1), 0.0, 1e-4, 4}), DomainError);
    EXPECT_THROW(lambda_sequence({WideReal(0.1), 1.0, 0.0, 4}), DomainError);
    EXPECT_THROW(lambda_sequence({WideReal(0.1), 1.0, 1e-4, 0}), DomainError);
}

TEST(MaxFeasibleReceivers, Examples) {
    EXPECT_EQ(max_feasible_receivers(WideReal("0.0315"), 1.0, 1e-4, 16), 3);
    EXPECT_EQ(max_feasible_receivers(WideReal("0.03125"), 1.0, 1e-4, 16), 4);
    EXPECT_LE(max_feasible_receivers(WideReal("1.4"), 1.0, 1e-4, 16), 1);
    EXPECT_EQ(max_feasible_receivers(WideReal("1e-6"), 1.0, 1e-4, 8), 5);
    EXPECT_EQ(max_feasible_receivers(WideReal("1e-300"), 1.0, 1e-4, 8), 8);
}

TEST(SingleReceiver, AlwaysFeasibleBelowLimit) {
    for (double w : {1e-9, 0.01, 0.5, 1.2, 1.5}) {
        EXPECT_TRUE(is_feasible(lambda_sequence({WideReal(w), 1.0, 1e-4, 1}))) << w;
    }
}

TEST(FindOmega, FourReceivers) {
    const WideReal w = find_omega(4, 1.0, 1e-4);
    EXPECT_GE(w, WideReal("0.0315") * WideReal("0.9"));
    EXPECT_NEAR(static_cast<double>(w), 0.0314208109135914, 1e-12);
    EXPECT_TRUE(is_feasible(lambda_sequence({w, 1.0, 1e-4, 4})));
}

TEST(FindOmega, SingleReceiver) {
    const WideReal w = find_omega(1, 1.0, 1e-4);
    EXPECT_LT((1 + WideReal(1e-4)) * tan(w / 2), 1);
}

TEST(FindOmega, TenReceivers) {
    const WideReal w = find_omega(10, 1.0, 1e-4);
    EXPECT_GT(w, 0);
    EXPECT_TRUE(is_feasible(lambda_sequence({w, 1.0, 1e-4, 10})));
}

TEST(FindOmega, ExhaustsAtFloor) {
    FindOmegaOptions o;
    o.floor = WideReal("1e-20");
    EXPECT_THROW(find_omega(12, 1.0, 1e-4, o), SearchExhausted);
}

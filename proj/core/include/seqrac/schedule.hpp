#pragma once

// Unsharpness schedules that give every receiver in a chain a success
// probability strictly above the classical 3/4.
//
// Receiver k uses
//   lambda_1 = (1 + eps) tan(w/2) / r,
//   lambda_k = (1 + eps) (2^(k-1) - cos(w) M_k) / (r sin w),   k >= 2,
//   M_k      = prod_{l<k} (1 + sqrt(1 - lambda_l^2)),
// which is (1 + eps) times the smallest unsharpness that still beats 3/4
// given the distinguishability left by receivers 1..k-1.

#include <cstdint>
#include <optional>
#include <vector>

#include "seqrac/wide.hpp"

namespace seqrac {

struct ScheduleParams {
    WideReal omega;
    double r = 1.0;
    double epsilon = 1e-4;
    int n = 1;
};

struct ReceiverStage {
    WideReal lambda;
    WideReal m_product;       // M_k
    WideReal delta1;          // cos(w) M_k / 2^(k-1)
    WideReal delta1_deficit;  // 1 - delta1, carried separately (delta1 rounds to 1 for tiny w)
    WideReal delta2;          // r sin(w) / 2^(k-1)
    WideReal success;         // 1/2 + (delta1 + lambda delta2) / 4
    WideReal margin;          // success - 3/4
};

struct Schedule {
    ScheduleParams params;
    // Receivers 1..K. When K < n or the last lambda is outside (0, 1) the
    // schedule stopped at its first infeasible receiver.
    std::vector<ReceiverStage> stages;
};

struct FeasibilityReport {
    bool feasible = false;
    bool monotone_doubling = false;
    std::optional<int> first_failure;  // 1-based receiver index
};

// Throws DomainError unless w in (0, pi/2), r in (0, 1], eps > 0, n >= 1.
Schedule lambda_sequence(const ScheduleParams& params);

FeasibilityReport feasibility_report(const Schedule& s);

inline bool is_feasible(const Schedule& s) { return feasibility_report(s).feasible; }

// Largest n <= cap with a feasible schedule (0 if even the first receiver fails).
int max_feasible_receivers(const WideReal& omega, double r, double epsilon, int cap);

struct FindOmegaOptions {
    // The search gives up when every feasible candidate lies below this value.
    WideReal floor = WideReal("1e-1000000");
    // Bisection stops once hi - lo <= rel_tolerance * hi.
    double rel_tolerance = 1e-12;
};

// Some omega in (0, pi/2) with a feasible n-receiver schedule. Starts from
// the first-order small-angle estimate, halves until feasible, doubles
// while feasible, then bisects the bracket. Throws SearchExhausted when
// the bracket falls below options.floor.
WideReal find_omega(int n, double r, double epsilon, const FindOmegaOptions& options = {});

}  // namespace seqrac

#include "seqrac/sequential.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Geometry>
#include <fmt/format.h>

#include "seqrac/errors.hpp"

namespace seqrac {

namespace {

PreparationFamily apply_step(const PreparationFamily& prep, const SequentialChannelStep& step) {
    std::array<DensityOp, 4> out;
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = nonselective_step(prep.states()[i], step);
    }
    return PreparationFamily(out);
}

double discrepancy(const DistinguishabilityPair& a, const DistinguishabilityPair& b) {
    return std::max(std::abs(a.delta1 - b.delta1), std::abs(a.delta2 - b.delta2));
}

SequentialTrace run_pipelines(const PreparationFamily& prep, std::span<const SequentialChannelStep> steps) {
    SequentialTrace trace;
    trace.entries.reserve(steps.size() + 1);
    PreparationFamily family = prep;
    DistinguishabilityPair recursion = delta_pair(prep);
    for (std::size_t k = 0; k <= steps.size(); ++k) {
        TraceEntry entry{family, delta_pair(family), recursion, std::nullopt};
        if (k < steps.size()) {
            entry.success_probability = per_bob_success(entry.exact, steps[k].lambda());
            family = apply_step(family, steps[k]);
            recursion = contract(recursion, steps[k].lambda());
        }
        trace.entries.push_back(std::move(entry));
    }
    return trace;
}

void check_alignment(const PreparationFamily& prep, const SharpObservable& b, TargetBit y) {
    const auto [rho0, rho1] = marginals(prep, y);
    const Vec3 d = rho0.bloch_vector() - rho1.bloch_vector();
    const double off_axis = d.cross(b.axis()).norm();
    if (off_axis > kAlignmentTolerance) {
        throw AlignmentError(fmt::format("propagate: marginal difference for bit {} is {:.3g} off its observable",
                                         static_cast<int>(y), off_axis));
    }
}

}  // namespace

double SequentialTrace::max_discrepancy() const {
    double worst = 0.0;
    for (const auto& e : entries) {
        worst = std::max(worst, discrepancy(e.exact, e.recursion));
    }
    return worst;
}

DistinguishabilityPair contract(const DistinguishabilityPair& dp, double lambda) {
    return {0.5 * (1.0 + std::sqrt(1.0 - lambda * lambda)) * dp.delta1, 0.5 * dp.delta2};
}

double per_bob_success(const DistinguishabilityPair& dp, double lambda) {
    return 0.5 + 0.25 * (dp.delta1 + lambda * dp.delta2);
}

SequentialTrace propagate(const PreparationFamily& prep, std::span<const SequentialChannelStep> steps) {
    if (!steps.empty()) {
        const auto& first = steps.front();
        if (!first.anticommuting()) {
            throw AxisError("propagate: B1 and B2 do not anticommute");
        }
        for (const auto& s : steps) {
            if ((s.b1().axis() - first.b1().axis()).norm() > kStateTolerance ||
                (s.b2().axis() - first.b2().axis()).norm() > kStateTolerance) {
                throw AxisError("propagate: steps disagree on the measurement axes");
            }
        }
        check_alignment(prep, first.b1(), TargetBit::first);
        check_alignment(prep, first.b2(), TargetBit::second);
    }
    return run_pipelines(prep, steps);
}

std::vector<double> born_rule_successes(const PreparationFamily& prep, std::span<const SequentialChannelStep> steps) {
    std::vector<double> out;
    out.reserve(steps.size());
    PreparationFamily family = prep;
    for (const auto& step : steps) {
        out.push_back(avg_success(family, step.first_measurement(), step.second_measurement()));
        family = apply_step(family, step);
    }
    return out;
}

double lemma2_violation_probe(const PreparationFamily& prep, std::span<const SequentialChannelStep> steps) {
    return run_pipelines(prep, steps).max_discrepancy();
}

}  // namespace seqrac

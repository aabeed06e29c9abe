#include "seqrac/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include <fmt/format.h>

#include "seqrac/channel.hpp"
#include "seqrac/rac.hpp"
#include "seqrac/rng.hpp"
#include "seqrac/schedule.hpp"
#include "seqrac/sequential.hpp"
#include "seqrac/small_angle.hpp"

namespace seqrac {

namespace {

CheckResult max_below(std::string name, double worst, double limit) {
    return {std::move(name), worst < limit, fmt::format("max {:.3g} (limit {:.3g})", worst, limit)};
}

CheckResult helstrom_saturation(const VerifyOptions& o) {
    double worst = 0.0;
    for (std::int64_t i = 0; i < o.samples; ++i) {
        CounterRng rng(o.seed, static_cast<std::uint64_t>(i));
        const auto a = DensityOp::from_bloch(random_bloch_vector(rng, SamplingLaw::ball));
        const auto b = DensityOp::from_bloch(random_bloch_vector(rng, SamplingLaw::ball));
        const double delta = distinguishability(a, b);
        if (delta * 2 <= kDegeneracyTolerance) {
            continue;
        }
        worst = std::max(worst, std::abs(guessing_probability(a, b, helstrom_observable(a, b)) - 0.5 * (1 + delta)));
    }
    return max_below("helstrom observable attains (1 + Delta)/2", worst, 1e-12);
}

CheckResult helstrom_optimality(const VerifyOptions& o) {
    double worst = -1.0;
    for (std::int64_t i = 0; i < o.samples; ++i) {
        CounterRng rng(o.seed + 1, static_cast<std::uint64_t>(i));
        const auto a = DensityOp::from_bloch(random_bloch_vector(rng, SamplingLaw::ball));
        const auto b = DensityOp::from_bloch(random_bloch_vector(rng, SamplingLaw::ball));
        const auto obs = SharpObservable::along(random_bloch_vector(rng, SamplingLaw::sphere));
        worst = std::max(worst, guessing_probability(a, b, obs) - 0.5 * (1 + distinguishability(a, b)));
    }
    return max_below("no observable beats the Helstrom bound", worst, 1e-12);
}

CheckResult theorem1(const VerifyOptions& o) {
    const double ball = theorem1_sampler(o.samples, o.seed + 2, SamplingLaw::ball);
    const double sphere = theorem1_sampler(o.samples, o.seed + 3, SamplingLaw::sphere);
    return max_below("Delta1^2 + Delta2^2 <= 1", std::max(ball, sphere) - 1.0, 1e-9);
}

CheckResult theorem2(const VerifyOptions& o) {
    double worst_eq = 0.0;
    double worst_excess = -1.0;
    for (std::int64_t i = 0; i < o.samples; ++i) {
        CounterRng rng(o.seed + 4, static_cast<std::uint64_t>(i));
        const double w = 1e-3 + (std::numbers::pi / 2 - 2e-3) * rng.uniform();
        const double r = 1e-3 + (1 - 1e-3) * rng.uniform();
        const double l1 = rng.uniform();
        const double l2 = rng.uniform();
        const auto prep = square_preparations(w, r);
        const auto dp = delta_pair(prep);
        const double bound = success_bound(dp, l1, l2);
        const double aligned = avg_success(prep, {SharpObservable::x(), l1}, {SharpObservable::z(), l2});
        worst_eq = std::max(worst_eq, std::abs(aligned - bound));
        const auto fam = random_family(rng, SamplingLaw::ball);
        const auto fdp = delta_pair(fam);
        const UnsharpBinaryMeasurement m1(SharpObservable::along(random_bloch_vector(rng, SamplingLaw::sphere)), l1);
        const UnsharpBinaryMeasurement m2(SharpObservable::along(random_bloch_vector(rng, SamplingLaw::sphere)), l2);
        worst_excess = std::max(worst_excess, avg_success(fam, m1, m2) - success_bound(fdp, l1, l2));
    }
    const bool ok = worst_eq < 1e-12 && worst_excess < 1e-12;
    return {"success = 1/2 + (l1 D1 + l2 D2)/4 when aligned, never above", ok,
            fmt::format("aligned deviation {:.3g}, worst excess {:.3g}", worst_eq, worst_excess)};
}

CheckResult channel_sanity(const VerifyOptions& o) {
    double worst_trace = 0.0;
    double worst_neg = 0.0;
    double worst_adjoint = 0.0;
    for (std::int64_t i = 0; i < o.samples; ++i) {
        CounterRng rng(o.seed + 5, static_cast<std::uint64_t>(i));
        const auto rho = DensityOp::from_bloch(random_bloch_vector(rng, SamplingLaw::ball));
        const SequentialChannelStep step(SharpObservable::along(random_bloch_vector(rng, SamplingLaw::sphere)),
                                         SharpObservable::along(random_bloch_vector(rng, SamplingLaw::sphere)),
                                         rng.uniform());
        const HermitianOp image = apply_channel(rho.op(), step);
        worst_trace = std::max(worst_trace, std::abs(image.trace() - 1.0));
        worst_neg = std::max(worst_neg, -image.eigenvalues()[0]);
        for (const auto& b : {step.b1(), step.b2()}) {
            const double lhs = trace_of_product(image, b.op());
            const double rhs = trace_of_product(rho.op(), transport_observable(b, step));
            worst_adjoint = std::max(worst_adjoint, std::abs(lhs - rhs));
        }
    }
    const bool ok = worst_trace < 1e-14 && worst_neg < 1e-12 && worst_adjoint < 1e-12;
    return {"channel is trace preserving, positive and self-dual on B1, B2", ok,
            fmt::format("trace {:.3g}, negativity {:.3g}, adjoint {:.3g}", worst_trace, worst_neg, worst_adjoint)};
}

CheckResult recursion_equivalence(const VerifyOptions& o) {
    double worst = 0.0;
    const std::int64_t cases = std::max<std::int64_t>(1, o.samples / 20);
    for (std::int64_t i = 0; i < cases; ++i) {
        CounterRng rng(o.seed + 6, static_cast<std::uint64_t>(i));
        const double w = 1e-3 + (std::numbers::pi / 2 - 2e-3) * rng.uniform();
        const double r = 1e-3 + (1 - 1e-3) * rng.uniform();
        const int n = 1 + static_cast<int>(rng() % 8);
        std::vector<SequentialChannelStep> steps;
        for (int k = 0; k < n; ++k) {
            steps.emplace_back(SharpObservable::x(), SharpObservable::z(), rng.uniform());
        }
        worst = std::max(worst, propagate(square_preparations(w, r), steps).max_discrepancy());
    }
    return max_below("exact trace norms follow the contraction recursion", worst, 1e-12);
}

CheckResult tilted_control() {
    const double tilt = std::numbers::pi / 3;
    const auto b2 = SharpObservable::along(Vec3(std::cos(tilt), 0.0, std::sin(tilt)));
    std::vector<SequentialChannelStep> steps(3, SequentialChannelStep(SharpObservable::x(), b2, 0.8));
    const double d = lemma2_violation_probe(square_preparations(0.3, 1.0), steps);
    return {"tilted axes break the recursion", d > 1e-6, fmt::format("discrepancy {:.3g}", d)};
}

CheckResult schedule_properties() {
    bool ok = true;
    int checked = 0;
    for (double w : {1e-4, 1e-3, 5e-3, 0.01, 0.02, 0.03, 0.1, 0.3}) {
        const Schedule s = lambda_sequence({WideReal(w), 1.0, 1e-4, 8});
        const auto rep = feasibility_report(s);
        ok = ok && rep.monotone_doubling;
        for (const auto& st : s.stages) {
            if (st.lambda > 0 && st.lambda < 1) {
                ok = ok && st.margin > 0;
                ++checked;
            }
        }
    }
    return {"schedules double monotonically and keep every margin positive", ok,
            fmt::format("{} feasible receivers checked", checked)};
}

CheckResult polynomial_laws() {
    bool ok = true;
    for (int k = 1; k <= 8; ++k) {
        const auto p = small_angle_poly(k);
        ok = ok && p.degree() == (1L << (k - 1)) - 1;
        const auto c = odd_power_expansion(k);
        for (std::size_t i = 0; i < c.coefficients().size(); i += 2) {
            ok = ok && c.coefficients()[i] == 0;
        }
    }
    return {"P_k has degree 2^(k-1) - 1 and c_k only odd powers", ok, "k = 1..8"};
}

CheckResult small_angle_consistency() {
    double worst = 0.0;
    for (double w : {1e-3, 1e-4}) {
        const Schedule s = lambda_sequence({WideReal(w), 1.0, 1e-4, 4});
        const WideReal c1 = (1 + WideReal(1e-4)) / 2;
        for (std::size_t i = 0; i < s.stages.size(); ++i) {
            const WideReal pred = leading_coefficient(static_cast<int>(i) + 1, c1) * WideReal(w);
            const double rel = static_cast<double>(abs(s.stages[i].lambda - pred) / pred);
            worst = std::max(worst, rel / (w * w));
        }
    }
    return max_below("first-order lambda_k within 5 w^2 (k <= 4)", worst, 5.0);
}

}  // namespace

std::vector<CheckResult> run_invariant_suite(const VerifyOptions& options) {
    std::vector<CheckResult> out;
    out.push_back(helstrom_saturation(options));
    out.push_back(helstrom_optimality(options));
    out.push_back(theorem1(options));
    out.push_back(theorem2(options));
    out.push_back(channel_sanity(options));
    out.push_back(recursion_equivalence(options));
    out.push_back(tilted_control());
    out.push_back(schedule_properties());
    out.push_back(polynomial_laws());
    out.push_back(small_angle_consistency());
    return out;
}

}  // namespace seqrac

#include "seqrac/channel.hpp"

#include <cmath>

#include <fmt/format.h>

#include "seqrac/errors.hpp"

namespace seqrac {

namespace {

void check_lambda(double lambda, const char* what) {
    if (!(lambda >= 0.0 && lambda <= 1.0)) {
        throw DomainError(fmt::format("{}: unsharpness {} outside [0, 1]", what, lambda));
    }
}

// Images of valid states under the Kraus maps are valid states; any excess
// Bloch length here is rounding, which is amplified for small branches.
DensityOp state_from_image(const HermitianOp& image) {
    Vec3 n = image.bloch() / image.trace_part();
    const double len = n.norm();
    if (len > 1.0) {
        n /= len;
    }
    return DensityOp::from_bloch(n);
}

bool same_axis(const SharpObservable& a, const SharpObservable& b) {
    return (a.axis() - b.axis()).norm() <= kStateTolerance;
}

}  // namespace

KrausPair kraus_pair(const SharpObservable& b, double lambda) {
    check_lambda(lambda, "kraus pair");
    const double up = std::sqrt((1.0 + lambda) / 2.0);
    const double down = std::sqrt((1.0 - lambda) / 2.0);
    const double alpha = 0.5 * (up + down);
    const double beta = 0.5 * (up - down);
    return {alpha, beta, HermitianOp(alpha, beta * b.axis()), HermitianOp(alpha, -beta * b.axis())};
}

UnsharpBinaryMeasurement::UnsharpBinaryMeasurement(SharpObservable observable, double lambda)
    : observable_(observable), lambda_(lambda) {
    check_lambda(lambda, "unsharp measurement");
}

HermitianOp UnsharpBinaryMeasurement::effect(Sign s) const {
    return {0.5, 0.5 * sign_value(s) * lambda_ * observable_.axis()};
}

const DensityOp& SelectiveOutcome::post(Sign s) const {
    const auto& branch = s == Sign::plus ? post_plus : post_minus;
    if (!branch) {
        throw ZeroProbabilityBranch(
            fmt::format("selective outcome: branch {} has probability {:.3g}", s == Sign::plus ? '+' : '-',
                        probability(s)));
    }
    return *branch;
}

SelectiveOutcome selective_outcome(const DensityOp& rho, const UnsharpBinaryMeasurement& m) {
    const KrausPair k = m.kraus();
    SelectiveOutcome out;
    for (Sign s : {Sign::plus, Sign::minus}) {
        const double p = trace_of_product(rho.op(), m.effect(s));
        const HermitianOp unnormalised = sandwich(k[s], rho.op());
        std::optional<DensityOp> post;
        if (p >= kZeroBranchProbability) {
            post = state_from_image(unnormalised);
        }
        if (s == Sign::plus) {
            out.prob_plus = p;
            out.post_plus = post;
        } else {
            out.prob_minus = p;
            out.post_minus = post;
        }
    }
    return out;
}

DensityOp projective_dephase(const DensityOp& rho, const SharpObservable& b) {
    const Vec3& axis = b.axis();
    return DensityOp::from_bloch(rho.bloch_vector().dot(axis) * axis);
}

SequentialChannelStep::SequentialChannelStep(SharpObservable b1, SharpObservable b2, double lambda)
    : b1_(b1), b2_(b2), lambda_(lambda), anticommuting_(b1.anticommutes_with(b2)) {
    check_lambda(lambda, "channel step");
}

HermitianOp apply_channel(const HermitianOp& a, const SequentialChannelStep& step) {
    const HermitianOp p_plus = 0.5 * (HermitianOp::identity() + step.b1().op());
    const HermitianOp p_minus = 0.5 * (HermitianOp::identity() - step.b1().op());
    const KrausPair k = kraus_pair(step.b2(), step.lambda());
    const HermitianOp dephased = sandwich(p_plus, a) + sandwich(p_minus, a);
    const HermitianOp luders = sandwich(k.k_plus, a) + sandwich(k.k_minus, a);
    return 0.5 * (dephased + luders);
}

DensityOp nonselective_step(const DensityOp& rho, const SequentialChannelStep& step) {
    return state_from_image(apply_channel(rho.op(), step));
}

HermitianOp transport_observable(const SharpObservable& b, const SequentialChannelStep& step) {
    const double lambda = step.lambda();
    const double beta = kraus_pair(step.b2(), lambda).beta;
    // {B1, B2} = 2 (b1.b2) 1.
    const double anti = 2.0 * step.b1().axis().dot(step.b2().axis());
    if (same_axis(b, step.b1())) {
        return 0.5 * (1.0 + std::sqrt(1.0 - lambda * lambda)) * step.b1().op() +
               beta * beta * anti * step.b2().op();
    }
    if (same_axis(b, step.b2())) {
        return 0.5 * step.b2().op() + 0.25 * anti * step.b1().op();
    }
    return apply_channel(b.op(), step);
}

}  // namespace seqrac

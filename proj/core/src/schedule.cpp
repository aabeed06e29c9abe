#include "seqrac/schedule.hpp"

#include <boost/math/constants/constants.hpp>
#include <fmt/format.h>

#include "seqrac/errors.hpp"
#include "seqrac/small_angle.hpp"

namespace seqrac {

WideReal wide_pi() { return boost::math::constants::pi<WideReal>(); }

namespace {

void check_params(const ScheduleParams& p) {
    if (!(p.omega > 0 && p.omega < wide_pi() / 2)) {
        throw DomainError(fmt::format("schedule: omega {} outside (0, pi/2)", to_decimal(p.omega)));
    }
    if (!(p.r > 0.0 && p.r <= 1.0)) {
        throw DomainError(fmt::format("schedule: r {} outside (0, 1]", p.r));
    }
    if (!(p.epsilon > 0.0)) {
        throw DomainError(fmt::format("schedule: epsilon {} must be positive", p.epsilon));
    }
    if (p.n < 1) {
        throw DomainError(fmt::format("schedule: n {} must be at least 1", p.n));
    }
}

bool in_open_unit(const WideReal& x) { return x > 0 && x < 1; }

}  // namespace

Schedule lambda_sequence(const ScheduleParams& params) {
    check_params(params);
    const WideReal& w = params.omega;
    const WideReal r = params.r;
    const WideReal scale = (1 + WideReal(params.epsilon)) / r;
    const WideReal half_sin = sin(w / 2);
    const WideReal tan_half = tan(w / 2);
    const WideReal tan_w = tan(w);
    const WideReal cos_w = cos(w);
    const WideReal sin_w = sin(w);

    // m = M_k / 2^(k-1) and u = 1 - m, both kept so that neither is
    // obtained by cancellation: u_{k+1} = u_k + d_k m_k, m_{k+1} = m_k (1 - d_k)
    // with d = (1 - sqrt(1 - lambda^2)) / 2 = lambda^2 / (2 (1 + sqrt(1 - lambda^2))).
    WideReal m = 1;
    WideReal u = 0;

    Schedule out{params, {}};
    out.stages.reserve(static_cast<std::size_t>(params.n));
    for (int k = 1; k <= params.n; ++k) {
        const WideReal pow2 = ldexp(WideReal(1), k - 1);
        ReceiverStage st;
        // (2^(k-1) - cos(w) M_k) / sin(w) = 2^(k-1) (tan(w/2) + u_k / tan(w)).
        st.lambda = scale * pow2 * (tan_half + u / tan_w);
        st.m_product = pow2 * m;
        st.delta1 = cos_w * m;
        st.delta1_deficit = 2 * half_sin * half_sin + cos_w * u;
        st.delta2 = r * sin_w / pow2;
        st.success = WideReal(0.5) + (st.delta1 + st.lambda * st.delta2) / 4;
        st.margin = (st.lambda * st.delta2 - st.delta1_deficit) / 4;
        const bool ok = in_open_unit(st.lambda);
        if (ok) {
            const WideReal root = sqrt(1 - st.lambda * st.lambda);
            const WideReal d = st.lambda * st.lambda / (2 * (1 + root));
            u += d * m;
            m *= 1 - d;
        }
        out.stages.push_back(std::move(st));
        if (!ok) {
            break;
        }
    }
    return out;
}

FeasibilityReport feasibility_report(const Schedule& s) {
    FeasibilityReport rep;
    for (std::size_t i = 0; i < s.stages.size(); ++i) {
        if (!in_open_unit(s.stages[i].lambda)) {
            rep.first_failure = static_cast<int>(i) + 1;
            break;
        }
    }
    rep.feasible = !rep.first_failure && static_cast<int>(s.stages.size()) == s.params.n;
    rep.monotone_doubling = true;
    for (std::size_t i = 1; i < s.stages.size(); ++i) {
        if (!(s.stages[i].lambda > 2 * s.stages[i - 1].lambda)) {
            rep.monotone_doubling = false;
        }
    }
    return rep;
}

int max_feasible_receivers(const WideReal& omega, double r, double epsilon, int cap) {
    if (cap < 1) {
        throw DomainError("max feasible receivers: cap must be positive");
    }
    const Schedule s = lambda_sequence({omega, r, epsilon, cap});
    int count = 0;
    for (const auto& st : s.stages) {
        if (!in_open_unit(st.lambda)) {
            break;
        }
        ++count;
    }
    return count;
}

WideReal find_omega(int n, double r, double epsilon, const FindOmegaOptions& options) {
    if (n < 1) {
        throw DomainError("find omega: n must be at least 1");
    }
    if (!(r > 0.0 && r <= 1.0) || !(epsilon > 0.0)) {
        throw DomainError("find omega: r must lie in (0, 1] and epsilon be positive");
    }
    const WideReal upper_limit = wide_pi() / 2;
    auto feasible = [&](const WideReal& w) {
        return w > 0 && w < upper_limit && is_feasible(lambda_sequence({w, r, epsilon, n}));
    };

    const WideReal c1 = (1 + WideReal(epsilon)) / (2 * WideReal(r));
    WideReal start = 1 / leading_coefficient_numeric(n, c1);
    if (!(start < upper_limit)) {
        start = upper_limit / 2;
    }

    WideReal lo;
    WideReal hi;
    if (feasible(start)) {
        lo = start;
        hi = 2 * start;
        while (hi < upper_limit && feasible(hi)) {
            lo = hi;
            hi *= 2;
        }
        if (!(hi < upper_limit)) {
            hi = upper_limit;
        }
    } else {
        hi = start;
        lo = start / 2;
        while (!feasible(lo)) {
            if (lo < options.floor) {
                throw SearchExhausted(
                    fmt::format("find omega: no feasible omega for n = {} above {}", n, to_decimal(options.floor)));
            }
            hi = lo;
            lo /= 2;
        }
    }
    if (hi < options.floor) {
        throw SearchExhausted(
            fmt::format("find omega: no feasible omega for n = {} above {}", n, to_decimal(options.floor)));
    }
    while (hi - lo > options.rel_tolerance * hi) {
        const WideReal mid = (lo + hi) / 2;
        if (feasible(mid)) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return lo;
}

}  // namespace seqrac

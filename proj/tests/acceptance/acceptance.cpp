// Acceptance runner: one PASS/FAIL line per criterion.
//
//   seqrac_acceptance                 run all criteria
//   seqrac_acceptance --criterion 4   run one (repeatable)
//
// Exit status is 0 only when every selected criterion passes.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "oracle/schedule_oracle.hpp"
#include "seqrac/monte_carlo.hpp"
#include "seqrac/rac.hpp"
#include "seqrac/report.hpp"
#include "seqrac/rng.hpp"
#include "seqrac/schedule.hpp"
#include "seqrac/sequential.hpp"
#include "seqrac/small_angle.hpp"

using namespace seqrac;

namespace {

struct Outcome {
    bool passed;
    std::string detail;
};

struct Criterion {
    int id;
    std::string title;
    double budget_seconds;
    std::function<Outcome()> body;
};

constexpr double kInvSqrt2 = 1 / std::numbers::sqrt2;

std::string sci(double v) { return fmt::format("{:.3g}", v); }

std::string wide(const WideReal& v, int digits = 12) { return v.str(digits, std::ios_base::scientific); }

Vec3 orthogonal_to(const Vec3& a, CounterRng& rng) {
    Vec3 v = random_bloch_vector(rng, SamplingLaw::sphere);
    v -= v.dot(a) * a;
    return v.normalized();
}

PreparationFamily aligned_family(double omega, double r, const Vec3& a1, const Vec3& a2) {
    std::array<DensityOp, 4> states;
    for (int x1 = 0; x1 < 2; ++x1) {
        for (int x2 = 0; x2 < 2; ++x2) {
            const double s1 = x1 == 0 ? 1.0 : -1.0;
            const double s2 = x2 == 0 ? 1.0 : -1.0;
            states[2 * x1 + x2] = DensityOp::from_bloch(s1 * std::cos(omega) * a1 + s2 * r * std::sin(omega) * a2);
        }
    }
    return PreparationFamily(states);
}

// ---------------------------------------------------------------------------

Outcome optimal_single_receiver() {
    const auto prep = square_preparations(std::numbers::pi / 4, 1.0);
    const auto [a0, a1] = marginals(prep, TargetBit::first);
    const auto [b0, b1] = marginals(prep, TargetBit::second);
    const double p = avg_success(prep, UnsharpBinaryMeasurement::sharp(helstrom_observable(a0, a1)),
                                 UnsharpBinaryMeasurement::sharp(helstrom_observable(b0, b1)));
    const double target = 0.5 * (1 + kInvSqrt2);
    const double err = std::abs(p - target);
    return {err < 1e-12, fmt::format("P_avg = {:.12f}, target {:.12f}, |diff| = {}", p, target, sci(err))};
}

Outcome squared_distinguishability_bound() {
    const std::int64_t count = 100000;
    const double ball = theorem1_sampler(count, 42, SamplingLaw::ball);
    const double pure = theorem1_sampler(count, 43, SamplingLaw::sphere);
    // Orthogonal pure pairs: Bloch vectors +-cos(t) a +- sin(t) b with a _|_ b.
    double worst_sat = 0.0;
    for (std::uint64_t i = 0; i < 10000; ++i) {
        CounterRng rng(44, i);
        const Vec3 a = random_bloch_vector(rng, SamplingLaw::sphere);
        const Vec3 b = orthogonal_to(a, rng);
        const double t = std::numbers::pi / 2 * rng.uniform();
        const auto fam = aligned_family(t, 1.0, a, b);
        worst_sat = std::max(worst_sat, std::abs(delta_pair(fam).squared_sum() - 1.0));
    }
    const bool ok = ball <= 1 + 1e-9 && pure <= 1 + 1e-9 && worst_sat < 1e-12;
    return {ok, fmt::format("max over 1e5 ball = {:.15f}, 1e5 pure = {:.15f}; saturating |sum - 1| <= {}", ball,
                            pure, sci(worst_sat))};
}

Outcome recursion_equivalence() {
    double worst = 0.0;
    for (std::uint64_t i = 0; i < 1000; ++i) {
        CounterRng rng(77, i);
        const Vec3 a1 = random_bloch_vector(rng, SamplingLaw::sphere);
        const Vec3 a2 = orthogonal_to(a1, rng);
        const double w = (std::numbers::pi / 2) * (1e-6 + (1 - 2e-6) * rng.uniform());
        const double r = 1e-6 + (1 - 1e-6) * rng.uniform();
        const int n = 1 + static_cast<int>(rng() % 8);
        std::vector<SequentialChannelStep> steps;
        for (int k = 0; k < n; ++k) {
            steps.emplace_back(SharpObservable::along(a1), SharpObservable::along(a2), rng.uniform());
        }
        worst = std::max(worst, propagate(aligned_family(w, r, a1, a2), steps).max_discrepancy());
    }
    const double tilt = std::numbers::pi / 3;
    const auto b2 = SharpObservable::along(Vec3(std::cos(tilt), 0, std::sin(tilt)));
    std::vector<SequentialChannelStep> tilted(3, SequentialChannelStep(SharpObservable::x(), b2, 0.8));
    const double control = lemma2_violation_probe(square_preparations(0.3, 1.0), tilted);
    return {worst < 1e-12 && control > 1e-6,
            fmt::format("max |exact - recursion| = {} over 1000 cases; 60 deg control = {}", sci(worst), sci(control))};
}

Outcome four_receiver_headline() {
    const std::string omega = "0.0315";
    const Schedule s = lambda_sequence({WideReal(omega), 1.0, 1e-4, 4});
    const auto rep = feasibility_report(s);
    const auto ref = oracle::direct_schedule(omega, 1.0, 1e-4, 4);

    bool ok = s.stages.size() == 4 && ref.stages.size() == 4;
    std::string detail;
    for (std::size_t k = 0; k < s.stages.size(); ++k) {
        const auto& st = s.stages[k];
        const bool in_range = st.lambda > 0 && st.lambda < 1;
        const bool doubling = k == 0 || st.lambda > 2 * s.stages[k - 1].lambda;
        const bool margin = st.margin > 0 && k < ref.stages.size() && ref.stages[k].margin > 0;
        ok = ok && in_range && doubling && margin;
        detail += fmt::format("{}lambda{} = {}{} (margin {} / mpfr {})", k == 0 ? "" : "; ", k + 1, wide(st.lambda),
                              in_range ? "" : " OUTSIDE (0,1)", wide(st.margin, 6),
                              k < ref.stages.size() ? ref.stages[k].margin.str(6, std::ios_base::scientific) : "-");
    }
    ok = ok && rep.feasible;
    if (!rep.feasible) {
        detail += fmt::format("; infeasible at receiver {}", rep.first_failure.value_or(0));
    }
    return {ok, detail};
}

Outcome check_feasible_with_oracle(int n, std::string& detail) {
    const WideReal w = find_omega(n, 1.0, 1e-4);
    const Schedule s = lambda_sequence({w, 1.0, 1e-4, n});
    const bool lib = is_feasible(s) && feasibility_report(s).monotone_doubling;
    const auto ref = oracle::direct_schedule(w.str(60, std::ios_base::scientific), 1.0, 1e-4, n);
    bool orc = ref.first_failure == 0 && static_cast<int>(ref.stages.size()) == n;
    for (const auto& st : ref.stages) {
        orc = orc && st.margin > 0;
    }
    detail += fmt::format("{}n={}: omega = {}, library {}, mpfr {} (min margin {})", detail.empty() ? "" : "; ", n,
                          wide(w, 6), lib ? "feasible" : "INFEASIBLE", orc ? "feasible" : "INFEASIBLE",
                          wide(s.stages.back().margin, 3));
    return {lib && orc, ""};
}

Outcome unbounded_evidence() {
    std::string detail;
    const bool ten = check_feasible_with_oracle(10, detail).passed;
    const bool sixteen = check_feasible_with_oracle(16, detail).passed;
    return {ten && sixteen, detail};
}

std::vector<mpq_class> odd_coefficients(const RationalPolynomial& p) {
    std::vector<mpq_class> out;
    for (std::size_t i = 1; i < p.coefficients().size(); i += 2) {
        out.push_back(p.coefficients()[i]);
    }
    return out;
}

std::vector<mpq_class> q(std::initializer_list<const char*> v) {
    std::vector<mpq_class> out;
    for (const char* s : v) {
        out.emplace_back(s);
    }
    return out;
}

Outcome polynomial_oracle() {
    const bool p2 = small_angle_poly(2).coefficients() == q({"1", "1/2"});
    const bool p3 = small_angle_poly(3).coefficients() == q({"1", "5/2", "2", "1/2"});
    const bool p4 = small_angle_poly(4).coefficients() == q({"1", "21/2", "42", "165/2", "88", "52", "16", "2"});
    const bool c2 = odd_coefficients(odd_power_expansion(2)) == q({"2", "1"});
    const bool c3 = odd_coefficients(odd_power_expansion(3)) == q({"4", "10", "8", "2"});
    const bool c4 = odd_coefficients(odd_power_expansion(4)) == q({"8", "84", "336", "660", "704", "416", "128", "16"});
    const bool exact = p2 && p3 && p4 && c2 && c3 && c4;

    const WideReal est = omega_estimate(4, 1.0, 1e-4);
    const WideReal closed = WideReal(2048) / (85 * (765 + 3347 * WideReal("1e-4")));
    const double rel = static_cast<double>(abs(est - closed) / closed);
    const double abs_err = std::abs(static_cast<double>(est) - 0.0315);
    const bool rel_ok = rel < 1e-9;
    const bool abs_ok = abs_err < 5e-4;
    return {exact && rel_ok && abs_ok,
            fmt::format("exact P2..P4, c2..c4: {}; omega_estimate = {}, closed form {}, rel diff {} ({} 1e-9); "
                        "|est - 0.0315| = {} ({} 5e-4)",
                        exact ? "match" : "MISMATCH", wide(est, 12), wide(closed, 12), sci(rel),
                        rel_ok ? "<" : "NOT <", sci(abs_err), abs_ok ? "<" : "NOT <")};
}

Outcome small_angle_consistency() {
    bool ok = true;
    std::string detail;
    const WideReal c1 = (1 + WideReal("1e-4")) / 2;
    for (const char* w : {"1e-3", "1e-4"}) {
        const WideReal omega(w);
        const Schedule s = lambda_sequence({omega, 1.0, 1e-4, 6});
        const WideReal limit = 5 * omega * omega;
        for (int k = 1; k <= 6; ++k) {
            std::string cell;
            if (static_cast<int>(s.stages.size()) < k) {
                ok = false;
                cell = "undefined (earlier lambda > 1)";
            } else {
                const WideReal pred = leading_coefficient(k, c1) * omega;
                const WideReal rel = abs(s.stages[k - 1].lambda - pred) / pred;
                const bool good = rel < limit;
                ok = ok && good;
                cell = fmt::format("{}{}", wide(rel, 2), good ? "" : " FAIL");
            }
            detail += fmt::format("{}w={} k={}: {}", detail.empty() ? "" : "; ", w, k, cell);
        }
    }
    return {ok, "rel err vs 2^(k-1) c1 P_k(c1^2) w, limit 5 w^2: " + detail};
}

Outcome threshold_values() {
    const int n = 100;
    const auto grid = report::parse_threshold_grid(fmt::format("arc:{}", n));
    double min_sym = INFINITY;
    for (const auto& dp : grid) {
        min_sym = std::min(min_sym, thresholds_or_sentinel(dp).lambda_symmetric_critical);
    }
    const double resolution = (std::numbers::pi / 2) / (n - 1);
    const double sym_err = std::abs(min_sym - kInvSqrt2);
    const double asym = thresholds({kInvSqrt2, kInvSqrt2}).lambda_asymmetric_critical;
    const double asym_err = std::abs(asym - (std::numbers::sqrt2 - 1));
    return {sym_err <= resolution && asym_err < 1e-9,
            fmt::format("min symmetric over {}-point arc = {:.6f} (|diff| {} <= {}); asymmetric at (1/sqrt2, "
                        "1/sqrt2) = {:.9f} (|diff| {})",
                        n, min_sym, sci(sym_err), sci(resolution), asym, sci(asym_err))};
}

struct McArtifacts {
    std::string json;
    std::string csv;
    bool passed;
    std::string detail;
};

McArtifacts monte_carlo_run(unsigned threads) {
    report::SimulationSetup setup;
    setup.omega = 0.3;
    setup.r = 1.0;
    setup.lambdas = {0.5, 0.8};
    setup.shots = 4000000;
    setup.seed = 20240601;
    SimulationConfig cfg{square_preparations(setup.omega, setup.r),
                         {{SharpObservable::x(), SharpObservable::z(), 0.5},
                          {SharpObservable::x(), SharpObservable::z(), 0.8}},
                         setup.shots,
                         setup.seed};
    const auto result = run(cfg, threads);
    const auto analytic = born_rule_successes(cfg.prep, cfg.steps);
    const auto rows = report::compare(result, setup.lambdas, analytic);

    const double quoted[2] = {0.775774, 0.752388};
    const double residual_limit = 3 / std::sqrt(static_cast<double>(setup.shots));
    bool ok = true;
    std::string detail;
    for (std::size_t k = 0; k < 2; ++k) {
        const auto& t = result.receivers[k];
        const double z = std::abs(rows[k].z_score);
        const double z_quoted = std::abs(t.empirical_success - quoted[k]) / t.standard_error;
        const double res = t.post_state_residual.norm();
        const bool good = z < 4 && z_quoted < 4 && res < residual_limit;
        ok = ok && good;
        detail += fmt::format("{}receiver {}: analytic {:.10f} (quoted {:.6f}), empirical {:.6f} +- {:.2e} "
                              "(|z| {:.2f} vs analytic, {:.2f} vs quoted), residual {} (limit {})",
                              k == 0 ? "" : "; ", k + 1, analytic[k], quoted[k], t.empirical_success,
                              t.standard_error, z, z_quoted, sci(res), sci(residual_limit));
    }
    return {report::simulation_json(setup, result, rows), report::comparison_csv(rows), ok, detail};
}

Outcome monte_carlo_convergence() {
    const auto a = monte_carlo_run(0);
    return {a.passed, a.detail};
}

Outcome determinism() {
    const Schedule s1 = lambda_sequence({WideReal("0.0315"), 1.0, 1e-4, 4});
    const Schedule s2 = lambda_sequence({WideReal("0.0315"), 1.0, 1e-4, 4});
    const std::string j1 = report::schedule_json(s1);
    const bool sched = j1 == report::schedule_json(s2) && report::schedule_csv(s1) == report::schedule_csv(s2);
    const bool roundtrip = report::schedule_json(report::schedule_from_json(j1)) == j1;
    const auto a = monte_carlo_run(1);
    const auto b = monte_carlo_run(4);
    const bool mc = a.json == b.json && a.csv == b.csv;
    return {sched && roundtrip && mc,
            fmt::format("schedule JSON/CSV identical: {}; JSON round trip identical: {}; 4e6-shot simulation "
                        "JSON/CSV identical across runs (1 vs 4 threads): {} (sha256 {})",
                        sched, roundtrip, mc, report::sha256_hex(a.json).substr(0, 16))};
}

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> all{
        {1, "optimal single-receiver code", 1, optimal_single_receiver},
        {2, "Delta1^2 + Delta2^2 <= 1 property suite", 30, squared_distinguishability_bound},
        {3, "exact vs recursion distinguishability", 60, recursion_equivalence},
        {4, "four-receiver schedule at w = 0.0315", 1, four_receiver_headline},
        {5, "feasible schedules for 10 and 16 receivers", 10, unbounded_evidence},
        {6, "exact small-angle polynomials and omega estimate", 1, polynomial_oracle},
        {7, "first-order small-angle consistency, k <= 6", 1, small_angle_consistency},
        {8, "critical unsharpness values", 5, threshold_values},
        {9, "Monte Carlo convergence", 120, monte_carlo_convergence},
        {10, "determinism of schedule and simulation outputs", 300, determinism},
    };
    return all;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Acceptance criteria for the seqrac library"};
    std::vector<int> selected;
    app.add_option("--criterion", selected, "Criterion number (repeatable); all when omitted")
        ->check(CLI::Range(1, static_cast<int>(criteria().size())));
    CLI11_PARSE(app, argc, argv);

    bool all_passed = true;
    for (const auto& c : criteria()) {
        if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end()) {
            continue;
        }
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.body();
        } catch (const std::exception& e) {
            o = {false, fmt::format("threw: {}", e.what())};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = secs <= c.budget_seconds;
        const bool passed = o.passed && in_time;
        all_passed = all_passed && passed;
        std::cout << fmt::format("[{}] criterion {:>2}: {} | {} | {:.2f} s (budget {} s{})\n", passed ? "PASS" : "FAIL",
                                 c.id, c.title, o.detail, secs, c.budget_seconds, in_time ? "" : ", EXCEEDED");
    }
    return all_passed ? 0 : 1;
}

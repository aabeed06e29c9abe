// seqrac: command-line front end for the sequential random access code library.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "seqrac/errors.hpp"
#include "seqrac/invariants.hpp"
#include "seqrac/monte_carlo.hpp"
#include "seqrac/rac.hpp"
#include "seqrac/report.hpp"
#include "seqrac/rng.hpp"
#include "seqrac/schedule.hpp"
#include "seqrac/sequential.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitUsage = 64;

using Files = std::vector<std::pair<std::string, std::string>>;

struct Infeasible : seqrac::Error {
    using seqrac::Error::Error;
};

struct Emitter {
    std::string out_dir;
    std::string format = "csv";

    // With --out every file goes to disk next to a manifest; otherwise the
    // file matching --format is printed.
    void emit(const std::string& command, const std::map<std::string, std::string>& params, const Files& files,
              const std::string& rng = "") const {
        if (!out_dir.empty()) {
            seqrac::report::RunManifest m;
            m.command = command;
            m.parameters = params;
            m.rng_algorithm = rng;
            m.timestamp = seqrac::report::utc_timestamp();
            seqrac::report::write_outputs(out_dir, m, files);
            return;
        }
        for (const auto& [name, content] : files) {
            if (name.ends_with(format == "text" ? ".txt" : "." + format)) {
                std::cout << content;
                return;
            }
        }
        std::cout << files.front().second;
    }
};

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw seqrac::ConfigError(fmt::format("'{}' is not a number", item));
        }
    }
    if (out.empty()) {
        throw seqrac::ConfigError("empty lambda list");
    }
    return out;
}

std::vector<seqrac::SequentialChannelStep> square_steps(const std::vector<double>& lambdas) {
    std::vector<seqrac::SequentialChannelStep> steps;
    for (double l : lambdas) {
        steps.emplace_back(seqrac::SharpObservable::x(), seqrac::SharpObservable::z(), l);
    }
    return steps;
}

std::vector<double> schedule_lambdas(double omega, double r, double epsilon, int n) {
    const seqrac::Schedule s = seqrac::lambda_sequence({seqrac::WideReal(omega), r, epsilon, n});
    const auto rep = seqrac::feasibility_report(s);
    if (!rep.feasible) {
        throw Infeasible(
            fmt::format("schedule (omega={}, n={}) is infeasible at receiver {}", omega, n, rep.first_failure.value_or(0)));
    }
    std::vector<double> out;
    for (const auto& st : s.stages) {
        out.push_back(static_cast<double>(st.lambda));
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sequential 2->1 quantum random access codes with unsharp receivers"};
    app.require_subcommand(1);
    app.set_version_flag("--version", seqrac::report::kToolVersion);

    Emitter emitter;
    std::map<CLI::App*, std::string> formats;
    auto add_output = [&](CLI::App* cmd, const std::string& default_format, std::vector<std::string> allowed) {
        formats[cmd] = default_format;
        cmd->add_option("--out", emitter.out_dir, "Directory for data files and manifest.json");
        cmd->add_option("--format", formats[cmd], "Printed format when --out is absent")
            ->check(CLI::IsMember(std::move(allowed)));
    };

    std::string grid = "arc:101";
    auto* thresholds = app.add_subcommand("thresholds", "Critical unsharpness over a distinguishability grid");
    thresholds->add_option("--grid", grid, "arc:N | delta1=A:B:N[,delta2=V]");
    add_output(thresholds, "csv", {"csv"});

    int resolution = 101;
    auto* region = app.add_subcommand("region", "Quantum disc vs classical simplex classification grid");
    region->add_option("--resolution", resolution, "Points per axis")->check(CLI::Range(2, 100000));
    add_output(region, "csv", {"csv"});

    std::string omega_text = "auto";
    double r = 1.0;
    double epsilon = 1e-4;
    int n = 4;
    auto* schedule = app.add_subcommand("schedule", "Unsharpness schedule for n receivers");
    schedule->add_option("--omega", omega_text, "Preparation angle in radians, or 'auto'");
    schedule->add_option("--r", r, "Second-bit contraction r in (0, 1]");
    schedule->add_option("--epsilon", epsilon, "Headroom factor epsilon > 0");
    schedule->add_option("--n", n, "Number of receivers")->check(CLI::PositiveNumber);
    add_output(schedule, "json", {"csv", "json"});

    double seq_omega = 0.3;
    std::string lambdas_text;
    auto* sequence = app.add_subcommand("sequence", "Propagate square preparations through a receiver chain");
    sequence->add_option("--omega", seq_omega, "Preparation angle in radians");
    sequence->add_option("--r", r, "Second-bit contraction r in (0, 1]");
    sequence->add_option("--lambdas", lambdas_text, "Comma-separated unsharpness per receiver");
    sequence->add_option("--epsilon", epsilon, "Headroom factor when lambdas come from a schedule");
    sequence->add_option("--n", n, "Receivers when lambdas come from a schedule")->check(CLI::PositiveNumber);
    add_output(sequence, "csv", {"csv"});

    std::string config_path;
    std::optional<std::int64_t> shots;
    std::optional<std::uint64_t> seed;
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo run of the receiver chain");
    simulate->add_option("config", config_path, "key = value configuration file")->required();
    simulate->add_option("--shots", shots, "Override the number of shots");
    simulate->add_option("--seed", seed, "Override the seed");
    add_output(simulate, "json", {"csv", "json"});

    int poly_k = 3;
    auto* poly = app.add_subcommand("poly", "Exact small-angle polynomial P_k and the expansion of c_k");
    poly->add_option("k", poly_k, "Index k in [1, 16]")->required();
    add_output(poly, "text", {"text", "csv", "json"});

    seqrac::VerifyOptions verify_options;
    auto* verify = app.add_subcommand("verify", "Run the invariant suite");
    verify->add_option("--samples", verify_options.samples, "Random samples per property");
    verify->add_option("--seed", verify_options.seed, "Seed for the property samples");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Error& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }
    for (const auto& [cmd, f] : formats) {
        if (*cmd) {
            emitter.format = f;
        }
    }

    try {
        if (*thresholds) {
            const auto points = seqrac::report::parse_threshold_grid(grid);
            emitter.emit("thresholds", {{"grid", grid}}, {{"thresholds.csv", seqrac::report::thresholds_csv(points)}});
            return kExitOk;
        }
        if (*region) {
            emitter.emit("region", {{"resolution", std::to_string(resolution)}},
                         {{"region.csv", seqrac::report::region_csv(resolution)}});
            return kExitOk;
        }
        if (*schedule) {
            const seqrac::WideReal omega = omega_text == "auto" ? seqrac::find_omega(n, r, epsilon)
                                                                : seqrac::WideReal(omega_text);
            const seqrac::Schedule s = seqrac::lambda_sequence({omega, r, epsilon, n});
            const auto rep = seqrac::feasibility_report(s);
            emitter.emit("schedule",
                         {{"omega", omega_text},
                          {"r", seqrac::report::format_double(r)},
                          {"epsilon", seqrac::report::format_double(epsilon)},
                          {"n", std::to_string(n)}},
                         {{"schedule.json", seqrac::report::schedule_json(s)},
                          {"schedule.csv", seqrac::report::schedule_csv(s)}});
            if (!rep.feasible) {
                std::cerr << fmt::format("infeasible: receiver {} needs lambda outside (0, 1)\n",
                                         rep.first_failure.value_or(static_cast<int>(s.stages.size()) + 1));
                return kExitInfeasible;
            }
            return kExitOk;
        }
        if (*sequence) {
            const std::vector<double> lambdas =
                lambdas_text.empty() ? schedule_lambdas(seq_omega, r, epsilon, n) : parse_list(lambdas_text);
            const auto prep = seqrac::square_preparations(seq_omega, r);
            const auto steps = square_steps(lambdas);
            const auto trace = seqrac::propagate(prep, steps);
            const auto born = seqrac::born_rule_successes(prep, steps);
            std::map<std::string, std::string> params{{"omega", seqrac::report::format_double(seq_omega)},
                                                      {"r", seqrac::report::format_double(r)}};
            params["lambdas"] = lambdas_text.empty() ? fmt::format("schedule(n={}, epsilon={})", n, epsilon)
                                                     : lambdas_text;
            emitter.emit("sequence", params, {{"sequence.csv", seqrac::report::sequence_csv(trace, lambdas, born)}});
            return kExitOk;
        }
        if (*simulate) {
            std::ifstream is(config_path);
            if (!is) {
                throw seqrac::ConfigError(fmt::format("cannot read config '{}'", config_path));
            }
            std::stringstream buf;
            buf << is.rdbuf();
            auto setup = seqrac::report::parse_simulation_config(buf.str());
            if (shots) {
                setup.shots = *shots;
            }
            if (seed) {
                setup.seed = *seed;
            }
            if (setup.schedule_n) {
                setup.lambdas = schedule_lambdas(setup.omega, setup.r, setup.epsilon, *setup.schedule_n);
            }
            seqrac::SimulationConfig config{seqrac::square_preparations(setup.omega, setup.r),
                                            square_steps(setup.lambdas), setup.shots, setup.seed};
            const auto result = seqrac::run(config);
            const auto analytic = seqrac::born_rule_successes(config.prep, config.steps);
            const auto rows = seqrac::report::compare(result, setup.lambdas, analytic);
            std::string lambda_list;
            for (double l : setup.lambdas) {
                lambda_list += (lambda_list.empty() ? "" : ",") + seqrac::report::format_double(l);
            }
            emitter.emit("simulate",
                         {{"omega", seqrac::report::format_double(setup.omega)},
                          {"r", seqrac::report::format_double(setup.r)},
                          {"lambdas", lambda_list},
                          {"shots", std::to_string(setup.shots)},
                          {"seed", std::to_string(setup.seed)}},
                         {{"simulation.json", seqrac::report::simulation_json(setup, result, rows)},
                          {"comparison.csv", seqrac::report::comparison_csv(rows)}},
                         std::string(seqrac::kRngAlgorithm));
            return kExitOk;
        }
        if (*poly) {
            emitter.emit("poly", {{"k", std::to_string(poly_k)}},
                         {{"poly.txt", seqrac::report::poly_text(poly_k)},
                          {"poly.csv", seqrac::report::poly_csv(poly_k)},
                          {"poly.json", seqrac::report::poly_json(poly_k)}});
            return kExitOk;
        }
        if (*verify) {
            bool all = true;
            for (const auto& c : seqrac::run_invariant_suite(verify_options)) {
                std::cout << fmt::format("[{}] {}: {}\n", c.passed ? "PASS" : "FAIL", c.name, c.detail);
                all = all && c.passed;
            }
            return all ? kExitOk : kExitFailure;
        }
    } catch (const Infeasible& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const seqrac::ConfigError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const seqrac::DomainError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitUsage;
}

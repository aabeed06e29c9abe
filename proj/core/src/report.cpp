#include "seqrac/report.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <numbers>
#include <sstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>
#include <openssl/evp.h>

#include "seqrac/errors.hpp"

namespace seqrac::report {

using json = nlohmann::ordered_json;

std::string format_double(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    return fmt::format("{:.17g}", v);
}

namespace {

const char* flag(bool b) { return b ? "true" : "false"; }

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) {
        return "";
    }
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(s);
    while (std::getline(is, item, sep)) {
        out.push_back(trim(item));
    }
    return out;
}

double parse_number(const std::string& text, const std::string& what) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) {
            throw ConfigError("");
        }
        return v;
    } catch (const std::exception&) {
        throw ConfigError(fmt::format("{}: '{}' is not a number", what, text));
    }
}

long long parse_integer(const std::string& text, const std::string& what) {
    try {
        std::size_t used = 0;
        const long long v = std::stoll(text, &used);
        if (used != text.size()) {
            throw ConfigError("");
        }
        return v;
    } catch (const std::exception&) {
        throw ConfigError(fmt::format("{}: '{}' is not an integer", what, text));
    }
}

// Decimal string plus the double nearest to that string. Emitting the
// double from the string keeps parse -> emit byte-identical.
void put_wide(json& j, const std::string& key, const WideReal& v) {
    const std::string dec = to_decimal(v);
    j[key] = std::strtod(dec.c_str(), nullptr);
    j[key + "_dec"] = dec;
}

WideReal get_wide(const json& j, const std::string& key) { return WideReal(j.at(key + "_dec").get<std::string>()); }

}  // namespace

// ---- thresholds -----------------------------------------------------------

std::vector<DistinguishabilityPair> parse_threshold_grid(const std::string& text) {
    std::vector<DistinguishabilityPair> out;
    if (text.rfind("arc:", 0) == 0) {
        const long long n = parse_integer(text.substr(4), "arc grid");
        if (n < 2) {
            throw ConfigError("arc grid needs at least 2 points");
        }
        for (long long i = 0; i < n; ++i) {
            if (i == 0) {
                out.push_back({1.0, 0.0});
            } else if (i == n - 1) {
                out.push_back({0.0, 1.0});
            } else {
                const double theta = (std::numbers::pi / 2) * static_cast<double>(i) / static_cast<double>(n - 1);
                out.push_back({std::cos(theta), std::sin(theta)});
            }
        }
        return out;
    }

    std::optional<std::string> d1;
    std::optional<double> d2;
    for (const auto& part : split(text, ',')) {
        const auto eq = part.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(fmt::format("threshold grid: expected key=value, got '{}'", part));
        }
        const std::string key = trim(part.substr(0, eq));
        const std::string value = trim(part.substr(eq + 1));
        if (key == "delta1") {
            d1 = value;
        } else if (key == "delta2") {
            d2 = parse_number(value, "delta2");
        } else {
            throw ConfigError(fmt::format("threshold grid: unknown key '{}'", key));
        }
    }
    if (!d1) {
        throw ConfigError("threshold grid: delta1=A:B:N is required");
    }
    const auto range = split(*d1, ':');
    if (range.size() != 3) {
        throw ConfigError("threshold grid: delta1 must be A:B:N");
    }
    const double a = parse_number(range[0], "delta1 start");
    const double b = parse_number(range[1], "delta1 stop");
    const long long n = parse_integer(range[2], "delta1 count");
    if (n < 1 || !(a >= 0.0 && a <= 1.0) || !(b >= 0.0 && b <= 1.0) || b < a) {
        throw ConfigError("threshold grid: delta1 range must satisfy 0 <= A <= B <= 1 and N >= 1");
    }
    if (d2 && !(*d2 >= 0.0 && *d2 <= 1.0)) {
        throw ConfigError("threshold grid: delta2 must lie in [0, 1]");
    }
    for (long long i = 0; i < n; ++i) {
        const double t = n == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(n - 1);
        const double x = a + (b - a) * t;
        const double y = d2 ? *d2 : std::sqrt(std::max(0.0, 1.0 - x * x));
        if (x * x + y * y > 1.0 + 1e-12) {
            throw ConfigError(fmt::format("threshold grid: ({}, {}) lies outside the unit disc", x, y));
        }
        out.push_back({x, y});
    }
    return out;
}

std::string thresholds_csv(const std::vector<DistinguishabilityPair>& grid) {
    std::string out = "delta1,delta2,lambda_sym_critical,lambda_asym_critical,simplex_violated\n";
    for (const auto& dp : grid) {
        const ThresholdReport t = thresholds_or_sentinel(dp);
        out += fmt::format("{},{},{},{},{}\n", format_double(dp.delta1), format_double(dp.delta2),
                           format_double(t.lambda_symmetric_critical), format_double(t.lambda_asymmetric_critical),
                           flag(t.classical_simplex_violated));
    }
    return out;
}

// ---- region ---------------------------------------------------------------

RegionCell classify_region(double delta1, double delta2) {
    return {delta1 * delta1 + delta2 * delta2 <= 1.0, delta1 + delta2 <= 1.0};
}

std::string region_csv(int resolution) {
    if (resolution < 2) {
        throw ConfigError("region: resolution must be at least 2");
    }
    std::string out = "delta1,delta2,inside_quantum_disc,inside_classical_simplex\n";
    for (int i = 0; i < resolution; ++i) {
        for (int j = 0; j < resolution; ++j) {
            const double d1 = static_cast<double>(i) / (resolution - 1);
            const double d2 = static_cast<double>(j) / (resolution - 1);
            const RegionCell c = classify_region(d1, d2);
            out += fmt::format("{},{},{},{}\n", format_double(d1), format_double(d2), flag(c.inside_quantum_disc),
                               flag(c.inside_classical_simplex));
        }
    }
    return out;
}

// ---- schedules ------------------------------------------------------------

std::string schedule_json(const Schedule& s) {
    const FeasibilityReport rep = feasibility_report(s);
    json j;
    j["schema"] = kScheduleSchema;
    json params;
    put_wide(params, "omega", s.params.omega);
    params["r"] = s.params.r;
    params["epsilon"] = s.params.epsilon;
    params["n"] = s.params.n;
    j["params"] = params;
    j["feasible"] = rep.feasible;
    j["monotone_doubling"] = rep.monotone_doubling;
    j["first_failure"] = rep.first_failure ? json(*rep.first_failure) : json(nullptr);
    json rows = json::array();
    for (std::size_t i = 0; i < s.stages.size(); ++i) {
        const auto& st = s.stages[i];
        json row;
        row["k"] = i + 1;
        put_wide(row, "lambda", st.lambda);
        put_wide(row, "m_product", st.m_product);
        put_wide(row, "delta1", st.delta1);
        put_wide(row, "delta1_deficit", st.delta1_deficit);
        put_wide(row, "delta2", st.delta2);
        put_wide(row, "success", st.success);
        put_wide(row, "margin", st.margin);
        rows.push_back(row);
    }
    j["receivers"] = rows;
    return j.dump(2) + "\n";
}

Schedule schedule_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(fmt::format("schedule json: {}", e.what()));
    }
    try {
        if (j.at("schema").get<std::string>() != kScheduleSchema) {
            throw ConfigError("schedule json: unsupported schema");
        }
        Schedule s;
        const json& p = j.at("params");
        s.params.omega = get_wide(p, "omega");
        s.params.r = p.at("r").get<double>();
        s.params.epsilon = p.at("epsilon").get<double>();
        s.params.n = p.at("n").get<int>();
        for (const json& row : j.at("receivers")) {
            ReceiverStage st;
            st.lambda = get_wide(row, "lambda");
            st.m_product = get_wide(row, "m_product");
            st.delta1 = get_wide(row, "delta1");
            st.delta1_deficit = get_wide(row, "delta1_deficit");
            st.delta2 = get_wide(row, "delta2");
            st.success = get_wide(row, "success");
            st.margin = get_wide(row, "margin");
            s.stages.push_back(std::move(st));
        }
        return s;
    } catch (const json::exception& e) {
        throw ConfigError(fmt::format("schedule json: {}", e.what()));
    }
}

std::string schedule_csv(const Schedule& s) {
    std::string out = "k,lambda,m_product,delta1,delta2,success,margin,feasible\n";
    for (std::size_t i = 0; i < s.stages.size(); ++i) {
        const auto& st = s.stages[i];
        const bool ok = st.lambda > 0 && st.lambda < 1;
        out += fmt::format("{},{},{},{},{},{},{},{}\n", i + 1, format_double(static_cast<double>(st.lambda)),
                           format_double(static_cast<double>(st.m_product)),
                           format_double(static_cast<double>(st.delta1)),
                           format_double(static_cast<double>(st.delta2)),
                           format_double(static_cast<double>(st.success)),
                           format_double(static_cast<double>(st.margin)), flag(ok));
    }
    return out;
}

// ---- sequential traces ----------------------------------------------------

std::string sequence_csv(const SequentialTrace& trace, const std::vector<double>& lambdas,
                         const std::vector<double>& born_rule) {
    std::string out =
        "k,lambda,delta1_exact,delta2_exact,delta1_recursion,delta2_recursion,success,success_born_rule\n";
    for (std::size_t i = 0; i < trace.entries.size(); ++i) {
        const auto& e = trace.entries[i];
        const bool receiver = i < lambdas.size();
        out += fmt::format("{},{},{},{},{},{},{},{}\n", i + 1, receiver ? format_double(lambdas[i]) : "",
                           format_double(e.exact.delta1), format_double(e.exact.delta2),
                           format_double(e.recursion.delta1), format_double(e.recursion.delta2),
                           e.success_probability ? format_double(*e.success_probability) : "",
                           i < born_rule.size() ? format_double(born_rule[i]) : "");
    }
    return out;
}

// ---- simulation -----------------------------------------------------------

SimulationSetup parse_simulation_config(const std::string& text) {
    SimulationSetup setup;
    bool have_lambdas = false;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(fmt::format("config line {}: expected key = value", lineno));
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "omega") {
            setup.omega = parse_number(value, key);
        } else if (key == "r") {
            setup.r = parse_number(value, key);
        } else if (key == "epsilon") {
            setup.epsilon = parse_number(value, key);
        } else if (key == "n") {
            setup.schedule_n = static_cast<int>(parse_integer(value, key));
        } else if (key == "shots") {
            setup.shots = parse_integer(value, key);
        } else if (key == "seed") {
            setup.seed = static_cast<std::uint64_t>(parse_integer(value, key));
        } else if (key == "lambdas") {
            setup.lambdas.clear();
            for (const auto& item : split(value, ',')) {
                setup.lambdas.push_back(parse_number(item, key));
            }
            have_lambdas = true;
        } else {
            throw ConfigError(fmt::format("config line {}: unknown key '{}'", lineno, key));
        }
    }
    if (have_lambdas == setup.schedule_n.has_value()) {
        throw ConfigError("config: give exactly one of 'lambdas' or 'n'");
    }
    if (setup.shots < 1) {
        throw ConfigError("config: shots must be positive");
    }
    return setup;
}

std::vector<ComparisonRow> compare(const SimulationResult& result, const std::vector<double>& lambdas,
                                   const std::vector<double>& analytic) {
    std::vector<ComparisonRow> rows;
    for (std::size_t k = 0; k < result.receivers.size(); ++k) {
        const auto& t = result.receivers[k];
        const double se = t.standard_error;
        const double diff = t.empirical_success - analytic.at(k);
        const double z = se > 0.0 ? diff / se : (diff == 0.0 ? 0.0 : std::copysign(INFINITY, diff));
        rows.push_back({static_cast<int>(k) + 1, lambdas.at(k), analytic.at(k), t.empirical_success, se, z,
                        t.shots_counted});
    }
    return rows;
}

std::string simulation_json(const SimulationSetup& setup, const SimulationResult& result,
                            const std::vector<ComparisonRow>& rows) {
    json j;
    j["schema"] = kSimulationSchema;
    j["rng_algorithm"] = result.rng_algorithm;
    j["seed"] = result.seed;
    j["omega"] = setup.omega;
    j["r"] = setup.r;
    j["shots"] = setup.shots;
    json rec = json::array();
    for (std::size_t k = 0; k < rows.size(); ++k) {
        const auto& row = rows[k];
        const auto& t = result.receivers[k];
        json r;
        r["k"] = row.receiver;
        r["lambda"] = row.lambda;
        r["analytic_success"] = row.analytic;
        r["empirical_success"] = row.empirical;
        r["standard_error"] = row.standard_error;
        r["shots_counted"] = t.shots_counted;
        r["successes"] = t.successes;
        r["asked_first"] = t.asked_first;
        r["asked_second"] = t.asked_second;
        r["post_state_residual"] = {t.post_state_residual.x(), t.post_state_residual.y(),
                                    t.post_state_residual.z()};
        rec.push_back(r);
    }
    j["receivers"] = rec;
    return j.dump(2) + "\n";
}

std::string comparison_csv(const std::vector<ComparisonRow>& rows) {
    std::string out = "k,lambda,analytic,empirical,standard_error,z_score,shots\n";
    for (const auto& r : rows) {
        out += fmt::format("{},{},{},{},{},{},{}\n", r.receiver, format_double(r.lambda), format_double(r.analytic),
                           format_double(r.empirical), format_double(r.standard_error), format_double(r.z_score),
                           r.shots);
    }
    return out;
}

// ---- polynomials ----------------------------------------------------------

std::string poly_text(int k) {
    const RationalPolynomial p = small_angle_poly(k);
    const RationalPolynomial c = odd_power_expansion(k);
    return fmt::format("P_{}(x) = {}\nc_{} = {}\n", k, p.to_string("x"), k, c.to_string("c1"));
}

std::string poly_csv(int k) {
    const RationalPolynomial p = small_angle_poly(k);
    const RationalPolynomial c = odd_power_expansion(k);
    std::string out = "j,x_power,c1_power,p_coefficient,c_coefficient\n";
    for (std::size_t j = 0; j < p.coefficients().size(); ++j) {
        out += fmt::format("{},{},{},{},{}\n", j, j, 2 * j + 1, p.coefficients()[j].get_str(),
                           c.coefficient(2 * j + 1).get_str());
    }
    return out;
}

std::string poly_json(int k) {
    const RationalPolynomial p = small_angle_poly(k);
    const RationalPolynomial c = odd_power_expansion(k);
    json j;
    j["schema"] = kPolySchema;
    j["k"] = k;
    json pc = json::array();
    for (const auto& q : p.coefficients()) {
        pc.push_back(q.get_str());
    }
    j["p_coefficients"] = pc;
    json odd = json::array();
    for (std::size_t i = 1; i < c.coefficients().size(); i += 2) {
        odd.push_back(c.coefficients()[i].get_str());
    }
    j["c_odd_coefficients"] = odd;
    return j.dump(2) + "\n";
}

// ---- manifest -------------------------------------------------------------

std::string sha256_hex(const std::string& bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
        throw Error("sha256 digest failed");
    }
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out += fmt::format("{:02x}", digest[i]);
    }
    return out;
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string manifest_json(const RunManifest& m) {
    json j;
    j["schema"] = kManifestSchema;
    j["command"] = m.command;
    json params = json::object();
    for (const auto& [k, v] : m.parameters) {
        params[k] = v;
    }
    j["parameters"] = params;
    j["tool_version"] = m.tool_version;
    j["rng_algorithm"] = m.rng_algorithm;
    j["timestamp"] = m.timestamp;
    json outs = json::array();
    for (const auto& o : m.outputs) {
        outs.push_back({{"file", o.name}, {"sha256", o.sha256}});
    }
    j["outputs"] = outs;
    return j.dump(2) + "\n";
}

void write_outputs(const std::filesystem::path& dir, RunManifest manifest,
                   const std::vector<std::pair<std::string, std::string>>& files) {
    std::filesystem::create_directories(dir);
    for (const auto& [name, content] : files) {
        std::ofstream os(dir / name, std::ios::binary);
        if (!os) {
            throw Error(fmt::format("cannot write {}", (dir / name).string()));
        }
        os << content;
        manifest.outputs.push_back({name, sha256_hex(content)});
    }
    std::ofstream os(dir / "manifest.json", std::ios::binary);
    os << manifest_json(manifest);
}

}  // namespace seqrac::report

#pragma once

// Plot-ready CSV/JSON emitters, the simulation config reader and the run
// manifest used by the seqrac command-line tool.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "seqrac/monte_carlo.hpp"
#include "seqrac/rac.hpp"
#include "seqrac/schedule.hpp"
#include "seqrac/sequential.hpp"
#include "seqrac/small_angle.hpp"

namespace seqrac::report {

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr const char* kScheduleSchema = "seqrac.schedule/1";
inline constexpr const char* kSimulationSchema = "seqrac.simulation/1";
inline constexpr const char* kManifestSchema = "seqrac.manifest/1";
inline constexpr const char* kPolySchema = "seqrac.poly/1";

// 17 significant digits; "inf"/"-inf"/"nan" for non-finite values.
std::string format_double(double v);

// ---- thresholds -----------------------------------------------------------

// Grid of (Delta1, Delta2) points. Specs:
//   "arc:N"               N angles evenly spaced on the quarter unit circle
//   "delta1=A:B:N"        N values of Delta1 in [A, B] on the unit arc
//   "delta1=A:B:N,delta2=V"  same with Delta2 fixed to V
// Throws ConfigError on malformed or out-of-range grids.
std::vector<DistinguishabilityPair> parse_threshold_grid(const std::string& text);

std::string thresholds_csv(const std::vector<DistinguishabilityPair>& grid);

// ---- region ---------------------------------------------------------------

struct RegionCell {
    bool inside_quantum_disc;       // Delta1^2 + Delta2^2 <= 1
    bool inside_classical_simplex;  // Delta1 + Delta2 <= 1
};

RegionCell classify_region(double delta1, double delta2);

// resolution x resolution grid over [0, 1]^2. Throws ConfigError for resolution < 2.
std::string region_csv(int resolution);

// ---- schedules ------------------------------------------------------------

std::string schedule_json(const Schedule& s);
Schedule schedule_from_json(const std::string& text);
std::string schedule_csv(const Schedule& s);

// ---- sequential traces ----------------------------------------------------

std::string sequence_csv(const SequentialTrace& trace, const std::vector<double>& lambdas,
                         const std::vector<double>& born_rule);

// ---- simulation -----------------------------------------------------------

// Either explicit lambdas or (n, epsilon) for a generated schedule; the
// preparations are square_preparations(omega, r).
struct SimulationSetup {
    double omega = 0.3;
    double r = 1.0;
    std::vector<double> lambdas;
    std::optional<int> schedule_n;
    double epsilon = 1e-4;
    std::int64_t shots = 1000000;
    std::uint64_t seed = 1;
};

// key = value lines, '#' starts a comment. Keys: omega, r, lambdas
// (comma separated), n, epsilon, shots, seed. Throws ConfigError.
SimulationSetup parse_simulation_config(const std::string& text);

struct ComparisonRow {
    int receiver;
    double lambda;
    double analytic;
    double empirical;
    double standard_error;
    double z_score;
    std::int64_t shots;
};

std::vector<ComparisonRow> compare(const SimulationResult& result, const std::vector<double>& lambdas,
                                   const std::vector<double>& analytic);

std::string simulation_json(const SimulationSetup& setup, const SimulationResult& result,
                            const std::vector<ComparisonRow>& rows);
std::string comparison_csv(const std::vector<ComparisonRow>& rows);

// ---- polynomials ----------------------------------------------------------

std::string poly_text(int k);
// One row per power: coefficient of x^j in P_k and of c1^(2j+1) in c_k.
std::string poly_csv(int k);
std::string poly_json(int k);

// ---- manifest -------------------------------------------------------------

struct OutputFile {
    std::string name;
    std::string sha256;
};

struct RunManifest {
    std::string command;
    std::map<std::string, std::string> parameters;
    std::string tool_version = kToolVersion;
    std::string rng_algorithm;
    std::string timestamp;  // UTC, ISO 8601
    std::vector<OutputFile> outputs;
};

std::string sha256_hex(const std::string& bytes);
std::string utc_timestamp();
std::string manifest_json(const RunManifest& m);

// Writes each (name, content) into dir, then manifest.json listing their
// digests. Creates dir when missing.
void write_outputs(const std::filesystem::path& dir, RunManifest manifest,
                   const std::vector<std::pair<std::string, std::string>>& files);

}  // namespace seqrac::report

#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cancermatch/domain.hpp"
#include "cancermatch/geo.hpp"
#include "cancermatch/rounds.hpp"

namespace cancermatch {

// Minimal RFC 4180 field splitting: commas, double-quoted fields with ""
// escapes, no embedded newlines.
std::vector<std::string> split_csv_line(std::string_view line);
std::string csv_field(std::string_view value);

StateAdjacency load_adjacency(const std::filesystem::path& path);

// Header `id,name,city,state,type,staffed_beds,treatment_cost`. Basic
// Laboratory rows are skipped; a note per skipped row goes to `skipped` when
// given. Throws ParseError for malformed text and ValidationError (message
// prefixed with the line) for rows that break an invariant.
std::vector<CancerCenter> read_centers(std::istream& in, const StateAdjacency& adj,
                                       std::vector<std::string>* skipped = nullptr);
std::vector<CancerCenter> load_centers(const std::filesystem::path& path, const StateAdjacency& adj,
                                       std::vector<std::string>* skipped = nullptr);
void write_centers(std::ostream& out, const std::vector<CancerCenter>& centers);

// Header `id,state,annual_income,risk_score`.
std::vector<Patient> read_patients(std::istream& in, const StateAdjacency& adj);
std::vector<Patient> load_patients(const std::filesystem::path& path, const StateAdjacency& adj);
void write_patients(std::ostream& out, const std::vector<Patient>& patients);

// Lines `patient_id,round_no,ACCEPT|DECLINE`; `#` comments and blank lines
// ignored. An optional header starting with `patient_id` is skipped.
ScriptedAcceptance read_acceptance_script(std::istream& in);
ScriptedAcceptance load_acceptance_script(const std::filesystem::path& path);

// `always`, `bernoulli:P` or `script:PATH`. Throws std::invalid_argument.
AcceptancePolicy parse_policy(std::string_view text);

// Decimal with at most one fractional half, e.g. "3" or "2.5".
Distance parse_distance(std::string_view text);
RiskScore parse_risk(std::string_view text);

struct ScenarioConfig {
    std::filesystem::path patients;
    std::filesystem::path centers;
    std::filesystem::path adjacency;
    std::filesystem::path out_dir;
    MatchConfig match;
    bool verify = false;
    bool trace = false;
};

enum ExitCode : int {
    kExitOk = 0,
    kExitInputError = 2,
    kExitNoEligible = 3,
    kExitAuditFailed = 4,
};

// Loads inputs, runs every round, and writes assignments.csv, rounds.json
// and summary.json (plus trace_round_<k>.csv with trace on) into out_dir.
// Diagnostics go to `log`. Returns an ExitCode.
int run_scenario(const ScenarioConfig& cfg, std::ostream& log);

// Entry point of the `cancermatch` tool.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cancermatch

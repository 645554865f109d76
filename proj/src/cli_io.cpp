#include "cancermatch/cli_io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "cancermatch/errors.hpp"
#include "cancermatch/verify.hpp"

namespace cancermatch {

namespace fs = std::filesystem;
using nlohmann::json;

std::vector<std::string> split_csv_line(std::string_view line) {
    if (!line.empty() && line.back() == '\r') {
        line.remove_suffix(1);
    }
    std::vector<std::string> fields(1);
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                fields.back() += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                fields.back() += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.emplace_back();
        } else {
            fields.back() += c;
        }
    }
    if (quoted) {
        throw std::invalid_argument("unterminated quoted field");
    }
    return fields;
}

std::string csv_field(std::string_view value) {
    if (value.find_first_of(",\"") == std::string_view::npos) {
        return std::string(value);
    }
    std::string out = "\"";
    for (const char c : value) {
        out += c;
        if (c == '"') {
            out += '"';
        }
    }
    return out + "\"";
}

namespace {

std::ifstream open_input(const fs::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot open " + path.string());
    }
    return in;
}

template <typename Int>
Int parse_int(std::string_view text, std::size_t line_no, const char* field) {
    Int value{};
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end || text.empty()) {
        throw ParseError(line_no, std::string("bad ") + field + " '" + std::string(text) + "'");
    }
    return value;
}

double parse_double(std::string_view text, std::size_t line_no, const char* field) {
    double value{};
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end || text.empty()) {
        throw ParseError(line_no, std::string("bad ") + field + " '" + std::string(text) + "'");
    }
    return value;
}

// Reads a header-led CSV, handing each data row and its 1-based line number
// to `row`. Blank lines are skipped.
template <typename RowFn>
void read_table(std::istream& in, std::string_view expected_header, std::size_t columns, RowFn&& row) {
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line)) {
        throw ParseError(1, "missing header");
    }
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    if (line != expected_header) {
        throw ParseError(line_no, "expected header '" + std::string(expected_header) + "'");
    }
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") {
            continue;
        }
        std::vector<std::string> fields;
        try {
            fields = split_csv_line(line);
        } catch (const std::invalid_argument& e) {
            throw ParseError(line_no, e.what());
        }
        if (fields.size() != columns) {
            throw ParseError(line_no, "expected " + std::to_string(columns) + " fields, got " +
                                          std::to_string(fields.size()));
        }
        try {
            row(fields, line_no);
        } catch (const ValidationError& e) {
            throw ValidationError(e.kind(), "line " + std::to_string(line_no) + ": " + e.detail());
        }
    }
}

}  // namespace

StateAdjacency load_adjacency(const fs::path& path) {
    auto in = open_input(path);
    return StateAdjacency::parse(in);
}

std::vector<CancerCenter> read_centers(std::istream& in, const StateAdjacency& adj, std::vector<std::string>* skipped) {
    RecordValidator validator(adj.states());
    std::vector<CancerCenter> centers;
    read_table(in, "id,name,city,state,type,staffed_beds,treatment_cost", 7,
               [&](const std::vector<std::string>& f, std::size_t line_no) {
                   CenterRecord raw{parse_int<std::uint64_t>(f[0], line_no, "id"),
                                    f[1],
                                    f[2],
                                    f[3],
                                    f[4],
                                    parse_int<std::int64_t>(f[5], line_no, "staffed_beds"),
                                    parse_int<std::int64_t>(f[6], line_no, "treatment_cost")};
                   try {
                       centers.push_back(validator.center(raw));
                   } catch (const ValidationError& e) {
                       if (e.kind() != ValidationErrorKind::BasicLaboratoryExcluded) {
                           throw;
                       }
                       if (skipped) {
                           skipped->push_back("line " + std::to_string(line_no) + ": " + e.what());
                       }
                   }
               });
    return centers;
}

std::vector<CancerCenter> load_centers(const fs::path& path, const StateAdjacency& adj,
                                       std::vector<std::string>* skipped) {
    auto in = open_input(path);
    return read_centers(in, adj, skipped);
}

void write_centers(std::ostream& out, const std::vector<CancerCenter>& centers) {
    out << "id,name,city,state,type,staffed_beds,treatment_cost\n";
    for (const auto& c : centers) {
        out << c.id << ',' << csv_field(c.name) << ',' << csv_field(c.city) << ',' << c.state << ','
            << to_string(c.type) << ',' << c.staffed_beds_total << ',' << c.treatment_cost << '\n';
    }
}

std::vector<Patient> read_patients(std::istream& in, const StateAdjacency& adj) {
    RecordValidator validator(adj.states());
    std::vector<Patient> patients;
    read_table(in, "id,state,annual_income,risk_score", 4, [&](const std::vector<std::string>& f, std::size_t line_no) {
        PatientRecord raw{parse_int<std::uint64_t>(f[0], line_no, "id"), f[1],
                          parse_int<std::int64_t>(f[2], line_no, "annual_income"),
                          parse_double(f[3], line_no, "risk_score")};
        patients.push_back(validator.patient(raw));
    });
    return patients;
}

std::vector<Patient> load_patients(const fs::path& path, const StateAdjacency& adj) {
    auto in = open_input(path);
    return read_patients(in, adj);
}

void write_patients(std::ostream& out, const std::vector<Patient>& patients) {
    out << "id,state,annual_income,risk_score\n";
    for (const auto& p : patients) {
        out << p.id << ',' << p.state << ',' << p.annual_income << ',' << p.risk << '\n';
    }
}

ScriptedAcceptance read_acceptance_script(std::istream& in) {
    ScriptedAcceptance script;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) {
            line.pop_back();
        }
        if (line.empty() || line.rfind("patient_id", 0) == 0) {
            continue;
        }
        const auto f = split_csv_line(line);
        if (f.size() != 3) {
            throw ParseError(line_no, "expected patient_id,round_no,ACCEPT|DECLINE");
        }
        const PatientId id{parse_int<std::uint64_t>(f[0], line_no, "patient_id")};
        const int round_no = parse_int<int>(f[1], line_no, "round_no");
        bool accept;
        if (f[2] == "ACCEPT") {
            accept = true;
        } else if (f[2] == "DECLINE") {
            accept = false;
        } else {
            throw ParseError(line_no, "decision must be ACCEPT or DECLINE");
        }
        script.decisions[{id, round_no}] = accept;
    }
    return script;
}

ScriptedAcceptance load_acceptance_script(const fs::path& path) {
    auto in = open_input(path);
    return read_acceptance_script(in);
}

AcceptancePolicy parse_policy(std::string_view text) {
    if (text == "always") {
        return AlwaysAccept{};
    }
    if (text.rfind("bernoulli:", 0) == 0) {
        const auto arg = text.substr(10);
        double p{};
        const auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), p);
        if (ec != std::errc{} || ptr != arg.data() + arg.size() || !(p >= 0.0 && p <= 1.0)) {
            throw std::invalid_argument("bernoulli probability must be a number in [0, 1]");
        }
        return BernoulliAcceptance{p};
    }
    if (text.rfind("script:", 0) == 0 && text.size() > 7) {
        return load_acceptance_script(fs::path(std::string(text.substr(7))));
    }
    throw std::invalid_argument("policy must be always, bernoulli:P or script:PATH");
}

Distance parse_distance(std::string_view text) {
    double d{};
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), d);
    const double halves = d * 2.0;
    if (ec != std::errc{} || ptr != text.data() + text.size() || !(d > 0.0) ||
        std::fabs(halves - std::round(halves)) > 1e-9) {
        throw std::invalid_argument("distance must be a positive multiple of 0.5: '" + std::string(text) + "'");
    }
    return Distance::from_halves(static_cast<int>(std::lround(halves)));
}

RiskScore parse_risk(std::string_view text) {
    double r{};
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), r);
    const long h = RiskScore::quantize(r);
    if (ec != std::errc{} || ptr != text.data() + text.size() || h < 0 || h > RiskScore::kMaxHundredths) {
        throw std::invalid_argument("risk must lie in [0, 1]: '" + std::string(text) + "'");
    }
    return RiskScore::from_hundredths(static_cast<int>(h));
}

namespace {

json to_json(const RoundReport& r) {
    return json{{"round_no", r.round_no},
                {"offers_made", r.offers_made},
                {"offers_accepted", r.offers_accepted},
                {"offers_declined", r.offers_declined},
                {"beds_remaining_before", r.beds_remaining_before},
                {"beds_remaining_after", r.beds_remaining_after},
                {"eligible_pool_remaining", r.eligible_pool_remaining},
                {"wait_list_size", r.wait_list_size},
                {"unassigned", r.unassigned},
                {"never_processed", r.never_processed},
                {"proposals", r.proposals}};
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error("cannot write " + path.string());
    }
    out << text;
}

}  // namespace

int run_scenario(const ScenarioConfig& cfg, std::ostream& log) {
    StateAdjacency adj;
    std::vector<CancerCenter> centers;
    std::vector<Patient> cohort;
    MarketState market;
    try {
        validate_config(cfg.match);
        adj = load_adjacency(cfg.adjacency);
        std::vector<std::string> skipped;
        centers = load_centers(cfg.centers, adj, &skipped);
        for (const auto& note : skipped) {
            log << "skipped " << note << '\n';
        }
        cohort = load_patients(cfg.patients, adj);
        market = open_market(cohort, centers, cfg.match);
        fs::create_directories(cfg.out_dir);
    } catch (const std::exception& e) {
        log << "error: " << e.what() << '\n';
        return kExitInputError;
    }

    const std::int64_t beds_available = market.beds_remaining();
    const std::size_t eligible = market.pool.size();

    std::vector<std::string> audit_failures;
    RoundObserver observer;
    if (cfg.verify) {
        observer = [&](const RoundResult& round) {
            for (const auto& problem : feasibility_problems(round.instance, round.outcome)) {
                audit_failures.push_back("round " + std::to_string(round.report.round_no) + ": " + problem);
            }
            for (const auto& bp : find_blocking_pairs(round.instance, round.outcome)) {
                audit_failures.push_back("round " + std::to_string(round.report.round_no) + ": blocking pair (" +
                                         std::to_string(bp.patient.value) + ", " + std::to_string(bp.center.value) +
                                         ") " + to_string(bp.reason));
            }
        };
    }

    std::vector<std::unique_ptr<std::ofstream>> trace_files;
    RoundTraceFactory trace;
    if (cfg.trace) {
        trace = [&](int round_no) -> TraceSink {
            auto file = std::make_unique<std::ofstream>(
                cfg.out_dir / ("trace_round_" + std::to_string(round_no) + ".csv"), std::ios::binary);
            *file << "step_no,patient_id,center_id,action\n";
            auto* sink = file.get();
            trace_files.push_back(std::move(file));
            return [sink](const TraceEvent& e) { *sink << format_trace_line(e) << '\n'; };
        };
    }

    CompletionResult result;
    try {
        result = run_to_completion(std::move(market), adj, cfg.match, observer, trace);
    } catch (const NoEligiblePatients& e) {
        log << "error: " << e.what() << '\n';
        return kExitNoEligible;
    }
    trace_files.clear();

    std::ostringstream assignments;
    assignments << "round,patient_id,center_id,accepted\n";
    std::size_t accepted = 0;
    std::size_t declined = 0;
    for (const auto& o : result.offers) {
        assignments << o.round_no << ',' << o.patient << ',' << o.center << ',' << (o.accepted ? "true" : "false")
                    << '\n';
        (o.accepted ? accepted : declined) += 1;
    }

    json rounds = json::array();
    json proposals_per_round = json::array();
    std::uint64_t proposals = 0;
    for (const auto& r : result.reports) {
        rounds.push_back(to_json(r));
        proposals_per_round.push_back(r.proposals);
        proposals += r.proposals;
    }

    const auto& final_state = result.final_state;
    json summary{
        {"patients_total", cohort.size()},
        {"patients_eligible", eligible},
        {"centers", centers.size()},
        {"beds_available", beds_available},
        {"beds_filled", accepted},
        {"beds_remaining", final_state.beds_remaining()},
        {"rounds", result.reports.size()},
        {"stop_reason", to_string(result.stop)},
        {"offers_declined", declined},
        {"unmatched_eligible", eligible - accepted},
        {"unmatched_carryover", final_state.carryover.size()},
        {"unmatched_never_drawn", final_state.pool.size()},
        {"proposals_total", proposals},
        {"proposals_per_round", proposals_per_round},
        {"stability_audit", cfg.verify ? (audit_failures.empty() ? "passed" : "failed") : "skipped"},
    };

    try {
        write_file(cfg.out_dir / "assignments.csv", assignments.str());
        write_file(cfg.out_dir / "rounds.json", rounds.dump(2) + "\n");
        write_file(cfg.out_dir / "summary.json", summary.dump(2) + "\n");
    } catch (const std::exception& e) {
        log << "error: " << e.what() << '\n';
        return kExitInputError;
    }

    if (!audit_failures.empty()) {
        for (const auto& f : audit_failures) {
            log << "audit: " << f << '\n';
        }
        return kExitAuditFailed;
    }
    return kExitOk;
}

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Assign high-risk patients to cancer centers with limited staffed beds"};
    ScenarioConfig cfg;
    std::string t_ad;
    std::string t_rs;
    std::string policy = "always";
    double availability = 1.0;

    app.add_option("--patients", cfg.patients, "Patient CSV (id,state,annual_income,risk_score)")->required();
    app.add_option("--centers", cfg.centers, "Center CSV (id,name,city,state,type,staffed_beds,treatment_cost)")
        ->required();
    app.add_option("--adjacency", cfg.adjacency, "State adjacency file")->required();
    app.add_option("--x-percent", cfg.match.x_percent, "Percent of annual income available for treatment")
        ->required();
    app.add_option("--t-ad", t_ad, "Accessible distance; a center is reachable when its distance is below this")
        ->required();
    app.add_option("--t-rs", t_rs, "Risk threshold; patients below it are never considered")->required();
    app.add_option("--availability", availability, "Fraction of staffed beds available")->capture_default_str();
    app.add_option("--policy", policy, "always | bernoulli:P | script:PATH")->capture_default_str();
    app.add_option("--seed", cfg.match.rng_seed, "Seed for the acceptance policy")->capture_default_str();
    app.add_option("--max-rounds", cfg.match.max_rounds, "Upper bound on offer rounds")->capture_default_str();
    app.add_option("--out", cfg.out_dir, "Output directory")->required();
    app.add_flag("--verify", cfg.verify, "Audit every round for blocking pairs; exit 4 on a violation");
    app.add_flag("--trace", cfg.trace, "Write trace_round_<k>.csv per round");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kExitInputError;
    }

    try {
        cfg.match.t_ad = parse_distance(t_ad);
        cfg.match.t_rs = parse_risk(t_rs);
        cfg.match.availability_fraction = availability;
        cfg.match.acceptance = parse_policy(policy);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    }
    return run_scenario(cfg, err);
}

}  // namespace cancermatch

// Writes a synthetic patient cohort as CSV for use with `cancermatch`.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "cancermatch/cli_io.hpp"
#include "cancermatch/riskrank.hpp"

int main(int argc, char** argv) {
    using namespace cancermatch;

    CLI::App app{"Generate a synthetic patient cohort"};
    std::size_t n = 10000;
    std::uint64_t seed = 42;
    std::string out_path;
    int risk_min = 50;
    int risk_max = 100;
    double income_spread = 0.5;
    app.add_option("-n,--count", n, "Number of patients")->capture_default_str();
    app.add_option("--seed", seed, "RNG seed")->capture_default_str();
    app.add_option("--risk-min", risk_min, "Lowest risk in hundredths")->capture_default_str();
    app.add_option("--risk-max", risk_max, "Highest risk in hundredths")->capture_default_str();
    app.add_option("--income-spread", income_spread, "Relative spread around each state's mean income")
        ->capture_default_str();
    app.add_option("--out", out_path, "Output CSV path")->required();
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        auto model = default_cohort_model();
        model.risk_min = RiskScore::from_hundredths(risk_min);
        model.risk_max = RiskScore::from_hundredths(risk_max);
        model.income_spread = income_spread;
        const auto cohort = synthesize_cohort(n, seed, model);
        std::ofstream out(out_path, std::ios::binary);
        if (!out) {
            std::cerr << "error: cannot write " << out_path << '\n';
            return 2;
        }
        write_patients(out, cohort);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}

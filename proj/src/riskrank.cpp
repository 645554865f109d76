#include "cancermatch/riskrank.hpp"

#include <algorithm>
#include <array>
#include <random>
#include <stdexcept>

namespace cancermatch {

std::vector<Patient> bucket_sort_by_risk(std::span<const Patient> patients) {
    std::array<std::vector<Patient>, RiskScore::kMaxHundredths + 1> buckets;
    for (const auto& p : patients) {
        buckets[static_cast<std::size_t>(p.risk.hundredths())].push_back(p);
    }
    std::vector<Patient> out;
    out.reserve(patients.size());
    for (auto it = buckets.rbegin(); it != buckets.rend(); ++it) {
        std::sort(it->begin(), it->end(), [](const Patient& a, const Patient& b) { return a.id < b.id; });
        out.insert(out.end(), it->begin(), it->end());
    }
    return out;
}

RiskTable RiskTable::from_cohort(std::span<const Patient> cohort, std::string provenance) {
    RiskTable table(std::move(provenance));
    for (const auto& p : cohort) {
        table.add(p.id, p.risk);
    }
    return table;
}

void RiskTable::add(PatientId id, RiskScore risk) {
    if (!scores_.emplace(id, risk).second) {
        throw std::invalid_argument("duplicate risk entry for patient " + std::to_string(id.value));
    }
}

std::optional<RiskScore> RiskTable::find(PatientId id) const {
    const auto it = scores_.find(id);
    if (it == scores_.end()) {
        return std::nullopt;
    }
    return it->second;
}

bool RiskTable::covers_exactly(std::span<const Patient> cohort) const {
    if (cohort.size() != scores_.size()) {
        return false;
    }
    return std::all_of(cohort.begin(), cohort.end(), [this](const Patient& p) { return scores_.count(p.id) == 1; });
}

std::vector<Patient> RiskTable::apply(std::span<const Patient> cohort) const {
    if (!covers_exactly(cohort)) {
        throw std::invalid_argument("risk table does not cover the cohort exactly");
    }
    std::vector<Patient> out(cohort.begin(), cohort.end());
    for (auto& p : out) {
        p.risk = scores_.at(p.id);
    }
    return out;
}

CohortModel default_cohort_model() {
    struct Row {
        const char* code;
        double population_m;
        Usd income;
    };
    static constexpr Row rows[] = {
        {"AL", 5.0, 52035},  {"AK", 0.7, 77790},  {"AZ", 7.2, 61529},  {"AR", 3.0, 49475},
        {"CA", 39.5, 78672}, {"CO", 5.8, 75231},  {"CT", 3.6, 78833},  {"DE", 1.0, 69110},
        {"DC", 0.7, 90842},  {"FL", 21.5, 57703}, {"GA", 10.7, 61224}, {"HI", 1.5, 83173},
        {"ID", 1.8, 60999},  {"IL", 12.8, 69187}, {"IN", 6.8, 58235},  {"IA", 3.2, 61691},
        {"KS", 2.9, 61091},  {"KY", 4.5, 52238},  {"LA", 4.7, 50800},  {"ME", 1.4, 59489},
        {"MD", 6.2, 87063},  {"MA", 7.0, 84385},  {"MI", 10.1, 59234}, {"MN", 5.7, 73382},
        {"MS", 3.0, 46511},  {"MO", 6.2, 57290},  {"MT", 1.1, 56539},  {"NE", 2.0, 63015},
        {"NV", 3.1, 62043},  {"NH", 1.4, 77933},  {"NJ", 9.3, 85245},  {"NM", 2.1, 51243},
        {"NY", 20.2, 71117}, {"NC", 10.4, 56642}, {"ND", 0.8, 65315},  {"OH", 11.8, 58116},
        {"OK", 4.0, 53840},  {"OR", 4.2, 65667},  {"PA", 13.0, 63627}, {"RI", 1.1, 70305},
        {"SC", 5.1, 54864},  {"SD", 0.9, 59896},  {"TN", 6.9, 54833},  {"TX", 29.1, 63826},
        {"UT", 3.3, 74197},  {"VT", 0.6, 63477},  {"VA", 8.6, 76398},  {"WA", 7.7, 77006},
        {"WV", 1.8, 48037},  {"WI", 5.9, 63293},  {"WY", 0.6, 65304},
    };
    CohortModel model;
    for (const auto& r : rows) {
        model.states.push_back({StateCode::parse(r.code), r.population_m, r.income});
    }
    return model;
}

std::vector<Patient> synthesize_cohort(std::size_t n, std::uint64_t seed, const CohortModel& model) {
    if (n == 0) {
        throw std::invalid_argument("cohort size must be positive");
    }
    if (model.states.empty()) {
        throw std::invalid_argument("cohort model has no states");
    }
    if (model.risk_min > model.risk_max) {
        throw std::invalid_argument("risk_min exceeds risk_max");
    }
    if (!(model.income_spread >= 0.0 && model.income_spread <= 1.0)) {
        throw std::invalid_argument("income_spread must lie in [0, 1]");
    }
    std::vector<double> weights;
    for (const auto& s : model.states) {
        weights.push_back(s.weight);
    }

    std::mt19937_64 rng(seed);
    std::discrete_distribution<std::size_t> pick_state(weights.begin(), weights.end());
    std::uniform_real_distribution<double> income_factor(1.0 - model.income_spread, 1.0 + model.income_spread);
    std::uniform_int_distribution<int> pick_risk(model.risk_min.hundredths(), model.risk_max.hundredths());

    std::vector<Patient> cohort;
    cohort.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& profile = model.states[pick_state(rng)];
        const auto income = static_cast<Usd>(static_cast<double>(profile.mean_income) * income_factor(rng));
        const auto risk = RiskScore::from_hundredths(pick_risk(rng));
        cohort.push_back({PatientId{i + 1}, profile.state, std::max<Usd>(income, 0), risk});
    }
    return cohort;
}

}  // namespace cancermatch

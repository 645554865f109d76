#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cancermatch/domain.hpp"

namespace cancermatch {

// Descending risk via 101 buckets (hundredths 0..100), ascending id within a
// bucket. Equivalent to sorting by ranks_above.
std::vector<Patient> bucket_sort_by_risk(std::span<const Patient> patients);

// Scores come from an upstream survival model; this only carries them.
class RiskTable {
public:
    explicit RiskTable(std::string provenance = "external-model") : provenance_(std::move(provenance)) {}

    static RiskTable from_cohort(std::span<const Patient> cohort, std::string provenance);

    // Throws std::invalid_argument on a repeated id.
    void add(PatientId id, RiskScore risk);

    std::optional<RiskScore> find(PatientId id) const;
    std::size_t size() const noexcept { return scores_.size(); }
    const std::string& provenance() const noexcept { return provenance_; }

    // True iff every cohort member has exactly one entry and no extra
    // entries exist.
    bool covers_exactly(std::span<const Patient> cohort) const;

    // Replaces each patient's risk with the table's. Throws
    // std::invalid_argument unless covers_exactly(cohort).
    std::vector<Patient> apply(std::span<const Patient> cohort) const;

private:
    std::string provenance_;
    std::map<PatientId, RiskScore> scores_;
};

struct StateProfile {
    StateCode state;
    double weight = 1.0;     // relative share of the cohort
    Usd mean_income = 0;
};

// Incomes are uniform in mean * [1 - spread, 1 + spread]; risks uniform over
// hundredths in [risk_min, risk_max].
struct CohortModel {
    std::vector<StateProfile> states;
    double income_spread = 0.5;
    RiskScore risk_min = RiskScore::from_hundredths(50);
    RiskScore risk_max = RiskScore::from_hundredths(100);
};

// All 50 states plus DC, weighted by approximate 2020 population with
// approximate state median household incomes.
CohortModel default_cohort_model();

// Deterministic for a given (n, seed, model). Ids run 1..n. Throws
// std::invalid_argument when n == 0 or the model is degenerate.
std::vector<Patient> synthesize_cohort(std::size_t n, std::uint64_t seed, const CohortModel& model);

}  // namespace cancermatch

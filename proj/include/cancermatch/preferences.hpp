#pragma once

#include <span>
#include <vector>

#include "cancermatch/domain.hpp"
#include "cancermatch/geo.hpp"

namespace cancermatch {

// Share of annual income available for treatment: floor(income * x / 100).
constexpr Usd affordable_cost(Usd annual_income, int x_percent) {
    return annual_income * x_percent / 100;
}

inline bool is_affordable(const Patient& patient, const CancerCenter& center, int x_percent) {
    return center.treatment_cost <= affordable_cost(patient.annual_income, x_percent);
}

struct PreferenceList {
    PatientId patient_id;
    std::vector<CenterId> entries;  // nearest first

    bool operator==(const PreferenceList&) const = default;
};

struct DistanceEntry {
    CenterId center_id;
    Distance distance;
    Usd cost = 0;

    bool operator==(const DistanceEntry&) const = default;
};

// One bucket per half-unit of distance, emitted nearest first; entries that
// share a bucket are ordered by (cost, center id). Every distance must be
// below `bound`; throws std::out_of_range otherwise.
std::vector<DistanceEntry> bucket_sort_by_distance(std::span<const DistanceEntry> entries, Distance bound);

// Accessible and affordable centers, nearest first.
PreferenceList build_preference_list(const Patient& patient, std::span<const CancerCenter> centers,
                                     const StateAdjacency& adj, const MatchConfig& cfg);

// Same as build_preference_list but yields indices into `centers`, which is
// what the engine consumes.
std::vector<std::size_t> preference_indices(const Patient& patient, std::span<const CancerCenter> centers,
                                            const StateAdjacency& adj, const MatchConfig& cfg);

}  // namespace cancermatch

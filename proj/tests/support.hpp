#pragma once

// Random instance generators and comparison-sort oracles shared by the unit
// and acceptance suites.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <tuple>
#include <vector>

#include "cancermatch/engine.hpp"
#include "cancermatch/preferences.hpp"

namespace support {

using namespace cancermatch;

struct InstanceShape {
    std::size_t min_patients = 1;
    std::size_t max_patients = 200;
    std::size_t min_centers = 1;
    std::size_t max_centers = 16;
    std::int64_t max_capacity = 12;
    std::int64_t max_total_beds = -1;  // -1 = unbounded
    bool distinct_risks = false;
};

inline std::size_t uniform(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

// Random patients and centers with random costs, incomes and per-pair
// distances (10% unreachable); lists are built with the same
// accessible-and-affordable rule as production, then candidates are put in
// priority order by a comparison sort.
inline MatchInstance random_instance(std::mt19937_64& rng, const InstanceShape& shape) {
    const std::size_t n = uniform(rng, shape.min_patients, shape.max_patients);
    const std::size_t m = uniform(rng, shape.min_centers, shape.max_centers);

    MatchInstance inst;
    std::vector<std::uint64_t> center_ids(m);
    std::iota(center_ids.begin(), center_ids.end(), 1);
    std::shuffle(center_ids.begin(), center_ids.end(), rng);
    std::vector<Usd> cost(m);
    for (std::size_t j = 0; j < m; ++j) {
        inst.centers.push_back(CenterId{center_ids[j] * 7});
        inst.capacities.push_back(static_cast<std::int64_t>(uniform(rng, 0, static_cast<std::size_t>(shape.max_capacity))));
        cost[j] = static_cast<Usd>(uniform(rng, 1, 30000));
    }
    if (shape.max_total_beds >= 0) {
        while (inst.total_beds() > shape.max_total_beds) {
            auto& cap = inst.capacities[uniform(rng, 0, m - 1)];
            if (cap > 0) {
                --cap;
            }
        }
    }

    std::vector<int> risks(n);
    if (shape.distinct_risks) {
        std::vector<int> all(RiskScore::kMaxHundredths + 1);
        std::iota(all.begin(), all.end(), 0);
        std::shuffle(all.begin(), all.end(), rng);
        std::copy_n(all.begin(), n, risks.begin());
    } else {
        for (auto& r : risks) {
            r = static_cast<int>(uniform(rng, 40, 60));  // narrow range forces ties
        }
    }
    std::vector<std::uint64_t> ids(n);
    std::iota(ids.begin(), ids.end(), 100);
    std::shuffle(ids.begin(), ids.end(), rng);

    const Distance t_ad = Distance::from_halves(static_cast<int>(uniform(rng, 2, 8)));
    static constexpr int kHalves[] = {1, 2, 4, 6, 8};
    for (std::size_t i = 0; i < n; ++i) {
        const Usd budget = affordable_cost(static_cast<Usd>(uniform(rng, 0, 120000)), 25);
        std::vector<DistanceEntry> entries;
        for (std::size_t j = 0; j < m; ++j) {
            if (uniform(rng, 0, 9) == 0) {
                continue;  // unreachable
            }
            const Distance d = Distance::from_halves(kHalves[uniform(rng, 0, 4)]);
            if (d < t_ad && cost[j] <= budget) {
                entries.push_back({CenterId{j}, d, cost[j]});
            }
        }
        std::sort(entries.begin(), entries.end(), [](const DistanceEntry& a, const DistanceEntry& b) {
            return std::make_tuple(a.distance, a.cost, a.center_id) < std::make_tuple(b.distance, b.cost, b.center_id);
        });
        Candidate c{PatientId{ids[i]}, RiskScore::from_hundredths(risks[i]), {}};
        for (const auto& e : entries) {
            c.choices.push_back(static_cast<std::size_t>(e.center_id.value));
        }
        inst.candidates.push_back(std::move(c));
    }
    std::sort(inst.candidates.begin(), inst.candidates.end(), [](const Candidate& a, const Candidate& b) {
        return ranks_above(a.risk, a.id, b.risk, b.id);
    });
    return inst;
}

// Comparison-sort oracles.
inline std::vector<Patient> sort_by_priority(std::vector<Patient> patients) {
    std::sort(patients.begin(), patients.end(), [](const Patient& a, const Patient& b) {
        return std::make_tuple(-a.risk.hundredths(), a.id) < std::make_tuple(-b.risk.hundredths(), b.id);
    });
    return patients;
}

inline std::vector<DistanceEntry> sort_by_distance_key(std::vector<DistanceEntry> entries) {
    std::sort(entries.begin(), entries.end(), [](const DistanceEntry& a, const DistanceEntry& b) {
        return std::make_tuple(a.distance.halves(), a.cost, a.center_id) <
               std::make_tuple(b.distance.halves(), b.cost, b.center_id);
    });
    return entries;
}

}  // namespace support

#include "cancermatch/preferences.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <tuple>

namespace cancermatch {

std::vector<DistanceEntry> bucket_sort_by_distance(std::span<const DistanceEntry> entries, Distance bound) {
    const int buckets = bound.halves();
    std::vector<std::vector<DistanceEntry>> by_distance(static_cast<std::size_t>(std::max(buckets, 0)));
    for (const auto& e : entries) {
        const int key = e.distance.halves();
        if (key < 0 || key >= buckets) {
            throw std::out_of_range("distance " + std::to_string(key) + " halves outside bucket range");
        }
        by_distance[static_cast<std::size_t>(key)].push_back(e);
    }

    std::vector<DistanceEntry> out;
    out.reserve(entries.size());
    for (auto& bucket : by_distance) {
        std::sort(bucket.begin(), bucket.end(), [](const DistanceEntry& a, const DistanceEntry& b) {
            return std::tie(a.cost, a.center_id) < std::tie(b.cost, b.center_id);
        });
        out.insert(out.end(), bucket.begin(), bucket.end());
    }
    return out;
}

namespace {

std::vector<DistanceEntry> eligible_entries(const Patient& patient, std::span<const CancerCenter> centers,
                                            const StateAdjacency& adj, const MatchConfig& cfg,
                                            std::vector<std::size_t>* index_of_entry) {
    std::vector<DistanceEntry> entries;
    for (std::size_t i = 0; i < centers.size(); ++i) {
        const auto& c = centers[i];
        if (!is_affordable(patient, c, cfg.x_percent)) {
            continue;
        }
        const auto d = adj.hop_distance(patient.state, c.state);
        if (!is_accessible(d, cfg.t_ad)) {
            continue;
        }
        entries.push_back({c.id, *d, c.treatment_cost});
        if (index_of_entry) {
            index_of_entry->push_back(i);
        }
    }
    return entries;
}

}  // namespace

PreferenceList build_preference_list(const Patient& patient, std::span<const CancerCenter> centers,
                                     const StateAdjacency& adj, const MatchConfig& cfg) {
    const auto sorted = bucket_sort_by_distance(eligible_entries(patient, centers, adj, cfg, nullptr), cfg.t_ad);
    PreferenceList list{patient.id, {}};
    list.entries.reserve(sorted.size());
    for (const auto& e : sorted) {
        list.entries.push_back(e.center_id);
    }
    return list;
}

std::vector<std::size_t> preference_indices(const Patient& patient, std::span<const CancerCenter> centers,
                                            const StateAdjacency& adj, const MatchConfig& cfg) {
    std::vector<std::size_t> index_of_entry;
    auto entries = eligible_entries(patient, centers, adj, cfg, &index_of_entry);
    // Center ids are unique, so each sorted entry maps back to one position.
    const auto sorted = bucket_sort_by_distance(entries, cfg.t_ad);
    std::vector<std::pair<CenterId, std::size_t>> lookup;
    lookup.reserve(entries.size());
    for (std::size_t k = 0; k < entries.size(); ++k) {
        lookup.emplace_back(entries[k].center_id, index_of_entry[k]);
    }
    std::sort(lookup.begin(), lookup.end());
    std::vector<std::size_t> out;
    out.reserve(sorted.size());
    for (const auto& e : sorted) {
        const auto it = std::lower_bound(lookup.begin(), lookup.end(), std::make_pair(e.center_id, std::size_t{0}));
        out.push_back(it->second);
    }
    return out;
}

}  // namespace cancermatch

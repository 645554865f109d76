#include "cancermatch/verify.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <unordered_map>

#include "cancermatch/errors.hpp"

namespace cancermatch {

const char* to_string(BlockingReason reason) {
    return reason == BlockingReason::FreeBedPreferred ? "FreeBedPreferred" : "WouldDisplace";
}

namespace {

struct Indexed {
    std::unordered_map<PatientId, std::size_t> patient;
    std::unordered_map<CenterId, std::size_t> center;

    explicit Indexed(const MatchInstance& instance) {
        for (std::size_t i = 0; i < instance.candidates.size(); ++i) {
            patient.emplace(instance.candidates[i].id, i);
        }
        for (std::size_t j = 0; j < instance.centers.size(); ++j) {
            center.emplace(instance.centers[j], j);
        }
    }
};

bool outranks(const MatchInstance& inst, std::size_t a, std::size_t b) {
    const auto& ca = inst.candidates[a];
    const auto& cb = inst.candidates[b];
    return ranks_above(ca.risk, ca.id, cb.risk, cb.id);
}

}  // namespace

std::vector<std::string> feasibility_problems(const MatchInstance& instance, const MatchOutcome& outcome) {
    const Indexed idx(instance);
    std::vector<std::string> problems;
    std::vector<int> mentions(instance.candidates.size(), 0);
    std::vector<std::int64_t> load(instance.centers.size(), 0);

    auto mention = [&](PatientId id) -> std::optional<std::size_t> {
        const auto it = idx.patient.find(id);
        if (it == idx.patient.end()) {
            problems.push_back("unknown patient " + std::to_string(id.value));
            return std::nullopt;
        }
        ++mentions[it->second];
        return it->second;
    };

    for (const auto& m : outcome.matches) {
        const auto p = mention(m.patient);
        const auto c = idx.center.find(m.center);
        if (c == idx.center.end()) {
            problems.push_back("unknown center " + std::to_string(m.center.value));
            continue;
        }
        ++load[c->second];
        if (p) {
            const auto& choices = instance.candidates[*p].choices;
            if (std::find(choices.begin(), choices.end(), c->second) == choices.end()) {
                problems.push_back("patient " + std::to_string(m.patient.value) + " placed off its list");
            }
        }
    }
    for (const auto id : outcome.waiting) {
        mention(id);
    }
    for (const auto id : outcome.unassigned) {
        mention(id);
    }
    for (std::size_t i = 0; i < mentions.size(); ++i) {
        if (mentions[i] != 1) {
            problems.push_back("patient " + std::to_string(instance.candidates[i].id.value) + " appears " +
                               std::to_string(mentions[i]) + " times in M/W/U");
        }
    }
    for (std::size_t j = 0; j < load.size(); ++j) {
        if (load[j] > instance.capacities[j]) {
            problems.push_back("center " + std::to_string(instance.centers[j].value) + " over capacity");
        }
    }
    return problems;
}

std::vector<BlockingPair> find_blocking_pairs(const MatchInstance& instance, const MatchOutcome& outcome) {
    const Indexed idx(instance);
    const std::size_t n = instance.candidates.size();
    const std::size_t m = instance.centers.size();

    std::vector<std::optional<std::size_t>> assigned(n);
    std::vector<std::int64_t> load(m, 0);
    std::vector<std::optional<std::size_t>> lowest(m);
    for (const auto& match : outcome.matches) {
        const auto p = idx.patient.at(match.patient);
        const auto c = idx.center.at(match.center);
        assigned[p] = c;
        ++load[c];
        if (!lowest[c] || outranks(instance, *lowest[c], p)) {
            lowest[c] = p;
        }
    }

    std::vector<BlockingPair> pairs;
    for (std::size_t p = 0; p < n; ++p) {
        for (const auto c : instance.candidates[p].choices) {
            if (assigned[p] && *assigned[p] == c) {
                break;
            }
            if (load[c] < instance.capacities[c]) {
                pairs.push_back({instance.candidates[p].id, instance.centers[c], BlockingReason::FreeBedPreferred});
            } else if (lowest[c] && outranks(instance, p, *lowest[c])) {
                pairs.push_back({instance.candidates[p].id, instance.centers[c], BlockingReason::WouldDisplace});
            }
        }
    }
    return pairs;
}

MatchOutcome serial_dictatorship(const MatchInstance& instance) {
    const std::size_t n = instance.candidates.size();
    std::vector<std::int64_t> left = instance.capacities;
    const auto target = std::min<std::int64_t>(static_cast<std::int64_t>(n), instance.total_beds());

    MatchOutcome out;
    out.initial_process_size = static_cast<std::size_t>(target);
    std::int64_t seated = 0;
    std::size_t p = 0;
    for (; p < n && seated < target; ++p) {
        const auto& cand = instance.candidates[p];
        bool placed = false;
        for (const auto c : cand.choices) {
            ++out.proposal_count;
            if (left[c] > 0) {
                --left[c];
                out.matches.push_back({cand.id, instance.centers[c]});
                ++seated;
                placed = true;
                break;
            }
        }
        if (!placed) {
            out.unassigned.push_back(cand.id);
        }
    }
    for (; p < n; ++p) {
        out.waiting.push_back(instance.candidates[p].id);
    }
    std::sort(out.matches.begin(), out.matches.end());
    return out;
}

bool check_equals_serial_dictatorship(const MatchOutcome& outcome, const MatchInstance& instance) {
    auto matches = outcome.matches;
    std::sort(matches.begin(), matches.end());
    return matches == serial_dictatorship(instance).matches;
}

namespace {

// Stability of an index-level assignment; kept separate from
// find_blocking_pairs so the enumerator does not lean on it.
bool is_stable(const MatchInstance& inst, const std::vector<std::optional<std::size_t>>& assigned,
               const std::vector<std::int64_t>& load) {
    const std::size_t n = inst.candidates.size();
    for (std::size_t p = 0; p < n; ++p) {
        for (const auto c : inst.candidates[p].choices) {
            if (assigned[p] == c) {
                break;
            }
            if (load[c] < inst.capacities[c]) {
                return false;
            }
            for (std::size_t q = 0; q < n; ++q) {
                if (assigned[q] == c && outranks(inst, p, q)) {
                    return false;
                }
            }
        }
    }
    return true;
}

}  // namespace

BruteForceResult enumerate_stable_matchings(const MatchInstance& instance) {
    validate_instance(instance);
    const std::size_t n = instance.candidates.size();
    if (n > kBruteForceMaxPatients || instance.total_beds() > kBruteForceMaxBeds) {
        throw std::invalid_argument("instance too large for brute force");
    }

    BruteForceResult result;
    std::vector<std::optional<std::size_t>> assigned(n);
    std::vector<std::int64_t> load(instance.centers.size(), 0);
    std::optional<std::vector<std::optional<std::size_t>>> first_stable;

    auto visit = [&](auto&& self, std::size_t p) -> void {
        if (p == n) {
            ++result.feasible_count;
            if (is_stable(instance, assigned, load)) {
                if (++result.stable_count == 1) {
                    first_stable = assigned;
                }
            }
            return;
        }
        assigned[p].reset();
        self(self, p + 1);
        for (const auto c : instance.candidates[p].choices) {
            if (load[c] < instance.capacities[c]) {
                ++load[c];
                assigned[p] = c;
                self(self, p + 1);
                --load[c];
                assigned[p].reset();
            }
        }
    };
    visit(visit, 0);

    if (!first_stable) {
        throw NoStableMatchingFound("no stable assignment among " + std::to_string(result.feasible_count));
    }
    for (std::size_t p = 0; p < n; ++p) {
        const auto& a = (*first_stable)[p];
        if (a) {
            result.outcome.matches.push_back({instance.candidates[p].id, instance.centers[*a]});
        } else {
            result.outcome.unassigned.push_back(instance.candidates[p].id);
        }
    }
    std::sort(result.outcome.matches.begin(), result.outcome.matches.end());
    return result;
}

MatchOutcome brute_force_match(const MatchInstance& instance) {
    auto result = enumerate_stable_matchings(instance);
    if (result.stable_count != 1) {
        throw NoStableMatchingFound("expected a unique stable assignment, found " +
                                    std::to_string(result.stable_count));
    }
    return std::move(result.outcome);
}

}  // namespace cancermatch

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "cancermatch/engine.hpp"

namespace cancermatch {

enum class BlockingReason { FreeBedPreferred, WouldDisplace };

const char* to_string(BlockingReason reason);

struct BlockingPair {
    PatientId patient;
    CenterId center;
    BlockingReason reason;

    bool operator==(const BlockingPair&) const = default;
};

// Structural problems with an outcome: unknown ids, a patient placed twice
// or at a center off its list, over-capacity centers, or M/W/U not
// partitioning the candidates. Empty means feasible.
std::vector<std::string> feasibility_problems(const MatchInstance& instance, const MatchOutcome& outcome);

// Exhaustive scan against the original choice lists. A pair (p, c) blocks
// when c precedes p's assignment (or p holds nothing) and c either has a
// free bed or its lowest occupant ranks below p.
std::vector<BlockingPair> find_blocking_pairs(const MatchInstance& instance, const MatchOutcome& outcome);

// Priority-order greedy: each patient in turn takes its first choice with a
// free bed, stopping once min(n, total beds) are seated.
MatchOutcome serial_dictatorship(const MatchInstance& instance);

bool check_equals_serial_dictatorship(const MatchOutcome& outcome, const MatchInstance& instance);

inline constexpr std::size_t kBruteForceMaxPatients = 10;
inline constexpr std::int64_t kBruteForceMaxBeds = 5;

struct BruteForceResult {
    MatchOutcome outcome;        // the first stable assignment found
    std::size_t stable_count = 0;
    std::size_t feasible_count = 0;
};

// Enumerates every capacity-respecting assignment of patients to listed
// centers (or to nothing) and keeps the stable ones. Throws
// std::invalid_argument beyond the size limits and NoStableMatchingFound if
// nothing is stable.
BruteForceResult enumerate_stable_matchings(const MatchInstance& instance);

// As above, additionally throwing NoStableMatchingFound unless exactly one
// stable assignment exists. Unmatched patients are all reported unassigned.
MatchOutcome brute_force_match(const MatchInstance& instance);

}  // namespace cancermatch

#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "cancermatch/domain.hpp"
#include "cancermatch/engine.hpp"
#include "cancermatch/geo.hpp"

namespace cancermatch {

struct RoundReport {
    int round_no = 0;
    std::size_t offers_made = 0;
    std::size_t offers_accepted = 0;
    std::size_t offers_declined = 0;
    std::int64_t beds_remaining_before = 0;
    std::int64_t beds_remaining_after = 0;
    std::size_t eligible_pool_remaining = 0;  // undrawn pool plus carryover
    std::size_t wait_list_size = 0;
    std::size_t unassigned = 0;
    std::size_t never_processed = 0;
    std::uint64_t proposals = 0;

    bool operator==(const RoundReport&) const = default;
};

struct OfferRecord {
    int round_no = 0;
    PatientId patient;
    CenterId center;
    bool accepted = false;

    bool operator==(const OfferRecord&) const = default;
};

// Everything the outer loop carries between rounds. `pool` holds eligible
// patients not yet drawn into a wait list; `carryover` holds last round's
// decliners and unassigned. Both are in priority order and every carryover
// patient outranks every pool patient.
struct MarketState {
    std::vector<Patient> pool;
    std::vector<Patient> carryover;
    std::vector<CancerCenter> centers;
    int rounds_completed = 0;

    std::int64_t beds_remaining() const;
};

// floor(staffed * fraction), guarded against products like 0.29 * 100
// landing just under an integer.
std::int64_t available_beds(std::int64_t staffed, double fraction);

// Patients with risk >= t_rs in priority order.
std::vector<Patient> select_eligible(std::span<const Patient> pool, RiskScore t_rs);

// Applies the eligibility filter and the availability fraction.
MarketState open_market(std::span<const Patient> cohort, std::span<const CancerCenter> centers,
                        const MatchConfig& cfg);

// Pure in (policy, seed, round, patient).
bool accepts_offer(const AcceptancePolicy& policy, std::uint64_t seed, int round_no, PatientId patient);

struct RoundResult {
    RoundReport report;
    MarketState next;
    std::vector<OfferRecord> offers;  // patient priority order
    MatchInstance instance;
    MatchOutcome outcome;
};

// One offer cycle: seed the wait list with carryover, top it up from the
// pool until it holds as many patients with a nonempty list as there are
// open beds, run the engine over centers that still have beds, put every
// match to the acceptance policy, and consume a bed per acceptance.
// Throws NoEligiblePatients when pool and carryover are both empty.
RoundResult run_round(const MarketState& state, const StateAdjacency& adj, const MatchConfig& cfg,
                      const TraceSink& trace = {});

enum class StopReason { NoVacancy, NoLivePatients, MaxRounds };

const char* to_string(StopReason reason);

struct CompletionResult {
    std::vector<RoundReport> reports;
    std::vector<OfferRecord> offers;
    MarketState final_state;
    StopReason stop = StopReason::NoVacancy;
};

using RoundObserver = std::function<void(const RoundResult&)>;
using RoundTraceFactory = std::function<TraceSink(int round_no)>;

// True when some pool or carryover patient can still reach an open center.
bool has_live_patient(const MarketState& state, const StateAdjacency& adj, const MatchConfig& cfg);

// Runs rounds until no bed remains, no remaining patient has an open center
// on its list, or cfg.max_rounds is reached. Throws NoEligiblePatients only
// when the very first round has nobody to draw from.
CompletionResult run_to_completion(MarketState state, const StateAdjacency& adj, const MatchConfig& cfg,
                                   const RoundObserver& observer = {}, const RoundTraceFactory& trace = {});

}  // namespace cancermatch

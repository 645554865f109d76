#include "cancermatch/rounds.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <unordered_set>

#include "cancermatch/errors.hpp"
#include "cancermatch/preferences.hpp"
#include "cancermatch/riskrank.hpp"

namespace cancermatch {

std::int64_t MarketState::beds_remaining() const {
    return std::accumulate(centers.begin(), centers.end(), std::int64_t{0},
                           [](std::int64_t acc, const CancerCenter& c) { return acc + c.beds_remaining; });
}

std::int64_t available_beds(std::int64_t staffed, double fraction) {
    return static_cast<std::int64_t>(std::floor(static_cast<double>(staffed) * fraction + 1e-9));
}

std::vector<Patient> select_eligible(std::span<const Patient> pool, RiskScore t_rs) {
    std::vector<Patient> eligible;
    std::copy_if(pool.begin(), pool.end(), std::back_inserter(eligible),
                 [t_rs](const Patient& p) { return p.risk >= t_rs; });
    return bucket_sort_by_risk(eligible);
}

MarketState open_market(std::span<const Patient> cohort, std::span<const CancerCenter> centers,
                        const MatchConfig& cfg) {
    validate_config(cfg);
    MarketState state;
    state.pool = select_eligible(cohort, cfg.t_rs);
    state.centers.assign(centers.begin(), centers.end());
    for (auto& c : state.centers) {
        c.beds_remaining = available_beds(c.staffed_beds_total, cfg.availability_fraction);
    }
    return state;
}

namespace {

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

struct OpenCenters {
    std::vector<CancerCenter> centers;
    std::vector<std::size_t> state_index;  // position in MarketState::centers
};

OpenCenters open_centers(const MarketState& state) {
    OpenCenters open;
    for (std::size_t i = 0; i < state.centers.size(); ++i) {
        if (state.centers[i].beds_remaining > 0) {
            open.centers.push_back(state.centers[i]);
            open.state_index.push_back(i);
        }
    }
    return open;
}

}  // namespace

bool accepts_offer(const AcceptancePolicy& policy, std::uint64_t seed, int round_no, PatientId patient) {
    if (const auto* b = std::get_if<BernoulliAcceptance>(&policy)) {
        const auto key = mix64(seed ^ mix64(static_cast<std::uint64_t>(round_no) ^ mix64(patient.value)));
        std::mt19937_64 rng(key);
        return std::bernoulli_distribution(b->probability)(rng);
    }
    if (const auto* s = std::get_if<ScriptedAcceptance>(&policy)) {
        const auto it = s->decisions.find({patient, round_no});
        return it == s->decisions.end() || it->second;
    }
    return true;
}

const char* to_string(StopReason reason) {
    switch (reason) {
        case StopReason::NoVacancy: return "no_vacancy";
        case StopReason::NoLivePatients: return "no_live_patients";
        case StopReason::MaxRounds: return "max_rounds";
    }
    return "?";
}

RoundResult run_round(const MarketState& state, const StateAdjacency& adj, const MatchConfig& cfg,
                      const TraceSink& trace) {
    if (state.pool.empty() && state.carryover.empty()) {
        throw NoEligiblePatients();
    }
    const int round_no = state.rounds_completed + 1;
    const auto open = open_centers(state);
    const std::int64_t beds = state.beds_remaining();

    RoundResult result;
    auto& inst = result.instance;
    for (const auto& c : open.centers) {
        inst.centers.push_back(c.id);
        inst.capacities.push_back(c.beds_remaining);
    }

    std::vector<Patient> wait_list;
    std::int64_t live = 0;
    auto enlist = [&](const Patient& p) {
        auto choices = preference_indices(p, open.centers, adj, cfg);
        if (!choices.empty()) {
            ++live;
        }
        wait_list.push_back(p);
        inst.candidates.push_back({p.id, p.risk, std::move(choices)});
    };
    for (const auto& p : state.carryover) {
        enlist(p);
    }
    std::size_t drawn = 0;
    while (live < beds && drawn < state.pool.size()) {
        enlist(state.pool[drawn++]);
    }

    // Carryover outranks the pool by construction; anything else means the
    // caller built the state by hand out of order.
    if (!std::is_sorted(wait_list.begin(), wait_list.end(),
                        [](const Patient& a, const Patient& b) { return ranks_above(a, b); })) {
        throw std::invalid_argument("carryover and pool are not in combined priority order");
    }

    result.outcome = run_inner(inst, trace);
    const auto& outcome = result.outcome;

    std::unordered_map<PatientId, const Patient*> by_id;
    for (const auto& p : wait_list) {
        by_id.emplace(p.id, &p);
    }
    std::unordered_map<CenterId, std::size_t> center_slot;
    for (std::size_t k = 0; k < open.centers.size(); ++k) {
        center_slot.emplace(open.centers[k].id, open.state_index[k]);
    }

    MarketState next;
    next.centers = state.centers;
    next.rounds_completed = round_no;

    auto matches = outcome.matches;
    std::sort(matches.begin(), matches.end(), [&](const Match& a, const Match& b) {
        return ranks_above(*by_id.at(a.patient), *by_id.at(b.patient));
    });
    std::vector<Patient> carry;
    for (const auto& m : matches) {
        const bool accepted = accepts_offer(cfg.acceptance, cfg.rng_seed, round_no, m.patient);
        result.offers.push_back({round_no, m.patient, m.center, accepted});
        if (accepted) {
            --next.centers[center_slot.at(m.center)].beds_remaining;
            ++result.report.offers_accepted;
        } else {
            carry.push_back(*by_id.at(m.patient));
            ++result.report.offers_declined;
        }
    }
    for (const auto id : outcome.unassigned) {
        carry.push_back(*by_id.at(id));
    }
    next.carryover = bucket_sort_by_risk(carry);

    for (const auto id : outcome.waiting) {
        next.pool.push_back(*by_id.at(id));
    }
    next.pool.insert(next.pool.end(), state.pool.begin() + static_cast<std::ptrdiff_t>(drawn), state.pool.end());

    auto& report = result.report;
    report.round_no = round_no;
    report.offers_made = matches.size();
    report.beds_remaining_before = beds;
    report.beds_remaining_after = next.beds_remaining();
    report.eligible_pool_remaining = next.pool.size() + next.carryover.size();
    report.wait_list_size = wait_list.size();
    report.unassigned = outcome.unassigned.size();
    report.never_processed = outcome.waiting.size();
    report.proposals = outcome.proposal_count;

    result.next = std::move(next);
    return result;
}

bool has_live_patient(const MarketState& state, const StateAdjacency& adj, const MatchConfig& cfg) {
    const auto open = open_centers(state);
    if (open.centers.empty()) {
        return false;
    }
    auto live = [&](const Patient& p) { return !build_preference_list(p, open.centers, adj, cfg).entries.empty(); };
    return std::any_of(state.carryover.begin(), state.carryover.end(), live) ||
           std::any_of(state.pool.begin(), state.pool.end(), live);
}

CompletionResult run_to_completion(MarketState state, const StateAdjacency& adj, const MatchConfig& cfg,
                                   const RoundObserver& observer, const RoundTraceFactory& trace) {
    validate_config(cfg);
    CompletionResult result;
    if (state.pool.empty() && state.carryover.empty() && state.rounds_completed == 0) {
        throw NoEligiblePatients();
    }
    result.stop = StopReason::MaxRounds;
    for (int k = 0; k < cfg.max_rounds; ++k) {
        if (state.beds_remaining() == 0) {
            result.stop = StopReason::NoVacancy;
            break;
        }
        if (!has_live_patient(state, adj, cfg)) {
            result.stop = StopReason::NoLivePatients;
            break;
        }
        const TraceSink sink = trace ? trace(state.rounds_completed + 1) : TraceSink{};
        auto round = run_round(state, adj, cfg, sink);
        if (observer) {
            observer(round);
        }
        result.reports.push_back(round.report);
        result.offers.insert(result.offers.end(), round.offers.begin(), round.offers.end());
        state = std::move(round.next);
    }
    if (result.stop == StopReason::MaxRounds) {
        // The last permitted round may itself have exhausted the market.
        if (state.beds_remaining() == 0) {
            result.stop = StopReason::NoVacancy;
        } else if (!has_live_patient(state, adj, cfg)) {
            result.stop = StopReason::NoLivePatients;
        }
    }
    result.final_state = std::move(state);
    return result;
}

}  // namespace cancermatch

#include "cancermatch/engine.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_set>

#include "cancermatch/errors.hpp"

namespace cancermatch {

std::int64_t MatchInstance::total_beds() const {
    return std::accumulate(capacities.begin(), capacities.end(), std::int64_t{0});
}

const char* to_string(StepAction action) {
    switch (action) {
        case StepAction::Seated: return "SEATED";
        case StepAction::Rejected: return "REJECTED";
        case StepAction::Displaced: return "DISPLACED";
        case StepAction::Unassigned: return "UNASSIGNED";
        case StepAction::Promoted: return "PROMOTED";
    }
    return "?";
}

std::string format_trace_line(const TraceEvent& event) {
    std::ostringstream os;
    os << event.step_no << ',' << event.patient << ',';
    if (event.center) {
        os << *event.center;
    }
    os << ',' << to_string(event.action);
    return os.str();
}

void validate_instance(const MatchInstance& instance) {
    if (instance.centers.size() != instance.capacities.size()) {
        throw std::invalid_argument("centers and capacities differ in length");
    }
    for (const auto cap : instance.capacities) {
        if (cap < 0) {
            throw std::invalid_argument("negative capacity");
        }
    }
    std::unordered_set<PatientId> ids;
    const auto& cands = instance.candidates;
    for (std::size_t i = 0; i < cands.size(); ++i) {
        if (!ids.insert(cands[i].id).second) {
            throw std::invalid_argument("duplicate patient id " + std::to_string(cands[i].id.value));
        }
        if (i > 0 && !ranks_above(cands[i - 1].risk, cands[i - 1].id, cands[i].risk, cands[i].id)) {
            throw std::invalid_argument("candidates not in priority order at position " + std::to_string(i));
        }
        std::vector<bool> seen(instance.centers.size(), false);
        for (const auto c : cands[i].choices) {
            if (c >= instance.centers.size() || seen[c]) {
                throw std::invalid_argument("bad choice list for patient " + std::to_string(cands[i].id.value));
            }
            seen[c] = true;
        }
    }
}

MatchingEngine::MatchingEngine(const MatchInstance& instance, EngineOptions options)
    : instance_(&instance), options_(options), rng_(options.seed) {
    validate_instance(instance);
    const std::size_t n = instance.candidates.size();
    const std::size_t m = instance.centers.size();

    status_.assign(n, PatientStatus::Waiting);
    cursor_.assign(n, 0);
    held_center_.assign(n, m);
    occupants_.assign(m, {});
    free_beds_ = instance.capacities;

    for (std::size_t p = 0; p < n; ++p) {
        waiting_.push_back(p);
    }
    const auto beds = static_cast<std::size_t>(instance.total_beds());
    initial_process_size_ = std::min(n, beds);
    for (std::size_t k = 0; k < initial_process_size_; ++k) {
        const auto p = waiting_.front();
        waiting_.pop_front();
        status_[p] = PatientStatus::Free;
        free_queue_.push_back(p);
    }
    processing_count_ = initial_process_size_;
}

bool MatchingEngine::outranks(std::size_t a, std::size_t b) const {
    const auto& ca = instance_->candidates[a];
    const auto& cb = instance_->candidates[b];
    return ranks_above(ca.risk, ca.id, cb.risk, cb.id);
}

void MatchingEngine::seat(std::size_t patient, std::size_t center) {
    auto& occ = occupants_[center];
    const auto pos = std::upper_bound(occ.begin(), occ.end(), patient,
                                      [this](std::size_t a, std::size_t b) { return outranks(a, b); });
    occ.insert(pos, patient);
    status_[patient] = PatientStatus::Held;
    held_center_[patient] = center;
}

void MatchingEngine::select_next() {
    if (proposing_ || free_queue_.size() < 2) {
        return;
    }
    switch (options_.selection) {
        case Selection::Fifo:
            break;
        case Selection::Lifo: {
            const auto p = free_queue_.back();
            free_queue_.pop_back();
            free_queue_.push_front(p);
            break;
        }
        case Selection::Random: {
            std::uniform_int_distribution<std::size_t> pick(0, free_queue_.size() - 1);
            std::swap(free_queue_.front(), free_queue_[pick(rng_)]);
            break;
        }
    }
}

std::optional<StepEffect> MatchingEngine::step() {
    if (free_queue_.empty()) {
        return std::nullopt;
    }
    ++steps_;
    select_next();
    proposing_ = false;
    const auto p = free_queue_.front();
    const auto& choices = instance_->candidates[p].choices;

    if (cursor_[p] == choices.size()) {
        free_queue_.pop_front();
        status_[p] = PatientStatus::Unassigned;
        unassigned_.push_back(p);
        --processing_count_;
        StepEffect effect{StepAction::Unassigned, p, std::nullopt, std::nullopt, std::nullopt};
        if (!waiting_.empty()) {
            const auto next = waiting_.front();
            waiting_.pop_front();
            status_[next] = PatientStatus::Free;
            free_queue_.push_back(next);
            ++processing_count_;
            effect.promoted = next;
        }
        return effect;
    }

    // Every proposal consumes the choice, including a successful one: a
    // patient displaced later can never win that center back, since its
    // occupants only improve.
    const auto c = choices[cursor_[p]++];
    ++proposals_;

    if (free_beds_[c] > 0) {
        free_queue_.pop_front();
        seat(p, c);
        --free_beds_[c];
        return StepEffect{StepAction::Seated, p, c, std::nullopt, std::nullopt};
    }

    auto& occ = occupants_[c];
    if (occ.empty() || !outranks(p, occ.back())) {
        proposing_ = true;
        return StepEffect{StepAction::Rejected, p, c, std::nullopt, std::nullopt};
    }

    const auto loser = occ.back();
    occ.pop_back();
    status_[loser] = PatientStatus::Free;
    held_center_[loser] = occupants_.size();
    free_queue_.pop_front();
    free_queue_.push_back(loser);
    seat(p, c);
    return StepEffect{StepAction::Displaced, p, c, loser, std::nullopt};
}

MatchOutcome MatchingEngine::outcome() const {
    const auto& inst = *instance_;
    MatchOutcome out;
    for (std::size_t c = 0; c < occupants_.size(); ++c) {
        for (const auto p : occupants_[c]) {
            out.matches.push_back({inst.candidates[p].id, inst.centers[c]});
        }
    }
    std::sort(out.matches.begin(), out.matches.end());
    for (const auto p : waiting_) {
        out.waiting.push_back(inst.candidates[p].id);
    }
    auto unassigned = unassigned_;
    std::sort(unassigned.begin(), unassigned.end());
    for (const auto p : unassigned) {
        out.unassigned.push_back(inst.candidates[p].id);
    }
    out.proposal_count = proposals_;
    out.step_count = steps_;
    out.initial_process_size = initial_process_size_;
    return out;
}

void MatchingEngine::check_invariants() const {
    const auto& inst = *instance_;
    const std::size_t n = inst.candidates.size();
    const std::size_t m = inst.centers.size();
    auto fail = [](const std::string& what) { throw InvariantViolation(what); };

    std::vector<int> seen(n, 0);
    for (const auto p : waiting_) {
        ++seen[p];
        if (status_[p] != PatientStatus::Waiting) fail("wait list holds a non-waiting patient");
    }
    for (const auto p : free_queue_) {
        ++seen[p];
        if (status_[p] != PatientStatus::Free) fail("free queue holds a non-free patient");
    }
    for (const auto p : unassigned_) {
        ++seen[p];
        if (status_[p] != PatientStatus::Unassigned) fail("unassigned list holds a live patient");
    }
    std::size_t held = 0;
    for (std::size_t c = 0; c < m; ++c) {
        const auto& occ = occupants_[c];
        if (free_beds_[c] < 0 || free_beds_[c] != inst.capacities[c] - static_cast<std::int64_t>(occ.size())) {
            fail("bed counter out of sync at center " + std::to_string(c));
        }
        for (std::size_t k = 0; k < occ.size(); ++k) {
            const auto p = occ[k];
            ++seen[p];
            ++held;
            if (status_[p] != PatientStatus::Held || held_center_[p] != c) fail("occupant status mismatch");
            if (k > 0 && !outranks(occ[k - 1], p)) fail("occupants out of priority order");
        }
    }
    for (std::size_t p = 0; p < n; ++p) {
        if (seen[p] != 1) fail("patient " + std::to_string(p) + " held in " + std::to_string(seen[p]) + " containers");
    }
    if (processing_count_ != free_queue_.size() + held) fail("processing count out of sync");
    if (processing_count_ > static_cast<std::size_t>(inst.total_beds())) fail("processing list exceeds beds");
}

MatchOutcome run_inner(const MatchInstance& instance, const TraceSink& trace, EngineOptions options) {
    MatchingEngine engine(instance, options);
    while (const auto effect = engine.step()) {
        if (!trace) {
            continue;
        }
        const auto& cands = instance.candidates;
        const std::uint64_t step_no = engine.step_count();
        std::optional<CenterId> center;
        if (effect->center) {
            center = instance.centers[*effect->center];
        }
        trace({step_no, cands[effect->patient].id, center, effect->action});
        if (effect->promoted) {
            trace({step_no, cands[*effect->promoted].id, std::nullopt, StepAction::Promoted});
        }
    }
    return engine.outcome();
}

}  // namespace cancermatch

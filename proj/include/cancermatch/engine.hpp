#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "cancermatch/domain.hpp"

namespace cancermatch {

// One patient as the engine sees it: priority key plus the ordered list of
// center indices it may be placed at.
struct Candidate {
    PatientId id;
    RiskScore risk;
    std::vector<std::size_t> choices;
};

// A single inner-loop problem. Candidates must already be in priority order
// (see ranks_above); choices index into `centers`/`capacities`.
struct MatchInstance {
    std::vector<CenterId> centers;
    std::vector<std::int64_t> capacities;
    std::vector<Candidate> candidates;

    std::int64_t total_beds() const;
};

struct Match {
    PatientId patient;
    CenterId center;

    auto operator<=>(const Match&) const = default;
};

struct MatchOutcome {
    std::vector<Match> matches;          // sorted by (patient, center)
    std::vector<PatientId> waiting;      // never left the wait list
    std::vector<PatientId> unassigned;   // exhausted their lists
    std::uint64_t proposal_count = 0;
    std::uint64_t step_count = 0;
    std::size_t initial_process_size = 0;

    bool operator==(const MatchOutcome&) const = default;
};

enum class PatientStatus {
    Waiting,     // in the wait list
    Free,        // being processed, not holding a bed
    Held,        // being processed, holding a bed
    Unassigned,  // list exhausted
};

enum class StepAction { Seated, Rejected, Displaced, Unassigned, Promoted };

const char* to_string(StepAction action);

// What one step did. `displaced` is set for Displaced, `promoted` when an
// unassignment pulled the next patient off the wait list.
struct StepEffect {
    StepAction action;
    std::size_t patient;
    std::optional<std::size_t> center;
    std::optional<std::size_t> displaced;
    std::optional<std::size_t> promoted;
};

struct TraceEvent {
    std::uint64_t step_no;
    PatientId patient;
    std::optional<CenterId> center;
    StepAction action;
};

// `step_no,patient_id,center_id,action`; center_id is empty when absent.
std::string format_trace_line(const TraceEvent& event);

using TraceSink = std::function<void(const TraceEvent&)>;

// Which free patient proposes next. FIFO is the production order; the others
// exist to exercise displacement and order independence. A rejected patient
// keeps proposing until it is seated or runs out of choices, whatever the
// order.
enum class Selection { Fifo, Lifo, Random };

struct EngineOptions {
    Selection selection = Selection::Fifo;
    std::uint64_t seed = 0;
};

// Deferred acceptance with displacement under a shared priority order.
// Construction performs initialization: every candidate enters the wait
// list and the top min(|candidates|, total beds) move to processing. The
// instance must outlive the engine.
class MatchingEngine {
public:
    explicit MatchingEngine(const MatchInstance& instance, EngineOptions options = {});

    // Applies one transition; nullopt once no free patient remains.
    std::optional<StepEffect> step();

    bool done() const noexcept { return free_queue_.empty(); }

    MatchOutcome outcome() const;

    // Throws InvariantViolation when container membership, statuses, bed
    // counters or occupant order disagree.
    void check_invariants() const;

    PatientStatus status(std::size_t patient) const { return status_[patient]; }
    std::int64_t free_beds(std::size_t center) const { return free_beds_[center]; }
    const std::vector<std::size_t>& occupants(std::size_t center) const { return occupants_[center]; }
    std::size_t waiting_size() const noexcept { return waiting_.size(); }
    std::size_t processing_size() const noexcept { return processing_count_; }
    std::uint64_t step_count() const noexcept { return steps_; }

private:
    bool outranks(std::size_t a, std::size_t b) const;
    void seat(std::size_t patient, std::size_t center);
    void select_next();

    const MatchInstance* instance_;
    EngineOptions options_;
    std::mt19937_64 rng_;
    bool proposing_ = false;  // front of free_queue_ was just rejected
    std::deque<std::size_t> waiting_;
    std::deque<std::size_t> free_queue_;
    std::vector<std::size_t> unassigned_;
    std::size_t processing_count_ = 0;
    std::size_t initial_process_size_ = 0;

    std::vector<PatientStatus> status_;
    std::vector<std::size_t> cursor_;         // next untried choice
    std::vector<std::size_t> held_center_;
    std::vector<std::vector<std::size_t>> occupants_;  // priority order
    std::vector<std::int64_t> free_beds_;

    std::uint64_t proposals_ = 0;
    std::uint64_t steps_ = 0;
};

// Runs an engine to completion, optionally emitting one trace event per
// action (two for an unassignment that promotes).
MatchOutcome run_inner(const MatchInstance& instance, const TraceSink& trace = {}, EngineOptions options = {});

// Throws std::invalid_argument if candidates are out of priority order, ids
// repeat, or a choice is out of range or repeated.
void validate_instance(const MatchInstance& instance);

}  // namespace cancermatch

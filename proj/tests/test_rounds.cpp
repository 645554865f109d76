#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "cancermatch/cli_io.hpp"
#include "cancermatch/errors.hpp"
#include "cancermatch/preferences.hpp"
#include "cancermatch/riskrank.hpp"
#include "cancermatch/rounds.hpp"
#include "cancermatch/verify.hpp"

using namespace cancermatch;

namespace {

StateCode S(const char* s) { return StateCode::parse(s); }

Patient patient(std::uint64_t id, int risk, const char* state = "CA", Usd income = 100000) {
    return {PatientId{id}, S(state), income, RiskScore::from_hundredths(risk)};
}

CancerCenter center(std::uint64_t id, std::int64_t beds, const char* state = "CA", Usd cost = 1000) {
    return {CenterId{id}, "c", "city", S(state), CenterType::Comprehensive, beds, cost, beds};
}

const StateAdjacency& small_map() {
    static const StateAdjacency adj({S("HI")}, {{S("CA"), S("AZ")}});
    return adj;
}

// 10 patients, risks 0.95 down to 0.50, two centers with 3 + 2 beds.
MarketState ten_by_two(const MatchConfig& cfg) {
    std::vector<Patient> cohort;
    for (int i = 0; i < 10; ++i) cohort.push_back(patient(static_cast<std::uint64_t>(i + 1), 95 - 5 * i));
    const std::vector<CancerCenter> centers{center(1, 3), center(2, 2)};
    return open_market(cohort, centers, cfg);
}

}  // namespace

TEST_CASE("select_eligible threshold is inclusive and output is in priority order") {
    const std::vector<Patient> pool{patient(3, 49), patient(2, 50), patient(1, 80), patient(4, 50)};
    const auto got = select_eligible(pool, RiskScore::from_hundredths(50));
    REQUIRE(got.size() == 3);
    CHECK(got[0].id == PatientId{1});
    CHECK(got[1].id == PatientId{2});
    CHECK(got[2].id == PatientId{4});
}

TEST_CASE("available_beds floors the fraction") {
    CHECK(available_beds(100, 0.29) == 29);
    CHECK(available_beds(1063, 0.2) == 212);
    CHECK(available_beds(4, 0.2) == 0);
    CHECK(available_beds(10, 1.0) == 10);
}

TEST_CASE("one round fills every bed when everyone accepts") {
    MatchConfig cfg;
    const auto state = ten_by_two(cfg);
    CHECK(state.beds_remaining() == 5);
    const auto r = run_round(state, small_map(), cfg);
    CHECK(r.report.round_no == 1);
    CHECK(r.report.offers_made == 5);
    CHECK(r.report.offers_accepted == 5);
    CHECK(r.report.beds_remaining_before == 5);
    CHECK(r.report.beds_remaining_after == 0);
    CHECK(r.report.wait_list_size == 5);
    CHECK(r.report.eligible_pool_remaining == 5);
    CHECK(r.next.carryover.empty());
    CHECK(r.next.pool.front().id == PatientId{6});
    for (std::size_t k = 0; k < r.offers.size(); ++k) CHECK(r.offers[k].patient == PatientId{k + 1});

    const auto done = run_to_completion(state, small_map(), cfg);
    CHECK(done.reports.size() == 1);
    CHECK(done.stop == StopReason::NoVacancy);
}

TEST_CASE("Bernoulli(0) declines everything and keeps the beds") {
    MatchConfig cfg;
    cfg.acceptance = BernoulliAcceptance{0.0};
    cfg.max_rounds = 3;
    const auto state = ten_by_two(cfg);
    const auto r = run_round(state, small_map(), cfg);
    CHECK(r.report.offers_declined == 5);
    CHECK(r.report.beds_remaining_after == 5);
    CHECK(r.next.carryover.size() == 5);
    CHECK(r.next.carryover.front().id == PatientId{1});

    const auto done = run_to_completion(state, small_map(), cfg);
    CHECK(done.reports.size() == 3);
    CHECK(done.stop == StopReason::MaxRounds);
    CHECK(done.final_state.beds_remaining() == 5);
}

TEST_CASE("empty pool") {
    MatchConfig cfg;
    MarketState empty;
    empty.centers = {center(1, 3)};
    CHECK_THROWS_AS(run_round(empty, small_map(), cfg), NoEligiblePatients);
    CHECK_THROWS_AS(run_to_completion(empty, small_map(), cfg), NoEligiblePatients);

    const auto state = open_market(std::vector<Patient>{patient(1, 10)}, std::vector<CancerCenter>{center(1, 1)}, cfg);
    cfg.t_rs = RiskScore::from_hundredths(50);
    const auto filtered =
        open_market(std::vector<Patient>{patient(1, 10)}, std::vector<CancerCenter>{center(1, 1)}, cfg);
    CHECK(state.pool.size() == 1);
    CHECK(filtered.pool.empty());
}

TEST_CASE("out-of-order state is rejected") {
    MatchConfig cfg;
    MarketState bad;
    bad.centers = {center(1, 2)};
    bad.carryover = {patient(1, 40)};
    bad.pool = {patient(2, 90)};
    CHECK_THROWS_AS(run_round(bad, small_map(), cfg), std::invalid_argument);
}

TEST_CASE("a decliner leads the next wait list") {
    MatchConfig cfg;
    ScriptedAcceptance script;
    script.decisions[{PatientId{1}, 1}] = false;
    cfg.acceptance = script;
    std::vector<Patient> cohort;
    for (int i = 0; i < 6; ++i) cohort.push_back(patient(static_cast<std::uint64_t>(i + 1), 90 - 10 * i));
    const auto state = open_market(cohort, std::vector<CancerCenter>{center(7, 2)}, cfg);

    const auto r1 = run_round(state, small_map(), cfg);
    CHECK(r1.next.carryover == std::vector<Patient>{cohort[0]});
    const auto r2 = run_round(r1.next, small_map(), cfg);
    CHECK(r2.report.wait_list_size == 1);
    CHECK(r2.instance.candidates.front().id == PatientId{1});

    const auto done = run_to_completion(state, small_map(), cfg);
    const std::vector<OfferRecord> expected{{1, PatientId{1}, CenterId{7}, false},
                                            {1, PatientId{2}, CenterId{7}, true},
                                            {2, PatientId{1}, CenterId{7}, true}};
    CHECK(done.offers == expected);
    CHECK(done.stop == StopReason::NoVacancy);
}

TEST_CASE("unreachable patients are never drawn as live") {
    MatchConfig cfg;
    const std::vector<Patient> cohort{patient(1, 90, "HI"), patient(2, 80, "HI")};
    const auto state = open_market(cohort, std::vector<CancerCenter>{center(1, 3)}, cfg);
    CHECK_FALSE(has_live_patient(state, small_map(), cfg));
    const auto done = run_to_completion(state, small_map(), cfg);
    CHECK(done.reports.empty());
    CHECK(done.stop == StopReason::NoLivePatients);
}

TEST_CASE("accepts_offer is a pure function") {
    const AcceptancePolicy half = BernoulliAcceptance{0.5};
    int yes = 0;
    for (std::uint64_t id = 0; id < 20000; ++id) {
        const bool a = accepts_offer(half, 7, 1, PatientId{id});
        CHECK(a == accepts_offer(half, 7, 1, PatientId{id}));
        yes += a;
    }
    CHECK(yes > 9500);
    CHECK(yes < 10500);
    CHECK(accepts_offer(AlwaysAccept{}, 0, 1, PatientId{1}));
    CHECK_FALSE(accepts_offer(BernoulliAcceptance{0.0}, 0, 1, PatientId{1}));
    CHECK(accepts_offer(BernoulliAcceptance{1.0}, 0, 1, PatientId{1}));
}

TEST_CASE("shipped data under random acceptance") {
    const auto adj = load_adjacency(CANCERMATCH_DATA_DIR "/us_state_adjacency.csv");
    const auto centers = load_centers(CANCERMATCH_DATA_DIR "/nci_centers.csv", adj);
    const auto cohort = synthesize_cohort(3000, 21, default_cohort_model());
    MatchConfig cfg;
    cfg.availability_fraction = 0.05;
    cfg.acceptance = BernoulliAcceptance{0.5};
    cfg.rng_seed = 3;
    const auto state = open_market(cohort, centers, cfg);

    int rounds_seen = 0;
    auto observe = [&](const RoundResult& r) {
        ++rounds_seen;
        CHECK(feasibility_problems(r.instance, r.outcome).empty());
        CHECK(find_blocking_pairs(r.instance, r.outcome).empty());
        CHECK(check_equals_serial_dictatorship(r.outcome, r.instance));
    };
    const auto a = run_to_completion(state, adj, cfg, observe);
    const auto b = run_to_completion(state, adj, cfg);
    CHECK(rounds_seen == static_cast<int>(a.reports.size()));
    CHECK(a.reports == b.reports);
    CHECK(a.offers == b.offers);

    // No patient accepts twice; accepted counts respect availability.
    std::set<PatientId> accepted;
    std::map<CenterId, std::int64_t> per_center;
    for (const auto& o : a.offers) {
        if (o.accepted) {
            CHECK(accepted.insert(o.patient).second);
            ++per_center[o.center];
        }
    }
    for (std::size_t k = 0; k < state.centers.size(); ++k) {
        const auto& c = state.centers[k];
        CHECK(per_center[c.id] + a.final_state.centers[k].beds_remaining == c.beds_remaining);
    }
    if (a.stop == StopReason::NoVacancy) {
        CHECK(a.final_state.beds_remaining() == 0);
    } else if (a.stop == StopReason::NoLivePatients) {
        CHECK_FALSE(has_live_patient(a.final_state, adj, cfg));
    }
    // Accepted patients never reappear.
    for (const auto& p : a.final_state.pool) CHECK(accepted.count(p.id) == 0);
    for (const auto& p : a.final_state.carryover) CHECK(accepted.count(p.id) == 0);
}

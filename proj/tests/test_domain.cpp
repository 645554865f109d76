#include <doctest.h>

#include <random>

#include "cancermatch/domain.hpp"
#include "cancermatch/errors.hpp"

using namespace cancermatch;

namespace {

RecordValidator us_validator() {
    std::vector<StateCode> states;
    for (const char* s : {"CA", "AZ", "NV", "AL", "NY"}) {
        states.push_back(StateCode::parse(s));
    }
    return RecordValidator(states);
}

ValidationErrorKind patient_error(RecordValidator& v, const PatientRecord& raw) {
    try {
        v.patient(raw);
    } catch (const ValidationError& e) {
        return e.kind();
    }
    FAIL("expected a ValidationError");
    return {};
}

ValidationErrorKind center_error(RecordValidator& v, const CenterRecord& raw) {
    try {
        v.center(raw);
    } catch (const ValidationError& e) {
        return e.kind();
    }
    FAIL("expected a ValidationError");
    return {};
}

}  // namespace

TEST_CASE("validate_patient accepts a well-formed row") {
    auto v = us_validator();
    const auto p = v.patient({1, "CA", 40000, 0.75});
    CHECK(p.id == PatientId{1});
    CHECK(p.state == StateCode::parse("CA"));
    CHECK(p.annual_income == 40000);
    CHECK(p.risk.hundredths() == 75);
}

TEST_CASE("validate_patient error paths") {
    auto v = us_validator();
    CHECK(patient_error(v, {2, "CA", 40000, 1.02}) == ValidationErrorKind::RiskOutOfRange);
    CHECK(patient_error(v, {3, "ZZ", 40000, 0.5}) == ValidationErrorKind::UnknownState);
    CHECK(patient_error(v, {4, "CA", -5, 0.5}) == ValidationErrorKind::NegativeIncome);
    CHECK(patient_error(v, {5, "CA", 1, -0.2}) == ValidationErrorKind::RiskOutOfRange);
    CHECK(patient_error(v, {6, "California", 1, 0.2}) == ValidationErrorKind::UnknownState);
    v.patient({7, "ca", 1, 0.2});
    CHECK(patient_error(v, {7, "CA", 1, 0.2}) == ValidationErrorKind::DuplicateId);
}

TEST_CASE("risk quantization rounds half up and is idempotent") {
    CHECK(RiskScore::quantize(0.745) == 75);
    CHECK(RiskScore::quantize(0.744) == 74);
    CHECK(RiskScore::quantize(0.005) == 1);
    CHECK(RiskScore::quantize(1.0) == 100);
    CHECK(RiskScore::quantize(1.004) == 100);
    CHECK(RiskScore::quantize(1.005) == 101);

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> r(0.0, 1.0);
    for (int i = 0; i < 10000; ++i) {
        const long q = RiskScore::quantize(r(rng));
        CHECK(RiskScore::quantize(static_cast<double>(q) / 100.0) == q);
    }
}

TEST_CASE("risk ordering matches the hundredths integers") {
    for (int a = 0; a <= 100; a += 7) {
        for (int b = 0; b <= 100; b += 3) {
            const auto ra = RiskScore::from_hundredths(a);
            const auto rb = RiskScore::from_hundredths(b);
            CHECK((ra < rb) == (a < b));
            CHECK((ra == rb) == (a == b));
        }
    }
    CHECK_THROWS_AS(RiskScore::from_hundredths(101), std::out_of_range);
}

TEST_CASE("priority order breaks risk ties by ascending id") {
    const auto r = RiskScore::from_hundredths(75);
    CHECK(ranks_above(r, PatientId{1}, r, PatientId{2}));
    CHECK_FALSE(ranks_above(r, PatientId{2}, r, PatientId{1}));
    CHECK_FALSE(ranks_above(r, PatientId{2}, r, PatientId{2}));
    CHECK(ranks_above(RiskScore::from_hundredths(80), PatientId{9}, r, PatientId{1}));
}

TEST_CASE("distance encoding") {
    CHECK(Distance::same_state().halves() == 1);
    CHECK(Distance::from_hops(0) == Distance::same_state());
    CHECK(Distance::from_hops(1).value() == 1.0);
    CHECK(Distance::from_hops(3).halves() == 6);
}

TEST_CASE("validate_center") {
    auto v = us_validator();
    const auto c = v.center({1, "O'Neal Comprehensive Cancer Center", "Birmingham", "AL", "3C", 1063, 11800});
    CHECK(c.type == CenterType::Comprehensive);
    CHECK(c.staffed_beds_total == 1063);
    CHECK(c.beds_remaining == 1063);

    const auto empty = v.center({2, "Empty", "X", "CA", "2C", 0, 50000});
    CHECK(empty.staffed_beds_total == 0);
    CHECK(empty.type == CenterType::CancerCenter);

    CHECK(center_error(v, {3, "Lab", "X", "CA", "BasicLab", 10, 100}) == ValidationErrorKind::BasicLaboratoryExcluded);
    CHECK(center_error(v, {4, "Free", "X", "CA", "3C", 10, 0}) == ValidationErrorKind::NonPositiveCost);
    CHECK(center_error(v, {5, "Nowhere", "X", "ZZ", "3C", 10, 10}) == ValidationErrorKind::UnknownState);
    CHECK(center_error(v, {6, "Odd", "X", "CA", "4C", 10, 10}) == ValidationErrorKind::UnknownCenterType);
    CHECK(center_error(v, {7, "Neg", "X", "CA", "3C", -1, 10}) == ValidationErrorKind::NegativeBeds);
    CHECK(center_error(v, {1, "Again", "X", "CA", "3C", 1, 10}) == ValidationErrorKind::DuplicateId);
}

TEST_CASE("config bounds") {
    MatchConfig cfg;
    CHECK_NOTHROW(validate_config(cfg));
    cfg.x_percent = 0;
    CHECK_THROWS_AS(validate_config(cfg), std::invalid_argument);
    cfg = {};
    cfg.availability_fraction = 0.0;
    CHECK_THROWS_AS(validate_config(cfg), std::invalid_argument);
    cfg = {};
    cfg.t_ad = Distance::from_halves(0);
    CHECK_THROWS_AS(validate_config(cfg), std::invalid_argument);
    cfg = {};
    cfg.acceptance = BernoulliAcceptance{1.5};
    CHECK_THROWS_AS(validate_config(cfg), std::invalid_argument);
}

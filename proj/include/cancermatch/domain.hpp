#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <variant>
#include <vector>

namespace cancermatch {

using Usd = std::int64_t;

// Two-letter postal code, always upper case.
class StateCode {
public:
    constexpr StateCode() = default;

    // Accepts exactly two ASCII letters in either case; anything else yields
    // the invalid (empty) code.
    static StateCode parse(std::string_view text);

    bool valid() const noexcept { return chars_[0] != '\0'; }
    std::string str() const { return valid() ? std::string(chars_.data(), 2) : std::string(); }

    auto operator<=>(const StateCode&) const = default;

private:
    std::array<char, 2> chars_{'\0', '\0'};
};

std::ostream& operator<<(std::ostream& os, const StateCode& code);

template <typename Tag>
struct Identifier {
    std::uint64_t value = 0;

    auto operator<=>(const Identifier&) const = default;
};

using PatientId = Identifier<struct PatientTag>;
using CenterId = Identifier<struct CenterTag>;

template <typename Tag>
std::ostream& operator<<(std::ostream& os, Identifier<Tag> id) {
    return os << id.value;
}

// Risk in [0, 1] at 0.01 granularity, held as integer hundredths so ordering
// and bucketing are exact.
class RiskScore {
public:
    static constexpr int kMaxHundredths = 100;

    constexpr RiskScore() = default;

    // Throws std::out_of_range outside [0, 100].
    static RiskScore from_hundredths(int hundredths);

    // Round-half-up to hundredths; the result may lie outside [0, 100].
    static long quantize(double value);

    constexpr int hundredths() const noexcept { return hundredths_; }
    double value() const noexcept { return hundredths_ / 100.0; }

    auto operator<=>(const RiskScore&) const = default;

private:
    constexpr explicit RiskScore(int h) : hundredths_(h) {}
    int hundredths_ = 0;
};

std::ostream& operator<<(std::ostream& os, RiskScore risk);

// Hop distance in half units: own state is 1 (0.5), a neighbor 2 (1.0), and
// each further hop adds 2.
class Distance {
public:
    constexpr Distance() = default;

    static constexpr Distance from_halves(int halves) { return Distance(halves); }
    static constexpr Distance same_state() { return Distance(1); }
    static constexpr Distance from_hops(int hops) { return hops == 0 ? same_state() : Distance(2 * hops); }

    constexpr int halves() const noexcept { return halves_; }
    double value() const noexcept { return halves_ / 2.0; }

    auto operator<=>(const Distance&) const = default;

private:
    constexpr explicit Distance(int halves) : halves_(halves) {}
    int halves_ = 0;
};

std::ostream& operator<<(std::ostream& os, Distance d);

struct Patient {
    PatientId id;
    StateCode state;
    Usd annual_income = 0;
    RiskScore risk;

    bool operator==(const Patient&) const = default;
};

// Strict priority order shared by every center: higher risk first, then
// lower patient id. Distinct patients never tie.
inline bool ranks_above(RiskScore risk_a, PatientId id_a, RiskScore risk_b, PatientId id_b) {
    if (risk_a != risk_b) {
        return risk_a > risk_b;
    }
    return id_a < id_b;
}

inline bool ranks_above(const Patient& a, const Patient& b) {
    return ranks_above(a.risk, a.id, b.risk, b.id);
}

enum class CenterType { Comprehensive, CancerCenter };

const char* to_string(CenterType type);

struct CancerCenter {
    CenterId id;
    std::string name;
    std::string city;
    StateCode state;
    CenterType type = CenterType::Comprehensive;
    std::int64_t staffed_beds_total = 0;
    Usd treatment_cost = 0;
    std::int64_t beds_remaining = 0;

    bool operator==(const CancerCenter&) const = default;
};

struct AlwaysAccept {
    bool operator==(const AlwaysAccept&) const = default;
};

struct BernoulliAcceptance {
    double probability = 1.0;
    bool operator==(const BernoulliAcceptance&) const = default;
};

// Decisions keyed by (patient, round); unlisted pairs accept.
struct ScriptedAcceptance {
    std::map<std::pair<PatientId, int>, bool> decisions;
    bool operator==(const ScriptedAcceptance&) const = default;
};

using AcceptancePolicy = std::variant<AlwaysAccept, BernoulliAcceptance, ScriptedAcceptance>;

struct MatchConfig {
    int x_percent = 25;
    Distance t_ad = Distance::from_hops(3);
    RiskScore t_rs;
    double availability_fraction = 1.0;
    AcceptancePolicy acceptance = AlwaysAccept{};
    std::uint64_t rng_seed = 0;
    int max_rounds = 100;
};

// Throws std::invalid_argument naming the first violated bound.
void validate_config(const MatchConfig& cfg);

// Raw rows as they come off an input file, before any invariant is checked.
struct PatientRecord {
    std::uint64_t id = 0;
    std::string state;
    std::int64_t annual_income = 0;
    double risk_score = 0.0;
};

struct CenterRecord {
    std::uint64_t id = 0;
    std::string name;
    std::string city;
    std::string state;
    std::string type;
    std::int64_t staffed_beds = 0;
    std::int64_t treatment_cost = 0;
};

// Validates records against a known state set and tracks ids already seen,
// so one instance should be used per dataset.
class RecordValidator {
public:
    explicit RecordValidator(std::vector<StateCode> known_states);

    Patient patient(const PatientRecord& raw);
    CancerCenter center(const CenterRecord& raw);

private:
    StateCode known_state(std::string_view text) const;

    std::vector<StateCode> known_states_;
    std::unordered_set<std::uint64_t> patient_ids_;
    std::unordered_set<std::uint64_t> center_ids_;
};

}  // namespace cancermatch

template <>
struct std::hash<cancermatch::StateCode> {
    std::size_t operator()(const cancermatch::StateCode& code) const noexcept {
        return std::hash<std::string>{}(code.str());
    }
};

template <typename Tag>
struct std::hash<cancermatch::Identifier<Tag>> {
    std::size_t operator()(cancermatch::Identifier<Tag> id) const noexcept {
        return std::hash<std::uint64_t>{}(id.value);
    }
};

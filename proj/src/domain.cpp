#include "cancermatch/domain.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

#include "cancermatch/errors.hpp"

namespace cancermatch {

const char* to_string(ValidationErrorKind kind) {
    switch (kind) {
        case ValidationErrorKind::NegativeIncome: return "NegativeIncome";
        case ValidationErrorKind::RiskOutOfRange: return "RiskOutOfRange";
        case ValidationErrorKind::UnknownState: return "UnknownState";
        case ValidationErrorKind::DuplicateId: return "DuplicateId";
        case ValidationErrorKind::BasicLaboratoryExcluded: return "BasicLaboratoryExcluded";
        case ValidationErrorKind::NonPositiveCost: return "NonPositiveCost";
        case ValidationErrorKind::NegativeBeds: return "NegativeBeds";
        case ValidationErrorKind::UnknownCenterType: return "UnknownCenterType";
    }
    return "ValidationError";
}

StateCode StateCode::parse(std::string_view text) {
    StateCode code;
    if (text.size() != 2) {
        return code;
    }
    for (std::size_t i = 0; i < 2; ++i) {
        const auto c = static_cast<unsigned char>(text[i]);
        if (!std::isalpha(c)) {
            return StateCode{};
        }
        code.chars_[i] = static_cast<char>(std::toupper(c));
    }
    return code;
}

std::ostream& operator<<(std::ostream& os, const StateCode& code) {
    return os << code.str();
}

RiskScore RiskScore::from_hundredths(int hundredths) {
    if (hundredths < 0 || hundredths > kMaxHundredths) {
        throw std::out_of_range("risk hundredths outside [0, 100]: " + std::to_string(hundredths));
    }
    return RiskScore(hundredths);
}

long RiskScore::quantize(double value) {
    // The nudge keeps decimal inputs such as 0.745 (stored as 0.74499...) on
    // the half-up side.
    return std::lround(std::floor(value * 100.0 + 0.5 + 1e-9));
}

std::ostream& operator<<(std::ostream& os, RiskScore risk) {
    const int h = risk.hundredths();
    os << h / 100 << '.' << (h % 100) / 10 << h % 10;
    return os;
}

std::ostream& operator<<(std::ostream& os, Distance d) {
    os << d.halves() / 2 << '.' << (d.halves() % 2 == 0 ? '0' : '5');
    return os;
}

const char* to_string(CenterType type) {
    return type == CenterType::Comprehensive ? "3C" : "2C";
}

void validate_config(const MatchConfig& cfg) {
    if (cfg.x_percent <= 0 || cfg.x_percent > 100) {
        throw std::invalid_argument("x_percent must lie in (0, 100]");
    }
    if (!(cfg.availability_fraction > 0.0 && cfg.availability_fraction <= 1.0)) {
        throw std::invalid_argument("availability_fraction must lie in (0, 1]");
    }
    if (cfg.t_ad.halves() <= 0) {
        throw std::invalid_argument("t_ad must be positive");
    }
    if (cfg.max_rounds <= 0) {
        throw std::invalid_argument("max_rounds must be positive");
    }
    if (const auto* b = std::get_if<BernoulliAcceptance>(&cfg.acceptance)) {
        if (!(b->probability >= 0.0 && b->probability <= 1.0)) {
            throw std::invalid_argument("acceptance probability must lie in [0, 1]");
        }
    }
}

RecordValidator::RecordValidator(std::vector<StateCode> known_states)
    : known_states_(std::move(known_states)) {
    std::sort(known_states_.begin(), known_states_.end());
}

StateCode RecordValidator::known_state(std::string_view text) const {
    const StateCode code = StateCode::parse(text);
    if (!code.valid() || !std::binary_search(known_states_.begin(), known_states_.end(), code)) {
        throw ValidationError(ValidationErrorKind::UnknownState, "'" + std::string(text) + "'");
    }
    return code;
}

Patient RecordValidator::patient(const PatientRecord& raw) {
    const std::string who = "patient " + std::to_string(raw.id);
    if (raw.annual_income < 0) {
        throw ValidationError(ValidationErrorKind::NegativeIncome, who);
    }
    const long hundredths = std::isfinite(raw.risk_score) ? RiskScore::quantize(raw.risk_score) : -1;
    if (hundredths < 0 || hundredths > RiskScore::kMaxHundredths) {
        throw ValidationError(ValidationErrorKind::RiskOutOfRange, who);
    }
    Patient p{PatientId{raw.id}, known_state(raw.state), raw.annual_income,
              RiskScore::from_hundredths(static_cast<int>(hundredths))};
    if (!patient_ids_.insert(raw.id).second) {
        throw ValidationError(ValidationErrorKind::DuplicateId, who);
    }
    return p;
}

namespace {

bool is_one_of(std::string_view text, std::initializer_list<std::string_view> names) {
    return std::find(names.begin(), names.end(), text) != names.end();
}

}  // namespace

CancerCenter RecordValidator::center(const CenterRecord& raw) {
    const std::string who = "center " + std::to_string(raw.id);
    CenterType type;
    if (is_one_of(raw.type, {"3C", "Comprehensive"})) {
        type = CenterType::Comprehensive;
    } else if (is_one_of(raw.type, {"2C", "CancerCenter", "Cancer Center"})) {
        type = CenterType::CancerCenter;
    } else if (is_one_of(raw.type, {"BasicLab", "BasicLaboratory", "Basic Laboratory", "BL"})) {
        throw ValidationError(ValidationErrorKind::BasicLaboratoryExcluded, who);
    } else {
        throw ValidationError(ValidationErrorKind::UnknownCenterType, who + " type '" + raw.type + "'");
    }
    if (raw.treatment_cost <= 0) {
        throw ValidationError(ValidationErrorKind::NonPositiveCost, who);
    }
    if (raw.staffed_beds < 0) {
        throw ValidationError(ValidationErrorKind::NegativeBeds, who);
    }
    CancerCenter c{CenterId{raw.id}, raw.name, raw.city, known_state(raw.state), type,
                   raw.staffed_beds, raw.treatment_cost, raw.staffed_beds};
    if (!center_ids_.insert(raw.id).second) {
        throw ValidationError(ValidationErrorKind::DuplicateId, who);
    }
    return c;
}

}  // namespace cancermatch

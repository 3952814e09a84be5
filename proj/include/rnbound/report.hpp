#pragma once

#include "rnbound/element.hpp"
#include "rnbound/exponent.hpp"
#include "rnbound/ideal.hpp"

#include <json.hpp>

#include <string>
#include <string_view>

namespace rnbound {

using Json = nlohmann::ordered_json;

enum class Verdict { Pass, Fail, HypothesisNotMet, Unresolved };

inline std::string_view to_string(Verdict v) {
    switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::HypothesisNotMet: return "hypothesis-not-met";
    case Verdict::Unresolved: return "unresolved";
    }
    return "?";
}

/// Outcome of one check together with every intermediate quantity.
struct VerificationReport {
    std::string check;
    Verdict verdict = Verdict::Pass;
    Json details = Json::object();
    std::string message;

    bool passed() const noexcept { return verdict == Verdict::Pass; }
};

inline Json to_json(const ExponentVector& e) {
    Json j = Json::array();
    for (auto c : e.coords()) j.push_back(c);
    return j;
}

inline Json to_json(const MonomialIdeal& I) {
    Json j = Json::array();
    for (const auto& g : I.generators()) j.push_back(to_json(g));
    return j;
}

inline Json to_json(const RingElement& f) {
    Json j = Json::array();
    for (const auto& [e, c] : f.terms()) j.push_back(Json{{"exp", to_json(e)}, {"coef", c}});
    return j;
}

} // namespace rnbound

#pragma once

#include "rnbound/ambient.hpp"
#include "rnbound/error.hpp"
#include "rnbound/exponent.hpp"
#include "rnbound/ideal.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <utility>

namespace rnbound {

/// Finite sum of monoid monomials with integer coefficients. Coefficient
/// arithmetic is overflow-checked; zero coefficients are never stored.
class RingElement {
public:
    using Terms = std::map<ExponentVector, std::int64_t, GrlexLess>;

    explicit RingElement(AmbientRing ambient) : ambient_(std::move(ambient)) {}

    static RingElement monomial(const AmbientRing& a, const ExponentVector& e, std::int64_t coef = 1) {
        RingElement f(a);
        f.add_term(e, coef);
        return f;
    }
    static RingElement one(const AmbientRing& a) { return monomial(a, ExponentVector::zero(a.dimension())); }

    const AmbientRing& ambient() const noexcept { return ambient_; }
    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    void add_term(const ExponentVector& e, std::int64_t coef) {
        if (!ambient_.contains(e))
            throw Error(ErrorKind::NotInSemigroup, e.to_string() + " is not in " + ambient_.describe());
        if (coef == 0) return;
        auto [it, inserted] = terms_.try_emplace(e, coef);
        if (!inserted) {
            it->second = detail::checked_add(it->second, coef);
            if (it->second == 0) terms_.erase(it);
        }
    }

    void require_same_ambient(const RingElement& o) const {
        if (!(ambient_ == o.ambient_))
            throw Error(ErrorKind::AmbientMismatch, ambient_.describe() + " vs " + o.ambient_.describe());
    }

    bool operator==(const RingElement& o) const { return ambient_ == o.ambient_ && terms_ == o.terms_; }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string s;
        bool first = true;
        for (const auto& [e, c] : terms_) {
            if (!first) s += c < 0 ? " - " : " + ";
            else if (c < 0) s += "-";
            first = false;
            const auto mag = c < 0 ? -c : c;
            if (mag != 1 || e.is_zero()) s += std::to_string(mag);
            if (!e.is_zero()) s += "m" + e.to_string();
        }
        return s;
    }

private:
    AmbientRing ambient_;
    Terms terms_;
};

inline RingElement elem_add(const RingElement& f, const RingElement& g) {
    f.require_same_ambient(g);
    RingElement r = f;
    for (const auto& [e, c] : g.terms()) r.add_term(e, c);
    return r;
}

inline RingElement elem_neg(const RingElement& f) {
    RingElement r(f.ambient());
    for (const auto& [e, c] : f.terms()) r.add_term(e, detail::checked_sub(0, c));
    return r;
}

inline RingElement elem_sub(const RingElement& f, const RingElement& g) {
    f.require_same_ambient(g);
    RingElement r = f;
    for (const auto& [e, c] : g.terms()) r.add_term(e, detail::checked_sub(0, c));
    return r;
}

inline RingElement elem_mul(const RingElement& f, const RingElement& g) {
    f.require_same_ambient(g);
    RingElement r(f.ambient());
    for (const auto& [a, ca] : f.terms())
        for (const auto& [b, cb] : g.terms()) r.add_term(a + b, detail::checked_mul(ca, cb));
    return r;
}

/// Monomial ideals split elements termwise.
inline bool element_in_ideal(const RingElement& f, const MonomialIdeal& I) {
    if (!(f.ambient() == I.ambient()))
        throw Error(ErrorKind::AmbientMismatch, f.ambient().describe() + " vs " + I.ambient().describe());
    return std::all_of(f.terms().begin(), f.terms().end(), [&](const auto& t) { return I.contains(t.first); });
}

} // namespace rnbound

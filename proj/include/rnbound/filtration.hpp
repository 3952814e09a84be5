#pragma once

#include "rnbound/closure.hpp"
#include "rnbound/ideal.hpp"

#include <deque>
#include <string>
#include <string_view>

namespace rnbound {

/// A family {F_n} with F_0 = A built from a base ideal: its powers (adic, or
/// powers of a larger J), the Ratliff-Rush closures of the powers, or the
/// integral closures of the powers. Terms are computed on first access and
/// cached, so a Filtration must not be shared across threads.
class Filtration {
public:
    enum class Kind { Adic, PowersOf, RatliffRushPowers, IntegralClosurePowers };

    static Filtration adic(MonomialIdeal I) { return Filtration(Kind::Adic, std::move(I), {}); }
    static Filtration powers_of(MonomialIdeal J) { return Filtration(Kind::PowersOf, std::move(J), {}); }
    static Filtration ratliff_rush_powers(MonomialIdeal J, RatliffRushConfig cfg = {}) {
        return Filtration(Kind::RatliffRushPowers, std::move(J), cfg);
    }
    static Filtration integral_closure_powers(MonomialIdeal I) {
        return Filtration(Kind::IntegralClosurePowers, std::move(I), {});
    }

    Kind kind() const noexcept { return kind_; }
    const MonomialIdeal& base() const noexcept { return base_; }
    const AmbientRing& ambient() const noexcept { return base_.ambient(); }

    /// True when every term is a power of the base, so F_{n+1} = Q F_n
    /// propagates to all later n.
    bool is_power_filtration() const noexcept { return kind_ == Kind::Adic || kind_ == Kind::PowersOf; }

    const MonomialIdeal& term(std::size_t n) const {
        while (terms_.size() <= n) {
            const auto k = terms_.size();
            switch (kind_) {
            case Kind::Adic:
            case Kind::PowersOf: terms_.push_back(powers_[k]); break;
            case Kind::RatliffRushPowers: terms_.push_back(ratliff_rush_of_power(powers_, k, rr_).closure); break;
            case Kind::IntegralClosurePowers: {
                const auto p = powers_[k];
                terms_.push_back(k == 0 ? p : integral_closure(p));
                break;
            }
            }
        }
        return terms_[n];
    }

    const MonomialIdeal& base_power(std::size_t n) const { return powers_[n]; }

    std::string describe() const { return std::string(kind_name(kind_)) + "(" + base_.to_string() + ")"; }

    static std::string_view kind_name(Kind k) {
        switch (k) {
        case Kind::Adic: return "adic";
        case Kind::PowersOf: return "powers";
        case Kind::RatliffRushPowers: return "ratliff-rush";
        case Kind::IntegralClosurePowers: return "integral-closure";
        }
        return "?";
    }

private:
    Filtration(Kind kind, MonomialIdeal base, RatliffRushConfig cfg)
        : kind_(kind), base_(base), rr_(cfg), powers_(std::move(base)) {}

    Kind kind_;
    MonomialIdeal base_;
    RatliffRushConfig rr_;
    mutable PowerLadder powers_;
    mutable std::deque<MonomialIdeal> terms_;
};

} // namespace rnbound

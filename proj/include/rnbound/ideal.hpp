#pragma once

#include "rnbound/ambient.hpp"
#include "rnbound/error.hpp"
#include "rnbound/exponent.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace rnbound {

class MonomialIdeal;
MonomialIdeal minimalize(const AmbientRing& ambient, std::vector<ExponentVector> raw);

/// A monomial ideal of the semigroup ring, stored by its unique minimal
/// generating set in graded-lex order. The zero ideal has no generators; the
/// unit ideal is generated by the zero exponent.
class MonomialIdeal {
public:
    explicit MonomialIdeal(AmbientRing ambient) : ambient_(std::move(ambient)) {}

    static MonomialIdeal zero(const AmbientRing& a) { return MonomialIdeal(a); }
    static MonomialIdeal unit(const AmbientRing& a) {
        MonomialIdeal I(a);
        I.gens_.push_back(ExponentVector::zero(a.dimension()));
        return I;
    }
    /// The graded maximal ideal generated by the semigroup generators.
    static MonomialIdeal maximal(const AmbientRing& a) { return minimalize(a, a.generators()); }

    const AmbientRing& ambient() const noexcept { return ambient_; }
    std::span<const ExponentVector> generators() const noexcept { return gens_; }
    std::size_t size() const noexcept { return gens_.size(); }
    bool is_zero() const noexcept { return gens_.empty(); }
    bool is_unit() const noexcept { return gens_.size() == 1 && gens_.front().is_zero(); }

    /// First generator (graded-lex) dividing e.
    std::optional<ExponentVector> divisor_of(const ExponentVector& e) const {
        ambient_.require_dimension(e);
        for (const auto& g : gens_)
            if (ambient_.divides(g, e)) return g;
        return std::nullopt;
    }

    bool contains(const ExponentVector& e) const {
        if (!ambient_.contains(e)) return false;
        return divisor_of(e).has_value();
    }

    /// Componentwise max over the generators; zero vector for the zero ideal.
    ExponentVector generator_max() const {
        ExponentVector m(ambient_.dimension());
        for (const auto& g : gens_) m = max_componentwise(m, g);
        return m;
    }

    void require_same_ambient(const MonomialIdeal& o) const {
        if (!(ambient_ == o.ambient_))
            throw Error(ErrorKind::AmbientMismatch, ambient_.describe() + " vs " + o.ambient_.describe());
    }

    bool operator==(const MonomialIdeal& o) const { return ambient_ == o.ambient_ && gens_ == o.gens_; }

    std::string to_string() const {
        if (gens_.empty()) return "(0)";
        std::string s = "(";
        for (std::size_t i = 0; i < gens_.size(); ++i) s += (i ? "," : "") + gens_[i].to_string();
        return s + ")";
    }

private:
    friend MonomialIdeal minimalize(const AmbientRing&, std::vector<ExponentVector>);

    AmbientRing ambient_;
    std::vector<ExponentVector> gens_;
};

/// Reduces a list of monoid members to the minimal generating set of the
/// ideal they generate.
inline MonomialIdeal minimalize(const AmbientRing& ambient, std::vector<ExponentVector> raw) {
    for (const auto& e : raw) {
        ambient.require_dimension(e);
        if (!ambient.contains(e))
            throw Error(ErrorKind::NotInSemigroup, e.to_string() + " is not in " + ambient.describe());
    }
    sort_grlex(raw);
    MonomialIdeal I(ambient);
    if (ambient.divisibility_is_componentwise() && ambient.dimension() == 2) {
        // Staircase sweep: by x ascending (then y ascending), a point survives
        // iff its y is below every y seen so far.
        std::sort(raw.begin(), raw.end(), [](const auto& a, const auto& b) {
            return a[0] != b[0] ? a[0] < b[0] : a[1] < b[1];
        });
        std::int64_t best = std::numeric_limits<std::int64_t>::max();
        for (auto& e : raw) {
            if (e[1] < best) {
                best = e[1];
                I.gens_.push_back(std::move(e));
            }
        }
        sort_grlex(I.gens_);
        return I;
    }
    // A proper divisor has strictly smaller degree, so scanning in graded
    // order only needs to compare against survivors.
    for (auto& e : raw) {
        bool divisible = false;
        for (const auto& g : I.gens_)
            if (ambient.divides(g, e)) {
                divisible = true;
                break;
            }
        if (!divisible) I.gens_.push_back(std::move(e));
    }
    return I;
}

inline MonomialIdeal ideal_from(const AmbientRing& ambient, std::vector<ExponentVector> raw) {
    return minimalize(ambient, std::move(raw));
}

inline MonomialIdeal ideal_sum(const MonomialIdeal& I, const MonomialIdeal& J) {
    I.require_same_ambient(J);
    std::vector<ExponentVector> all(I.generators().begin(), I.generators().end());
    all.insert(all.end(), J.generators().begin(), J.generators().end());
    return minimalize(I.ambient(), std::move(all));
}

inline MonomialIdeal ideal_product(const MonomialIdeal& I, const MonomialIdeal& J) {
    I.require_same_ambient(J);
    std::vector<ExponentVector> all;
    all.reserve(I.size() * J.size());
    for (const auto& a : I.generators())
        for (const auto& b : J.generators()) all.push_back(a + b);
    return minimalize(I.ambient(), std::move(all));
}

/// I^0, I^1, ..., I^n by iterated multiplication.
inline std::vector<MonomialIdeal> power_ladder(const MonomialIdeal& I, std::size_t n) {
    std::vector<MonomialIdeal> ladder;
    ladder.reserve(n + 1);
    ladder.push_back(MonomialIdeal::unit(I.ambient()));
    for (std::size_t k = 1; k <= n; ++k) ladder.push_back(ideal_product(ladder.back(), I));
    return ladder;
}

inline MonomialIdeal ideal_power(const MonomialIdeal& I, std::size_t n) { return power_ladder(I, n).back(); }

/// Lazily extended sequence of powers I^0, I^1, ... of a fixed ideal.
/// Not safe to share across threads.
class PowerLadder {
public:
    explicit PowerLadder(MonomialIdeal base) : base_(std::move(base)) {
        powers_.push_back(MonomialIdeal::unit(base_.ambient()));
    }

    const MonomialIdeal& base() const noexcept { return base_; }

    const MonomialIdeal& operator[](std::size_t k) {
        while (powers_.size() <= k) powers_.push_back(ideal_product(powers_.back(), base_));
        return powers_[k];
    }

private:
    MonomialIdeal base_;
    std::deque<MonomialIdeal> powers_;
};

/// Every generator of I lies in J.
inline bool ideal_leq(const MonomialIdeal& I, const MonomialIdeal& J) {
    I.require_same_ambient(J);
    return std::all_of(I.generators().begin(), I.generators().end(),
                       [&](const auto& g) { return J.contains(g); });
}

inline bool ideal_eq(const MonomialIdeal& I, const MonomialIdeal& J) { return ideal_leq(I, J) && ideal_leq(J, I); }

inline bool ideal_contains_monomial(const MonomialIdeal& I, const ExponentVector& e) { return I.contains(e); }

/// Intersection in a free ambient: generated by pairwise lcms.
inline MonomialIdeal ideal_intersection(const MonomialIdeal& I, const MonomialIdeal& J) {
    I.require_same_ambient(J);
    if (I.ambient().kind() != AmbientRing::Kind::Free)
        throw Error(ErrorKind::Unsupported, "intersection is implemented for free ambients only");
    std::vector<ExponentVector> all;
    all.reserve(I.size() * J.size());
    for (const auto& a : I.generators())
        for (const auto& b : J.generators()) all.push_back(max_componentwise(a, b));
    return minimalize(I.ambient(), std::move(all));
}

/// Result of a colon computation. `search_box` is set when the answer was
/// obtained by enumeration over [0, search_box] (non-free ambients).
struct ColonResult {
    MonomialIdeal ideal;
    std::optional<ExponentVector> search_box;
};

namespace detail {

// Free(2) colon through the staircase height function h(x) = min{ y : (x,y) in I }.
inline MonomialIdeal colon_free2(const MonomialIdeal& I, const MonomialIdeal& J) {
    constexpr auto inf = std::numeric_limits<std::int64_t>::max();
    const auto& A = I.ambient();
    if (I.is_zero()) return MonomialIdeal::zero(A);
    const std::int64_t X = I.generator_max()[0];
    std::vector<std::int64_t> h(static_cast<std::size_t>(X) + 1, inf);
    for (const auto& g : I.generators())
        h[static_cast<std::size_t>(g[0])] = std::min(h[static_cast<std::size_t>(g[0])], g[1]);
    for (std::size_t x = 1; x < h.size(); ++x) h[x] = std::min(h[x], h[x - 1]);

    std::vector<std::int64_t> hc(h.size(), 0);
    for (const auto& g : J.generators()) {
        for (std::size_t x = 0; x < h.size(); ++x) {
            const auto shifted = std::min<std::int64_t>(static_cast<std::int64_t>(x) + g[0], X);
            const auto hv = h[static_cast<std::size_t>(shifted)];
            const auto need = hv == inf ? inf : std::max<std::int64_t>(hv - g[1], 0);
            hc[x] = std::max(hc[x], need);
        }
    }
    std::vector<ExponentVector> gens;
    std::int64_t prev = inf;
    for (std::size_t x = 0; x < hc.size(); ++x) {
        if (hc[x] < prev) {
            gens.push_back(ExponentVector{static_cast<std::int64_t>(x), hc[x]});
            prev = hc[x];
        }
    }
    return minimalize(A, std::move(gens));
}

} // namespace detail

/// (I : J) = { a : a + g in I for every generator g of J }.
///
/// Free ambients are exact: intersection of the single-generator colons
/// (componentwise truncated differences), with a staircase fast path in two
/// variables. Other ambients enumerate the box max(I) + max(J) + span of the
/// semigroup generators and record it; for Veronese monoids that box provably
/// contains every minimal generator.
inline ColonResult ideal_colon_with_provenance(const MonomialIdeal& I, const MonomialIdeal& J) {
    I.require_same_ambient(J);
    if (J.is_zero()) throw Error(ErrorKind::InvalidArgument, "colon by the zero ideal");
    const auto& A = I.ambient();
    if (J.is_unit()) return {I, std::nullopt};
    if (A.kind() == AmbientRing::Kind::Free) {
        if (A.dimension() == 2) return {detail::colon_free2(I, J), std::nullopt};
        std::optional<MonomialIdeal> acc;
        for (const auto& g : J.generators()) {
            std::vector<ExponentVector> shifted;
            for (const auto& e : I.generators()) {
                ExponentVector d = e - g;
                for (std::size_t i = 0; i < d.size(); ++i) d[i] = std::max<std::int64_t>(d[i], 0);
                shifted.push_back(std::move(d));
            }
            auto single = minimalize(A, std::move(shifted));
            acc = acc ? ideal_intersection(*acc, single) : single;
        }
        return {*acc, std::nullopt};
    }
    ExponentVector box = I.generator_max() + J.generator_max() + A.generator_span();
    std::vector<ExponentVector> found;
    for (const auto& a : A.enumerate_box(box)) {
        bool ok = std::all_of(J.generators().begin(), J.generators().end(),
                              [&](const auto& g) { return I.contains(a + g); });
        if (ok) found.push_back(a);
    }
    return {minimalize(A, std::move(found)), box};
}

inline MonomialIdeal ideal_colon(const MonomialIdeal& I, const MonomialIdeal& J) {
    return ideal_colon_with_provenance(I, J).ideal;
}

} // namespace rnbound

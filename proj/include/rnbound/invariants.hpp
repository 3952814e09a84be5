#pragma once

#include "rnbound/closure.hpp"
#include "rnbound/error.hpp"
#include "rnbound/filtration.hpp"
#include "rnbound/ideal.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace rnbound {

namespace detail {

// Smallest c >= 1 with c*g in I, or empty when no multiple of g lies in I.
inline std::optional<std::int64_t> radical_exponent(const MonomialIdeal& I, const ExponentVector& g) {
    std::optional<std::int64_t> best;
    for (const auto& h : I.generators()) {
        std::int64_t c = 1;
        bool feasible = true;
        for (std::size_t i = 0; i < g.size(); ++i) {
            if (g[i] == 0) {
                if (h[i] != 0) feasible = false;
            } else {
                c = std::max(c, (h[i] + g[i] - 1) / g[i]);
            }
        }
        if (!feasible) continue;
        if (I.ambient().divisibility_is_componentwise()) {
            if (!best || c < *best) best = c;
            continue;
        }
        // Once c*g - h lies in the monoid it stays there for larger c, so a
        // bounded scan past the componentwise threshold suffices in practice.
        for (std::int64_t k = c; k <= c + 64; ++k) {
            if (best && k >= *best) break;
            if (I.ambient().subtract(k * g, h)) {
                best = k;
                break;
            }
        }
    }
    return best;
}

// Free(2) staircase: with generators sorted by x the complement is a union
// of columns of height y_i over [x_i, x_{i+1}).
inline std::int64_t staircase_length(const MonomialIdeal& I) {
    std::vector<ExponentVector> g(I.generators().begin(), I.generators().end());
    std::sort(g.begin(), g.end(), [](const auto& a, const auto& b) { return a[0] < b[0]; });
    std::int64_t total = 0;
    for (std::size_t i = 0; i + 1 < g.size(); ++i)
        total = checked_add(total, checked_mul(g[i + 1][0] - g[i][0], g[i][1]));
    return total;
}

} // namespace detail

/// Number of monoid points outside I; empty when that set is infinite
/// (I is not primary to the graded maximal ideal).
inline std::optional<std::int64_t> length_quotient(const MonomialIdeal& I) {
    const auto& A = I.ambient();
    if (I.is_zero()) return std::nullopt;
    if (I.is_unit()) return 0;
    std::vector<std::int64_t> mult;
    for (const auto& g : A.generators()) {
        const auto c = detail::radical_exponent(I, g);
        if (!c) return std::nullopt;
        mult.push_back(*c);
    }
    if (A.kind() == AmbientRing::Kind::Free && A.dimension() == 2) return detail::staircase_length(I);

    ExponentVector box(A.dimension());
    if (A.kind() == AmbientRing::Kind::Free) {
        for (std::size_t i = 0; i < A.dimension(); ++i) box[i] = mult[i] - 1;
    } else if (A.kind() == AmbientRing::Kind::Veronese) {
        // Generators are ordered (n,0), ..., (0,n); the axis ones bound the complement.
        const auto n = A.veronese_degree();
        box[0] = detail::checked_mul(mult.front(), n) - 1;
        box[1] = detail::checked_mul(mult.back(), n) - 1;
    } else {
        for (std::size_t j = 0; j < A.generators().size(); ++j) box += (mult[j] - 1) * A.generators()[j];
    }
    std::int64_t count = 0;
    for (const auto& e : A.enumerate_box(box))
        if (!I.contains(e)) ++count;
    return count;
}

/// l(F/G) for G inside F, both of finite colength.
inline std::int64_t length_between(const MonomialIdeal& F, const MonomialIdeal& G) {
    if (!ideal_leq(G, F)) throw Error(ErrorKind::InvalidArgument, "length_between needs G inside F");
    const auto lf = length_quotient(F);
    const auto lg = length_quotient(G);
    if (!lf || !lg) throw Error(ErrorKind::InvalidArgument, "length_between needs ideals of finite colength");
    return *lg - *lf;
}

/// Minimal number of generators of F/G by graded Nakayama: the minimal
/// generators of F outside G + mF.
inline std::int64_t nu_quotient(const MonomialIdeal& F, const MonomialIdeal& G) {
    F.require_same_ambient(G);
    if (!ideal_leq(G, F)) throw Error(ErrorKind::InvalidArgument, "nu_quotient needs G inside F");
    const auto mF = ideal_product(MonomialIdeal::maximal(F.ambient()), F);
    const auto base = ideal_sum(G, mF);
    std::int64_t count = 0;
    for (const auto& g : F.generators())
        if (!base.contains(g)) ++count;
    return count;
}

inline std::int64_t binomial(std::int64_t n, std::int64_t k) {
    if (k < 0 || n < k) return 0;
    std::int64_t r = 1;
    for (std::int64_t i = 1; i <= k; ++i) r = detail::checked_mul(r, n - k + i) / i;
    return r;
}

struct HilbertCoefficients {
    std::int64_t e0 = 0;
    std::int64_t e1 = 0;
    std::int64_t e2 = 0;
    bool operator==(const HilbertCoefficients&) const = default;

    /// e0*C(n+2,2) - e1*(n+1) + e2.
    std::int64_t evaluate(std::int64_t n) const {
        using detail::checked_add, detail::checked_mul, detail::checked_sub;
        return checked_add(checked_sub(checked_mul(e0, binomial(n + 2, 2)), checked_mul(e1, n + 1)), e2);
    }
};

struct HilbertData {
    /// (n, l(A/F_{n+1})) for n = 0..upTo.
    std::vector<std::pair<std::int64_t, std::int64_t>> lengths;
    std::optional<HilbertCoefficients> fitted;
    std::int64_t stabilization_index = 0;
};

inline HilbertData hilbert_lengths(const Filtration& F, std::size_t up_to) {
    HilbertData data;
    for (std::size_t n = 0; n <= up_to; ++n) {
        const auto l = length_quotient(F.term(n + 1));
        if (!l)
            throw Error(ErrorKind::InvalidArgument,
                        "F_" + std::to_string(n + 1) + " of " + F.describe() + " has infinite colength");
        data.lengths.emplace_back(static_cast<std::int64_t>(n), *l);
    }
    return data;
}

/// Exact fit of the dimension-2 Hilbert polynomial. Requires the last
/// `window` second differences to agree; the stabilization index is the
/// first n from which every length matches the polynomial.
inline HilbertCoefficients fit_hilbert_coefficients(HilbertData& data, std::size_t window = 3) {
    const auto& L = data.lengths;
    if (window == 0) window = 1;
    if (L.size() < window + 2)
        throw Error(ErrorKind::NotStabilized, "need at least " + std::to_string(window + 2) + " lengths to fit");
    std::vector<std::int64_t> d2;
    for (std::size_t i = 0; i + 2 < L.size(); ++i)
        d2.push_back(L[i + 2].second - 2 * L[i + 1].second + L[i].second);
    for (std::size_t i = d2.size() - window; i < d2.size(); ++i)
        if (d2[i] != d2.back())
            throw Error(ErrorKind::NotStabilized, "second differences not constant over the last " +
                                                      std::to_string(window) + " terms");
    HilbertCoefficients c;
    c.e0 = d2.back();
    const auto [n1, l1] = L[L.size() - 1];
    const auto [n0, l0] = L[L.size() - 2];
    // r(n) = l(n) - e0*C(n+2,2) = -e1*(n+1) + e2
    const auto r1 = l1 - c.e0 * binomial(n1 + 2, 2);
    const auto r0 = l0 - c.e0 * binomial(n0 + 2, 2);
    c.e1 = r0 - r1;
    c.e2 = r1 + c.e1 * (n1 + 1);
    std::size_t s = L.size();
    while (s > 0 && c.evaluate(L[s - 1].first) == L[s - 1].second) --s;
    data.stabilization_index = L[s].first;
    data.fitted = c;
    return c;
}

/// Lengths and fitted coefficients, doubling the range until a stable
/// window appears or `max_up_to` is passed.
inline HilbertData hilbert_series_fit(const Filtration& F, std::size_t up_to = 12, std::size_t max_up_to = 96,
                                      std::size_t window = 3) {
    while (true) {
        auto data = hilbert_lengths(F, up_to);
        try {
            fit_hilbert_coefficients(data, window);
            // Demand the stable tail be at least `window` long past the index.
            if (data.lengths.back().first - data.stabilization_index >= static_cast<std::int64_t>(window))
                return data;
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::NotStabilized) throw;
        }
        if (up_to >= max_up_to)
            throw Error(ErrorKind::NotStabilized,
                        "Hilbert function of " + F.describe() + " not stable up to " + std::to_string(max_up_to));
        up_to = std::min(max_up_to, up_to * 2);
    }
}

inline std::size_t default_rn_bound(const MonomialIdeal& I) { return 4 * I.size() + 10; }

struct ReductionNumber {
    std::optional<std::size_t> value;
    std::size_t bound = 0;
    /// For value r > 0: a generator of I^r outside Q I^{r-1}.
    std::optional<ExponentVector> witness;
};

/// Least n <= bound with I^{n+1} = Q I^n; the two following indices are
/// spot-checked once found.
inline ReductionNumber reduction_number(const MonomialIdeal& Q, const MonomialIdeal& I, std::size_t bound) {
    Q.require_same_ambient(I);
    if (!ideal_leq(Q, I)) throw Error(ErrorKind::HypothesisFailed, "Q is not contained in I");
    PowerLadder ladder(I);
    for (std::size_t n = 0; n <= bound; ++n) {
        if (!reduction_holds_at(Q, ladder, n)) continue;
        for (std::size_t m = n + 1; m <= n + 2; ++m)
            if (!reduction_holds_at(Q, ladder, m))
                throw Error(ErrorKind::Internal, "reduction equality fails to propagate at " + std::to_string(m));
        ReductionNumber rn{n, bound, std::nullopt};
        if (n > 0) {
            const auto lower = ideal_product(Q, ladder[n - 1]);
            for (const auto& g : ladder[n].generators())
                if (!lower.contains(g)) {
                    rn.witness = g;
                    break;
                }
        }
        return rn;
    }
    return {std::nullopt, bound, std::nullopt};
}

} // namespace rnbound

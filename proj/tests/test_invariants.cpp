#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace rnbound;

namespace {

const AmbientRing F2 = AmbientRing::free(2);

std::vector<std::int64_t> lengths_of(const HilbertData& h) {
    std::vector<std::int64_t> out;
    for (const auto& [n, l] : h.lengths) out.push_back(l);
    return out;
}

MonomialIdeal veronese_point_ideal(std::int64_t n, std::vector<std::int64_t> idx) {
    std::vector<ExponentVector> g;
    for (auto i : idx) g.push_back({n - i, i});
    return ideal_from(AmbientRing::veronese(n), g);
}

} // namespace

TEST(Length, Examples) {
    EXPECT_EQ(length_quotient(ideal_from(F2, {{2, 0}, {0, 2}})), 4);
    EXPECT_EQ(length_quotient(MonomialIdeal::maximal(F2)), 1);
    EXPECT_FALSE(length_quotient(ideal_from(F2, {{1, 0}})).has_value());
    EXPECT_EQ(length_quotient(MonomialIdeal::unit(F2)), 0);
    EXPECT_FALSE(length_quotient(MonomialIdeal::zero(F2)).has_value());
}

TEST(Length, MatchesComplementCount) {
    const auto V3 = AmbientRing::veronese(3);
    const auto m = MonomialIdeal::maximal(V3);
    for (std::size_t k = 1; k <= 4; ++k) {
        const auto mk = ideal_power(m, k);
        // Points of degree < 3k number 1 + 4 + ... + (3(k-1)+1).
        EXPECT_EQ(*length_quotient(mk), oracle::complement_count(V3, oracle::pts(mk), {3 * std::int64_t(k), 3 * std::int64_t(k)}));
    }
    const auto F3 = AmbientRing::free(3);
    const auto I = ideal_from(F3, {{2, 0, 0}, {0, 3, 0}, {0, 0, 2}, {1, 1, 1}});
    EXPECT_EQ(*length_quotient(I), oracle::complement_count(F3, oracle::pts(I), {2, 3, 2}));
    const auto S = AmbientRing::affine({{2, 0}, {1, 1}, {0, 2}});
    const auto J = ideal_from(S, {{4, 0}, {0, 4}, {2, 2}});
    EXPECT_EQ(*length_quotient(J), oracle::complement_count(S, oracle::pts(J), {8, 8}));
}

TEST(Nu, Examples) {
    for (std::int64_t n = 3; n <= 8; ++n) {
        const auto A = AmbientRing::veronese(n);
        const auto I = veronese_point_ideal(n, {0, 1, n});
        EXPECT_EQ(nu_quotient(MonomialIdeal::maximal(A), I), n - 2);
        EXPECT_EQ(nu_quotient(I, I), 0);
    }
    for (std::int64_t n = 4; n <= 8; ++n) {
        std::vector<std::int64_t> all;
        for (std::int64_t i = 0; i < n; ++i) all.push_back(i);
        EXPECT_EQ(nu_quotient(veronese_point_ideal(n, all), veronese_point_ideal(n, {0, 1, n - 1})), n - 3);
    }
    EXPECT_THROW(nu_quotient(ideal_from(F2, {{2, 0}}), MonomialIdeal::maximal(F2)), Error);
}

TEST(Hilbert, LengthExamples) {
    const auto m = MonomialIdeal::maximal(F2);
    EXPECT_EQ(lengths_of(hilbert_lengths(Filtration::adic(m), 4)), (std::vector<std::int64_t>{1, 3, 6, 10, 15}));
    const auto I = ideal_from(F2, {{2, 0}, {1, 1}, {0, 2}});
    EXPECT_EQ(lengths_of(hilbert_lengths(Filtration::adic(I), 3)), (std::vector<std::int64_t>{3, 10, 21, 36}));
    for (std::int64_t n = 0; n <= 3; ++n)
        EXPECT_EQ(oracle::complement_count(F2, oracle::power(F2, oracle::pts(I), n + 1), {2 * n + 2, 2 * n + 2}),
                  2 * n * n + 5 * n + 3);
    // Veronese(3): the Hilbert function 1, 4, 7, 10 and its partial sums.
    const auto V = MonomialIdeal::maximal(AmbientRing::veronese(3));
    const auto L = lengths_of(hilbert_lengths(Filtration::adic(V), 3));
    EXPECT_EQ(L, (std::vector<std::int64_t>{1, 5, 12, 22}));
    std::vector<std::int64_t> hf{L[0]};
    for (std::size_t i = 1; i < L.size(); ++i) hf.push_back(L[i] - L[i - 1]);
    EXPECT_EQ(hf, (std::vector<std::int64_t>{1, 4, 7, 10}));
    EXPECT_THROW(hilbert_lengths(Filtration::adic(ideal_from(F2, {{1, 0}})), 2), Error);
}

TEST(Hilbert, FitExamples) {
    auto fit = [](const MonomialIdeal& I) { return *hilbert_series_fit(Filtration::adic(I)).fitted; };
    EXPECT_EQ(fit(MonomialIdeal::maximal(F2)), (HilbertCoefficients{1, 0, 0}));
    EXPECT_EQ(fit(ideal_from(F2, {{2, 0}, {1, 1}, {0, 2}})), (HilbertCoefficients{4, 1, 0}));
    const auto Q = ideal_from(F2, {{2, 0}, {0, 2}});
    const auto cq = fit(Q);
    EXPECT_EQ(cq.e0, *length_quotient(Q));
    EXPECT_EQ(cq, (HilbertCoefficients{4, 0, 0}));
    EXPECT_EQ(fit(MonomialIdeal::maximal(AmbientRing::veronese(3))), (HilbertCoefficients{3, 2, 0}));
}

TEST(Hilbert, FitNeedsStableWindow) {
    HilbertData d;
    d.lengths = {{0, 1}, {1, 3}, {2, 6}};
    EXPECT_THROW(fit_hilbert_coefficients(d), Error);
    d.lengths = {{0, 1}, {1, 5}, {2, 6}, {3, 10}, {4, 15}, {5, 21}};
    try {
        fit_hilbert_coefficients(d);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotStabilized);
    }
}

TEST(Hilbert, FitReproducesTailAndMatchesCramer) {
    const auto corpus = random_instances(202, 25);
    for (const auto& c : corpus) {
        for (const auto& F : {Filtration::adic(c.I), Filtration::integral_closure_powers(c.I)}) {
            auto h = hilbert_series_fit(F);
            const auto& e = *h.fitted;
            for (const auto& [n, l] : h.lengths) {
                if (n >= h.stabilization_index) {
                    EXPECT_EQ(e.evaluate(n), l);
                }
            }
            const auto s = h.lengths.size();
            const std::int64_t ns[3]{h.lengths[s - 3].first, h.lengths[s - 2].first, h.lengths[s - 1].first};
            const std::int64_t ls[3]{h.lengths[s - 3].second, h.lengths[s - 2].second, h.lengths[s - 1].second};
            std::int64_t sol[3];
            ASSERT_TRUE(oracle::solve_hilbert(ns, ls, sol));
            EXPECT_EQ(sol[0], e.e0);
            EXPECT_EQ(sol[1], e.e1);
            EXPECT_EQ(sol[2], e.e2);
            for (std::size_t i = 1; i < h.lengths.size(); ++i) EXPECT_LT(h.lengths[i - 1].second, h.lengths[i].second);
        }
        // Multiplicity is invariant under reductions.
        EXPECT_EQ(hilbert_series_fit(Filtration::adic(c.I)).fitted->e0, hilbert_series_fit(Filtration::adic(c.Q)).fitted->e0);
    }
}

TEST(ReductionNumber, Examples) {
    for (std::int64_t n = 3; n <= 8; ++n) {
        const auto r = reduction_number(veronese_point_ideal(n, {0, n}), veronese_point_ideal(n, {0, 1, n}), 40);
        ASSERT_TRUE(r.value);
        EXPECT_EQ(std::int64_t(*r.value), n - 1);
        ASSERT_TRUE(r.witness);
    }
    for (std::int64_t n = 4; n <= 8; ++n) {
        const auto r = reduction_number(veronese_point_ideal(n, {0, n - 1}), veronese_point_ideal(n, {0, 1, n - 1}), 40);
        EXPECT_EQ(std::int64_t(*r.value), n - 2);
    }
    const auto Q = ideal_from(F2, {{2, 0}, {0, 2}});
    EXPECT_EQ(*reduction_number(Q, Q, 3).value, 0u);
    EXPECT_FALSE(reduction_number(ideal_from(AmbientRing::free(3), {{1, 0, 0}}), MonomialIdeal::maximal(AmbientRing::free(3)), 3).value);
    EXPECT_THROW(reduction_number(MonomialIdeal::maximal(F2), Q, 3), Error);
    EXPECT_EQ(default_rn_bound(Q), 18u);
}

TEST(ReductionNumber, NonMembershipWitness) {
    // x_1^{n-1} outside Q I^{n-2}, with x_1 = (n-1, 1).
    for (std::int64_t n = 3; n <= 8; ++n) {
        const auto I = veronese_point_ideal(n, {0, 1, n});
        const auto Q = veronese_point_ideal(n, {0, n});
        const ExponentVector e{(n - 1) * (n - 1), n - 1};
        EXPECT_TRUE(ideal_power(I, std::size_t(n - 1)).contains(e));
        EXPECT_FALSE(ideal_product(Q, ideal_power(I, std::size_t(n - 2))).contains(e));
    }
    for (std::int64_t n = 4; n <= 8; ++n) {
        const auto I = veronese_point_ideal(n, {0, 1, n - 1});
        const auto Q = veronese_point_ideal(n, {0, n - 1});
        const ExponentVector e{(n - 1) * (n - 2), n - 2};
        EXPECT_TRUE(ideal_power(I, std::size_t(n - 2)).contains(e));
        EXPECT_FALSE(ideal_product(Q, ideal_power(I, std::size_t(n - 3))).contains(e));
    }
}

TEST(InvariantProperty, OracleEquivalence) {
    for (int t = 0; t < 40; ++t) {
        const auto c = random_instances(1000 + t, 1).front();
        const auto I = oracle::pts(c.I);
        const auto Q = oracle::pts(c.Q);
        EXPECT_EQ(*length_quotient(c.I), oracle::complement_count(F2, I, oracle::pt(c.I.generator_max())));
        const auto Ibar = integral_closure(c.I);
        const auto bound = oracle::pt(c.I.generator_max() + ExponentVector{2, 2});
        EXPECT_EQ(nu_quotient(Ibar, c.I), oracle::nu(F2, oracle::pts(Ibar), I, bound));
        const auto rr = reduction_number(c.Q, c.I, 20);
        EXPECT_EQ(std::int64_t(*rr.value), oracle::reduction_number(F2, Q, I, 20));
        // Monotone: a holding index propagates.
        PowerLadder L(c.I);
        EXPECT_TRUE(reduction_holds_at(c.Q, L, *rr.value + 3));
    }
}

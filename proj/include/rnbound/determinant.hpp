#pragma once

#include "rnbound/element.hpp"
#include "rnbound/error.hpp"
#include "rnbound/ideal.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace rnbound {

/// Witness data of the determinant trick for a_1..a_v in I against blocks
/// I_1..I_N with v = sum of the block generator counts.
///
/// Row i carries generator x_i of block n_i. The matrix (b_ij) lives over A;
/// entry (i,j) stands for b_ij t^{n_i - n_j + 1} in A[It, t^-1], whose
/// t-exponent is kept in `offsets`. delta = det(b) and sigma = a_1...a_v - delta.
struct DeterminantCertificate {
    std::size_t v = 0;
    std::vector<RingElement> elements;
    std::vector<ExponentVector> generators;
    std::vector<std::size_t> block_index;
    std::vector<std::vector<RingElement>> c;
    std::vector<std::vector<RingElement>> b;
    std::vector<std::vector<std::int64_t>> offsets;
    RingElement delta;
    RingElement sigma;

    /// delta = a_1...a_v - sigma.
    bool delta_identity = false;
    /// sigma lies in Q I^{v-1}.
    bool sigma_in_QI = false;
    /// delta * x lies in I^{v+n} for every generator x of every block I_n.
    bool delta_multiplies_blocks = false;
    /// Number of grading assertions evaluated during the expansion.
    std::size_t grading_checks = 0;

    bool verified() const noexcept { return delta_identity && sigma_in_QI && delta_multiplies_blocks; }
};

namespace detail {

inline const MonomialIdeal& power_or_unit(PowerLadder& ladder, std::int64_t e) {
    return ladder[static_cast<std::size_t>(std::max<std::int64_t>(e, 0))];
}

} // namespace detail

/// Builds and checks the certificate. `blocks[k]` is the ideal I_{k+1}; its
/// listed generators are the x_i of that block.
inline DeterminantCertificate determinant_trick(const MonomialIdeal& Q, const MonomialIdeal& I,
                                                const std::vector<MonomialIdeal>& blocks,
                                                const std::vector<RingElement>& elements) {
    Q.require_same_ambient(I);
    const auto& A = I.ambient();
    const std::size_t N = blocks.size();
    PowerLadder qpow(Q);
    PowerLadder ipow(I);

    DeterminantCertificate cert{0, {}, {}, {}, {}, {}, {}, RingElement(A), RingElement(A), false, false, false, 0};
    for (std::size_t n = 1; n <= N; ++n) {
        blocks[n - 1].require_same_ambient(I);
        for (const auto& x : blocks[n - 1].generators()) {
            cert.generators.push_back(x);
            cert.block_index.push_back(n);
        }
    }
    const std::size_t v = cert.generators.size();
    cert.v = v;
    if (v == 0) throw Error(ErrorKind::HypothesisFailed, "determinant trick needs v > 0");
    if (v > 20) throw Error(ErrorKind::Unsupported, "determinant trick limited to v <= 20");
    if (elements.size() != v)
        throw Error(ErrorKind::InvalidArgument,
                    "expected " + std::to_string(v) + " elements, got " + std::to_string(elements.size()));
    for (const auto& a : elements)
        if (!element_in_ideal(a, I)) throw Error(ErrorKind::HypothesisFailed, "element " + a.to_string() + " is not in I");
    cert.elements = elements;

    // Target of block n: I^{n+1} + sum_l Q^{n+1-l} I_l, with Q^e = A for e <= 0.
    for (std::size_t n = 1; n <= N; ++n) {
        MonomialIdeal target = ipow[n + 1];
        for (std::size_t l = 1; l <= N; ++l)
            target = ideal_sum(target, ideal_product(detail::power_or_unit(qpow, std::int64_t(n) + 1 - std::int64_t(l)),
                                                     blocks[l - 1]));
        if (!ideal_leq(ideal_product(I, blocks[n - 1]), target))
            throw Error(ErrorKind::HypothesisFailed, "I * I_" + std::to_string(n) + " is not in the block target");
    }

    cert.c.assign(v, std::vector<RingElement>(v, RingElement(A)));
    for (std::size_t i = 0; i < v; ++i) {
        const auto ni = static_cast<std::int64_t>(cert.block_index[i]);
        const auto prod = elem_mul(elements[i], RingElement::monomial(A, cert.generators[i]));
        const auto& deep = ipow[static_cast<std::size_t>(ni + 1)];
        for (const auto& [mu, coef] : prod.terms()) {
            if (deep.contains(mu)) continue;
            bool placed = false;
            for (std::size_t l = N; l >= 1 && !placed; --l) {
                const auto& qe = detail::power_or_unit(qpow, ni + 1 - std::int64_t(l));
                for (std::size_t j = 0; j < v; ++j) {
                    if (cert.block_index[j] != l) continue;
                    auto d = A.subtract(mu, cert.generators[j]);
                    if (d && qe.contains(*d)) {
                        cert.c[i][j].add_term(*d, coef);
                        placed = true;
                        break;
                    }
                }
            }
            if (!placed)
                throw Error(ErrorKind::Internal, "no decomposition for monomial " + mu.to_string() + " of a_" +
                                                     std::to_string(i + 1) + " x_" + std::to_string(i + 1));
        }
        RingElement rest = prod;
        for (std::size_t j = 0; j < v; ++j)
            rest = elem_sub(rest, elem_mul(cert.c[i][j], RingElement::monomial(A, cert.generators[j])));
        if (!element_in_ideal(rest, deep))
            throw Error(ErrorKind::Internal, "row " + std::to_string(i + 1) + " congruence fails");
    }

    cert.b.assign(v, std::vector<RingElement>(v, RingElement(A)));
    cert.offsets.assign(v, std::vector<std::int64_t>(v, 0));
    for (std::size_t i = 0; i < v; ++i) {
        for (std::size_t j = 0; j < v; ++j) {
            const auto off = std::int64_t(cert.block_index[i]) - std::int64_t(cert.block_index[j]) + 1;
            cert.offsets[i][j] = off;
            cert.b[i][j] = i == j ? elem_sub(elements[i], cert.c[i][j]) : elem_neg(cert.c[i][j]);
            // b_ij t^off must lie in A[It, t^-1].
            if (!element_in_ideal(cert.b[i][j], detail::power_or_unit(ipow, off)))
                throw Error(ErrorKind::Internal, "matrix entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                                     ") leaves the Rees algebra");
        }
    }

    // Laplace expansion along rows, memoized on the set of used columns.
    // `deg` is the accumulated t-offset of the partial permutation; any two
    // paths reaching the same column set must agree on it, and a complete
    // permutation must reach exactly v.
    std::unordered_map<std::uint32_t, std::pair<RingElement, std::int64_t>> memo;
    auto minor = [&](auto&& self, std::uint32_t used, std::int64_t deg) -> RingElement {
        const auto r = static_cast<std::size_t>(__builtin_popcount(used));
        if (r == v) {
            if (deg != std::int64_t(v))
                throw Error(ErrorKind::Internal, "grading assertion: permutation term of t-degree " +
                                                     std::to_string(deg) + " != v = " + std::to_string(v));
            ++cert.grading_checks;
            return RingElement::one(A);
        }
        if (auto it = memo.find(used); it != memo.end()) {
            if (it->second.second != deg)
                throw Error(ErrorKind::Internal, "grading assertion: inconsistent partial t-degree");
            ++cert.grading_checks;
            return it->second.first;
        }
        RingElement acc(A);
        std::size_t free_before = 0;
        for (std::size_t j = 0; j < v; ++j) {
            if (used & (1u << j)) continue;
            if (!cert.b[r][j].is_zero()) {
                auto term = elem_mul(cert.b[r][j], self(self, used | (1u << j), deg + cert.offsets[r][j]));
                acc = free_before % 2 == 0 ? elem_add(acc, term) : elem_sub(acc, term);
            }
            ++free_before;
        }
        memo.emplace(used, std::make_pair(acc, deg));
        return acc;
    };
    cert.delta = minor(minor, 0u, 0);

    RingElement product = RingElement::one(A);
    for (const auto& a : elements) product = elem_mul(product, a);
    cert.sigma = elem_sub(product, cert.delta);

    cert.delta_identity = elem_sub(product, cert.sigma) == cert.delta;
    cert.sigma_in_QI = element_in_ideal(cert.sigma, ideal_product(Q, ipow[v - 1]));
    cert.delta_multiplies_blocks = true;
    for (std::size_t i = 0; i < v; ++i) {
        const auto& target = ipow[v + cert.block_index[i]];
        if (!element_in_ideal(elem_mul(cert.delta, RingElement::monomial(A, cert.generators[i])), target))
            cert.delta_multiplies_blocks = false;
    }
    return cert;
}

} // namespace rnbound

#pragma once

#include "rnbound/ambient.hpp"
#include "rnbound/error.hpp"
#include "rnbound/exponent.hpp"
#include "rnbound/ideal.hpp"

#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace rnbound {

/// Half-plane a*x + b*y >= c with integer coefficients.
struct HalfPlane {
    std::int64_t a = 0;
    std::int64_t b = 0;
    std::int64_t c = 0;

    bool satisfied_by(const ExponentVector& e) const {
        return detail::checked_add(detail::checked_mul(a, e[0]), detail::checked_mul(b, e[1])) >= c;
    }
    bool operator==(const HalfPlane&) const = default;
};

/// conv(generator exponents) + R_{>=0}^2 as an intersection of exact
/// half-planes: the two axis-parallel facets plus one facet per edge of the
/// lower-left hull.
class NewtonPolyhedron {
public:
    explicit NewtonPolyhedron(const MonomialIdeal& I) {
        if (I.ambient().dimension() != 2)
            throw Error(ErrorKind::Unsupported, "Newton polyhedra are implemented in dimension 2 only");
        if (I.is_zero()) throw Error(ErrorKind::InvalidArgument, "Newton polyhedron of the zero ideal");

        std::vector<ExponentVector> pts(I.generators().begin(), I.generators().end());
        std::sort(pts.begin(), pts.end(),
                  [](const auto& p, const auto& q) { return p[0] != q[0] ? p[0] < q[0] : p[1] < q[1]; });
        // Keep the staircase corners: strictly decreasing y as x increases.
        std::vector<ExponentVector> stair;
        for (const auto& p : pts)
            if (stair.empty() || p[1] < stair.back()[1]) stair.push_back(p);

        auto cross = [](const ExponentVector& o, const ExponentVector& p, const ExponentVector& q) {
            return detail::checked_sub(detail::checked_mul(p[0] - o[0], q[1] - o[1]),
                                       detail::checked_mul(p[1] - o[1], q[0] - o[0]));
        };
        // Andrew monotone chain, lower half.
        for (const auto& p : stair) {
            while (vertices_.size() >= 2 && cross(vertices_[vertices_.size() - 2], vertices_.back(), p) <= 0)
                vertices_.pop_back();
            vertices_.push_back(p);
        }

        facets_.push_back({1, 0, vertices_.front()[0]});
        facets_.push_back({0, 1, vertices_.back()[1]});
        for (std::size_t i = 0; i + 1 < vertices_.size(); ++i) {
            const auto& p = vertices_[i];
            const auto& q = vertices_[i + 1];
            std::int64_t a = p[1] - q[1];
            std::int64_t b = q[0] - p[0];
            const std::int64_t g = std::gcd(a, b);
            a /= g;
            b /= g;
            facets_.push_back({a, b, detail::checked_add(detail::checked_mul(a, p[0]), detail::checked_mul(b, p[1]))});
        }
    }

    const std::vector<ExponentVector>& vertices() const noexcept { return vertices_; }
    const std::vector<HalfPlane>& facets() const noexcept { return facets_; }

    bool contains(const ExponentVector& e) const {
        for (const auto& h : facets_)
            if (!h.satisfied_by(e)) return false;
        return true;
    }

private:
    std::vector<ExponentVector> vertices_;
    std::vector<HalfPlane> facets_;
};

/// Integral closure of a monomial ideal over a free or Veronese monoid of
/// dimension 2 (both normal): the monoid points of the Newton polyhedron.
/// Minimal generators lie below max(gens) + (span - 1) where span is the
/// largest semigroup-generator coordinate, so only that box is scanned.
inline MonomialIdeal integral_closure(const MonomialIdeal& I) {
    const auto& A = I.ambient();
    if (A.dimension() != 2 || A.kind() == AmbientRing::Kind::AffineSemigroup)
        throw Error(ErrorKind::Unsupported, "integral closure needs a free or Veronese ambient of dimension 2, got " +
                                                A.describe());
    if (I.is_zero()) throw Error(ErrorKind::InvalidArgument, "integral closure of the zero ideal");
    if (I.is_unit()) return I;
    const NewtonPolyhedron np(I);
    ExponentVector box = I.generator_max();
    const auto span = A.generator_span();
    for (std::size_t i = 0; i < 2; ++i) box[i] += span[i] - 1;
    std::vector<ExponentVector> pts;
    for (const auto& e : A.enumerate_box(box))
        if (np.contains(e)) pts.push_back(e);
    return minimalize(A, std::move(pts));
}

struct RatliffRushConfig {
    std::size_t window_stable = 3;
    std::size_t max_steps = 25;
};

struct RatliffRushResult {
    MonomialIdeal closure;
    /// Index N of the first C_N of the stable run.
    std::size_t stopping_index = 0;
    /// Number of colon steps evaluated.
    std::size_t steps = 0;
    std::size_t window = 0;
};

namespace detail {

// Runs an increasing colon chain built by `step(k)` for k = 1, 2, ... and
// returns its value once `window` consecutive values agree.
template <class Step>
RatliffRushResult stabilize_chain(const MonomialIdeal& start, const RatliffRushConfig& cfg, Step step) {
    if (cfg.window_stable == 0) throw Error(ErrorKind::InvalidArgument, "stabilization window must be >= 1");
    MonomialIdeal prev = start;
    std::size_t run = 0;
    std::size_t run_start = 0;
    for (std::size_t k = 1; k <= cfg.max_steps; ++k) {
        MonomialIdeal cur = step(k);
        if (cur == prev) {
            if (run == 0) run_start = k - 1;
            if (++run == cfg.window_stable) return {prev, run_start, k, cfg.window_stable};
        } else {
            run = 0;
        }
        prev = std::move(cur);
    }
    throw Error(ErrorKind::NotStabilized, "colon chain did not stabilize within " + std::to_string(cfg.max_steps) +
                                              " steps (window " + std::to_string(cfg.window_stable) + ")");
}

} // namespace detail

/// Ratliff-Rush closure as the stable value of C_n = (I^{n+1} : I^n).
/// The stopping value is cross-checked against C * I^N in I^{N+1}.
inline RatliffRushResult ratliff_rush(const MonomialIdeal& I, const RatliffRushConfig& cfg = {}) {
    if (I.is_zero()) throw Error(ErrorKind::InvalidArgument, "Ratliff-Rush closure of the zero ideal");
    PowerLadder ladder(I);
    auto result = detail::stabilize_chain(I, cfg, [&](std::size_t k) {
        const auto next = ladder[k + 1];
        return ideal_colon(next, ladder[k]);
    });
    const auto N = std::max<std::size_t>(result.stopping_index, 1);
    const auto top = ladder[N + 1];
    if (!ideal_leq(ideal_product(result.closure, ladder[N]), top))
        throw Error(ErrorKind::Internal, "Ratliff-Rush cross-check failed at index " + std::to_string(N));
    return result;
}

/// Ratliff-Rush closure of J^n as the stable value of (J^{n+k} : J^k),
/// reading powers of J from `ladder`.
inline RatliffRushResult ratliff_rush_of_power(PowerLadder& ladder, std::size_t n, const RatliffRushConfig& cfg = {}) {
    if (n == 0) return {ladder[0], 0, 0, cfg.window_stable};
    const auto start = ladder[n];
    if (start.is_zero()) throw Error(ErrorKind::InvalidArgument, "Ratliff-Rush closure of the zero ideal");
    return detail::stabilize_chain(start, cfg, [&](std::size_t k) {
        const auto top = ladder[n + k];
        return ideal_colon(top, ladder[k]);
    });
}

/// Outcome of a reduction test.
struct ReductionTest {
    enum class Status { Yes, No, Unknown };
    Status status = Status::Unknown;
    /// Least n with I^{n+1} = Q I^n when status is Yes.
    std::size_t n = 0;
    /// A generator of I outside the Newton polyhedron of Q when status is No.
    std::optional<ExponentVector> witness;
};

/// I^{n+1} = Q I^n, reading powers of I from `ladder`.
inline bool reduction_holds_at(const MonomialIdeal& Q, PowerLadder& ladder, std::size_t n) {
    const auto top = ladder[n + 1];
    return ideal_leq(top, ideal_product(Q, ladder[n]));
}

inline ReductionTest is_reduction(const MonomialIdeal& Q, const MonomialIdeal& I, std::size_t bound) {
    Q.require_same_ambient(I);
    if (!ideal_leq(Q, I)) throw Error(ErrorKind::HypothesisFailed, "Q is not contained in I");
    const auto& A = I.ambient();
    if (A.dimension() == 2 && A.kind() != AmbientRing::Kind::AffineSemigroup && !Q.is_zero() && !I.is_zero()) {
        const NewtonPolyhedron np(Q);
        for (const auto& g : I.generators())
            if (!np.contains(g)) return {ReductionTest::Status::No, 0, g};
    }
    PowerLadder ladder(I);
    for (std::size_t n = 0; n <= bound; ++n)
        if (reduction_holds_at(Q, ladder, n)) return {ReductionTest::Status::Yes, n, std::nullopt};
    return {ReductionTest::Status::Unknown, 0, std::nullopt};
}

} // namespace rnbound

#pragma once

#include "rnbound/error.hpp"
#include "rnbound/exponent.hpp"

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace rnbound {

/// The monoid underlying a monomial ring: the free monoid N^m (polynomial
/// ring), the degree-n Veronese submonoid of N^2, or the submonoid of N^m
/// generated by an explicit finite list.
///
/// The Veronese monoid {(a,b) : a + b = 0 mod n} is the image of the
/// rational normal scroll coordinate ring k[x_0..x_n]/(2x2 minors) under
/// x_i -> s^{n-i} t^i.
class AmbientRing {
public:
    enum class Kind { Free, Veronese, AffineSemigroup };

    static AmbientRing free(std::size_t dim) {
        if (dim == 0) throw Error(ErrorKind::InvalidArgument, "free ambient needs dimension >= 1");
        AmbientRing a;
        a.kind_ = Kind::Free;
        a.dim_ = dim;
        for (std::size_t i = 0; i < dim; ++i) a.gens_.push_back(ExponentVector::unit(dim, i));
        sort_grlex(a.gens_);
        return a;
    }

    static AmbientRing veronese(std::int64_t degree) {
        if (degree < 1) throw Error(ErrorKind::InvalidArgument, "Veronese degree must be >= 1");
        AmbientRing a;
        a.kind_ = Kind::Veronese;
        a.dim_ = 2;
        a.degree_ = degree;
        for (std::int64_t i = 0; i <= degree; ++i) a.gens_.push_back(ExponentVector{degree - i, i});
        sort_grlex(a.gens_);
        return a;
    }

    static AmbientRing affine(std::vector<ExponentVector> gens) {
        if (gens.empty()) throw Error(ErrorKind::InvalidArgument, "affine semigroup needs generators");
        const std::size_t dim = gens.front().size();
        if (dim == 0) throw Error(ErrorKind::InvalidArgument, "affine semigroup generators are empty vectors");
        for (const auto& g : gens) {
            if (g.size() != dim)
                throw Error(ErrorKind::DimensionMismatch, "affine semigroup generators differ in length");
            if (!g.is_nonnegative() || g.is_zero())
                throw Error(ErrorKind::InvalidArgument,
                            "affine semigroup generator " + g.to_string() + " must be nonzero and nonnegative");
        }
        const auto before = gens.size();
        sort_grlex(gens);
        if (gens.size() != before)
            throw Error(ErrorKind::InvalidArgument, "affine semigroup generators must be distinct");
        AmbientRing a;
        a.kind_ = Kind::AffineSemigroup;
        a.dim_ = dim;
        a.gens_ = std::move(gens);
        return a;
    }

    Kind kind() const noexcept { return kind_; }
    std::size_t dimension() const noexcept { return dim_; }
    /// Only meaningful for Veronese ambients.
    std::int64_t veronese_degree() const noexcept { return degree_; }

    /// Semigroup generators, i.e. the monomial generators of the graded
    /// maximal ideal.
    const std::vector<ExponentVector>& generators() const noexcept { return gens_; }

    /// When true, divisibility between two members is the componentwise
    /// order (free and Veronese monoids are saturated in this sense).
    bool divisibility_is_componentwise() const noexcept { return kind_ != Kind::AffineSemigroup; }

    void require_dimension(const ExponentVector& e) const {
        if (e.size() != dim_)
            throw Error(ErrorKind::DimensionMismatch, "exponent " + e.to_string() + " in ambient of dimension " +
                                                          std::to_string(dim_));
    }

    bool contains(const ExponentVector& e) const {
        require_dimension(e);
        if (!e.is_nonnegative()) return false;
        switch (kind_) {
        case Kind::Free: return true;
        case Kind::Veronese: return e.degree() % degree_ == 0;
        case Kind::AffineSemigroup: return affine_contains(e);
        }
        return false;
    }

    /// `e - g` when g divides e in the monoid, empty otherwise.
    std::optional<ExponentVector> subtract(const ExponentVector& e, const ExponentVector& g) const {
        require_dimension(e);
        require_dimension(g);
        ExponentVector d = e - g;
        if (!d.is_nonnegative()) return std::nullopt;
        if (!contains(d)) return std::nullopt;
        return d;
    }

    bool divides(const ExponentVector& g, const ExponentVector& e) const { return subtract(e, g).has_value(); }

    /// Members e with 0 <= e <= bound, in graded-lex order.
    std::vector<ExponentVector> enumerate_box(const ExponentVector& bound) const {
        require_dimension(bound);
        std::vector<ExponentVector> out;
        if (!bound.is_nonnegative()) return out;
        ExponentVector cur(dim_);
        while (true) {
            if (contains(cur)) out.push_back(cur);
            std::size_t i = 0;
            while (i < dim_ && cur[i] == bound[i]) cur[i++] = 0;
            if (i == dim_) break;
            ++cur[i];
        }
        sort_grlex(out);
        return out;
    }

    /// Componentwise max over the semigroup generators.
    ExponentVector generator_span() const {
        ExponentVector s(dim_);
        for (const auto& g : gens_) s = max_componentwise(s, g);
        return s;
    }

    std::string describe() const {
        switch (kind_) {
        case Kind::Free: return "free(" + std::to_string(dim_) + ")";
        case Kind::Veronese: return "veronese(" + std::to_string(degree_) + ")";
        case Kind::AffineSemigroup: {
            std::string s = "affine{";
            for (std::size_t i = 0; i < gens_.size(); ++i) s += (i ? "," : "") + gens_[i].to_string();
            return s + "}";
        }
        }
        return "?";
    }

    bool operator==(const AmbientRing& o) const {
        return kind_ == o.kind_ && dim_ == o.dim_ && degree_ == o.degree_ && gens_ == o.gens_;
    }

private:
    AmbientRing() = default;

    // Depth-first search over coefficient vectors. The number of copies of a
    // generator is capped by what fits below e, which is never more than
    // ceil(max coordinate of e / min nonzero coordinate of the generator).
    // Exact; exponential in the number of generators, fine at desk scale.
    bool affine_contains(const ExponentVector& e) const {
        std::set<std::pair<std::size_t, std::vector<std::int64_t>>> failed;
        std::function<bool(const ExponentVector&, std::size_t)> search = [&](const ExponentVector& rest,
                                                                              std::size_t idx) -> bool {
            if (rest.is_zero()) return true;
            if (idx == gens_.size()) return false;
            auto key = std::make_pair(idx, std::vector<std::int64_t>(rest.coords().begin(), rest.coords().end()));
            if (failed.count(key)) return false;
            ExponentVector r = rest;
            while (true) {
                if (search(r, idx + 1)) return true;
                r -= gens_[idx];
                if (!r.is_nonnegative()) break;
            }
            failed.insert(std::move(key));
            return false;
        };
        return search(e, 0);
    }

    Kind kind_ = Kind::Free;
    std::size_t dim_ = 0;
    std::int64_t degree_ = 0;
    std::vector<ExponentVector> gens_;
};

} // namespace rnbound

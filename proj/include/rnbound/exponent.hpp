#pragma once

#include "rnbound/error.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace rnbound {

namespace detail {

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r))
        throw Error(ErrorKind::Overflow, "integer addition overflow");
    return r;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r))
        throw Error(ErrorKind::Overflow, "integer subtraction overflow");
    return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r))
        throw Error(ErrorKind::Overflow, "integer multiplication overflow");
    return r;
}

} // namespace detail

/// Exponent of a monomial of the ambient monoid. Coordinates are signed
/// internally so that differences can be formed and tested; a vector is a
/// monoid exponent only when every coordinate is nonnegative.
class ExponentVector {
public:
    ExponentVector() = default;
    explicit ExponentVector(std::size_t dim) : coords_(dim, 0) {}
    ExponentVector(std::initializer_list<std::int64_t> c) : coords_(c) {}
    explicit ExponentVector(std::vector<std::int64_t> c) : coords_(std::move(c)) {}

    static ExponentVector zero(std::size_t dim) { return ExponentVector(dim); }
    static ExponentVector unit(std::size_t dim, std::size_t i) {
        ExponentVector e(dim);
        e.coords_.at(i) = 1;
        return e;
    }

    std::size_t size() const noexcept { return coords_.size(); }
    std::int64_t operator[](std::size_t i) const { return coords_[i]; }
    std::int64_t& operator[](std::size_t i) { return coords_[i]; }
    std::span<const std::int64_t> coords() const noexcept { return coords_; }

    std::int64_t degree() const {
        std::int64_t d = 0;
        for (auto c : coords_) d = detail::checked_add(d, c);
        return d;
    }

    bool is_zero() const {
        return std::all_of(coords_.begin(), coords_.end(), [](auto c) { return c == 0; });
    }
    bool is_nonnegative() const {
        return std::all_of(coords_.begin(), coords_.end(), [](auto c) { return c >= 0; });
    }

    ExponentVector& operator+=(const ExponentVector& o) {
        require_same_size(o);
        for (std::size_t i = 0; i < coords_.size(); ++i)
            coords_[i] = detail::checked_add(coords_[i], o.coords_[i]);
        return *this;
    }
    ExponentVector& operator-=(const ExponentVector& o) {
        require_same_size(o);
        for (std::size_t i = 0; i < coords_.size(); ++i)
            coords_[i] = detail::checked_sub(coords_[i], o.coords_[i]);
        return *this;
    }
    friend ExponentVector operator+(ExponentVector a, const ExponentVector& b) { return a += b; }
    friend ExponentVector operator-(ExponentVector a, const ExponentVector& b) { return a -= b; }

    friend ExponentVector operator*(std::int64_t k, ExponentVector a) {
        for (auto& c : a.coords_) c = detail::checked_mul(k, c);
        return a;
    }

    bool operator==(const ExponentVector&) const = default;

    void require_same_size(const ExponentVector& o) const {
        if (o.size() != size())
            throw Error(ErrorKind::DimensionMismatch,
                        "exponent vectors of length " + std::to_string(size()) + " and " +
                            std::to_string(o.size()));
    }

    std::string to_string() const {
        std::string s = "(";
        for (std::size_t i = 0; i < coords_.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(coords_[i]);
        }
        return s + ")";
    }

private:
    std::vector<std::int64_t> coords_;
};

inline std::ostream& operator<<(std::ostream& os, const ExponentVector& e) { return os << e.to_string(); }

/// Componentwise `a <= b`.
inline bool leq_componentwise(const ExponentVector& a, const ExponentVector& b) {
    a.require_same_size(b);
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

inline ExponentVector max_componentwise(const ExponentVector& a, const ExponentVector& b) {
    a.require_same_size(b);
    ExponentVector r = a;
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
    return r;
}

/// Graded lexicographic order: total degree ascending, ties broken by
/// descending lexicographic coordinates, so x^2 < xy < y^2 < x^3 for x > y.
/// Every list of exponents in the library is kept in this order.
struct GrlexLess {
    bool operator()(const ExponentVector& a, const ExponentVector& b) const {
        const auto da = a.degree();
        const auto db = b.degree();
        if (da != db) return da < db;
        const auto n = std::min(a.size(), b.size());
        for (std::size_t i = 0; i < n; ++i)
            if (a[i] != b[i]) return a[i] > b[i];
        return a.size() < b.size();
    }
};

inline void sort_grlex(std::vector<ExponentVector>& v) {
    std::sort(v.begin(), v.end(), GrlexLess{});
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

} // namespace rnbound

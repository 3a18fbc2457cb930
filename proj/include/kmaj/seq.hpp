#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "kmaj/scalar.hpp"

namespace kmaj {

// A finitely supported real sequence, conceptually extended by zeros to all
// of N.  Indexing in the API is 0-based; the mathematical index n is i+1.
class Seq {
public:
    Seq() = default;
    explicit Seq(std::vector<Scalar> values) : v_(std::move(values)) {}
    static Seq exact(std::initializer_list<long long> xs);
    static Seq real(std::initializer_list<double> xs);

    std::size_t size() const { return v_.size(); }
    const Scalar& operator[](std::size_t i) const { return v_[i]; }
    // Entry at 0-based index with zero extension.
    Scalar at(std::size_t i) const { return i < v_.size() ? v_[i] : Scalar(0); }
    void push_back(Scalar s) { v_.push_back(std::move(s)); }

    auto begin() const { return v_.begin(); }
    auto end() const { return v_.end(); }
    const std::vector<Scalar>& values() const { return v_; }

    bool all_exact() const;
    bool is_zero(double tau = comparison_tolerance()) const;
    // 1 + index of the last entry with nonzero sign (0 for the zero sequence).
    std::size_t support_length(double tau = comparison_tolerance()) const;

    friend bool operator==(const Seq& a, const Seq& b);

private:
    std::vector<Scalar> v_;
};

// |x| sorted nonincreasingly, same length.
Seq rearrange(const Seq& x);

// Every entry coerced to float64 mode.
Seq seq_to_float(const Seq& x);

// |x|^q with the mode rules: exact base requires integral q >= 1.
Scalar power_term(const Scalar& x_abs, const Scalar& q);

// Sums over the rearranged sequence; m is 1-based and inclusive.
Scalar head_sum(const Seq& x, std::size_t m);
Scalar head_power_sum(const Seq& x, const Scalar& q, std::size_t m);
// Sum over indices n >= m (1-based) of (x_n*)^q; finite by finite support.
Scalar tail_power_sum(const Seq& x, const Scalar& q, std::size_t m);

} // namespace kmaj

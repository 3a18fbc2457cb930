#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kmaj/scalar.hpp"

namespace kmaj {

// One interval inside [0, inf).  hi == nullopt means +infinity (always open
// on that side).  Degenerate single points {a} are allowed (lo == hi, both
// endpoints closed); they arise in complements.
struct Interval {
    Scalar lo;
    bool lo_open = false;
    std::optional<Scalar> hi; // nullopt = +infinity
    bool hi_open = true;

    static Interval closed_open(Scalar lo, Scalar hi);
    static Interval open(Scalar lo, Scalar hi);
    static Interval ray(Scalar lo, bool lo_open);
    static Interval point(Scalar a);

    bool contains(const Scalar& t) const;
    bool unbounded() const { return !hi.has_value(); }
    std::string str() const;
    friend bool operator==(const Interval& a, const Interval& b);
};

// A finite union of pairwise disjoint, non-touching, sorted maximal
// intervals in [0, inf).
class IntervalSet {
public:
    IntervalSet() = default;
    static IntervalSet of(std::vector<Interval> pieces); // normalizes
    static IntervalSet half_line();                      // [0, inf)
    static IntervalSet single(Interval piece) { return of({std::move(piece)}); }

    bool empty() const { return iv_.empty(); }
    std::size_t count() const { return iv_.size(); }
    const Interval& piece(std::size_t i) const { return iv_[i]; }
    auto begin() const { return iv_.begin(); }
    auto end() const { return iv_.end(); }

    bool contains(const Scalar& t) const;
    std::optional<Interval> piece_containing(const Scalar& t) const;

    IntervalSet unite(const IntervalSet& other) const;
    IntervalSet intersect(const IntervalSet& other) const;
    IntervalSet complement_in_half_line() const; // [0, inf) minus this
    bool covers_half_line() const;

    // A point inside piece i (lo when closed, otherwise an interior point).
    Scalar representative(std::size_t i) const;

    friend bool operator==(const IntervalSet& a, const IntervalSet& b);
    std::string str() const;

private:
    std::vector<Interval> iv_;
};

} // namespace kmaj

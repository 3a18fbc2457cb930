#pragma once

#include <optional>
#include <vector>

#include "kmaj/interval_set.hpp"
#include "kmaj/stepfn.hpp"

namespace kmaj {

// A continuous piecewise-affine function on [0, inf) with integer
// breakpoints 0..N and a constant slope from N on.  Exactly evaluable at
// rational points when built from exact data.
class PiecewiseAffine {
public:
    PiecewiseAffine() : node_{Scalar(0)}, tail_slope_(0) {}

    // t -> integral of d over [0, t].
    static PiecewiseAffine head_integral(const StepFn& d);
    // t -> integral of d over [t, inf).
    static PiecewiseAffine tail_integral(const StepFn& d);
    // Direct profile: values at the integer nodes 0..N, slopes on the N unit
    // cells, and the slope past N.  Nodes and slopes must be consistent
    // (continuity).
    static PiecewiseAffine from_profile(std::vector<Scalar> nodes,
                                        std::vector<Scalar> slopes, Scalar tail);

    std::size_t cells() const { return node_.size() - 1; }
    Scalar node(std::size_t k) const { return node_.at(k); }
    Scalar slope(std::size_t k) const { return k < slope_.size() ? slope_[k] : tail_slope_; }
    Scalar tail_slope() const { return tail_slope_; }
    bool all_exact() const;

    Scalar eval(const Scalar& t) const;

    // The set {t >= 0 : p(t) > 0} as maximal intervals with exact rational
    // endpoints.  In float mode, values within tau of zero count as zero
    // (boundaries shrink accordingly).
    IntervalSet region_positive(double tau = comparison_tolerance()) const;

    // A point where p < 0 (p < -tau in float mode), if one exists.
    std::optional<Scalar> negative_witness(double tau = comparison_tolerance()) const;

private:
    std::vector<Scalar> node_;  // size N+1
    std::vector<Scalar> slope_; // size N
    Scalar tail_slope_;
};

// The exact region {t >= 0 : p(t) > 0}.
inline IntervalSet affine_region(const PiecewiseAffine& p) { return p.region_positive(); }

} // namespace kmaj

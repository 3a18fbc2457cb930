#pragma once

#include <optional>
#include <vector>

#include "kmaj/interval_set.hpp"
#include "kmaj/seq.hpp"

namespace kmaj {

// A piecewise-constant function on [0, inf) with unit-grid breakpoints:
// the value on [k, k+1) is cell(k), zero from cell_count() on.
class StepFn {
public:
    StepFn() = default;
    explicit StepFn(std::vector<Scalar> cells) : cells_(std::move(cells)) {}
    static StepFn from_seq(const Seq& x) { return StepFn(x.values()); }

    std::size_t cell_count() const { return cells_.size(); }
    Scalar cell(std::size_t k) const { return k < cells_.size() ? cells_[k] : Scalar(0); }
    const std::vector<Scalar>& cells() const { return cells_; }
    Seq to_seq() const { return Seq(cells_); }

    // Right-continuous evaluation at t >= 0.
    Scalar value_at(const Scalar& t) const;

    bool all_exact() const;
    bool nonnegative(double tau = comparison_tolerance()) const;
    bool nonincreasing(double tau = comparison_tolerance()) const;
    std::size_t support_length(double tau = comparison_tolerance()) const {
        return to_seq().support_length(tau);
    }

    friend bool operator==(const StepFn& a, const StepFn& b) {
        return a.to_seq() == b.to_seq();
    }

private:
    std::vector<Scalar> cells_;
};

// The step function of the nonincreasing rearrangement: sum of x_n* over
// [n-1, n).
StepFn step_of_rearranged(const Seq& x);

// Rearrangement at the function level: |cells| sorted nonincreasingly.
StepFn step_rearrange(const StepFn& f);

// Exact integral over [a, b], b == nullopt meaning +infinity.  Requires
// 0 <= a <= b.
Scalar step_integral(const StepFn& f, const Scalar& a,
                     const std::optional<Scalar>& b = std::nullopt);

// Cellwise |f|^q on nonnegative cells; NegativeCell otherwise.
StepFn step_power(const StepFn& f, const Scalar& q);

StepFn step_scale(const StepFn& f, const Scalar& c);
StepFn step_sub(const StepFn& f, const StepFn& g);

// f restricted to a mask whose interval endpoints are integers (cells are
// kept or zeroed whole).
StepFn step_mask(const StepFn& f, const IntervalSet& mask);

} // namespace kmaj

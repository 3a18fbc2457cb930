#include "kmaj/stepfn.hpp"

#include <algorithm>
#include <cmath>

namespace kmaj {

namespace {
long long cell_index(const Scalar& t) {
    if (t.is_exact()) return floor_to_int(t);
    return static_cast<long long>(std::floor(t.to_double()));
}
} // namespace

Scalar StepFn::value_at(const Scalar& t) const {
    if (t.sign(0.0) < 0) throw Error("step functions live on [0, inf)");
    long long k = cell_index(t);
    if (k < 0 || static_cast<std::size_t>(k) >= cells_.size()) return Scalar(0);
    return cells_[static_cast<std::size_t>(k)];
}

bool StepFn::all_exact() const {
    return std::all_of(cells_.begin(), cells_.end(),
                       [](const Scalar& s) { return s.is_exact(); });
}

bool StepFn::nonnegative(double tau) const {
    return std::all_of(cells_.begin(), cells_.end(),
                       [&](const Scalar& s) { return s.sign(tau) >= 0; });
}

bool StepFn::nonincreasing(double tau) const {
    for (std::size_t k = 0; k + 1 < cells_.size(); ++k)
        if ((cells_[k + 1] - cells_[k]).sign(tau) > 0) return false;
    // Beyond the last cell the function is zero.
    if (!cells_.empty() && (Scalar(0) - cells_.back()).sign(tau) > 0) return false;
    return true;
}

StepFn step_of_rearranged(const Seq& x) { return StepFn::from_seq(rearrange(x)); }

StepFn step_rearrange(const StepFn& f) { return StepFn::from_seq(rearrange(f.to_seq())); }

Scalar step_integral(const StepFn& f, const Scalar& a, const std::optional<Scalar>& b) {
    if (a.sign(0.0) < 0) throw Error("integral bounds must satisfy 0 <= a");
    if (b && *b < a) throw Error("integral bounds must satisfy a <= b");
    Scalar acc(0);
    for (std::size_t k = 0; k < f.cell_count(); ++k) {
        Scalar lo(static_cast<long long>(k)), hi(static_cast<long long>(k + 1));
        Scalar from = std::max(lo, a, [](const Scalar& p, const Scalar& q) { return p < q; });
        Scalar to = b ? std::min(hi, *b, [](const Scalar& p, const Scalar& q) { return p < q; }) : hi;
        if (to > from) acc += f.cell(k) * (to - from);
    }
    return acc;
}

StepFn step_power(const StepFn& f, const Scalar& q) {
    std::vector<Scalar> out;
    out.reserve(f.cell_count());
    for (const Scalar& c : f.cells()) {
        if (c.sign() < 0) throw NegativeCell("step_power on a negative cell value");
        out.push_back(power_term(c.abs(), q));
    }
    return StepFn(std::move(out));
}

StepFn step_scale(const StepFn& f, const Scalar& c) {
    std::vector<Scalar> out;
    out.reserve(f.cell_count());
    for (const Scalar& v : f.cells()) out.push_back(v * c);
    return StepFn(std::move(out));
}

StepFn step_sub(const StepFn& f, const StepFn& g) {
    std::size_t n = std::max(f.cell_count(), g.cell_count());
    std::vector<Scalar> out;
    out.reserve(n);
    for (std::size_t k = 0; k < n; ++k) out.push_back(f.cell(k) - g.cell(k));
    return StepFn(std::move(out));
}

StepFn step_mask(const StepFn& f, const IntervalSet& mask) {
    std::vector<Scalar> out(f.cell_count(), Scalar(0));
    for (const Interval& p : mask) {
        if (p.lo_open || !p.lo.is_integer() || (p.hi && !p.hi->is_integer()) ||
            (p.hi && !p.hi_open))
            throw Error("step_mask needs [int, int) or [int, inf) mask pieces, got " + p.str());
        long long lo = *p.lo.as_integer();
        long long hi = p.hi ? *p.hi->as_integer() : static_cast<long long>(f.cell_count());
        for (long long k = lo; k < hi && k < static_cast<long long>(f.cell_count()); ++k)
            out[static_cast<std::size_t>(k)] = f.cell(static_cast<std::size_t>(k));
    }
    return StepFn(std::move(out));
}

} // namespace kmaj

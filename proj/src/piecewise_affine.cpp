#include "kmaj/piecewise_affine.hpp"

#include <algorithm>
#include <cmath>

namespace kmaj {

PiecewiseAffine PiecewiseAffine::head_integral(const StepFn& d) {
    PiecewiseAffine p;
    p.node_.assign(1, Scalar(0));
    p.slope_.clear();
    Scalar acc(0);
    for (std::size_t k = 0; k < d.cell_count(); ++k) {
        p.slope_.push_back(d.cell(k));
        acc += d.cell(k);
        p.node_.push_back(acc);
    }
    p.tail_slope_ = Scalar(0);
    return p;
}

PiecewiseAffine PiecewiseAffine::tail_integral(const StepFn& d) {
    PiecewiseAffine p = head_integral(d);
    Scalar total = p.node_.back();
    for (Scalar& v : p.node_) v = total - v;
    for (Scalar& s : p.slope_) s = -s;
    p.tail_slope_ = Scalar(0);
    return p;
}

PiecewiseAffine PiecewiseAffine::from_profile(std::vector<Scalar> nodes,
                                              std::vector<Scalar> slopes, Scalar tail) {
    if (nodes.empty() || nodes.size() != slopes.size() + 1)
        throw Error("profile needs N+1 nodes and N slopes");
    for (std::size_t k = 0; k < slopes.size(); ++k)
        if (!eq_tol(nodes[k] + slopes[k], nodes[k + 1]))
            throw Error("profile is not continuous");
    PiecewiseAffine p;
    p.node_ = std::move(nodes);
    p.slope_ = std::move(slopes);
    p.tail_slope_ = std::move(tail);
    return p;
}

bool PiecewiseAffine::all_exact() const {
    return std::all_of(node_.begin(), node_.end(), [](const Scalar& s) { return s.is_exact(); }) &&
           std::all_of(slope_.begin(), slope_.end(), [](const Scalar& s) { return s.is_exact(); }) &&
           tail_slope_.is_exact();
}

Scalar PiecewiseAffine::eval(const Scalar& t) const {
    if (t.sign(0.0) < 0) throw Error("piecewise-affine functions live on [0, inf)");
    long long k = t.is_exact() ? floor_to_int(t)
                               : static_cast<long long>(std::floor(t.to_double()));
    long long n = static_cast<long long>(cells());
    if (k >= n)
        return node_[static_cast<std::size_t>(n)] + tail_slope_ * (t - Scalar(n));
    std::size_t kk = static_cast<std::size_t>(k);
    return node_[kk] + slope_[kk] * (t - Scalar(k));
}

IntervalSet PiecewiseAffine::region_positive(double tau) const {
    const Scalar eps = all_exact() ? Scalar(0) : Scalar::real(tau);
    std::vector<Interval> pieces;
    std::size_t n = cells();
    // Every cell [k, k+1) plus the tail ray [N, inf).
    for (std::size_t k = 0; k <= n; ++k) {
        const bool tail = (k == n);
        Scalar lo(static_cast<long long>(k));
        std::optional<Scalar> hi =
            tail ? std::nullopt : std::optional<Scalar>(Scalar(static_cast<long long>(k + 1)));
        Scalar v = node_[k];
        Scalar s = tail ? tail_slope_ : slope_[k];
        if (s.sign(0.0) == 0) {
            if (v > eps) pieces.push_back(Interval{lo, false, hi, true});
            continue;
        }
        Scalar root = lo + (eps - v) / s;
        if (s > Scalar(0)) {
            // p > eps to the right of the root.
            if (root < lo)
                pieces.push_back(Interval{lo, false, hi, true});
            else if (!hi || root < *hi)
                pieces.push_back(Interval{root, true, hi, true});
        } else {
            // p > eps to the left of the root.
            if (root <= lo) continue;
            if (!hi || root < *hi)
                pieces.push_back(Interval{lo, false, root, true});
            else
                pieces.push_back(Interval{lo, false, hi, true});
        }
    }
    return IntervalSet::of(std::move(pieces));
}

std::optional<Scalar> PiecewiseAffine::negative_witness(double tau) const {
    const Scalar eps = all_exact() ? Scalar(0) : Scalar::real(tau);
    for (std::size_t k = 0; k < node_.size(); ++k)
        if (node_[k] < Scalar(0) - eps) return Scalar(static_cast<long long>(k));
    // Affine between nodes, so only the tail ray remains to check.
    if (tail_slope_ < Scalar(0)) {
        Scalar start(static_cast<long long>(cells()));
        return start + (Scalar(0) - eps - node_.back()) / tail_slope_ + Scalar(1);
    }
    return std::nullopt;
}

} // namespace kmaj

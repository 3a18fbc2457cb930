#include "kmaj/kfunc.hpp"

#include <algorithm>
#include <cmath>

namespace kmaj {

HolmstedtParams HolmstedtParams::for_q(double q) {
    if (!(q > 1.0)) throw Error("Holmstedt parameters need q > 1");
    return {q, q / (q - 1.0), c_q_bound(q)};
}

double c_q_bound(double q) {
    if (!(q > 1.0)) throw Error("c_q_bound needs q > 1");
    double first = 1.0 + 2.0 * std::pow(q - 1.0, -1.0 / q);
    double second = std::pow(2.0, 1.0 / q) + std::pow(1.0 - 1.0 / q, -1.0 / q);
    return std::max(first, second);
}

PiecewiseAffine k_l1_linf_profile(const Seq& x) {
    return PiecewiseAffine::head_integral(step_of_rearranged(x));
}

Scalar k_l1_linf(const Scalar& t, const Seq& x) {
    if (t.sign(0.0) < 0) throw Error("k_l1_linf needs t >= 0");
    return k_l1_linf_profile(x).eval(t);
}

namespace {
// Rearranged |x| as doubles, zeros dropped.
std::vector<double> sorted_abs(const Seq& x) {
    std::vector<double> a;
    a.reserve(x.size());
    for (const Scalar& s : x) {
        double v = std::fabs(s.to_double());
        if (v > 0.0) a.push_back(v);
    }
    std::sort(a.begin(), a.end(), std::greater<>());
    return a;
}
} // namespace

double holmstedt_j(double t, const Seq& x, const HolmstedtParams& params) {
    if (!(t > 0.0)) throw Error("holmstedt_j needs t > 0");
    std::vector<double> a = sorted_abs(x);
    double cut = std::pow(t, params.alpha);
    double head = 0.0, tail_q = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        double lo = static_cast<double>(k), hi = static_cast<double>(k + 1);
        double head_len = std::max(0.0, std::min(hi, cut) - lo);
        double tail_len = std::max(0.0, hi - std::max(lo, cut));
        head += a[k] * head_len;
        tail_q += std::pow(a[k], params.q) * tail_len;
    }
    return head + t * std::pow(tail_q, 1.0 / params.q);
}

KBracket k_l1_lq(double t, const Seq& x, double q, double tol) {
    if (!(t > 0.0)) throw Error("k_l1_lq needs t > 0");
    HolmstedtParams params = HolmstedtParams::for_q(q);
    std::vector<double> a = sorted_abs(x);
    const std::size_t n = a.size();
    if (n == 0) return {0.0, 0.0, 0.0};

    // The minimizer of ||x - z||_1 + t ||z||_q over z has the clipped form
    // z_i = min(|x_i|, s) (same signs and support as x): interior
    // stationarity forces every coordinate with 0 < z_i < |x_i| to one
    // common level s, and z_i = 0 is never stationary for q > 1.  So the
    // problem reduces to one dimension in the clip level s.
    std::vector<double> pre_a(n + 1, 0.0), pre_q(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        pre_a[i + 1] = pre_a[i] + a[i];
        pre_q[i + 1] = pre_q[i] + std::pow(a[i], q);
    }
    auto objective = [&](std::size_t j, double s) {
        // s in [a_{j+1}, a_j]: coordinates 1..j are clipped to s.
        double tail = pre_q[n] - pre_q[j];
        double jd = static_cast<double>(j);
        return pre_a[j] - jd * s + t * std::pow(jd * std::pow(s, q) + tail, 1.0 / q);
    };

    double talpha = std::pow(t, params.alpha);
    double best = objective(0, a[0]); // s >= a_1: z = |x|
    for (std::size_t j = 1; j <= n; ++j) {
        double hi = a[j - 1];
        double lo = (j < n) ? a[j] : 0.0;
        best = std::min(best, objective(j, lo));
        best = std::min(best, objective(j, hi));
        double denom = talpha - static_cast<double>(j);
        if (denom > 0.0) {
            double tail = pre_q[n] - pre_q[j];
            double s = std::pow(tail / denom, 1.0 / q);
            if (s > lo && s < hi) best = std::min(best, objective(j, s));
        }
    }

    double j_val = holmstedt_j(t, x, params);
    KBracket out{best, j_val / params.c_q, j_val};
    double slack = tol * std::max(1.0, j_val);
    if (out.value < out.lower - slack || out.value > out.upper + slack)
        throw NoConvergence("k_l1_lq value escapes the Holmstedt sandwich");
    return out;
}

Decision k_dominates_l1_linf(const Seq& x, const Seq& y) {
    Seq rx = rearrange(x), ry = rearrange(y);
    // Both K profiles are piecewise affine with integer breakpoints and are
    // constant past the supports, so integer heads decide.
    std::size_t n = std::max(rx.size(), ry.size()) + 1;
    Scalar hx(0), hy(0);
    for (std::size_t m = 0; m < n; ++m) {
        hx += rx.at(m);
        hy += ry.at(m);
        if (!le_tol(hy, hx)) return Decision::No;
    }
    return Decision::Yes;
}

std::vector<double> default_lq_grid(const Seq& x, const Seq& y) {
    std::vector<double> g;
    for (int k = -10; k <= 10; ++k) g.push_back(std::ldexp(1.0, k));
    std::size_t n = std::max(x.support_length(), y.support_length());
    for (std::size_t m = 1; m <= n; ++m) g.push_back(static_cast<double>(m));
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
    return g;
}

Decision k_dominates(const Seq& x, const Seq& y, Couple couple, double q,
                     const std::vector<double>& grid) {
    if (couple == Couple::L1Linf) return k_dominates_l1_linf(x, y);
    std::vector<double> pts = grid.empty() ? default_lq_grid(x, y) : grid;
    if (pts.empty()) throw Error("k_dominates on (l1, lq) needs a nonempty grid");
    bool all_separated = true;
    for (double t : pts) {
        KBracket bx = k_l1_lq(t, x, q);
        KBracket by = k_l1_lq(t, y, q);
        if (by.lower > bx.upper) return Decision::No;
        if (!(by.upper <= bx.lower)) all_separated = false;
    }
    return all_separated ? Decision::Yes : Decision::Undecided;
}

} // namespace kmaj

#include "kmaj/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace kmaj {

SpaceSpec SpaceSpec::lp(double p) {
    if (!(p >= 1.0)) throw Error("lp space needs p >= 1");
    return {Kind::Lp, p};
}

SpaceSpec SpaceSpec::weak_lp(double p) {
    if (!(p > 1.0)) throw Error("weak-lp space needs p > 1");
    return {Kind::WeakLp, p};
}

SpaceSpec SpaceSpec::weak_lp_separable(double p) {
    if (!(p > 1.0)) throw Error("weak-lp separable part needs p > 1");
    return {Kind::WeakLpSeparable, p};
}

std::string SpaceSpec::name() const {
    auto num = [](double v) {
        std::string s = std::to_string(v);
        s.erase(s.find_last_not_of('0') + 1);
        if (!s.empty() && s.back() == '.') s.pop_back();
        return s;
    };
    switch (kind) {
    case Kind::Lp: return "lp:" + num(p);
    case Kind::WeakLp: return "weak-lp:" + num(p);
    case Kind::WeakLpSeparable: return "weak-lp-sep:" + num(p);
    }
    return "?";
}

double space_norm(const SpaceSpec& E, const Seq& x) {
    Seq r = rearrange(x);
    if (E.kind == SpaceSpec::Kind::Lp) {
        double s = 0.0;
        for (const Scalar& v : r) s += std::pow(v.to_double(), E.p);
        return std::pow(s, 1.0 / E.p);
    }
    // The separable part carries the same norm; the spaces differ only at
    // infinite support.
    double best = 0.0, head = 0.0;
    for (std::size_t m = 1; m <= r.size(); ++m) {
        head += r[m - 1].to_double();
        best = std::max(best, std::pow(static_cast<double>(m), 1.0 / E.p - 1.0) * head);
    }
    return best;
}

WfpProbe wfp_probe(const SpaceSpec& E, const std::function<double(std::uint64_t)>& gen,
                   std::uint64_t n_max) {
    if (n_max == 0) throw Error("wfp_probe needs n_max >= 1");
    double sup = 0.0, acc = 0.0, last = 0.0, prev = std::numeric_limits<double>::infinity();
    for (std::uint64_t n = 1; n <= n_max; ++n) {
        double v = gen(n);
        if (v < 0.0) throw Error("wfp_probe needs nonnegative terms");
        if (v > prev * (1.0 + 1e-9))
            throw Error("streaming wfp_probe needs a nonincreasing generator");
        prev = v;
        if (E.kind == SpaceSpec::Kind::Lp) {
            acc += std::pow(v, E.p);
            last = std::pow(acc, 1.0 / E.p);
        } else {
            acc += v;
            last = std::pow(static_cast<double>(n), 1.0 / E.p - 1.0) * acc;
        }
        sup = std::max(sup, last);
    }
    double tail = (E.kind == SpaceSpec::Kind::Lp) ? 0.0 : last;
    // For nonincreasing input the truncated norm at n_max is the running sup
    // of the displayed quantity.
    double truncated_at_max = (E.kind == SpaceSpec::Kind::Lp) ? last : sup;
    return {sup, tail, sup > 0.0 ? truncated_at_max / sup : 1.0};
}

WfpProbe wfp_probe(const SpaceSpec& E, const Seq& x) {
    Seq r = rearrange(x);
    if (r.size() == 0) return {0.0, 0.0, 1.0};
    return wfp_probe(E, [&](std::uint64_t n) { return r.at(n - 1).to_double(); },
                     r.size());
}

namespace {
std::vector<double> flatten_powers(std::vector<double> w, std::mt19937_64& rng,
                                   unsigned moves) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const std::size_t n = w.size();
    for (unsigned m = 0; m < moves && n >= 2; ++m) {
        std::size_t i = rng() % n, j = rng() % n;
        if (i == j) continue;
        if (w[i] < w[j]) std::swap(i, j);
        double delta = unit(rng) * (w[i] - w[j]);
        w[i] -= delta;
        w[j] += delta;
    }
    std::sort(w.begin(), w.end(), std::greater<>());
    return w;
}
} // namespace

SqProbeResult sq_probe_with_norm(const std::function<double(const Seq&)>& norm_fn,
                                 double q, double C, std::uint64_t trials,
                                 std::uint64_t seed) {
    if (!(q > 1.0)) throw Error("sq_probe needs q > 1");
    if (!(C >= 1.0)) throw Error("sq_probe needs C >= 1");
    SqProbeResult out;
    out.trials = trials;
    for (std::uint64_t t = 0; t < trials; ++t) {
        std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + t);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        std::size_t n = 2 + rng() % 14;
        // v's q-powers, sorted; u's q-powers are v's flattened by mass moves,
        // which keeps every sorted head dominated and the total fixed.
        std::vector<double> vq(n);
        for (double& w : vq) w = unit(rng);
        std::sort(vq.begin(), vq.end(), std::greater<>());
        std::vector<double> uq = flatten_powers(vq, rng, static_cast<unsigned>(2 * n));
        std::vector<Scalar> us, vs;
        for (std::size_t i = 0; i < n; ++i) {
            us.push_back(Scalar::real(std::pow(uq[i], 1.0 / q)));
            vs.push_back(Scalar::real(std::pow(vq[i], 1.0 / q)));
        }
        Seq u(us), v(vs);
        double nu = norm_fn(u), nv = norm_fn(v);
        if (nv > C * nu * (1.0 + 1e-9) + 1e-12) {
            SqViolation viol;
            viol.trial = t;
            for (const Scalar& s : u) viol.u.push_back(s.to_double());
            for (const Scalar& s : v) viol.v.push_back(s.to_double());
            viol.norm_u = nu;
            viol.norm_v = nv;
            out.violations.push_back(std::move(viol));
        }
    }
    return out;
}

SqProbeResult sq_probe(const SpaceSpec& E, double q, double C, std::uint64_t trials,
                       std::uint64_t seed) {
    return sq_probe_with_norm([&](const Seq& s) { return space_norm(E, s); }, q, C,
                              trials, seed);
}

} // namespace kmaj

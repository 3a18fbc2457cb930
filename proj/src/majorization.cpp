#include "kmaj/majorization.hpp"

#include <algorithm>
#include <cmath>

namespace kmaj {

namespace {
// Prefix sums of (x_n*)^q, index 0 .. len.
std::vector<Scalar> power_prefix(const Seq& x, const Scalar& q) {
    Seq r = rearrange(x);
    std::vector<Scalar> pre{Scalar(0)};
    pre.reserve(r.size() + 1);
    Scalar acc(0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        acc += power_term(r[i], q);
        pre.push_back(acc);
    }
    return pre;
}

Scalar prefix_at(const std::vector<Scalar>& pre, std::size_t n) {
    return n < pre.size() ? pre[n] : pre.back();
}
} // namespace

PremiseCheck check_sq_premise(const Seq& u, const Seq& v, const Scalar& q) {
    if (q < Scalar(1)) throw Error("check_sq_premise needs q >= 1");
    auto pu = power_prefix(u, q);
    auto pv = power_prefix(v, q);
    std::size_t n = std::max(u.size(), v.size());
    for (std::size_t N = 1; N <= n; ++N) {
        if (!le_tol(prefix_at(pu, N), prefix_at(pv, N)))
            return {false, N, "head"};
    }
    if (!eq_tol(pu.back(), pv.back())) return {false, std::nullopt, "total"};
    return {true, std::nullopt, ""};
}

bool head_to_tail(const Seq& u, const Seq& v, const Scalar& q) {
    PremiseCheck pre = check_sq_premise(u, v, q);
    if (!pre.holds)
        throw PremiseViolated("head_to_tail premise fails (" + pre.detail + ")");
    auto pu = power_prefix(u, q);
    auto pv = power_prefix(v, q);
    std::size_t n = std::max(u.size(), v.size());
    for (std::size_t M = 1; M <= n; ++M) {
        Scalar tail_v = pv.back() - prefix_at(pv, M - 1);
        Scalar tail_u = pu.back() - prefix_at(pu, M - 1);
        if (!le_tol(tail_v, tail_u)) return false;
    }
    return true;
}

bool check_hlp(const Seq& x, const Seq& y) {
    Seq rx = rearrange(x), ry = rearrange(y);
    Scalar hx(0), hy(0);
    std::size_t n = std::max(rx.size(), ry.size());
    for (std::size_t m = 0; m < n; ++m) {
        hx += rx.at(m);
        hy += ry.at(m);
        if (!le_tol(hy, hx)) return false;
    }
    return true;
}

bool check_tail_dom(const Seq& u, const Seq& y, const Scalar& q) {
    if (q < Scalar(1)) throw Error("check_tail_dom needs q >= 1");
    auto pu = power_prefix(u, q);
    auto py = power_prefix(y, q);
    std::size_t n = std::max(u.size(), y.size());
    for (std::size_t N = 1; N <= n; ++N) {
        Scalar tail_y = py.back() - prefix_at(py, N - 1);
        Scalar tail_u = pu.back() - prefix_at(pu, N - 1);
        if (!le_tol(tail_y, tail_u)) return false;
    }
    return true;
}

CapCompletion cap_completion(const Seq& u, const Seq& y, const Scalar& q) {
    if (!check_tail_dom(u, y, q))
        throw PremiseViolated("cap_completion needs tail domination of y by u");
    std::vector<Scalar> z;
    z.reserve(y.size());
    for (const Scalar& s : y) z.push_back(s.abs());
    if (z.empty()) z.push_back(Scalar(0));
    std::size_t n1 = 0;
    for (std::size_t i = 1; i < z.size(); ++i)
        if (z[i] > z[n1]) n1 = i;

    Scalar total_u = power_prefix(u, q).back();
    Scalar rest(0);
    for (std::size_t i = 0; i < z.size(); ++i)
        if (i != n1) rest += power_term(z[i], q);
    Scalar need = total_u - rest;
    if (need.sign() < 0)
        throw InvariantViolation("cap_completion: negative q-power budget");

    bool downgraded = false;
    Scalar raised(0);
    auto qi = q.is_exact() ? q.as_integer() : std::nullopt;
    std::optional<Scalar> root;
    if (need.is_exact() && qi) root = exact_root(need, static_cast<unsigned>(*qi));
    if (root) {
        raised = *root;
    } else {
        raised = Scalar::real(std::pow(need.to_double(), 1.0 / q.to_double()));
        downgraded = need.is_exact(); // exactness was requested but impossible
    }
    if (raised < z[n1] && !eq_tol(raised, z[n1]))
        throw InvariantViolation("cap_completion: raised entry below |y| maximum");
    z[n1] = raised;
    return {Seq(std::move(z)), n1, downgraded};
}

} // namespace kmaj

#include "kmaj/seq.hpp"

#include <algorithm>
#include <cmath>

namespace kmaj {

Seq Seq::exact(std::initializer_list<long long> xs) {
    std::vector<Scalar> v;
    for (long long x : xs) v.emplace_back(x);
    return Seq(std::move(v));
}

Seq Seq::real(std::initializer_list<double> xs) {
    std::vector<Scalar> v;
    for (double x : xs) v.push_back(Scalar::real(x));
    return Seq(std::move(v));
}

bool Seq::all_exact() const {
    return std::all_of(v_.begin(), v_.end(), [](const Scalar& s) { return s.is_exact(); });
}

bool Seq::is_zero(double tau) const {
    return std::all_of(v_.begin(), v_.end(), [&](const Scalar& s) { return s.is_zero(tau); });
}

std::size_t Seq::support_length(double tau) const {
    for (std::size_t i = v_.size(); i > 0; --i)
        if (!v_[i - 1].is_zero(tau)) return i;
    return 0;
}

bool operator==(const Seq& a, const Seq& b) {
    std::size_t n = std::max(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i)
        if (a.at(i) != b.at(i)) return false;
    return true;
}

Seq rearrange(const Seq& x) {
    std::vector<Scalar> v;
    v.reserve(x.size());
    for (const Scalar& s : x) v.push_back(s.abs());
    std::sort(v.begin(), v.end(), [](const Scalar& a, const Scalar& b) { return b < a; });
    return Seq(std::move(v));
}

Seq seq_to_float(const Seq& x) {
    std::vector<Scalar> v;
    v.reserve(x.size());
    for (const Scalar& s : x) v.push_back(Scalar::real(s.to_double()));
    return Seq(std::move(v));
}

Scalar power_term(const Scalar& x_abs, const Scalar& q) {
    if (q < Scalar(1)) throw Error("exponent q must be >= 1");
    if (x_abs.sign(0.0) == 0) return Scalar(0); // 0^q is exact in any mode
    // Integral q keeps exact bases exact.
    std::optional<long long> qi;
    if (q.is_exact()) {
        qi = q.as_integer();
    } else {
        double qd = q.to_double();
        if (qd == std::floor(qd)) qi = static_cast<long long>(qd);
    }
    if (qi) return x_abs.pow_int(static_cast<unsigned>(*qi));
    if (x_abs.is_exact())
        throw ArithmeticModeMismatch("non-integer exponent on exact values");
    return Scalar::real(std::pow(x_abs.to_double(), q.to_double()));
}

namespace {
void require_index(std::size_t m) {
    if (m == 0) throw Error("index m is 1-based and must be >= 1");
}
} // namespace

Scalar head_sum(const Seq& x, std::size_t m) {
    require_index(m);
    Seq r = rearrange(x);
    Scalar acc(0);
    for (std::size_t i = 0; i < m && i < r.size(); ++i) acc += r[i];
    return acc;
}

Scalar head_power_sum(const Seq& x, const Scalar& q, std::size_t m) {
    require_index(m);
    Seq r = rearrange(x);
    Scalar acc(0);
    for (std::size_t i = 0; i < m && i < r.size(); ++i) acc += power_term(r[i], q);
    return acc;
}

Scalar tail_power_sum(const Seq& x, const Scalar& q, std::size_t m) {
    require_index(m);
    Seq r = rearrange(x);
    Scalar acc(0);
    for (std::size_t i = m - 1; i < r.size(); ++i) acc += power_term(r[i], q);
    return acc;
}

} // namespace kmaj

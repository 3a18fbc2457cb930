#include "kmaj/scalar.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

namespace kmaj {

namespace {
double& tolerance_slot() {
    static double tau = 1e-9;
    return tau;
}
} // namespace

double comparison_tolerance() { return tolerance_slot(); }

void set_comparison_tolerance(double tau) {
    if (!(tau > 0)) throw Error("comparison tolerance must be positive");
    tolerance_slot() = tau;
}

Scalar Scalar::ratio(long long num, long long den) {
    if (den == 0) throw Error("zero denominator");
    return Scalar(Rational(BigInt(num), BigInt(den)));
}

const Rational& Scalar::rat() const {
    if (!is_exact()) throw ArithmeticModeMismatch("float-mode scalar has no exact value");
    return std::get<Rational>(v_);
}

double Scalar::to_double() const {
    if (is_exact()) return std::get<Rational>(v_).convert_to<double>();
    return std::get<double>(v_);
}

bool Scalar::is_integer() const {
    return is_exact() && boost::multiprecision::denominator(rat()) == 1;
}

std::optional<long long> Scalar::as_integer() const {
    if (!is_integer()) return std::nullopt;
    return boost::multiprecision::numerator(rat()).convert_to<long long>();
}

Scalar Scalar::operator-() const {
    if (is_exact()) return Scalar(Rational(-rat()));
    return real(-std::get<double>(v_));
}

Scalar Scalar::abs() const { return sign(0.0) < 0 ? -*this : *this; }

Scalar Scalar::pow_int(unsigned k) const {
    if (is_exact()) {
        Rational r(1);
        Rational base = rat();
        for (unsigned i = 0; i < k; ++i) r *= base;
        return Scalar(r);
    }
    return real(std::pow(std::get<double>(v_), static_cast<double>(k)));
}

namespace {
template <class Op>
Scalar combine(const Scalar& a, const Scalar& b, Op op) {
    if (a.is_exact() && b.is_exact()) return Scalar(Rational(op(a.rat(), b.rat())));
    return Scalar::real(op(a.to_double(), b.to_double()));
}
} // namespace

Scalar operator+(const Scalar& a, const Scalar& b) {
    return combine(a, b, [](const auto& x, const auto& y) { return x + y; });
}
Scalar operator-(const Scalar& a, const Scalar& b) {
    return combine(a, b, [](const auto& x, const auto& y) { return x - y; });
}
Scalar operator*(const Scalar& a, const Scalar& b) {
    return combine(a, b, [](const auto& x, const auto& y) { return x * y; });
}
Scalar operator/(const Scalar& a, const Scalar& b) {
    if (b.is_exact() && b.rat() == 0) throw Error("division by zero");
    if (!b.is_exact() && b.to_double() == 0.0) throw Error("division by zero");
    return combine(a, b, [](const auto& x, const auto& y) { return x / y; });
}

int Scalar::cmp(const Scalar& a, const Scalar& b) {
    if (a.is_exact() && b.is_exact()) {
        const Rational& x = a.rat();
        const Rational& y = b.rat();
        return x < y ? -1 : (x > y ? 1 : 0);
    }
    double x = a.to_double(), y = b.to_double();
    return x < y ? -1 : (x > y ? 1 : 0);
}

int Scalar::sign(double tau) const {
    if (is_exact()) {
        const Rational& r = rat();
        return r < 0 ? -1 : (r > 0 ? 1 : 0);
    }
    double x = std::get<double>(v_);
    if (std::fabs(x) <= tau) return 0;
    return x < 0 ? -1 : 1;
}

std::string Scalar::str() const {
    std::ostringstream os;
    os << *this;
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) {
    if (s.is_exact()) {
        const Rational& r = s.rat();
        os << boost::multiprecision::numerator(r);
        if (boost::multiprecision::denominator(r) != 1)
            os << '/' << boost::multiprecision::denominator(r);
    } else {
        os << s.to_double();
    }
    return os;
}

bool le_tol(const Scalar& a, const Scalar& b, double tau) {
    if (a.is_exact() && b.is_exact()) return a <= b;
    double x = a.to_double(), y = b.to_double();
    double scale = std::max({1.0, std::fabs(x), std::fabs(y)});
    return x <= y + tau * scale;
}

bool eq_tol(const Scalar& a, const Scalar& b, double tau) {
    return le_tol(a, b, tau) && le_tol(b, a, tau);
}

long long floor_to_int(const Scalar& s) {
    const Rational& r = s.rat();
    BigInt num = boost::multiprecision::numerator(r);
    BigInt den = boost::multiprecision::denominator(r);
    BigInt q = num / den; // truncates toward zero
    if (num < 0 && q * den != num) q -= 1;
    return q.convert_to<long long>();
}

long long ceil_to_int(const Scalar& s) { return -floor_to_int(-s); }

std::optional<Scalar> exact_root(const Scalar& s, unsigned q) {
    if (q == 0) throw Error("zeroth root");
    const Rational& r = s.rat();
    if (r < 0) throw Error("exact_root of a negative value");
    if (r == 0) return Scalar(0);
    auto int_root = [q](const BigInt& n) -> std::optional<BigInt> {
        // Newton iteration on integers, then verify.
        BigInt x = 1;
        x <<= (boost::multiprecision::msb(n) / q + 1);
        BigInt prev = -1;
        while (x != prev) {
            prev = x;
            BigInt xq1 = 1;
            for (unsigned i = 0; i + 1 < q; ++i) xq1 *= x;
            x = ((q - 1) * x + n / xq1) / q;
        }
        // The iteration lands at floor(n^(1/q)) or one above.
        for (BigInt c = x + 1; c + 2 > x; --c) {
            if (c < 1) break;
            BigInt p = 1;
            for (unsigned i = 0; i < q; ++i) p *= c;
            if (p == n) return c;
        }
        return std::nullopt;
    };
    auto rn = int_root(boost::multiprecision::numerator(r));
    if (!rn) return std::nullopt;
    auto rd = int_root(boost::multiprecision::denominator(r));
    if (!rd) return std::nullopt;
    return Scalar(Rational(*rn, *rd));
}

Scalar parse_rational(const std::string& text) {
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Scalar(Rational(BigInt(text)));
        BigInt num(text.substr(0, slash));
        BigInt den(text.substr(slash + 1));
        if (den == 0) throw Error("zero denominator in '" + text + "'");
        return Scalar(Rational(num, den));
    } catch (const std::exception& e) {
        throw Error("cannot parse rational '" + text + "': " + e.what());
    }
}

} // namespace kmaj

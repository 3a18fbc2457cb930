#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>

#include "kmaj/errors.hpp"

namespace kmaj {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Global comparison tolerance for float-mode values.  Exact-mode arithmetic
// never consults it.
double comparison_tolerance();
void set_comparison_tolerance(double tau);

// A real number in one of two modes: an exact reduced fraction, or a
// float64.  Arithmetic between two exact scalars stays exact; as soon as a
// float operand is involved the result is a float (an explicit, visible
// downgrade).
class Scalar {
public:
    Scalar() : v_(Rational(0)) {}
    Scalar(int n) : v_(Rational(n)) {}
    Scalar(long n) : v_(Rational(n)) {}
    Scalar(long long n) : v_(Rational(n)) {}
    Scalar(const BigInt& n) : v_(Rational(n)) {}
    Scalar(Rational r) : v_(std::move(r)) {}
    static Scalar ratio(long long num, long long den);
    static Scalar real(double x) { return Scalar(x, FloatTag{}); }

    bool is_exact() const { return std::holds_alternative<Rational>(v_); }
    const Rational& rat() const;
    double to_double() const;

    // Exact scalars with denominator 1.
    bool is_integer() const;
    std::optional<long long> as_integer() const;

    Scalar operator-() const;
    Scalar abs() const;
    // x^k for non-negative integer k; exact when x is exact.
    Scalar pow_int(unsigned k) const;

    friend Scalar operator+(const Scalar& a, const Scalar& b);
    friend Scalar operator-(const Scalar& a, const Scalar& b);
    friend Scalar operator*(const Scalar& a, const Scalar& b);
    friend Scalar operator/(const Scalar& a, const Scalar& b);
    Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
    Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
    Scalar& operator*=(const Scalar& b) { return *this = *this * b; }

    // Total order used for sorting and interval algebra.  Exact pairs compare
    // exactly; otherwise both sides compare as doubles.
    friend bool operator<(const Scalar& a, const Scalar& b) { return cmp(a, b) < 0; }
    friend bool operator>(const Scalar& a, const Scalar& b) { return cmp(a, b) > 0; }
    friend bool operator<=(const Scalar& a, const Scalar& b) { return cmp(a, b) <= 0; }
    friend bool operator>=(const Scalar& a, const Scalar& b) { return cmp(a, b) >= 0; }
    friend bool operator==(const Scalar& a, const Scalar& b) { return cmp(a, b) == 0; }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return cmp(a, b) != 0; }
    static int cmp(const Scalar& a, const Scalar& b);

    // Sign with the mode's comparison rule: exact sign for exact values,
    // |x| <= tau treated as zero for floats.
    int sign(double tau = comparison_tolerance()) const;
    bool is_zero(double tau = comparison_tolerance()) const { return sign(tau) == 0; }

    std::string str() const;
    friend std::ostream& operator<<(std::ostream& os, const Scalar& s);

private:
    struct FloatTag {};
    Scalar(double x, FloatTag) : v_(x) {}
    std::variant<Rational, double> v_;
};

// Mode-aware comparisons: exact pairs compare exactly, otherwise with
// relative tolerance tau * max(1, |a|, |b|).
bool le_tol(const Scalar& a, const Scalar& b, double tau = comparison_tolerance());
bool eq_tol(const Scalar& a, const Scalar& b, double tau = comparison_tolerance());

// floor/ceil of an exact scalar as a plain integer (values at desk scale).
long long floor_to_int(const Scalar& s);
long long ceil_to_int(const Scalar& s);

// Exact q-th root if `s` is a perfect q-th power of a rational; nullopt
// otherwise.  s must be exact and non-negative.
std::optional<Scalar> exact_root(const Scalar& s, unsigned q);

// Parses "n" or "n/d".
Scalar parse_rational(const std::string& text);

} // namespace kmaj

#pragma once

#include <vector>

#include "kmaj/piecewise_affine.hpp"
#include "kmaj/seq.hpp"

namespace kmaj {

// The exponents and constant of the two-term Holmstedt expression for the
// couple (l1, lq).
struct HolmstedtParams {
    double q;     // q > 1
    double alpha; // q / (q - 1)
    double c_q;   // bound on the equivalence constant C(q)
    static HolmstedtParams for_q(double q);
};

// C(q) <= max{ 1 + 2(q-1)^(-1/q) , 2^(1/q) + (1 - 1/q)^(-1/q) }.
double c_q_bound(double q);

// K(t, x; l1, linf) = integral over [0, t] of the rearranged step function.
// Piecewise affine in t; exact for exact inputs.
Scalar k_l1_linf(const Scalar& t, const Seq& x);
PiecewiseAffine k_l1_linf_profile(const Seq& x);

// The two-term expression: integral of phi over [0, t^alpha] plus
// t * (integral of phi^q over [t^alpha, inf))^(1/q), phi the rearranged step
// function of x.
double holmstedt_j(double t, const Seq& x, const HolmstedtParams& params);

struct KBracket {
    double value; // minimized ||x - z||_1 + t ||z||_q
    double lower; // holmstedt_j / c_q
    double upper; // holmstedt_j
};

// Evaluates K(t, x; l1, lq) by minimizing over decompositions, certified
// against the Holmstedt sandwich.  Throws NoConvergence if the value leaves
// [lower, upper] by more than tol relative slack.
KBracket k_l1_lq(double t, const Seq& x, double q, double tol = 1e-9);

enum class Decision { No, Yes, Undecided };

enum class Couple { L1Linf, L1Lq };

// Exact decision for (l1, linf); never Undecided.
Decision k_dominates_l1_linf(const Seq& x, const Seq& y);

// Grid points 2^k for -10..10 plus the integers up to the support length.
std::vector<double> default_lq_grid(const Seq& x, const Seq& y);

// K(t, y) <= K(t, x) for all t: exact for (l1, linf); for (l1, lq) a
// certified decision on the grid via sandwich intervals, Undecided when the
// intervals overlap.
Decision k_dominates(const Seq& x, const Seq& y, Couple couple, double q = 2.0,
                     const std::vector<double>& grid = {});

} // namespace kmaj

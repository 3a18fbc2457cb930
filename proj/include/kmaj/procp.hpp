#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kmaj/piecewise_affine.hpp"
#include "kmaj/spaces_fwd.hpp"
#include "kmaj/stepfn.hpp"

namespace kmaj {

// The two inequality regions driving the interval decomposition:
//   A = { t : integral of g over [0,t] < integral of f over [0,t] }
//   B = { t : integral of g^q over [t,inf) < integral of f^q over [t,inf) }
struct ABRegions {
    StepFn f, g;
    Scalar q;
    PiecewiseAffine head_gap; // t -> integral of (f - g) over [0, t]
    PiecewiseAffine tail_gap; // t -> integral of (f^q - g^q) over [t, inf)
    IntervalSet A, B;
};

// Computes the regions and validates that B contains 0 and that A and B
// cover [0, inf); throws PremiseViolated with a witness point otherwise.
ABRegions compute_regions(const StepFn& f, const StepFn& g, const Scalar& q);

enum class StepOutcome { O1, O2, O3 };
std::string outcome_name(StepOutcome o);

struct PStep {
    std::size_t n = 0; // 1-based label
    StepOutcome outcome = StepOutcome::O1;
    long long b_club = 0;
    std::optional<Scalar> b_point;             // sup of the B-run (absent for O-2)
    std::optional<long long> b_diamond;        // absent = infinite (O-2)
    std::optional<Scalar> a_point;             // left boundary of the A-run
    std::optional<Scalar> a_tilde;             // absent = infinite (O-2 / O-3)
    std::optional<long long> a_club;
    std::optional<long long> a_diamond;        // absent = infinite or no A-run
    std::optional<long long> b_club_next;      // O-1 only
    std::optional<Interval> set_B, set_A, set_Omega, set_Gamma; // absent = empty
};

struct PDecomposition {
    ABRegions regions;
    std::vector<PStep> steps;
    IntervalSet union_A, union_B, union_Omega, union_Gamma;
};

// Runs the interval decomposition to termination and machine-checks every
// clause it promises (interval forms, ordering, masked inequalities, the
// marker inequalities, and the covering of [0, inf)).
PDecomposition run_procedure_p(const StepFn& f, const StepFn& g, const Scalar& q);

struct ClaimReport {
    bool holds = false;
    std::string detail;
};

// The head-integral claim on an A-run (a, a_tilde):
//   integral of g over [floor(a), t] <= same for f, on [floor(a), max(a_tilde, floor(a)+1)]
// plus g(floor(a)) <= f(floor(a)).
ClaimReport verify_claim_a(const ABRegions& regions, const Scalar& a,
                           const std::optional<Scalar>& a_tilde);

// The tail-integral claim on a B-run (beta, b):
//   integral of g^q over [t, ceil(b)] <= same for f^q, on [beta, ceil(b)].
ClaimReport verify_claim_b(const ABRegions& regions, const Scalar& beta, const Scalar& b);

struct SplitFunctions {
    StepFn phi1, phi2, phi3; // f masked by the A / B / Omega families
    StepFn psi1, psi2, psi3; // g masked by the A / B / Gamma families
};

SplitFunctions split_functions(const StepFn& f, const StepFn& g,
                               const PDecomposition& decomp);

// Nonincreasing rearrangement of h restricted to the mask, computed by
// concatenating the masked blocks left-to-right (valid for nonincreasing h).
StepFn compress_rearrange(const StepFn& h, const IntervalSet& mask);

struct PhiPsiReport {
    bool head_ok = false;      // heads of psi1* dominated by phi1*
    bool tail_ok = false;      // q-power tails of psi2* dominated by phi2*
    bool pointwise_ok = false; // psi3* <= phi3* pointwise
    bool holds() const { return head_ok && tail_ok && pointwise_ok; }
};

PhiPsiReport verify_phis_psis(const SplitFunctions& split, const Scalar& q);

struct SpaceCheck {
    SpaceSpec space;
    double norm_x = 0, norm_y = 0;
    bool ok = false;
};

struct PipelineResult {
    bool bound_holds = false;
    Scalar c3;              // (1 + eps) * C(q) * C2^4 * (C1 + 2)
    bool trivial = false;   // y == 0 short-circuit
    std::optional<PDecomposition> decomposition;
    std::vector<SpaceCheck> space_checks;
};

// Builds g from y*, f = (1+eps) * C(q) * x*, runs the full region /
// decomposition / split / verification chain, and checks the norm bound
// ||y||_E <= C3 ||x||_E on each supplied space.
PipelineResult theorem_main_pipeline(const Seq& x, const Seq& y, const Scalar& q,
                                     const Scalar& c1, const Scalar& c2,
                                     const Scalar& eps,
                                     const std::vector<SpaceSpec>& spaces);

// The constant C(q) as a Scalar: exact 3 at q = 2, the float bound elsewhere.
Scalar c_q_scalar(const Scalar& q);

} // namespace kmaj

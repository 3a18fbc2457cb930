#pragma once

#include <cstdint>

#include "kmaj/io.hpp"
#include "kmaj/spaces.hpp"

namespace kmaj {

struct Report {
    std::string theorem;
    Json params = Json::object();
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    bool pass = false;
    Json violations = Json::array();
    double timing_ms = 0;
    Json to_json() const;
};

// Interpolation spaces of (lp, lq) carry the head-power transfer property:
// randomized falsification must come up empty for spaces with a documented
// constant.  The reduction to p = 1 is recorded in the report.
Report verify_thm_easy(const SpaceSpec& E, double p, double q, double C,
                       std::uint64_t trials, std::uint64_t seed);

// End-to-end: K-dominated pairs for (l1, lq) run through the decomposition
// pipeline; the final norm bound with C3 = (1+eps) C(q) C2^4 (C1+2) must
// hold on every trial.
Report verify_thm_main(const SpaceSpec& E, const Scalar& q, const Scalar& c1,
                       const Scalar& c2, std::uint64_t trials, std::uint64_t seed,
                       const Scalar& eps = Scalar::ratio(1, 1024));

// (l1, linf)-K-dominated pairs must transfer with constant C*R; also walks
// the proof path: truncation, convex-combination transfer, and the
// norm-chain bound.
Report verify_thm_enough(const SpaceSpec& E, double C, double R, std::uint64_t trials,
                         std::uint64_t seed);

} // namespace kmaj

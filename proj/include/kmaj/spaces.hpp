#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "kmaj/seq.hpp"
#include "kmaj/spaces_fwd.hpp"

namespace kmaj {

// The norm of x in E.  lp: (sum |x_n|^p)^(1/p); weak-lp (and its separable
// part): sup_m m^(1/p - 1) * sum_{n<=m} x_n*.  Finite support turns every
// sup into a max.
double space_norm(const SpaceSpec& E, const Seq& x);

struct WfpProbe {
    double sup_truncated;  // sup over N <= n_max of the truncated norm
    double tail_indicator; // weak kinds: m^(1/p-1) * head_m at m = n_max
    double ratio;          // truncated norm at n_max over sup_truncated
};

// Streams x_1, x_2, ... (nonnegative, nonincreasing) through truncations
// Pi_N and tracks the truncated-norm supremum together with the membership
// limit probe for the separable weak space.
WfpProbe wfp_probe(const SpaceSpec& E, const std::function<double(std::uint64_t)>& gen,
                   std::uint64_t n_max);
WfpProbe wfp_probe(const SpaceSpec& E, const Seq& x);

struct SqViolation {
    std::uint64_t trial;
    std::vector<double> u, v;
    double norm_u, norm_v;
};

struct SqProbeResult {
    std::vector<SqViolation> violations;
    std::uint64_t trials = 0;
};

// Randomized falsification of the head-power-domination transfer property:
// samples premise pairs (u, v) by q-power mass flattening and hunts for
// ||v||_E > C ||u||_E.
SqProbeResult sq_probe(const SpaceSpec& E, double q, double C, std::uint64_t trials,
                       std::uint64_t seed);
SqProbeResult sq_probe_with_norm(const std::function<double(const Seq&)>& norm_fn,
                                 double q, double C, std::uint64_t trials,
                                 std::uint64_t seed);

} // namespace kmaj

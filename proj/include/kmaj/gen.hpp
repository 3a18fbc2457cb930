#pragma once

#include <cstdint>
#include <random>

#include "kmaj/operators.hpp"
#include "kmaj/stepfn.hpp"

namespace kmaj {

// Deterministic per-trial randomness: one engine per (seed, trial).
struct Rng {
    std::mt19937_64 eng;
    explicit Rng(std::uint64_t seed) : eng(seed) {}
    static Rng for_trial(std::uint64_t seed, std::uint64_t trial) {
        return Rng(seed * 0x9e3779b97f4a7c15ULL + 0x632be59bd9b4e019ULL * (trial + 1));
    }
    std::uint64_t below(std::uint64_t n) { return n ? eng() % n : 0; }
    double unit() { return std::uniform_real_distribution<double>(0.0, 1.0)(eng); }
    // Uniform k/den with 0 <= k <= num_max.
    Scalar rational(long long num_max, long long den) {
        return Scalar::ratio(static_cast<long long>(below(num_max + 1)), den);
    }
};

// Random exact sequence with small denominators; optionally signed.
Seq gen_seq_exact(Rng& rng, std::size_t max_len, bool allow_negative);

// Random composition of structured contractions (signed permutations,
// convex combinations of them, diagonal multipliers with |factor| <= 1,
// truncations): norm at most 1 on l1 and linf, hence on every lq.
OperatorExpr gen_contraction(Rng& rng, std::size_t dim, unsigned depth);

// A random signed-permutation bijection of the window.
SignedPermutation gen_signed_permutation(Rng& rng, std::size_t dim);

// Pair with head-sum domination of y* by x* (exact).
std::pair<Seq, Seq> gen_hlp_pair(Rng& rng, std::size_t max_len);

// Pair (x, y = Tx) with T a certified contraction on both couple endpoints,
// so y is K-dominated by x by construction.
std::pair<Seq, Seq> gen_k_dominated_pair(Rng& rng, std::size_t dim, unsigned depth);

// Premise-satisfying (f, g) for the interval decomposition, built from a
// K-dominated pair scaled by a rational constant at least C(q); exact for
// integer q in {2, 3}.
struct FgPair {
    StepFn f, g;
};
FgPair gen_procp_pair(Rng& rng, const Scalar& q, std::size_t max_support);

} // namespace kmaj

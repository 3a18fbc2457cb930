#include "kmaj/harness.hpp"

#include <chrono>

#include "kmaj/gen.hpp"
#include "kmaj/kfunc.hpp"
#include "kmaj/majorization.hpp"

namespace kmaj {

namespace {
struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                         start)
            .count();
    }
};
} // namespace

Json Report::to_json() const {
    return Json{{"theorem", theorem}, {"params", params},   {"trials", trials},
                {"seed", seed},       {"pass", pass},       {"violations", violations},
                {"timing_ms", timing_ms}};
}

Report verify_thm_easy(const SpaceSpec& E, double p, double q, double C,
                       std::uint64_t trials, std::uint64_t seed) {
    Timer timer;
    Report rep;
    rep.theorem = "sq-transfer";
    rep.trials = trials;
    rep.seed = seed;
    rep.params = Json{{"space", E.name()},
                      {"p", p},
                      {"q", q},
                      {"C", C},
                      {"note", p > 1.0 ? "checked at p = 1, the weakest endpoint choice"
                                       : "p = 1"}};
    SqProbeResult probe = sq_probe(E, q, C, trials, seed);
    for (const SqViolation& v : probe.violations) {
        rep.violations.push_back(
            Json{{"trial", v.trial},
                 {"u", v.u},
                 {"v", v.v},
                 {"norm_u", v.norm_u},
                 {"norm_v", v.norm_v},
                 {"replay", "kmaj space sq-probe --space " + E.name() + " --q " +
                                std::to_string(q) + " --C " + std::to_string(C) +
                                " --trials " + std::to_string(trials) + " --seed " +
                                std::to_string(seed)}});
    }
    rep.pass = probe.violations.empty();
    rep.timing_ms = timer.ms();
    return rep;
}

Report verify_thm_main(const SpaceSpec& E, const Scalar& q, const Scalar& c1,
                       const Scalar& c2, std::uint64_t trials, std::uint64_t seed,
                       const Scalar& eps) {
    Timer timer;
    Report rep;
    rep.theorem = "k-space-transfer";
    rep.trials = trials;
    rep.seed = seed;
    rep.params = Json{{"space", E.name()},
                      {"q", scalar_to_json(q)},
                      {"C1", scalar_to_json(c1)},
                      {"C2", scalar_to_json(c2)},
                      {"eps", scalar_to_json(eps)}};
    for (std::uint64_t t = 0; t < trials; ++t) {
        Rng rng = Rng::for_trial(seed, t);
        auto [x, y] = gen_k_dominated_pair(rng, 2 + rng.below(12), 3);
        Json witness{{"trial", t},
                     {"x", seq_to_json(x)},
                     {"y", seq_to_json(y)},
                     {"replay", "kmaj verify thm-main --space " + E.name() +
                                    " --trials " + std::to_string(trials) + " --seed " +
                                    std::to_string(seed)}};
        try {
            PipelineResult res = theorem_main_pipeline(x, y, q, c1, c2, eps, {E});
            if (!res.bound_holds) {
                witness["reason"] = "norm bound failed";
                witness["result"] = pipeline_to_json(res);
                rep.violations.push_back(witness);
            }
        } catch (const Error& e) {
            witness["reason"] = e.what();
            rep.violations.push_back(witness);
        }
    }
    rep.pass = rep.violations.empty();
    rep.timing_ms = timer.ms();
    return rep;
}

Report verify_thm_enough(const SpaceSpec& E, double C, double R, std::uint64_t trials,
                         std::uint64_t seed) {
    Timer timer;
    Report rep;
    rep.theorem = "weak-fatou-transfer";
    rep.trials = trials;
    rep.seed = seed;
    rep.params = Json{{"space", E.name()}, {"C", C}, {"R", R}};
    for (std::uint64_t t = 0; t < trials; ++t) {
        Rng rng = Rng::for_trial(seed, t);
        auto [x, y] = gen_k_dominated_pair(rng, 2 + rng.below(12), 3);
        Json witness{{"trial", t},
                     {"x", seq_to_json(x)},
                     {"y", seq_to_json(y)},
                     {"replay", "kmaj verify thm-enough --space " + E.name() +
                                    " --trials " + std::to_string(trials) + " --seed " +
                                    std::to_string(seed)}};
        try {
            if (k_dominates_l1_linf(x, y) != Decision::Yes)
                throw InvariantViolation("constructed pair is not K-dominated");
            double nx = space_norm(E, x), ny = space_norm(E, y);
            if (!le_tol(Scalar::real(ny), Scalar::real(C * R * nx))) {
                witness["reason"] = "norm bound failed";
                witness["norm_x"] = nx;
                witness["norm_y"] = ny;
                rep.violations.push_back(witness);
                continue;
            }
            // Proof path: truncate, transfer by a convex combination of
            // signed permutations, and bound the norm chain.
            std::size_t keep = 1 + rng.below(std::max<std::size_t>(y.size(), 1));
            Seq y_trunc = apply(OperatorExpr(Truncation{keep}), y);
            if (!check_hlp(x, y_trunc))
                throw InvariantViolation("truncated pair lost head domination");
            ConvexCombo combo = hlp_transfer(x, y_trunc);
            double chain = 0.0;
            for (const auto& [w, m] : combo.terms)
                chain += w.to_double() * space_norm(E, m.apply_to(x));
            if (!le_tol(Scalar::real(chain), Scalar::real(C * nx))) {
                witness["reason"] = "convex-combination norm chain exceeded C";
                witness["chain"] = chain;
                rep.violations.push_back(witness);
            }
        } catch (const Error& e) {
            witness["reason"] = e.what();
            rep.violations.push_back(witness);
        }
    }
    rep.pass = rep.violations.empty();
    rep.timing_ms = timer.ms();
    return rep;
}

} // namespace kmaj

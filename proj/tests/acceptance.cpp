// Acceptance suite: every check the toolkit promises, with pinned
// tolerances, seeds, and runtime budgets.  One line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "kmaj/gen.hpp"
#include "kmaj/harness.hpp"
#include "kmaj/kfunc.hpp"
#include "kmaj/majorization.hpp"
#include "kmaj/procp.hpp"

using namespace kmaj;

namespace {

int g_failures = 0;

void criterion(int number, const std::string& label, double budget_s,
               const std::function<bool(std::string&)>& body) {
    std::string detail;
    auto start = std::chrono::steady_clock::now();
    bool ok = false;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                      .count();
    if (budget_s > 0 && secs >= budget_s) {
        ok = false;
        detail += (detail.empty() ? "" : "; ") + std::string("over the ") +
                  std::to_string(static_cast<int>(budget_s)) + "s budget";
    }
    if (!ok) ++g_failures;
    std::printf("[%s] %d. %s (%.2fs)%s%s\n", ok ? "PASS" : "FAIL", number, label.c_str(),
                secs, detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
}

Seq random_float_seq(std::mt19937_64& rng, std::size_t max_len) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::size_t n = 1 + rng() % max_len;
    std::vector<Scalar> v;
    for (std::size_t i = 0; i < n; ++i) {
        double x = unit(rng) < 0.1 ? 0.0 : unit(rng) * 8.0;
        v.push_back(Scalar::real(x));
    }
    return Seq(std::move(v));
}

bool holmstedt_sandwich(std::string& detail) {
    if (c_q_bound(2.0) != 3.0) {
        detail = "C(2) must evaluate to exactly 3";
        return false;
    }
    const double qs[] = {1.5, 2.0, 3.0};
    const double rel = 1e-6;
    std::mt19937_64 rng(20240901);
    for (int trial = 0; trial < 1000; ++trial) {
        Seq x = random_float_seq(rng, 64);
        for (double q : qs) {
            HolmstedtParams params = HolmstedtParams::for_q(q);
            for (int k = -10; k <= 10; ++k) {
                double t = std::ldexp(1.0, k);
                KBracket b = k_l1_lq(t, x, q, rel);
                double j = holmstedt_j(t, x, params);
                bool low = b.value <= j * (1.0 + rel) + 1e-12;
                bool high = j <= params.c_q * b.value * (1.0 + rel) + 1e-12;
                if (!low || !high) {
                    detail = "sandwich broken at trial " + std::to_string(trial) +
                             ", q = " + std::to_string(q) + ", t = 2^" + std::to_string(k);
                    return false;
                }
            }
        }
    }
    return true;
}

bool procedure_p_soundness(std::string& detail) {
    for (int trial = 0; trial < 1000; ++trial) {
        Rng rng = Rng::for_trial(20240902, trial);
        Scalar q(trial % 2 ? 3 : 2);
        FgPair fg = gen_procp_pair(rng, q, 48);
        if (!fg.f.all_exact() || !fg.g.all_exact()) {
            detail = "generated pair is not exact at trial " + std::to_string(trial);
            return false;
        }
        try {
            PDecomposition d = run_procedure_p(fg.f, fg.g, q);
            if (!d.union_A.unite(d.union_B).unite(d.union_Gamma).covers_half_line())
                throw InvariantViolation("covering failed");
            if (!verify_phis_psis(split_functions(fg.f, fg.g, d), q).holds())
                throw InvariantViolation("phi/psi inequalities failed");
        } catch (const std::exception& e) {
            detail = std::string(e.what()) + " at trial " + std::to_string(trial);
            return false;
        }
    }
    return true;
}

bool theorem_main_l1(std::string& detail) {
    const Scalar eps = Scalar::ratio(1, 1024);
    for (int trial = 0; trial < 500; ++trial) {
        Rng rng = Rng::for_trial(20240903, trial);
        auto [x, y] = gen_k_dominated_pair(rng, 2 + rng.below(12), 3);
        try {
            PipelineResult res =
                theorem_main_pipeline(x, y, Scalar(2), Scalar(1), Scalar(1), eps, {});
            // ||y||_1 <= (1+eps) * 3 * 1 * (1+2) * ||x||_1, checked exactly.
            Scalar ny = head_sum(y, std::max<std::size_t>(y.size(), 1));
            Scalar nx = head_sum(x, std::max<std::size_t>(x.size(), 1));
            if (!(ny <= res.c3 * nx)) {
                detail = "l1 bound failed at trial " + std::to_string(trial);
                return false;
            }
        } catch (const std::exception& e) {
            detail = std::string(e.what()) + " at trial " + std::to_string(trial);
            return false;
        }
    }
    return true;
}

bool transfer_contract(std::string& detail) {
    for (int trial = 0; trial < 500; ++trial) {
        Rng rng = Rng::for_trial(20240904, trial);
        auto [x, y] = gen_hlp_pair(rng, 32);
        try {
            ConvexCombo combo = hlp_transfer(x, y);
            Scalar total(0);
            for (const auto& [w, m] : combo.terms) {
                if (!m.bijective()) throw InvariantViolation("factor not a permutation");
                total += w;
            }
            if (total != Scalar(1)) throw InvariantViolation("weights do not sum to 1");
            if (!(apply(combo, x) == y)) throw InvariantViolation("transport not exact");
            if (!(norm_l1(OperatorExpr(combo)) <= Scalar(1)) ||
                !(norm_linf(OperatorExpr(combo)) <= Scalar(1)))
                throw InvariantViolation("operator norm exceeds 1");
        } catch (const std::exception& e) {
            detail = std::string(e.what()) + " at trial " + std::to_string(trial);
            return false;
        }
    }
    return true;
}

bool weak_fatou_probe(std::string& detail) {
    SpaceSpec e = SpaceSpec::lp(1.5);
    for (int trial = 0; trial < 500; ++trial) {
        Rng rng = Rng::for_trial(20240905, trial);
        auto [x, y] = gen_k_dominated_pair(rng, 2 + rng.below(12), 3);
        if (k_dominates_l1_linf(x, y) != Decision::Yes) {
            detail = "constructed pair not K-dominated at trial " + std::to_string(trial);
            return false;
        }
        double nx = space_norm(e, x), ny = space_norm(e, y);
        if (ny > nx * (1.0 + 1e-9) + 1e-12) {
            detail = "norm bound failed at trial " + std::to_string(trial);
            return false;
        }
    }
    return true;
}

bool weak_l2_counterexample(std::string& detail) {
    auto gen = [](std::uint64_t n) { return 1.0 / std::sqrt(static_cast<double>(n)); };
    WfpProbe r = wfp_probe(SpaceSpec::weak_lp_separable(2.0), gen, 1000000);
    if (std::fabs(r.tail_indicator - 2.0) > 0.02) {
        detail = "membership limit " + std::to_string(r.tail_indicator) +
                 " misses 2 by more than 1%";
        return false;
    }
    if (r.sup_truncated > 2.01) {
        detail = "truncated norms exceed 2.01";
        return false;
    }
    return true;
}

bool riesz_thorin_suite(std::string& detail) {
    std::mt19937_64 rng(20240906);
    std::uniform_real_distribution<double> pm(-1.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        DenseMatrix m(4, 4);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) m.at(i, j) = Scalar::real(pm(rng));
        RieszThorinReport r = riesz_thorin_check(m, 0.5, 1e-9, 0x5eed + trial);
        if (!r.holds) {
            detail = "interior estimate " + std::to_string(r.interior_lower) +
                     " exceeds bound " + std::to_string(r.interpolated) + " at trial " +
                     std::to_string(trial);
            return false;
        }
    }
    return true;
}

bool round_trips(std::string& detail) {
    for (int trial = 0; trial < 10000; ++trial) {
        Rng rng = Rng::for_trial(20240907, trial);
        Seq x = gen_seq_exact(rng, 16, true);
        auto [w, y] = build_w_y(x);
        if (!(w.apply_to(x) == rearrange(x)) || !(y.apply_to(w.apply_to(x)) == x)) {
            detail = "W/Y round trip failed at trial " + std::to_string(trial);
            return false;
        }

        StepFn h = StepFn::from_seq(rearrange(gen_seq_exact(rng, 12, true)));
        std::vector<Interval> pieces;
        long long cursor = 0;
        while (cursor < static_cast<long long>(h.cell_count())) {
            long long len = 1 + static_cast<long long>(rng.below(3));
            if (rng.below(2))
                pieces.push_back(Interval::closed_open(Scalar(cursor), Scalar(cursor + len)));
            cursor += len + static_cast<long long>(rng.below(2));
        }
        IntervalSet mask = IntervalSet::of(pieces);
        if (!(compress_rearrange(h, mask).to_seq() ==
              step_rearrange(step_mask(h, mask)).to_seq())) {
            detail = "compression mismatch at trial " + std::to_string(trial);
            return false;
        }
    }
    return true;
}

} // namespace

int main() {
    criterion(1, "Holmstedt sandwich certifies the minimized K (1000 x {3/2,2,3} x 21)",
              60.0, holmstedt_sandwich);
    criterion(2, "interval decomposition soundness, exact mode, q in {2,3} (1000 pairs)",
              120.0, procedure_p_soundness);
    criterion(3, "end-to-end l1 bound ||y|| <= (1+eps) * 9 * ||x|| (500 pairs)", 0.0,
              theorem_main_l1);
    criterion(4, "convex-combination transfer contract (500 pairs, dim <= 32)", 30.0,
              transfer_contract);
    criterion(5, "K-domination transfer in l(3/2) with C = R = 1 (500 pairs)", 0.0,
              weak_fatou_probe);
    criterion(6, "weak-l2 separable part: bounded truncations, nonzero limit", 5.0,
              weak_l2_counterexample);
    criterion(7, "one-sided interpolation bound on 200 random 4x4 matrices", 0.0,
              riesz_thorin_suite);
    criterion(8, "W/Y and compression round trips (10^4 each, exact)", 0.0, round_trips);

    if (g_failures) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all acceptance criteria passed\n");
    return 0;
}

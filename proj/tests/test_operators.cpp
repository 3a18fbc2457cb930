#include <doctest.h>

#include <cmath>
#include <random>

#include "kmaj/gen.hpp"
#include "kmaj/kfunc.hpp"
#include "kmaj/majorization.hpp"
#include "kmaj/operators.hpp"

using namespace kmaj;

TEST_CASE("dense matrix norms are column and row sums") {
    DenseMatrix m(2, 2);
    m.at(0, 0) = Scalar::ratio(1, 2);
    m.at(0, 1) = Scalar::ratio(1, 2);
    OperatorExpr t(m);
    CHECK(norm_l1(t) == Scalar::ratio(1, 2));
    CHECK(norm_linf(t) == Scalar(1));
}

TEST_CASE("truncation and diagonal application") {
    CHECK(apply(OperatorExpr(Truncation{2}), Seq::exact({1, 2, 3})) == Seq::exact({1, 2}));
    DiagonalMultiplier d{{Scalar::ratio(1, 2), Scalar(-1)}};
    CHECK(apply(OperatorExpr(d), Seq::exact({2, 3})) ==
          Seq(std::vector<Scalar>{Scalar(1), Scalar(-3)}));
}

TEST_CASE("convex combinations of signed permutations are contractions") {
    std::mt19937_64 rng(71);
    for (int trial = 0; trial < 200; ++trial) {
        Rng gen(rng());
        OperatorExpr t = gen_contraction(gen, 2 + gen.below(6), 3);
        CHECK(norm_l1(t) <= Scalar(1));
        CHECK(norm_linf(t) <= Scalar(1));
    }
}

TEST_CASE("W sends x to its rearrangement and Y sends it back") {
    Seq x = Seq::exact({0, 2, -1});
    auto [w, y] = build_w_y(x);
    CHECK(w.apply_to(x) == Seq::exact({2, 1, 0}));
    CHECK(y.apply_to(w.apply_to(x)) == x);

    Seq sorted = Seq::exact({3, 2, 1});
    auto [w2, y2] = build_w_y(sorted);
    CHECK(w2.apply_to(sorted) == sorted);

    Seq zero = Seq::exact({0, 0});
    auto [w3, y3] = build_w_y(zero);
    CHECK(w3.apply_to(zero) == zero);
}

TEST_CASE("W/Y round trip on fuzzed inputs") {
    std::mt19937_64 rng(72);
    for (int trial = 0; trial < 3000; ++trial) {
        Rng gen(rng());
        Seq x = gen_seq_exact(gen, 12, true);
        auto [w, y] = build_w_y(x);
        CHECK(w.bijective());
        CHECK(y.bijective());
        CHECK(w.apply_to(x) == rearrange(x));
        CHECK(y.apply_to(w.apply_to(x)) == x);
    }
}

TEST_CASE("lower bounds on lq operator norms") {
    DenseMatrix diag(2, 2);
    diag.at(0, 0) = Scalar::ratio(3, 4);
    diag.at(1, 1) = Scalar::ratio(-1, 2);
    CHECK(norm_lq_lower(diag, 2.0) == doctest::Approx(0.75));

    DenseMatrix eye(3, 3);
    for (int i = 0; i < 3; ++i) eye.at(i, i) = Scalar(1);
    CHECK(norm_lq_lower(eye, 1.7) == doctest::Approx(1.0));

    // The estimate never exceeds the interpolation bound.
    std::mt19937_64 rng(73);
    std::uniform_real_distribution<double> pm(-1.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        DenseMatrix m(3, 3);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) m.at(i, j) = Scalar::real(pm(rng));
        double q = 1.5 + (trial % 4) * 0.5;
        double bound = std::pow(norm_l1(m).to_double(), 1.0 / q) *
                       std::pow(norm_linf(m).to_double(), 1.0 - 1.0 / q);
        CHECK(norm_lq_lower(m, q, 16, 300, trial) <= bound * (1 + 1e-9) + 1e-12);
    }
}

TEST_CASE("transfer contract on the worked example") {
    Seq x = Seq::exact({2, 1});
    Seq y(std::vector<Scalar>{Scalar::ratio(3, 2), Scalar(0)});
    ConvexCombo combo = hlp_transfer(x, y);
    Scalar total(0);
    for (const auto& [w, m] : combo.terms) {
        CHECK(w.sign(0.0) > 0);
        CHECK(m.bijective());
        total += w;
    }
    CHECK(total == Scalar(1));
    CHECK(apply(combo, x) == y);
    CHECK(norm_l1(OperatorExpr(combo)) <= Scalar(1));
    CHECK(norm_linf(OperatorExpr(combo)) <= Scalar(1));
}

TEST_CASE("transfer degenerates to a single permutation when y is a shuffle of x") {
    Seq x = Seq::exact({2, 1});
    ConvexCombo same = hlp_transfer(x, x);
    CHECK(same.terms.size() == 1);
    CHECK(same.terms[0].first == Scalar(1));
    CHECK(apply(same, x) == x);

    Seq swapped = Seq::exact({1, 2});
    ConvexCombo perm = hlp_transfer(x, swapped);
    CHECK(perm.terms.size() == 1);
    CHECK(apply(perm, x) == swapped);
}

TEST_CASE("transfer contract on fuzzed head-dominated pairs") {
    std::mt19937_64 rng(74);
    for (int trial = 0; trial < 300; ++trial) {
        Rng gen(rng());
        auto [x, y] = gen_hlp_pair(gen, 10);
        ConvexCombo combo = hlp_transfer(x, y);
        Scalar total(0);
        for (const auto& [w, m] : combo.terms) {
            CHECK(m.bijective());
            total += w;
        }
        CHECK(total == Scalar(1));
        CHECK(apply(combo, x) == y);
        CHECK(norm_l1(OperatorExpr(combo)) <= Scalar(1));
        CHECK(norm_linf(OperatorExpr(combo)) <= Scalar(1));
    }
}

TEST_CASE("transfer rejects pairs without head domination") {
    CHECK_THROWS_AS(hlp_transfer(Seq::exact({1, 1}), Seq::exact({2, 0})),
                    PremiseViolated);
}

TEST_CASE("one-sided log-convexity check") {
    DenseMatrix diag(3, 3);
    diag.at(0, 0) = Scalar::ratio(1, 2);
    diag.at(1, 1) = Scalar::ratio(1, 4);
    diag.at(2, 2) = Scalar::ratio(7, 8);
    RieszThorinReport r = riesz_thorin_check(diag, 0.5);
    CHECK(r.holds);
    CHECK(r.slack == doctest::Approx(0.0).epsilon(1e-6)); // diagonal: equality

    DenseMatrix eye(2, 2);
    eye.at(0, 0) = Scalar(1);
    eye.at(1, 1) = Scalar(1);
    CHECK(riesz_thorin_check(eye, 0.5).holds);

    std::mt19937_64 rng(75);
    std::uniform_real_distribution<double> pm(-1.0, 1.0);
    for (int trial = 0; trial < 40; ++trial) {
        DenseMatrix m(4, 4);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) m.at(i, j) = Scalar::real(pm(rng));
        CHECK(riesz_thorin_check(m, 0.5, 1e-9, trial).holds);
    }
}

TEST_CASE("structured contractions dominate their images in the K order") {
    std::mt19937_64 rng(76);
    for (int trial = 0; trial < 300; ++trial) {
        Rng gen(rng());
        Seq x = gen_seq_exact(gen, 8, true);
        OperatorExpr t = gen_contraction(gen, std::max<std::size_t>(x.size(), 1), 2);
        REQUIRE(norm_l1(t) <= Scalar(1));
        REQUIRE(norm_linf(t) <= Scalar(1));
        CHECK(k_dominates(x, apply(t, x), Couple::L1Linf) == Decision::Yes);
    }
}

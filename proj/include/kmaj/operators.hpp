#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "kmaj/seq.hpp"

namespace kmaj {

// M({x_n}) = {theta_n x_sigma(n)}: each output coordinate takes one input
// coordinate with a sign, injectively.  Unmapped outputs are zero.  When the
// map is a bijection of the window this is a simultaneous isometry of every
// l^r.
struct SignedPermutation {
    struct Entry {
        std::size_t source;
        int sign; // +1 or -1
    };
    std::vector<std::optional<Entry>> targets; // indexed by output coordinate
    std::size_t dim_in = 0;

    static SignedPermutation identity(std::size_t n);
    std::size_t dim_out() const { return targets.size(); }
    bool injective() const;
    bool bijective() const;
    Seq apply_to(const Seq& x) const;
    // this after inner (both maps on the same window).
    SignedPermutation composed_after(const SignedPermutation& inner) const;

    friend bool operator==(const SignedPermutation& a, const SignedPermutation& b);
};

struct DiagonalMultiplier {
    std::vector<Scalar> factors; // |factor| <= 1
};

struct Truncation {
    std::size_t keep; // Pi_N: zero out coordinates >= keep
};

struct DenseMatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<Scalar> a; // row-major
    DenseMatrix() = default;
    DenseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, Scalar(0)) {}
    Scalar& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const Scalar& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

struct OperatorExpr;

struct ConvexCombo {
    // weights > 0 summing to 1.
    std::vector<std::pair<Scalar, SignedPermutation>> terms;
};

struct Composition {
    std::vector<OperatorExpr> factors; // factors.front() applied last
};

struct OperatorExpr {
    std::variant<SignedPermutation, DiagonalMultiplier, ConvexCombo, Truncation,
                 DenseMatrix, Composition>
        node;

    OperatorExpr(SignedPermutation v) : node(std::move(v)) {}
    OperatorExpr(DiagonalMultiplier v) : node(std::move(v)) {}
    OperatorExpr(ConvexCombo v) : node(std::move(v)) {}
    OperatorExpr(Truncation v) : node(std::move(v)) {}
    OperatorExpr(DenseMatrix v) : node(std::move(v)) {}
    OperatorExpr(Composition v) : node(std::move(v)) {}
};

Seq apply(const OperatorExpr& T, const Seq& x);
Seq apply(const ConvexCombo& T, const Seq& x);

// Smallest window on which the operator is fully represented.
std::size_t natural_dim(const OperatorExpr& T);
DenseMatrix to_matrix(const OperatorExpr& T, std::size_t dim);

// Exact operator norms of the represented finite matrix: max absolute
// column sum (l1 -> l1) and max absolute row sum (linf -> linf).
Scalar norm_l1(const OperatorExpr& T);
Scalar norm_linf(const OperatorExpr& T);
Scalar norm_l1(const DenseMatrix& m);
Scalar norm_linf(const DenseMatrix& m);

// Lower bound on ||T||_{lq -> lq} by ascent on the Rayleigh ratio with
// random restarts.
double norm_lq_lower(const DenseMatrix& m, double q, unsigned restarts = 32,
                     unsigned steps = 500, std::uint64_t seed = 0x5eed);
double norm_lq_lower(const OperatorExpr& T, double q, unsigned restarts = 32,
                     unsigned steps = 500, std::uint64_t seed = 0x5eed);

// The maps W and Y with W x = x* and Y x* = x, both signed permutations of
// the window (norm 1 on every l^r).
std::pair<SignedPermutation, SignedPermutation> build_w_y(const Seq& x);

// Given head-sum domination of y* by x*, a convex combination of signed
// permutations T with T x = y exactly.
ConvexCombo hlp_transfer(const Seq& x, const Seq& y);

struct RieszThorinReport {
    bool holds;
    double slack;          // interpolated bound minus interior estimate
    double interior_lower; // estimated ||T||_{p_theta -> p_theta}
    double interpolated;   // norm_l1^(1-theta) * norm_linf^theta
    double p_theta;
};

// One-sided log-convexity check with endpoints (l1, linf): the interior
// estimate is a lower bound while the right-hand side is exact, so the test
// can never fail falsely.
RieszThorinReport riesz_thorin_check(const DenseMatrix& T, double theta,
                                     double tau = comparison_tolerance(),
                                     std::uint64_t seed = 0x5eed);

} // namespace kmaj

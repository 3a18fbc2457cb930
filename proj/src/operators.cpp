#include "kmaj/operators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "kmaj/majorization.hpp"

namespace kmaj {

SignedPermutation SignedPermutation::identity(std::size_t n) {
    SignedPermutation p;
    p.dim_in = n;
    p.targets.resize(n);
    for (std::size_t i = 0; i < n; ++i) p.targets[i] = Entry{i, +1};
    return p;
}

bool SignedPermutation::injective() const {
    std::vector<char> used(dim_in, 0);
    for (const auto& e : targets) {
        if (!e) continue;
        if (e->source >= dim_in || used[e->source]) return false;
        used[e->source] = 1;
    }
    return true;
}

bool SignedPermutation::bijective() const {
    if (targets.size() != dim_in || !injective()) return false;
    return std::all_of(targets.begin(), targets.end(),
                       [](const auto& e) { return e.has_value(); });
}

Seq SignedPermutation::apply_to(const Seq& x) const {
    if (x.support_length(0.0) > dim_in)
        throw DimensionMismatch("input support exceeds the operator window");
    std::vector<Scalar> out(targets.size(), Scalar(0));
    for (std::size_t t = 0; t < targets.size(); ++t)
        if (targets[t])
            out[t] = Scalar(targets[t]->sign) * x.at(targets[t]->source);
    return Seq(std::move(out));
}

SignedPermutation SignedPermutation::composed_after(const SignedPermutation& inner) const {
    if (dim_in != inner.dim_out())
        throw DimensionMismatch("signed permutation composition window mismatch");
    SignedPermutation out;
    out.dim_in = inner.dim_in;
    out.targets.resize(targets.size());
    for (std::size_t t = 0; t < targets.size(); ++t) {
        if (!targets[t]) continue;
        const auto& mid = inner.targets[targets[t]->source];
        if (!mid) continue;
        out.targets[t] = Entry{mid->source, targets[t]->sign * mid->sign};
    }
    return out;
}

bool operator==(const SignedPermutation& a, const SignedPermutation& b) {
    if (a.dim_in != b.dim_in || a.targets.size() != b.targets.size()) return false;
    for (std::size_t t = 0; t < a.targets.size(); ++t) {
        const auto &p = a.targets[t], &q = b.targets[t];
        if (p.has_value() != q.has_value()) return false;
        if (p && (p->source != q->source || p->sign != q->sign)) return false;
    }
    return true;
}

namespace {
Seq add_scaled(const Seq& acc, const Seq& inc, const Scalar& w) {
    std::size_t n = std::max(acc.size(), inc.size());
    std::vector<Scalar> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(acc.at(i) + w * inc.at(i));
    return Seq(std::move(out));
}
} // namespace

Seq apply(const ConvexCombo& T, const Seq& x) {
    Seq acc;
    for (const auto& [w, m] : T.terms) acc = add_scaled(acc, m.apply_to(x), w);
    return acc;
}

Seq apply(const OperatorExpr& T, const Seq& x) {
    return std::visit(
        [&](const auto& node) -> Seq {
            using N = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<N, SignedPermutation>) {
                return node.apply_to(x);
            } else if constexpr (std::is_same_v<N, DiagonalMultiplier>) {
                std::vector<Scalar> out;
                out.reserve(node.factors.size());
                for (std::size_t i = 0; i < node.factors.size(); ++i)
                    out.push_back(node.factors[i] * x.at(i));
                return Seq(std::move(out));
            } else if constexpr (std::is_same_v<N, ConvexCombo>) {
                return apply(node, x);
            } else if constexpr (std::is_same_v<N, Truncation>) {
                std::vector<Scalar> out;
                for (std::size_t i = 0; i < node.keep && i < x.size(); ++i)
                    out.push_back(x[i]);
                return Seq(std::move(out));
            } else if constexpr (std::is_same_v<N, DenseMatrix>) {
                if (x.support_length(0.0) > node.cols)
                    throw DimensionMismatch("input support exceeds matrix columns");
                std::vector<Scalar> out(node.rows, Scalar(0));
                for (std::size_t i = 0; i < node.rows; ++i)
                    for (std::size_t j = 0; j < node.cols; ++j)
                        out[i] += node.at(i, j) * x.at(j);
                return Seq(std::move(out));
            } else {
                Seq cur = x;
                for (auto it = node.factors.rbegin(); it != node.factors.rend(); ++it)
                    cur = apply(*it, cur);
                return cur;
            }
        },
        T.node);
}

std::size_t natural_dim(const OperatorExpr& T) {
    return std::visit(
        [&](const auto& node) -> std::size_t {
            using N = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<N, SignedPermutation>) {
                return std::max(node.dim_in, node.dim_out());
            } else if constexpr (std::is_same_v<N, DiagonalMultiplier>) {
                return node.factors.size();
            } else if constexpr (std::is_same_v<N, ConvexCombo>) {
                std::size_t d = 0;
                for (const auto& [w, m] : node.terms)
                    d = std::max({d, m.dim_in, m.dim_out()});
                return d;
            } else if constexpr (std::is_same_v<N, Truncation>) {
                return node.keep;
            } else if constexpr (std::is_same_v<N, DenseMatrix>) {
                return std::max(node.rows, node.cols);
            } else {
                std::size_t d = 0;
                for (const auto& f : node.factors) d = std::max(d, natural_dim(f));
                return d;
            }
        },
        T.node);
}

namespace {
DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols != b.rows) throw DimensionMismatch("matmul shape mismatch");
    DenseMatrix c(a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t k = 0; k < a.cols; ++k) {
            if (a.at(i, k).sign(0.0) == 0) continue;
            for (std::size_t j = 0; j < b.cols; ++j)
                c.at(i, j) += a.at(i, k) * b.at(k, j);
        }
    return c;
}
} // namespace

DenseMatrix to_matrix(const OperatorExpr& T, std::size_t dim) {
    if (dim < natural_dim(T))
        throw DimensionMismatch("requested window smaller than the operator");
    return std::visit(
        [&](const auto& node) -> DenseMatrix {
            using N = std::decay_t<decltype(node)>;
            DenseMatrix m(dim, dim);
            if constexpr (std::is_same_v<N, SignedPermutation>) {
                for (std::size_t t = 0; t < node.targets.size(); ++t)
                    if (node.targets[t])
                        m.at(t, node.targets[t]->source) = Scalar(node.targets[t]->sign);
            } else if constexpr (std::is_same_v<N, DiagonalMultiplier>) {
                for (std::size_t i = 0; i < node.factors.size(); ++i)
                    m.at(i, i) = node.factors[i];
            } else if constexpr (std::is_same_v<N, ConvexCombo>) {
                for (const auto& [w, p] : node.terms) {
                    DenseMatrix pm = to_matrix(OperatorExpr(p), dim);
                    for (std::size_t i = 0; i < dim * dim; ++i) m.a[i] += w * pm.a[i];
                }
            } else if constexpr (std::is_same_v<N, Truncation>) {
                for (std::size_t i = 0; i < node.keep && i < dim; ++i)
                    m.at(i, i) = Scalar(1);
            } else if constexpr (std::is_same_v<N, DenseMatrix>) {
                for (std::size_t i = 0; i < node.rows; ++i)
                    for (std::size_t j = 0; j < node.cols; ++j)
                        m.at(i, j) = node.at(i, j);
            } else {
                m = to_matrix(OperatorExpr(SignedPermutation::identity(dim)), dim);
                for (auto it = node.factors.rbegin(); it != node.factors.rend(); ++it)
                    m = matmul(to_matrix(*it, dim), m);
            }
            return m;
        },
        T.node);
}

Scalar norm_l1(const DenseMatrix& m) {
    Scalar best(0);
    for (std::size_t j = 0; j < m.cols; ++j) {
        Scalar s(0);
        for (std::size_t i = 0; i < m.rows; ++i) s += m.at(i, j).abs();
        if (s > best) best = s;
    }
    return best;
}

Scalar norm_linf(const DenseMatrix& m) {
    Scalar best(0);
    for (std::size_t i = 0; i < m.rows; ++i) {
        Scalar s(0);
        for (std::size_t j = 0; j < m.cols; ++j) s += m.at(i, j).abs();
        if (s > best) best = s;
    }
    return best;
}

Scalar norm_l1(const OperatorExpr& T) {
    return norm_l1(to_matrix(T, std::max<std::size_t>(natural_dim(T), 1)));
}

Scalar norm_linf(const OperatorExpr& T) {
    return norm_linf(to_matrix(T, std::max<std::size_t>(natural_dim(T), 1)));
}

double norm_lq_lower(const DenseMatrix& m, double q, unsigned restarts, unsigned steps,
                     std::uint64_t seed) {
    if (!(q > 1.0)) throw Error("norm_lq_lower needs q > 1");
    const std::size_t rows = m.rows, cols = m.cols;
    if (rows == 0 || cols == 0) return 0.0;
    std::vector<double> a(rows * cols);
    for (std::size_t i = 0; i < rows * cols; ++i) a[i] = m.a[i].to_double();

    const double qd = q / (q - 1.0);
    auto dual_sig = [](const std::vector<double>& v, double p) {
        std::vector<double> out(v.size());
        for (std::size_t i = 0; i < v.size(); ++i)
            out[i] = (v[i] >= 0 ? 1.0 : -1.0) * std::pow(std::fabs(v[i]), p - 1.0);
        return out;
    };
    auto pnorm = [](const std::vector<double>& v, double p) {
        double s = 0.0;
        for (double t : v) s += std::pow(std::fabs(t), p);
        return std::pow(s, 1.0 / p);
    };

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    double best = 0.0;
    for (unsigned r = 0; r < restarts; ++r) {
        std::vector<double> x(cols, 0.0);
        if (r < cols) {
            x[r] = 1.0; // canonical starts are exact for diagonal operators
        } else {
            for (double& t : x) t = gauss(rng);
        }
        double nx = pnorm(x, q);
        if (nx == 0.0) continue;
        for (double& t : x) t /= nx;
        double prev = -1.0;
        for (unsigned it = 0; it < steps; ++it) {
            std::vector<double> y(rows, 0.0);
            for (std::size_t i = 0; i < rows; ++i)
                for (std::size_t j = 0; j < cols; ++j) y[i] += a[i * cols + j] * x[j];
            double ratio = pnorm(y, q);
            best = std::max(best, ratio);
            if (ratio <= prev + 1e-14) break;
            prev = ratio;
            std::vector<double> sy = dual_sig(y, q);
            std::vector<double> z(cols, 0.0);
            for (std::size_t i = 0; i < rows; ++i)
                for (std::size_t j = 0; j < cols; ++j) z[j] += a[i * cols + j] * sy[i];
            std::vector<double> nxt = dual_sig(z, qd);
            double nn = pnorm(nxt, q);
            if (nn == 0.0) break;
            for (std::size_t j = 0; j < cols; ++j) x[j] = nxt[j] / nn;
        }
    }
    return best;
}

double norm_lq_lower(const OperatorExpr& T, double q, unsigned restarts, unsigned steps,
                     std::uint64_t seed) {
    return norm_lq_lower(to_matrix(T, std::max<std::size_t>(natural_dim(T), 1)), q,
                         restarts, steps, seed);
}

std::pair<SignedPermutation, SignedPermutation> build_w_y(const Seq& x) {
    const std::size_t n = x.size();
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return x[b].abs() < x[a].abs();
    });
    SignedPermutation w, y;
    w.dim_in = y.dim_in = n;
    w.targets.resize(n);
    y.targets.resize(n);
    for (std::size_t r = 0; r < n; ++r) {
        int sign = x[idx[r]].sign(0.0) < 0 ? -1 : +1;
        w.targets[r] = SignedPermutation::Entry{idx[r], sign};
        y.targets[idx[r]] = SignedPermutation::Entry{r, sign};
    }
    return {w, y};
}

namespace {

// u cut back to total mass `target` by consuming entries from the tail;
// keeps the vector nonincreasing.
std::vector<Scalar> truncate_mass_back(std::vector<Scalar> u, const Scalar& target) {
    Scalar total(0);
    for (const Scalar& s : u) total += s;
    Scalar excess = total - target;
    if (excess.sign() < 0)
        throw InvariantViolation("mass truncation needs target <= total");
    for (std::size_t i = u.size(); i > 0 && excess.sign() > 0; --i) {
        Scalar cut = std::min(u[i - 1], excess, [](const Scalar& a, const Scalar& b) {
            return a < b;
        });
        u[i - 1] -= cut;
        excess -= cut;
    }
    if (excess.sign() != 0)
        throw InvariantViolation("mass truncation could not reach the target");
    return u;
}

// Doubly stochastic S with S u = v, built as a chain of T-transforms.
// Premise: u, v nonincreasing and v majorized by u with equal totals.
DenseMatrix t_transform_chain(const std::vector<Scalar>& u, const std::vector<Scalar>& v) {
    const std::size_t d = u.size();
    DenseMatrix s(d, d);
    for (std::size_t i = 0; i < d; ++i) s.at(i, i) = Scalar(1);
    std::vector<Scalar> cur = u;
    auto differs = [](const Scalar& a, const Scalar& b) { return !eq_tol(a, b, 1e-14); };
    for (std::size_t guard = 0; guard <= d + 1; ++guard) {
        std::size_t j = d;
        for (std::size_t i = 0; i < d; ++i)
            if (differs(cur[i], v[i])) {
                j = i;
                break;
            }
        if (j == d) return s;
        if (!(cur[j] > v[j]))
            throw InvariantViolation("T-transform chain: head domination lost");
        std::size_t k = d;
        for (std::size_t i = j + 1; i < d; ++i)
            if (differs(cur[i], v[i]) && cur[i] < v[i]) {
                k = i;
                break;
            }
        if (k == d)
            throw InvariantViolation("T-transform chain: no receiving coordinate");
        Scalar give = cur[j] - v[j], take = v[k] - cur[k];
        bool fix_j = !(take < give);
        Scalar delta = fix_j ? give : take;
        Scalar gap = cur[j] - cur[k];
        Scalar lam = Scalar(1) - delta / gap;
        // Mix rows j and k of the accumulated matrix.
        for (std::size_t c = 0; c < d; ++c) {
            Scalar rj = s.at(j, c), rk = s.at(k, c);
            s.at(j, c) = lam * rj + (Scalar(1) - lam) * rk;
            s.at(k, c) = (Scalar(1) - lam) * rj + lam * rk;
        }
        if (fix_j) {
            cur[k] += delta;
            cur[j] = v[j];
        } else {
            cur[j] -= delta;
            cur[k] = v[k];
        }
    }
    throw InvariantViolation("T-transform chain did not terminate");
}

struct Peel {
    Scalar weight;
    std::vector<std::size_t> match; // row -> column
};

// Birkhoff peeling of a doubly stochastic matrix into permutations.
std::vector<Peel> birkhoff_peel(DenseMatrix m) {
    const std::size_t d = m.rows;
    std::vector<Peel> out;
    // Exact entries peel to zero; float entries need a floor for rounding
    // residue.
    auto positive = [&](std::size_t i, std::size_t j) { return m.at(i, j).sign(1e-13) > 0; };

    std::vector<long long> row_match(d, -1), col_match(d, -1);
    auto try_augment = [&](std::size_t row, auto&& self, std::vector<char>& seen) -> bool {
        for (std::size_t j = 0; j < d; ++j) {
            if (!positive(row, j) || seen[j]) continue;
            seen[j] = 1;
            if (col_match[j] < 0 ||
                self(static_cast<std::size_t>(col_match[j]), self, seen)) {
                col_match[j] = static_cast<long long>(row);
                row_match[row] = static_cast<long long>(j);
                return true;
            }
        }
        return false;
    };

    const std::size_t guard = d * d + d + 2;
    for (std::size_t iter = 0; iter < guard; ++iter) {
        bool any = false;
        for (std::size_t i = 0; i < d && !any; ++i)
            for (std::size_t j = 0; j < d && !any; ++j) any = positive(i, j);
        if (!any) return out;

        // Repair the matching incrementally: drop edges that lost support.
        for (std::size_t i = 0; i < d; ++i) {
            if (row_match[i] >= 0 && !positive(i, static_cast<std::size_t>(row_match[i]))) {
                col_match[static_cast<std::size_t>(row_match[i])] = -1;
                row_match[i] = -1;
            }
        }
        for (std::size_t i = 0; i < d; ++i) {
            if (row_match[i] >= 0) continue;
            std::vector<char> seen(d, 0);
            if (!try_augment(i, try_augment, seen))
                throw InvariantViolation("Birkhoff peeling: no perfect matching on support");
        }

        Peel p;
        p.match.resize(d);
        bool first = true;
        Scalar lam(0);
        for (std::size_t i = 0; i < d; ++i) {
            std::size_t j = static_cast<std::size_t>(row_match[i]);
            p.match[i] = j;
            if (first || m.at(i, j) < lam) lam = m.at(i, j);
            first = false;
        }
        p.weight = lam;
        for (std::size_t i = 0; i < d; ++i) m.at(i, p.match[i]) -= lam;
        out.push_back(std::move(p));
    }
    throw InvariantViolation("Birkhoff peeling did not terminate");
}

void push_term(std::vector<std::pair<Scalar, SignedPermutation>>& terms, Scalar w,
               SignedPermutation m) {
    for (auto& [tw, tm] : terms) {
        if (tm == m) {
            tw += w;
            return;
        }
    }
    terms.emplace_back(std::move(w), std::move(m));
}

} // namespace

ConvexCombo hlp_transfer(const Seq& x, const Seq& y) {
    if (!check_hlp(x, y))
        throw PremiseViolated("hlp_transfer needs head-sum domination of y* by x*");
    const std::size_t d = std::max({x.size(), y.size(), std::size_t{1}}) + 1;
    std::vector<Scalar> xpad, ypad;
    for (std::size_t i = 0; i < d; ++i) xpad.push_back(x.at(i));
    for (std::size_t i = 0; i < d; ++i) ypad.push_back(y.at(i));
    Seq xs(xpad), ys(ypad);

    auto [w_x, y_x_unused] = build_w_y(xs);
    auto [w_y_unused, y_y] = build_w_y(ys);
    std::vector<Scalar> u = rearrange(xs).values();
    std::vector<Scalar> v = rearrange(ys).values();

    Scalar v_total(0);
    for (const Scalar& s : v) v_total += s;

    // v is fully majorized by the tail-truncation of u, which is a diagonal
    // shrink of u; a T-transform chain then lands exactly on v.
    std::vector<Scalar> u_cut = truncate_mass_back(u, v_total);
    DenseMatrix s = t_transform_chain(u_cut, v);
    DenseMatrix dmat(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            // Zero columns carry no mass; keeping them at full weight avoids
            // needless sign-split terms in the decomposition.
            Scalar ratio = u[j].sign(0.0) == 0 ? Scalar(1) : u_cut[j] / u[j];
            dmat.at(i, j) = s.at(i, j) * ratio;
        }

    // Complete the doubly substochastic block to a doubly stochastic matrix
    // on a doubled window.
    DenseMatrix hat(2 * d, 2 * d);
    std::vector<Scalar> row_sum(d, Scalar(0)), col_sum(d, Scalar(0));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            hat.at(i, j) = dmat.at(i, j);
            hat.at(d + j, d + i) = dmat.at(i, j);
            row_sum[i] += dmat.at(i, j);
            col_sum[j] += dmat.at(i, j);
        }
    for (std::size_t i = 0; i < d; ++i) {
        hat.at(i, d + i) = Scalar(1) - row_sum[i];
        hat.at(d + i, i) = Scalar(1) - col_sum[i];
        if (hat.at(i, d + i).sign(0.0) < 0 || hat.at(d + i, i).sign(0.0) < 0)
            throw InvariantViolation("transfer block is not substochastic");
    }

    ConvexCombo combo;
    for (const Peel& p : birkhoff_peel(hat)) {
        SignedPermutation base;
        base.dim_in = d;
        base.targets.resize(d);
        std::vector<char> used_source(d, 0);
        bool partial = false;
        for (std::size_t i = 0; i < d; ++i) {
            if (p.match[i] < d) {
                base.targets[i] = SignedPermutation::Entry{p.match[i], +1};
                used_source[p.match[i]] = 1;
            } else {
                partial = true;
            }
        }
        if (!partial) {
            push_term(combo.terms, p.weight, y_y.composed_after(base.composed_after(w_x)));
            continue;
        }
        // Complete unmatched outputs against unused inputs with opposite
        // signs; the pair averages back to the partial map.
        std::vector<std::size_t> free_in;
        for (std::size_t j = 0; j < d; ++j)
            if (!used_source[j]) free_in.push_back(j);
        SignedPermutation plus = base, minus = base;
        std::size_t next = 0;
        for (std::size_t i = 0; i < d; ++i) {
            if (base.targets[i]) continue;
            std::size_t src = free_in.at(next++);
            plus.targets[i] = SignedPermutation::Entry{src, +1};
            minus.targets[i] = SignedPermutation::Entry{src, -1};
        }
        Scalar half = p.weight / Scalar(2);
        push_term(combo.terms, half, y_y.composed_after(plus.composed_after(w_x)));
        push_term(combo.terms, half, y_y.composed_after(minus.composed_after(w_x)));
    }

    // Contract checks: the weights are a convex combination and the
    // transport is exact.
    Scalar wsum(0);
    for (const auto& [wt, m] : combo.terms) {
        if (wt.sign(0.0) <= 0) throw InvariantViolation("transfer weight not positive");
        if (!m.bijective()) throw InvariantViolation("transfer factor is not a bijection");
        wsum += wt;
    }
    if (!eq_tol(wsum, Scalar(1)))
        throw InvariantViolation("transfer weights do not sum to 1");
    Seq image = apply(combo, xs);
    for (std::size_t i = 0; i < d; ++i)
        if (!eq_tol(image.at(i), ys.at(i)))
            throw InvariantViolation("transfer does not map x to y");
    return combo;
}

RieszThorinReport riesz_thorin_check(const DenseMatrix& T, double theta, double tau,
                                     std::uint64_t seed) {
    if (!(theta > 0.0 && theta < 1.0)) throw Error("riesz_thorin_check needs 0 < theta < 1");
    double p_theta = 1.0 / (1.0 - theta);
    double interior = norm_lq_lower(T, p_theta, 32, 500, seed);
    double bound = std::pow(norm_l1(T).to_double(), 1.0 - theta) *
                   std::pow(norm_linf(T).to_double(), theta);
    return {interior <= bound + tau, bound - interior, interior, bound, p_theta};
}

} // namespace kmaj

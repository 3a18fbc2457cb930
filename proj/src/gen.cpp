#include "kmaj/gen.hpp"

#include <algorithm>
#include <numeric>

#include "kmaj/kfunc.hpp"
#include "kmaj/procp.hpp"

namespace kmaj {

Seq gen_seq_exact(Rng& rng, std::size_t max_len, bool allow_negative) {
    std::size_t n = 1 + rng.below(max_len);
    static const long long dens[] = {1, 2, 3, 4, 8, 16};
    long long den = dens[rng.below(6)];
    std::vector<Scalar> v;
    v.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Scalar s = rng.rational(4 * den, den);
        if (allow_negative && rng.below(2)) s = -s;
        v.push_back(s);
    }
    return Seq(std::move(v));
}

SignedPermutation gen_signed_permutation(Rng& rng, std::size_t dim) {
    std::vector<std::size_t> perm(dim);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng.eng);
    SignedPermutation p;
    p.dim_in = dim;
    p.targets.resize(dim);
    for (std::size_t t = 0; t < dim; ++t)
        p.targets[t] = SignedPermutation::Entry{perm[t], rng.below(2) ? -1 : +1};
    return p;
}

OperatorExpr gen_contraction(Rng& rng, std::size_t dim, unsigned depth) {
    auto one = [&]() -> OperatorExpr {
        switch (rng.below(4)) {
        case 0: return OperatorExpr(gen_signed_permutation(rng, dim));
        case 1: {
            // Convex combination of signed permutations with dyadic weights.
            std::size_t terms = 1 + rng.below(3);
            ConvexCombo combo;
            long long den = 8;
            std::vector<long long> cuts{0, den};
            for (std::size_t i = 0; i + 1 < terms; ++i)
                cuts.push_back(1 + static_cast<long long>(rng.below(den - 1)));
            std::sort(cuts.begin(), cuts.end());
            for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
                long long w = cuts[i + 1] - cuts[i];
                if (w == 0) continue;
                combo.terms.emplace_back(Scalar::ratio(w, den),
                                         gen_signed_permutation(rng, dim));
            }
            return OperatorExpr(std::move(combo));
        }
        case 2: {
            DiagonalMultiplier diag;
            for (std::size_t i = 0; i < dim; ++i) {
                Scalar f = rng.rational(8, 8);
                if (rng.below(2)) f = -f;
                diag.factors.push_back(f);
            }
            return OperatorExpr(std::move(diag));
        }
        default: return OperatorExpr(Truncation{1 + rng.below(dim)});
        }
    };
    Composition comp;
    unsigned d = 1 + rng.below(depth);
    for (unsigned i = 0; i < d; ++i) comp.factors.push_back(one());
    return OperatorExpr(std::move(comp));
}

std::pair<Seq, Seq> gen_hlp_pair(Rng& rng, std::size_t max_len) {
    Seq x = gen_seq_exact(rng, max_len, true);
    Seq rx = rearrange(x);
    // Sample y* under the running head constraint, then scramble it.
    std::vector<Scalar> ystar;
    Scalar head_x(0), head_y(0), prev(-1);
    for (std::size_t i = 0; i < rx.size(); ++i) {
        head_x += rx[i];
        Scalar room = head_x - head_y;
        if (prev >= Scalar(0) && prev < room) room = prev;
        // A random rational fraction of the available room.
        Scalar v = room * Scalar::ratio(static_cast<long long>(rng.below(9)), 8);
        ystar.push_back(v);
        head_y += v;
        prev = v;
    }
    SignedPermutation scramble = gen_signed_permutation(rng, ystar.size());
    Seq y = scramble.apply_to(Seq(std::move(ystar)));
    return {x, y};
}

std::pair<Seq, Seq> gen_k_dominated_pair(Rng& rng, std::size_t dim, unsigned depth) {
    Seq x = gen_seq_exact(rng, dim, true);
    while (x.is_zero(0.0)) x = gen_seq_exact(rng, dim, true);
    OperatorExpr t = gen_contraction(rng, std::max<std::size_t>(x.size(), 1), depth);
    return {x, apply(t, x)};
}

namespace {

// Pairs from K-dominated sequences: the head inequality then holds at every
// t, so the runs terminate through the unbounded A-run.
FgPair contraction_pair(Rng& rng, const Scalar& q, std::size_t max_support) {
    // Rational constants at least C(q); exact runs need them rational for
    // integer q.
    Scalar scale;
    auto qi = q.is_exact() ? q.as_integer() : std::nullopt;
    if (qi && *qi == 2)
        scale = Scalar(3);
    else if (qi && *qi == 3)
        scale = Scalar::ratio(13, 5);
    else
        scale = Scalar::real(c_q_bound(q.to_double()));
    Scalar eps = Scalar::ratio(1, 1024);

    auto [x, y] = gen_k_dominated_pair(rng, std::max<std::size_t>(max_support / 2, 2), 3);
    FgPair fg;
    fg.g = step_of_rearranged(y);
    fg.f = step_scale(step_of_rearranged(x), scale * (Scalar(1) + eps));
    return fg;
}

// Pairs where g overtakes f on a middle stretch, so the head inequality
// fails on an interior window and the interval machinery has to hand over
// to the tail inequality there: exercises the bounded A-run outcome.  The
// tail length is solved from the exact window in which the leading tail
// run closes inside the first head run and reopens before the head gap
// shuts.
std::optional<FgPair> bumped_pair(Rng& rng, const Scalar& q, std::size_t max_support) {
    auto qi = q.is_exact() ? q.as_integer() : std::nullopt;
    if (!qi || *qi < 1) return std::nullopt;
    unsigned qq = static_cast<unsigned>(*qi);

    long long head_len = 1 + static_cast<long long>(rng.below(3));
    long long bump_len = 2 + static_cast<long long>(rng.below(4));
    Scalar h(4 + static_cast<long long>(rng.below(5)));
    Scalar theta = Scalar::ratio(2 + static_cast<long long>(rng.below(2)), 4);
    Scalar g_head = theta * h;
    Scalar m(1 + static_cast<long long>(rng.below(2)));
    Scalar bump = m + Scalar::ratio(1 + static_cast<long long>(rng.below(4)), 2);
    if (bump > g_head) bump = g_head;
    if (!(bump > m)) return std::nullopt;
    Scalar g_tail = rng.below(2) ? Scalar(0) : Scalar::ratio(1, 2);

    Scalar surplus = Scalar(head_len) * (h - g_head);     // zone-1 head margin
    Scalar rate = bump - m;                               // zone-2 head deficit per cell
    Scalar cross = surplus / rate;                        // where the head gap closes
    if (!(cross < Scalar(bump_len))) return std::nullopt;
    Scalar rate_q = bump.pow_int(qq) - m.pow_int(qq);     // zone-2 q-power deficit
    Scalar r3 = Scalar(1) - g_tail.pow_int(qq);           // zone-3 q-power margin

    // Early closure of the leading tail run, reopening before the head gap
    // closes, and the head gap recovering inside the tail.
    Scalar lower = (Scalar(bump_len) - cross) * rate_q / r3;
    Scalar reopen = (rate * Scalar(bump_len) - surplus) / (Scalar(1) - g_tail);
    if (reopen > lower) lower = reopen;
    Scalar upper = Scalar(bump_len) * rate_q / r3;
    long long lo = floor_to_int(lower) + 1;
    long long hi = ceil_to_int(upper) - 1;
    hi = std::min(hi, static_cast<long long>(max_support) - head_len - bump_len);
    if (lo < 1 || lo > hi) return std::nullopt;
    long long tail_len = lo + static_cast<long long>(rng.below(
                                  static_cast<std::uint64_t>(hi - lo + 1)));

    std::vector<Scalar> fc, gc;
    for (long long i = 0; i < head_len; ++i) fc.push_back(h), gc.push_back(g_head);
    for (long long i = 0; i < bump_len; ++i) fc.push_back(m), gc.push_back(bump);
    for (long long i = 0; i < tail_len; ++i) fc.push_back(Scalar(1)), gc.push_back(g_tail);
    FgPair fg{StepFn(std::move(fc)), StepFn(std::move(gc))};
    try {
        compute_regions(fg.f, fg.g, q);
    } catch (const Error&) {
        return std::nullopt;
    }
    return fg;
}

} // namespace

FgPair gen_procp_pair(Rng& rng, const Scalar& q, std::size_t max_support) {
    if (rng.below(2) == 0) {
        for (int attempt = 0; attempt < 16; ++attempt) {
            auto fg = bumped_pair(rng, q, max_support);
            if (fg) return *fg;
        }
    }
    return contraction_pair(rng, q, max_support);
}

} // namespace kmaj

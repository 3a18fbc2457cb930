#include "kmaj/procp.hpp"

#include <algorithm>
#include <cmath>

#include "kmaj/kfunc.hpp"
#include "kmaj/spaces.hpp"

namespace kmaj {

namespace {

long long snap_floor(const Scalar& s) {
    if (s.is_exact()) return floor_to_int(s);
    double v = s.to_double();
    double r = std::round(v);
    if (std::fabs(v - r) <= comparison_tolerance() * std::max(1.0, std::fabs(v)))
        return static_cast<long long>(r);
    return static_cast<long long>(std::floor(v));
}

long long snap_ceil(const Scalar& s) {
    if (s.is_exact()) return ceil_to_int(s);
    double v = s.to_double();
    double r = std::round(v);
    if (std::fabs(v - r) <= comparison_tolerance() * std::max(1.0, std::fabs(v)))
        return static_cast<long long>(r);
    return static_cast<long long>(std::ceil(v));
}

[[noreturn]] void fail(std::size_t step, const std::string& clause) {
    throw InvariantViolation("step " + std::to_string(step) + ": " + clause);
}

// All cells of the mask in left-to-right order; validates the [int, int)
// piece shape.
std::vector<std::size_t> mask_cell_indices(const IntervalSet& mask, std::size_t cells) {
    std::vector<std::size_t> out;
    for (const Interval& p : mask) {
        if (p.lo_open || !p.lo.is_integer() || (p.hi && (!p.hi->is_integer() || !p.hi_open)))
            throw Error("mask pieces must be [int, int) or [int, inf), got " + p.str());
        long long lo = *p.lo.as_integer();
        long long hi = p.hi ? *p.hi->as_integer() : static_cast<long long>(cells);
        for (long long k = lo; k < hi && k < static_cast<long long>(cells); ++k)
            out.push_back(static_cast<std::size_t>(k));
    }
    return out;
}

} // namespace

std::string outcome_name(StepOutcome o) {
    switch (o) {
    case StepOutcome::O1: return "O-1";
    case StepOutcome::O2: return "O-2";
    case StepOutcome::O3: return "O-3";
    }
    return "?";
}

ABRegions compute_regions(const StepFn& f, const StepFn& g, const Scalar& q) {
    if (!f.nonnegative() || !g.nonnegative())
        throw Error("compute_regions needs nonnegative step functions");
    if (!f.nonincreasing() || !g.nonincreasing())
        throw Error("compute_regions needs nonincreasing step functions");
    ABRegions r;
    r.f = f;
    r.g = g;
    r.q = q;
    r.head_gap = PiecewiseAffine::head_integral(step_sub(f, g));
    r.tail_gap = PiecewiseAffine::tail_integral(step_sub(step_power(f, q), step_power(g, q)));
    r.A = r.head_gap.region_positive();
    r.B = r.tail_gap.region_positive();
    if (!r.B.contains(Scalar(0)))
        throw PremiseViolated("tail inequality fails at t = 0 (0 not in B)");
    IntervalSet gap = r.A.unite(r.B).complement_in_half_line();
    if (!gap.empty())
        throw PremiseViolated("A and B do not cover [0, inf); witness t = " +
                              gap.representative(0).str());
    return r;
}

ClaimReport verify_claim_a(const ABRegions& regions, const Scalar& a,
                           const std::optional<Scalar>& a_tilde) {
    long long a_club = snap_floor(a);
    Scalar base = regions.head_gap.eval(Scalar(a_club));
    long long n_cells = static_cast<long long>(regions.head_gap.cells());

    if (!le_tol(regions.g.value_at(Scalar(a_club)), regions.f.value_at(Scalar(a_club))))
        return {false, "g(a_club) > f(a_club)"};

    std::optional<Scalar> upper;
    if (a_tilde) {
        upper = std::max(*a_tilde, Scalar(a_club + 1),
                         [](const Scalar& p, const Scalar& r) { return p < r; });
    }
    std::vector<Scalar> pts;
    long long last_int = upper ? std::min(snap_floor(*upper), n_cells + 1) : n_cells + 1;
    for (long long k = a_club; k <= last_int; ++k) {
        pts.push_back(Scalar(k));
        if (k < last_int) pts.push_back(Scalar(k) + Scalar::ratio(1, 2));
    }
    if (upper && *upper > Scalar(last_int)) pts.push_back(*upper);
    for (const Scalar& t : pts) {
        if (!le_tol(base, regions.head_gap.eval(t)))
            return {false, "head-integral gap negative at t = " + t.str()};
    }
    return {true, ""};
}

ClaimReport verify_claim_b(const ABRegions& regions, const Scalar& beta, const Scalar& b) {
    if (!(beta < b)) return {false, "needs beta < b"};
    long long b_diamond = snap_ceil(b);
    Scalar base = regions.tail_gap.eval(Scalar(b_diamond));
    std::vector<Scalar> pts{beta, b};
    for (long long k = snap_ceil(beta); k <= b_diamond; ++k) {
        pts.push_back(Scalar(k));
        if (k < b_diamond) pts.push_back(Scalar(k) + Scalar::ratio(1, 2));
    }
    for (const Scalar& t : pts) {
        if (t > Scalar(b_diamond)) continue;
        if (!le_tol(base, regions.tail_gap.eval(t)))
            return {false, "tail-integral gap negative at t = " + t.str()};
    }
    return {true, ""};
}

namespace {

void check_family_order(const std::vector<std::optional<Interval>>& family,
                        const char* name) {
    const Interval* prev = nullptr;
    for (const auto& p : family) {
        if (!p) continue;
        if (prev) {
            if (!prev->hi || !(*prev->hi <= p->lo))
                throw InvariantViolation(std::string(name) + " family is not ordered");
        }
        prev = &*p;
    }
}

void check_masked_inequalities(const ABRegions& r, const PStep& st) {
    if (st.set_A) {
        StepFn masked = step_mask(step_sub(r.f, r.g), IntervalSet::single(*st.set_A));
        auto bad = PiecewiseAffine::head_integral(masked).negative_witness();
        if (bad) fail(st.n, "masked head inequality fails at t = " + bad->str());
    }
    if (st.set_B) {
        StepFn masked = step_mask(step_sub(step_power(r.f, r.q), step_power(r.g, r.q)),
                                  IntervalSet::single(*st.set_B));
        auto bad = PiecewiseAffine::tail_integral(masked).negative_witness();
        if (bad) fail(st.n, "masked tail inequality fails at t = " + bad->str());
    }
}

} // namespace

PDecomposition run_procedure_p(const StepFn& f, const StepFn& g, const Scalar& q) {
    PDecomposition out;
    out.regions = compute_regions(f, g, q);
    const ABRegions& r = out.regions;

    long long b_club = 0;
    const std::size_t cap = std::max(f.cell_count(), g.cell_count()) + 2;
    bool done = false;
    for (std::size_t n = 1; !done; ++n) {
        if (n > cap) throw InvariantViolation("termination guard exceeded");
        PStep st;
        st.n = n;
        st.b_club = b_club;
        Scalar bc(b_club);
        if (!r.B.contains(bc) || r.A.contains(bc)) fail(n, "b_club not in B \\ A");

        Interval run_b = *r.B.piece_containing(bc);
        if (run_b.unbounded()) {
            st.outcome = StepOutcome::O2;
            st.set_B = Interval::ray(bc, false);
            out.steps.push_back(st);
            check_masked_inequalities(r, out.steps.back());
            done = true;
            break;
        }

        Scalar b_n = *run_b.hi;
        st.b_point = b_n;
        long long b_diamond = snap_ceil(b_n);
        st.b_diamond = b_diamond;
        st.set_B = Interval::closed_open(bc, Scalar(b_diamond));
        ClaimReport cb = verify_claim_b(r, bc, b_n);
        if (!cb.holds) fail(n, "B-run claim: " + cb.detail);

        auto run_a = r.A.piece_containing(b_n);
        if (!run_a) fail(n, "boundary of B is not interior to A");
        Scalar a_n = run_a->lo;
        st.a_point = a_n;
        if (bc > a_n) fail(n, "b_club exceeds a_n");
        long long a_club = snap_floor(a_n);
        st.a_club = a_club;
        if (b_club > a_club) fail(n, "a_club below b_club");
        std::optional<Scalar> a_tilde =
            run_a->hi ? std::optional<Scalar>(*run_a->hi) : std::nullopt;
        st.a_tilde = a_tilde;
        ClaimReport ca = verify_claim_a(r, a_n, a_tilde);
        if (!ca.holds) fail(n, "A-run claim: " + ca.detail);

        if (!a_tilde) {
            st.outcome = StepOutcome::O3;
            st.set_A = Interval::ray(Scalar(a_club), false);
            out.steps.push_back(st);
            check_masked_inequalities(r, out.steps.back());
            done = true;
            break;
        }

        st.outcome = StepOutcome::O1;
        Scalar reach = std::max(*a_tilde, Scalar(a_club + 1),
                                [](const Scalar& p, const Scalar& s) { return p < s; });
        long long a_diamond = snap_floor(reach);
        st.a_diamond = a_diamond;
        if (a_club + 1 > a_diamond) fail(n, "a_diamond below a_club + 1");
        if (b_diamond > a_diamond) fail(n, "b_diamond exceeds a_diamond");
        st.set_A = Interval::closed_open(Scalar(a_club), Scalar(a_diamond));
        st.set_Omega = Interval::closed_open(Scalar(a_club), Scalar(a_club + 1));
        st.set_Gamma = Interval::closed_open(Scalar(a_diamond), Scalar(a_diamond + 1));
        if (!le_tol(g.value_at(Scalar(a_diamond)), f.value_at(Scalar(a_club))))
            fail(n, "g on Gamma exceeds f on Omega");

        Scalar next_plus(a_diamond + 1), next_same(a_diamond);
        long long b_next;
        if (r.B.contains(next_plus) && !r.A.contains(next_plus)) {
            b_next = a_diamond + 1;
        } else if (r.B.contains(next_same) && !r.A.contains(next_same)) {
            b_next = a_diamond;
        } else {
            fail(n, "neither a_diamond nor a_diamond + 1 lies in B \\ A");
        }
        st.b_club_next = b_next;
        if (b_next < b_club + 1) fail(n, "successor b_club did not grow");
        if (b_diamond > b_next) fail(n, "b_diamond exceeds successor b_club");

        // The step's sets tile [b_club, b_next) and stay inside
        // [b_club, b_next + 1).
        IntervalSet tile = IntervalSet::of({*st.set_A, *st.set_B, *st.set_Omega, *st.set_Gamma});
        IntervalSet lower(IntervalSet::single(Interval::closed_open(bc, Scalar(b_next))));
        if (!lower.intersect(tile.complement_in_half_line()).empty())
            fail(n, "step sets do not cover [b_club, next b_club)");
        IntervalSet upper(IntervalSet::single(Interval::closed_open(bc, Scalar(b_next + 1))));
        if (!tile.intersect(upper.complement_in_half_line()).empty())
            fail(n, "step sets leak outside [b_club, next b_club + 1)");

        out.steps.push_back(st);
        check_masked_inequalities(r, out.steps.back());
        b_club = b_next;
    }

    std::vector<std::optional<Interval>> fam_a, fam_b, fam_o, fam_g;
    std::vector<Interval> all_a, all_b, all_o, all_g, covering;
    for (const PStep& st : out.steps) {
        fam_a.push_back(st.set_A);
        fam_b.push_back(st.set_B);
        fam_o.push_back(st.set_Omega);
        fam_g.push_back(st.set_Gamma);
        if (st.set_A) all_a.push_back(*st.set_A);
        if (st.set_B) all_b.push_back(*st.set_B);
        if (st.set_Omega) all_o.push_back(*st.set_Omega);
        if (st.set_Gamma) all_g.push_back(*st.set_Gamma);
        if (st.set_Omega.has_value() != st.set_Gamma.has_value())
            fail(st.n, "Omega and Gamma are not jointly empty or non-empty");
        if (st.set_Omega && st.set_Gamma) {
            if (!(*st.set_Omega->hi <= st.set_Gamma->lo)) fail(st.n, "Omega not left of Gamma");
        }
    }
    check_family_order(fam_a, "A");
    check_family_order(fam_b, "B");
    check_family_order(fam_o, "Omega");
    check_family_order(fam_g, "Gamma");

    out.union_A = IntervalSet::of(all_a);
    out.union_B = IntervalSet::of(all_b);
    out.union_Omega = IntervalSet::of(all_o);
    out.union_Gamma = IntervalSet::of(all_g);
    if (!out.union_A.unite(out.union_B).unite(out.union_Gamma).covers_half_line())
        throw InvariantViolation("A_n, B_n, Gamma_n do not cover [0, inf)");
    return out;
}

SplitFunctions split_functions(const StepFn& f, const StepFn& g,
                               const PDecomposition& decomp) {
    SplitFunctions s;
    s.phi1 = step_mask(f, decomp.union_A);
    s.phi2 = step_mask(f, decomp.union_B);
    s.phi3 = step_mask(f, decomp.union_Omega);
    s.psi1 = step_mask(g, decomp.union_A);
    s.psi2 = step_mask(g, decomp.union_B);
    s.psi3 = step_mask(g, decomp.union_Gamma);
    return s;
}

StepFn compress_rearrange(const StepFn& h, const IntervalSet& mask) {
    if (!h.nonincreasing() || !h.nonnegative())
        throw Error("compress_rearrange needs a nonnegative nonincreasing function");
    std::vector<Scalar> out;
    for (std::size_t k : mask_cell_indices(mask, h.cell_count())) out.push_back(h.cell(k));
    return StepFn(std::move(out));
}

PhiPsiReport verify_phis_psis(const SplitFunctions& split, const Scalar& q) {
    PhiPsiReport rep;
    StepFn phi1 = step_rearrange(split.phi1), psi1 = step_rearrange(split.psi1);
    rep.head_ok =
        !PiecewiseAffine::head_integral(step_sub(phi1, psi1)).negative_witness().has_value();

    StepFn phi2q = step_power(step_rearrange(split.phi2), q);
    StepFn psi2q = step_power(step_rearrange(split.psi2), q);
    rep.tail_ok =
        !PiecewiseAffine::tail_integral(step_sub(phi2q, psi2q)).negative_witness().has_value();

    StepFn phi3 = step_rearrange(split.phi3), psi3 = step_rearrange(split.psi3);
    rep.pointwise_ok = true;
    std::size_t n = std::max(phi3.cell_count(), psi3.cell_count());
    for (std::size_t k = 0; k < n; ++k)
        if (!le_tol(psi3.cell(k), phi3.cell(k))) rep.pointwise_ok = false;
    return rep;
}

Scalar c_q_scalar(const Scalar& q) {
    if (q.is_exact() && q.as_integer() && *q.as_integer() == 2) return Scalar(3);
    return Scalar::real(c_q_bound(q.to_double()));
}

PipelineResult theorem_main_pipeline(const Seq& x, const Seq& y, const Scalar& q,
                                     const Scalar& c1, const Scalar& c2,
                                     const Scalar& eps,
                                     const std::vector<SpaceSpec>& spaces) {
    if (c1 < Scalar(1) || c2 < Scalar(1)) throw Error("pipeline needs C1, C2 >= 1");
    if (eps.sign(0.0) <= 0) throw Error("pipeline needs eps > 0");
    PipelineResult res;
    Scalar cq = c_q_scalar(q);
    res.c3 = (Scalar(1) + eps) * cq * c2.pow_int(4) * (c1 + Scalar(2));

    auto check_spaces = [&]() {
        bool all = true;
        for (const SpaceSpec& e : spaces) {
            SpaceCheck chk;
            chk.space = e;
            chk.norm_x = space_norm(e, x);
            chk.norm_y = space_norm(e, y);
            chk.ok = le_tol(Scalar::real(chk.norm_y),
                            Scalar::real(res.c3.to_double() * chk.norm_x));
            all = all && chk.ok;
            res.space_checks.push_back(chk);
        }
        return all;
    };

    if (y.is_zero(0.0)) {
        res.trivial = true;
        res.bound_holds = check_spaces();
        return res;
    }

    // Exact runs need an integral q with a rational constant; anything else
    // drops the whole chain to float mode.
    bool exact_run = cq.is_exact() && eps.is_exact() && q.is_exact() &&
                     q.as_integer().has_value() && x.all_exact() && y.all_exact();
    Seq xs = exact_run ? x : seq_to_float(x);
    Seq ys = exact_run ? y : seq_to_float(y);
    StepFn g = step_of_rearranged(ys);
    StepFn f = step_scale(step_of_rearranged(xs), cq * (Scalar(1) + eps));
    res.decomposition = run_procedure_p(f, g, q);
    SplitFunctions split = split_functions(f, g, *res.decomposition);
    PhiPsiReport rep = verify_phis_psis(split, q);
    if (!rep.holds())
        throw InvariantViolation("phi/psi rearrangement inequalities failed");
    res.bound_holds = check_spaces();
    return res;
}

} // namespace kmaj

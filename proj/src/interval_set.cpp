#include "kmaj/interval_set.hpp"

#include <algorithm>
#include <sstream>

namespace kmaj {

Interval Interval::closed_open(Scalar lo, Scalar hi) {
    return Interval{std::move(lo), false, std::move(hi), true};
}
Interval Interval::open(Scalar lo, Scalar hi) {
    return Interval{std::move(lo), true, std::move(hi), true};
}
Interval Interval::ray(Scalar lo, bool lo_open) {
    return Interval{std::move(lo), lo_open, std::nullopt, true};
}
Interval Interval::point(Scalar a) { return Interval{a, false, a, false}; }

namespace {
bool is_empty(const Interval& p) {
    if (!p.hi) return false;
    int c = Scalar::cmp(p.lo, *p.hi);
    if (c > 0) return true;
    if (c == 0) return p.lo_open || p.hi_open;
    return false;
}

// -1 / 0 / +1 comparison of right endpoints, a closed endpoint reaching
// further than an open one at the same value.
int cmp_end(const Interval& a, const Interval& b) {
    if (!a.hi && !b.hi) return 0;
    if (!a.hi) return 1;
    if (!b.hi) return -1;
    int c = Scalar::cmp(*a.hi, *b.hi);
    if (c != 0) return c;
    if (a.hi_open == b.hi_open) return 0;
    return a.hi_open ? -1 : 1;
}

// Does `b` overlap or touch `a` on the right (so their union is an interval)?
bool joins(const Interval& a, const Interval& b) {
    if (!a.hi) return true;
    int c = Scalar::cmp(b.lo, *a.hi);
    if (c < 0) return true;
    if (c > 0) return false;
    return !(a.hi_open && b.lo_open);
}
} // namespace

bool Interval::contains(const Scalar& t) const {
    int cl = Scalar::cmp(t, lo);
    if (cl < 0 || (cl == 0 && lo_open)) return false;
    if (!hi) return true;
    int ch = Scalar::cmp(t, *hi);
    if (ch > 0 || (ch == 0 && hi_open)) return false;
    return true;
}

std::string Interval::str() const {
    std::ostringstream os;
    os << (lo_open ? '(' : '[') << lo << ", ";
    if (hi)
        os << *hi << (hi_open ? ')' : ']');
    else
        os << "inf)";
    return os.str();
}

IntervalSet IntervalSet::of(std::vector<Interval> pieces) {
    std::vector<Interval> v;
    for (auto& p : pieces)
        if (!is_empty(p)) v.push_back(std::move(p));
    std::sort(v.begin(), v.end(), [](const Interval& a, const Interval& b) {
        int c = Scalar::cmp(a.lo, b.lo);
        if (c != 0) return c < 0;
        return !a.lo_open && b.lo_open;
    });
    IntervalSet out;
    for (auto& p : v) {
        if (!out.iv_.empty() && joins(out.iv_.back(), p)) {
            Interval& cur = out.iv_.back();
            if (cmp_end(cur, p) < 0) {
                cur.hi = p.hi;
                cur.hi_open = p.hi_open;
            }
        } else {
            out.iv_.push_back(std::move(p));
        }
    }
    return out;
}

IntervalSet IntervalSet::half_line() { return single(Interval::ray(Scalar(0), false)); }

bool IntervalSet::contains(const Scalar& t) const {
    return piece_containing(t).has_value();
}

std::optional<Interval> IntervalSet::piece_containing(const Scalar& t) const {
    for (const Interval& p : iv_) {
        if (p.contains(t)) return p;
        if (Scalar::cmp(t, p.lo) < 0) break;
    }
    return std::nullopt;
}

IntervalSet IntervalSet::unite(const IntervalSet& other) const {
    std::vector<Interval> all(iv_);
    all.insert(all.end(), other.iv_.begin(), other.iv_.end());
    return of(std::move(all));
}

IntervalSet IntervalSet::intersect(const IntervalSet& other) const {
    std::vector<Interval> out;
    for (const Interval& a : iv_) {
        for (const Interval& b : other.iv_) {
            Interval r = a;
            int cl = Scalar::cmp(b.lo, a.lo);
            if (cl > 0 || (cl == 0 && b.lo_open)) {
                r.lo = b.lo;
                r.lo_open = b.lo_open;
            }
            if (cmp_end(b, a) < 0) {
                r.hi = b.hi;
                r.hi_open = b.hi_open;
            }
            if (!is_empty(r)) out.push_back(std::move(r));
        }
    }
    return of(std::move(out));
}

IntervalSet IntervalSet::complement_in_half_line() const {
    std::vector<Interval> out;
    Scalar cursor(0);
    bool cursor_open = false;
    for (const Interval& p : iv_) {
        Interval gap{cursor, cursor_open, p.lo, !p.lo_open};
        if (!is_empty(gap)) out.push_back(std::move(gap));
        if (!p.hi) return of(std::move(out));
        cursor = *p.hi;
        cursor_open = !p.hi_open;
    }
    out.push_back(Interval::ray(cursor, cursor_open));
    return of(std::move(out));
}

bool IntervalSet::covers_half_line() const {
    return iv_.size() == 1 && !iv_[0].hi && !iv_[0].lo_open &&
           Scalar::cmp(iv_[0].lo, Scalar(0)) == 0;
}

Scalar IntervalSet::representative(std::size_t i) const {
    const Interval& p = iv_.at(i);
    if (!p.lo_open) return p.lo;
    if (!p.hi) return p.lo + Scalar(1);
    return (p.lo + *p.hi) / Scalar(2);
}

bool operator==(const Interval& p, const Interval& q) {
    if (p.lo != q.lo || p.lo_open != q.lo_open) return false;
    if (p.hi.has_value() != q.hi.has_value()) return false;
    if (p.hi && (*p.hi != *q.hi || p.hi_open != q.hi_open)) return false;
    return true;
}

bool operator==(const IntervalSet& a, const IntervalSet& b) {
    if (a.iv_.size() != b.iv_.size()) return false;
    for (std::size_t i = 0; i < a.iv_.size(); ++i)
        if (!(a.iv_[i] == b.iv_[i])) return false;
    return true;
}

std::string IntervalSet::str() const {
    if (iv_.empty()) return "{}";
    std::ostringstream os;
    for (std::size_t i = 0; i < iv_.size(); ++i) {
        if (i) os << " u ";
        os << iv_[i].str();
    }
    return os.str();
}

} // namespace kmaj

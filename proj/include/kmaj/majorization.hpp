#pragma once

#include <optional>
#include <string>

#include "kmaj/seq.hpp"

namespace kmaj {

struct PremiseCheck {
    bool holds = false;
    // 1-based N of the first failing head comparison, when that is what fails.
    std::optional<std::size_t> first_violation;
    std::string detail; // "head" | "total" | ""
};

// Head q-power-sum domination of u by v at every N, with equal totals.
PremiseCheck check_sq_premise(const Seq& u, const Seq& v, const Scalar& q);

// Given the premise, tail q-power sums of v are dominated by those of u at
// every M.  Head domination with equal totals forces this, so the check
// must return true whenever the premise holds.
bool head_to_tail(const Seq& u, const Seq& v, const Scalar& q);

// Plain head-sum domination of rearrangements: sum_{n<=m} y_n* <= sum x_n*.
bool check_hlp(const Seq& x, const Seq& y);

// Tail q-power-sum domination of y by u at every N.
bool check_tail_dom(const Seq& u, const Seq& y, const Scalar& q);

struct CapCompletion {
    Seq z;
    std::size_t index; // 0-based position that was raised
    bool downgraded;   // exact inputs whose q-th root forced float mode
};

// Raises |y| at one maximal entry so that the total q-power sum matches u's;
// the result head-dominates u with equal totals.
CapCompletion cap_completion(const Seq& u, const Seq& y, const Scalar& q);

} // namespace kmaj

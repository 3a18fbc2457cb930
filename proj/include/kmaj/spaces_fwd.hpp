#pragma once

#include <string>

namespace kmaj {

// A concrete symmetric sequence space with an exactly computable norm.
struct SpaceSpec {
    enum class Kind { Lp, WeakLp, WeakLpSeparable };
    Kind kind = Kind::Lp;
    double p = 1.0;

    static SpaceSpec lp(double p);
    static SpaceSpec weak_lp(double p);
    static SpaceSpec weak_lp_separable(double p);
    std::string name() const;
};

} // namespace kmaj

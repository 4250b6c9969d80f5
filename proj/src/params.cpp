#include "treeline/params.hpp"

#include <cmath>
#include <string>

#include "treeline/errors.hpp"

namespace treeline {

namespace {

std::string describe(double p) { return "p = " + std::to_string(p); }

}  // namespace

ProbabilityParams::ProbabilityParams(double p_, std::optional<int> d_) : p(p_), d(d_) {
    require_p_open_unit(p);
    if (d && *d < 3) throw DomainError("tree degree d must be >= 3, got " + std::to_string(*d));
}

void require_p_open_unit(double p) {
    if (!(p > 0.0 && p < 1.0)) throw DomainError(describe(p) + " outside (0, 1)");
}

void require_p_half_closed(double p) {
    if (!(p > 0.0 && p <= 0.5)) throw DomainError(describe(p) + " outside (0, 1/2]");
}

void require_p_below_half(double p) {
    if (!(p > 0.0 && p < 0.5)) throw DomainError(describe(p) + " outside (0, 1/2)");
}

}  // namespace treeline

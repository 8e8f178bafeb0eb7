#pragma once

#include "hshear/analytic_core.hpp"

namespace hshear {

/// Below this c the generalized Koebe function is replaced by its c -> 0 limit.
inline constexpr double kKoebeLogThreshold = 1e-8;

/// k_c(z) = ((1+z)/(1-z))^c - 1) / (2c); k_0(z) = log((1+z)/(1-z)) / 2.
inline Complex k_c_eval(double c, Complex z)
{
    const Complex w = (1.0 + z) / (1.0 - z);
    if (c <= kKoebeLogThreshold)
        return 0.5 * principal_log(w);
    return (principal_pow(w, c) - 1.0) / (2.0 * c);
}

inline Complex k_c_eval(double c, DiskPoint p) { return k_c_eval(c, p.value()); }

/// k_c'(z) = (1+z)^(c-1) / (1-z)^(c+1).
inline Complex k_c_derivative(double c, Complex z)
{
    return principal_pow(1.0 + z, c - 1.0) / principal_pow(1.0 - z, c + 1.0);
}

} // namespace hshear

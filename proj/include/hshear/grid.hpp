#pragma once

#include <cmath>
#include <sstream>
#include <vector>

#include "hshear/analytic_core.hpp"

namespace hshear {

/// Polar lattice of the disk: `rings` concentric circles at radii
/// r_max * i / rings (i = 1..rings), each cut by `spokes` equally spaced rays.
/// The center is not a node.
struct GridSpec {
    int rings = 10;
    int spokes = 24;
    double r_max = 0.98;

    void validate() const
    {
        if (rings < 1 || spokes < 3 || !(r_max > 0.0) || r_max > 0.999) {
            std::ostringstream os;
            os << "grid needs rings >= 1, spokes >= 3, 0 < r_max <= 0.999 (got rings=" << rings
               << ", spokes=" << spokes << ", r_max=" << r_max << ")";
            throw DomainError(os.str());
        }
    }

    double ring_radius(int ring) const { return r_max * ring / rings; }
    double spoke_angle(int spoke) const { return 2.0 * kPi * spoke / spokes; }

    DiskPoint node(int ring, int spoke) const
    {
        return DiskPoint(std::polar(ring_radius(ring), spoke_angle(spoke)));
    }

    /// Ring-major, then spoke; ring index starts at 1.
    std::vector<DiskPoint> nodes() const
    {
        validate();
        std::vector<DiskPoint> out;
        out.reserve(static_cast<std::size_t>(rings) * spokes);
        for (int i = 1; i <= rings; ++i)
            for (int j = 0; j < spokes; ++j)
                out.push_back(node(i, j));
        return out;
    }
};

/// Re-raises a library error with the offending disk point appended.
[[noreturn]] inline void rethrow_at(const Error& e, Complex z)
{
    const std::string msg = std::string(e.what()) + " [at z=" + format_complex(z) + "]";
    switch (e.kind()) {
    case ErrorKind::domain: throw DomainError(msg);
    case ErrorKind::convergence: throw ConvergenceError(msg);
    case ErrorKind::invalid_dilatation: throw InvalidDilatationError(msg);
    case ErrorKind::unsupported_parameter: throw UnsupportedParameterError(msg);
    case ErrorKind::unsupported_domain: throw UnsupportedDomainError(msg);
    }
    throw Error(e.kind(), msg);
}

} // namespace hshear

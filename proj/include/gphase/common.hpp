#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace gphase {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;

// Error categories used by the CLI exit-code mapping (1/2/3).
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct analysis_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Wrap an angle into (-pi, pi]; the -pi boundary maps to +pi.
inline double wrap_pi(double x) {
    double y = std::remainder(x, 2.0 * pi);
    if (y <= -pi) y += 2.0 * pi;
    return y;
}

inline double deg_to_rad(double d) { return d * pi / 180.0; }
inline double rad_to_deg(double r) { return r * 180.0 / pi; }

}  // namespace gphase

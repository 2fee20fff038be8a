#pragma once

// Fringe extraction. The scan model is
//
//   y(V) = a0 (1 + v cos(kV - phi))
//
// which is linear in (a0, b, c) = (a0, a0 v cos phi, a0 v sin phi) at fixed
// k, so the fit is a weighted linear solve plus a 1-D search when k itself
// is free. Weights are 1/max(y, 1), the Poisson variance estimate.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include "gphase/common.hpp"
#include "gphase/geometric_phase.hpp"

namespace gphase {

struct FitResult {
    double a0 = 0.0;
    double v_fit = 0.0;
    double phi = 0.0;  // radians, (-pi, pi]
    double k = 0.0;    // rad per volt
    double sigma_v = 0.0;
    double sigma_phi = 0.0;
    std::array<std::array<double, 3>, 3> cov{};  // over (a0, b, c)
    double chi2 = 0.0;
    int dof = 0;
};

namespace detail {

inline std::array<std::array<double, 3>, 3> invert3(const std::array<std::array<double, 3>, 3>& m) {
    auto cof = [&](int r0, int r1, int c0, int c1) {
        return m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
    };
    double det = m[0][0] * cof(1, 2, 1, 2) - m[0][1] * cof(1, 2, 0, 2) + m[0][2] * cof(1, 2, 0, 1);
    double scale = 0.0;
    for (int i = 0; i < 3; ++i)
        scale = std::max(scale, std::abs(m[i][0]) + std::abs(m[i][1]) + std::abs(m[i][2]));
    if (std::abs(det) <= 1e-12 * scale * scale * scale)
        throw analysis_error("degenerate fringe design matrix");
    std::array<std::array<double, 3>, 3> inv{};
    inv[0][0] = cof(1, 2, 1, 2) / det;
    inv[0][1] = -cof(0, 2, 1, 2) / det;
    inv[0][2] = cof(0, 1, 1, 2) / det;
    inv[1][0] = -cof(1, 2, 0, 2) / det;
    inv[1][1] = cof(0, 2, 0, 2) / det;
    inv[1][2] = -cof(0, 1, 0, 2) / det;
    inv[2][0] = cof(1, 2, 0, 1) / det;
    inv[2][1] = -cof(0, 2, 0, 1) / det;
    inv[2][2] = cof(0, 1, 0, 1) / det;
    return inv;
}

inline double golden_min(const std::function<double(double)>& f, double lo, double hi,
                         double tol) {
    const double inv_phi = 0.6180339887498949;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    while (hi - lo > tol) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace detail

inline FitResult fit_fringe(const std::vector<double>& voltages, const std::vector<double>& y,
                            double k, bool fitted_frequency = false) {
    if (voltages.size() != y.size())
        throw std::invalid_argument("voltage and count arrays differ in length");
    const std::size_t n = y.size();
    if (n < 5) throw std::invalid_argument("need at least 5 scan points");
    bool any = false;
    for (double yi : y) any = any || yi > 0.0;
    if (!any) throw std::invalid_argument("all counts are zero");

    std::array<std::array<double, 3>, 3> m{};
    std::array<double, 3> rhs{};
    for (std::size_t i = 0; i < n; ++i) {
        const double w = 1.0 / std::max(y[i], 1.0);
        const std::array<double, 3> row{1.0, std::cos(k * voltages[i]), std::sin(k * voltages[i])};
        for (int a = 0; a < 3; ++a) {
            rhs[a] += w * row[a] * y[i];
            for (int b = 0; b < 3; ++b) m[a][b] += w * row[a] * row[b];
        }
    }
    const auto cov = detail::invert3(m);
    std::array<double, 3> p{};
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) p[a] += cov[a][b] * rhs[b];

    FitResult fit;
    fit.k = k;
    fit.a0 = p[0];
    if (!(fit.a0 > 0.0)) throw analysis_error("fitted fringe offset is not positive");
    const double b = p[1], c = p[2];
    const double amp = std::hypot(b, c);
    fit.v_fit = amp / fit.a0;
    fit.phi = wrap_pi(std::atan2(c, b));
    fit.cov = cov;

    for (std::size_t i = 0; i < n; ++i) {
        const double w = 1.0 / std::max(y[i], 1.0);
        const double model = p[0] + p[1] * std::cos(k * voltages[i]) + p[2] * std::sin(k * voltages[i]);
        fit.chi2 += w * (y[i] - model) * (y[i] - model);
    }
    fit.dof = static_cast<int>(n) - (fitted_frequency ? 4 : 3);

    if (amp > 0.0) {
        const std::array<double, 3> gv{-amp / (fit.a0 * fit.a0), b / (fit.a0 * amp),
                                       c / (fit.a0 * amp)};
        const std::array<double, 3> gp{0.0, -c / (amp * amp), b / (amp * amp)};
        double sv = 0.0, sp = 0.0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                sv += gv[i] * cov[i][j] * gv[j];
                sp += gp[i] * cov[i][j] * gp[j];
            }
        fit.sigma_v = std::sqrt(std::max(sv, 0.0));
        fit.sigma_phi = std::sqrt(std::max(sp, 0.0));
    } else {
        fit.sigma_v = std::sqrt(0.5 * (cov[1][1] + cov[2][2])) / fit.a0;
        fit.sigma_phi = pi / std::sqrt(3.0);  // uniform-phase spread
    }
    return fit;
}

struct ScanData {
    std::vector<double> voltages;
    std::vector<double> y;
};

namespace detail {

inline double min_spacing(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    double dv = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < v.size(); ++i) dv = std::min(dv, v[i] - v[i - 1]);
    return dv;
}

inline double pooled_chi2(const std::vector<ScanData>& scans, double k) {
    double total = 0.0;
    for (const auto& s : scans) total += fit_fringe(s.voltages, s.y, k).chi2;
    return total;
}

}  // namespace detail

// Shared fringe frequency by grid search plus golden-section refinement of
// the pooled fit residual. The admissible range must stay below the voltage
// grid Nyquist limit, where the alias k' = 2pi/dV - k becomes degenerate.
inline double estimate_frequency(const std::vector<ScanData>& scans, double k_lo, double k_hi) {
    if (scans.empty()) throw std::invalid_argument("no scans given");
    double dv = std::numeric_limits<double>::infinity();
    for (const auto& s : scans) dv = std::min(dv, detail::min_spacing(s.voltages));
    if (!(k_lo > 0.0) || !(k_hi > k_lo) || !(k_hi < pi / dv))
        throw std::invalid_argument("frequency range must lie inside (0, pi/dV)");

    const int grid = 128;
    double best_k = k_lo, best_chi2 = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= grid; ++i) {
        double k = k_lo + (k_hi - k_lo) * i / grid;
        double chi2 = detail::pooled_chi2(scans, k);
        if (chi2 < best_chi2) {
            best_chi2 = chi2;
            best_k = k;
        }
    }
    const double cell = (k_hi - k_lo) / grid;
    double k_hat = detail::golden_min([&](double k) { return detail::pooled_chi2(scans, k); },
                                      std::max(k_lo, best_k - cell),
                                      std::min(k_hi, best_k + cell), 1e-6 * 0.5);

    double best_significance = 0.0;
    for (const auto& s : scans) {
        FitResult fit = fit_fringe(s.voltages, s.y, k_hat);
        if (fit.sigma_v > 0.0)
            best_significance = std::max(best_significance, fit.v_fit / fit.sigma_v);
    }
    if (best_significance < 3.0)
        throw analysis_error("fringe frequency indeterminate: no significant modulation");
    return k_hat;
}

inline double estimate_frequency(const std::vector<double>& voltages, const std::vector<double>& y,
                                 double k_lo, double k_hi) {
    return estimate_frequency(std::vector<ScanData>{{voltages, y}}, k_lo, k_hi);
}

struct PhaseDifference {
    double gamma = 0.0;
    double sigma = 0.0;
};

inline PhaseDifference phase_difference(const FitResult& fit, const FitResult& reference) {
    if (std::abs(fit.k - reference.k) > 1e-9)
        throw analysis_error("fits use different fringe frequencies");
    return {wrap_pi(fit.phi - reference.phi), std::hypot(fit.sigma_phi, reference.sigma_phi)};
}

inline double reduced_chi2(const std::vector<double>& measured, const std::vector<double>& sigma,
                           const std::vector<double>& theory) {
    if (measured.size() != sigma.size() || measured.size() != theory.size())
        throw std::invalid_argument("mismatched array lengths");
    if (measured.empty()) throw std::invalid_argument("no points");
    double total = 0.0;
    for (std::size_t i = 0; i < measured.size(); ++i) {
        if (!(sigma[i] > 0.0)) throw analysis_error("zero sigma in chi-square");
        double z = (measured[i] - theory[i]) / sigma[i];
        total += z * z;
    }
    return total / static_cast<double>(measured.size());
}

struct PhasePoint {
    double theta1 = 0.0;  // radians
    double gamma = 0.0;
    double sigma = 0.0;
};

struct PurityEstimate {
    double r = 0.0;
    double sigma_r = 0.0;
    double chi2 = 0.0;  // absolute, at the minimum
};

// One-parameter weighted fit of gamma(theta1) = arg(cos 2theta1 - i r sin
// 2theta1) over r in [0, 1]. Residuals are wrapped, so pi-branch data points
// behave. sigma_r comes from the chi-square curvature (delta chi2 = 1).
inline PurityEstimate retrodict_purity(const std::vector<PhasePoint>& points) {
    if (points.size() < 3) throw std::invalid_argument("need at least 3 phase points");
    double sensitivity = 0.0;
    for (const auto& p : points) sensitivity = std::max(sensitivity, std::abs(std::sin(2.0 * p.theta1)));
    if (sensitivity < 1e-6) throw analysis_error("no purity sensitivity: all settings near zero");

    auto chi2_at = [&](double r) {
        double total = 0.0;
        for (const auto& p : points) {
            if (!(p.sigma > 0.0)) throw analysis_error("zero sigma in purity fit");
            double model = std::atan2(-r * std::sin(2.0 * p.theta1), std::cos(2.0 * p.theta1));
            double z = wrap_pi(p.gamma - model) / p.sigma;
            total += z * z;
        }
        return total;
    };

    PurityEstimate est;
    est.r = detail::golden_min(chi2_at, 0.0, 1.0, 1e-10);
    est.chi2 = chi2_at(est.r);

    const double h = 1e-4;
    double r0 = std::clamp(est.r, h, 1.0 - h);
    double curvature = (chi2_at(r0 - h) - 2.0 * chi2_at(r0) + chi2_at(r0 + h)) / (h * h);
    est.sigma_r = curvature > 0.0 ? std::sqrt(2.0 / curvature) : std::numeric_limits<double>::infinity();
    return est;
}

}  // namespace gphase

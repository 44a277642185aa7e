#pragma once

#include <span>

#include "smsfluor/correl.hpp"

namespace smsfluor {

// Weight of the delta peak at the laser frequency:
// |sum_R sqrt(gamma~_R) <a|rho_R^inf|b>|^2.
double coherent_weight(const StationaryModel& model);

// Incoherent spectrum on a grid of omega - omega_L. Each point is
// 2 Re L[C1 - S_coh](u = -i(omega - omega_L)) where L[.] is the Laplace
// transform; the coherent plateau is projected out of the seed so the
// transform stays finite at omega = omega_L.
RealSeries incoherent_spectrum(const StationaryModel& model, std::span<const double> omega_grid);

// Single-point form used by parallel drivers.
double incoherent_spectrum_at(const StationaryModel& model, double omega_minus_omega_l);

struct SumRuleReport {
    double residual = 0.0;       // |(1/2pi) int S_inc + S_coh - I_st| / I_st
    double integral = 0.0;       // (1/2pi) int S_inc including the tail estimate
    double tail_estimate = 0.0;  // relative share of the 1/omega^2 tails beyond the grid
    double coherent = 0.0;
    double intensity = 0.0;
    bool grid_warning = false;   // tail_estimate above the tolerance
};

// Trapezoid quadrature of S_inc over the grid, plus the analytic c/omega^2
// tail beyond each edge. For a dark fluorophore (I_st == 0) the residual is
// defined as 0.
SumRuleReport sum_rule_check(const StationaryModel& model, std::span<const double> omega_grid,
                             double tail_tolerance = 1e-2);

double coherent_weight(const ModelSpec& spec);
RealSeries incoherent_spectrum(const ModelSpec& spec, std::span<const double> omega_grid);
SumRuleReport sum_rule_check(const ModelSpec& spec, std::span<const double> omega_grid,
                             double tail_tolerance = 1e-2);

// Nonlinear least-squares fit of
//   amplitude / (1 + ((x - center) / hwhm)^2) + c0 + c2 (x - center)^2
// over the samples (Levenberg-Marquardt). The quadratic background absorbs
// the curvature of a broad component underneath a narrow peak.
struct LorentzianFit {
    double amplitude = 0.0;
    double center = 0.0;
    double hwhm = 0.0;
    double offset = 0.0;
    double curvature = 0.0;
    double rms_residual = 0.0;
    bool converged = false;

    double fwhm() const { return 2.0 * hwhm; }
};

LorentzianFit fit_lorentzian(std::span<const double> x, std::span<const double> y, double hwhm_guess,
                             bool with_background = true);

// Full width at half maximum of the highest sample, by linear
// interpolation between grid points. Returns NaN if either half-maximum
// crossing is off the grid.
double fwhm_of_peak(std::span<const double> x, std::span<const double> y);

// Abscissae of strict local maxima, refined by a parabola through the
// neighbouring samples.
std::vector<double> local_maxima(std::span<const double> x, std::span<const double> y);

}  // namespace smsfluor

#pragma once

#include <complex>

#include <Eigen/Dense>

// Independent resonance-fluorescence reference for a single two-level
// emitter (decay gamma, Rabi frequency omega, detuning delta). Written
// from scratch in Bloch-expectation form; shares no code with the library.
namespace oracle {

using cplx = std::complex<double>;

struct Markov {
    double gamma = 1.0;
    double omega = 0.0;
    double delta = 0.0;

    // 4x4 Liouvillian on (rho_aa, rho_ba, rho_ab, rho_bb), entries written
    // out by hand.
    Eigen::Matrix4cd liouvillian() const;

    // Expectation vector x = (<sigma>, <sigma^dag>, <sigma^dag sigma>) obeys
    // x' = M x + c <1>.
    Eigen::Matrix3cd drift() const;
    Eigen::Vector3cd source() const;

    double excited_population() const;  // Omega^2 / (gamma^2 + 2 Omega^2 + 4 delta^2)
    cplx coherence_ba() const;          // <sigma> = rho_ba at steady state
    double intensity() const { return gamma * excited_population(); }

    // gamma <sigma^dag(0) sigma(tau)>.
    cplx c1(double tau) const;
    // gamma^2 <sigma^dag(0) sigma^dag sigma(tau) sigma(0)>.
    double c2(double tau) const;
    double g2(double tau) const { return c2(tau) / (intensity() * intensity()); }
    // Textbook closed form at delta = 0.
    double g2_closed_form(double tau) const;

    // 2 I int_0^inf (g2 - 1) dtau from the exact integral of the linear
    // system.
    double stationary_mandel() const;
};

}  // namespace oracle

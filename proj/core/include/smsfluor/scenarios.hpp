#pragma once

#include <string>
#include <vector>

#include "smsfluor/model.hpp"

namespace smsfluor {

// Two configurational states with shifts +delta_omega (state 0) and
// -delta_omega (state 1), common gamma and Rabi frequency, and symmetric
// switching rate phi.
ModelSpec spectral_two_state(double gamma, double omega_rabi, double delta_omega, double phi, double detuning);

// Per-state decay rates, shared Rabi frequency, no shifts, phi mixing.
ModelSpec lifetime_fluct(const std::vector<double>& gammas, const RateTable& phi, double omega_rabi,
                         double detuning);

// Molecule hopping between n_sites positions of a laser profile with
// nearest-neighbour rate phi_hop and reflecting ends.
ModelSpec diffusion_chain(int n_sites, const std::vector<double>& omega_profile, double phi_hop, double gamma,
                          double detuning);

// Configurational transitions gated by photon emission only (phi = 0).
ModelSpec light_assisted(const std::vector<double>& gammas, const RateTable& gamma_cross, double omega_rabi,
                         double detuning);

// Classical blinking limit of a light-assisted model:
//   big_gamma(R', R) = gamma_cross(R', R) Omega_R^2 / (gamma~_R^2 + 2 Omega_R^2 + 4 delta_R^2)
//   intensities[R]   = gamma~_R Omega_R^2 / (gamma~_R^2 + 2 Omega_R^2 + 4 delta_R^2)
struct BlinkingApprox {
    RateTable big_gamma;
    std::vector<double> intensities;
    bool valid = true;    // gamma_cross << gamma (or >> gamma) for every channel
    std::string warning;  // reason when !valid
};

BlinkingApprox blinking_rates(const ModelSpec& spec);

// Populations of the classical master equation dP/dt = M P with
// M(R', R) = big_gamma(R', R) - delta_{R'R} sum_R'' big_gamma(R'', R).
std::vector<double> classical_blinking_populations(const BlinkingApprox& approx, const std::vector<double>& p0,
                                                   double t);

// Large-detuning limit of the stationary Mandel factor for a two-state
// light-assisted model.
double mandel_detuning_limit(const ModelSpec& spec);

// Lifetime-fluctuation model with the same blinking statistics:
// gamma_R -> gamma~_R, phi(1,0) = big_gamma(1,0), phi(0,1) = big_gamma(0,1),
// no emission-assisted rates. The rates are frozen at the input detuning.
ModelSpec mapped_self_fluct(const ModelSpec& spec);

// Power-law dressing of a two-state light-assisted model at detuning d:
//   gamma_cross(0,1) += gamma12_bar |d| / delta0
//   Omega_R          += omega_bar sqrt(|d| / delta0)
ModelSpec scaled_triplet(const ModelSpec& base, double detuning, double delta0, double omega_bar,
                         double gamma12_bar);

}  // namespace smsfluor

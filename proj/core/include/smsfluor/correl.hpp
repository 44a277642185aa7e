#pragma once

#include <span>
#include <vector>

#include "smsfluor/model.hpp"
#include "smsfluor/series.hpp"
#include "smsfluor/steady.hpp"

namespace smsfluor {

// A validated model together with its generator and stationary Laurent
// data. Build once, then share read-only between observables and threads.
struct StationaryModel {
    ModelSpec spec;
    SuperOp generator;
    SteadyDecomposition decomposition;
    std::vector<double> gamma_eff;

    explicit StationaryModel(ModelSpec s);

    const BlockState& steady() const { return decomposition.steady; }
    int r_max() const { return spec.space.r_max; }
};

// sum_{R,R'} Tr{ A (e^{tau L})_{RR'} [O2 rho_R'^inf O1] } for each tau >= 0.
ComplexSeries qrt_two_time(const StationaryModel& model, const Mat2& o1, const Mat2& a, const Mat2& o2,
                           std::span<const double> tau_grid);

// Dimensionless first-order field correlation with sqrt(gamma~) weights on
// the seed and readout blocks. Negative delays follow from
// C1(-tau) = conj(C1(tau)) and are not computed.
ComplexSeries c1(const StationaryModel& model, std::span<const double> tau_grid);

// Dimensionless second-order correlation (intensity-intensity, normally
// ordered).
RealSeries c2(const StationaryModel& model, std::span<const double> tau_grid);

// g2(tau) = C2(tau) / I_st^2. Throws ZeroIntensity when I_st <= 1e-300.
RealSeries g2(const StationaryModel& model, std::span<const double> tau_grid);

// I_st = sum_R gamma~_R <b|rho_R^inf|b>.
double stationary_intensity(const StationaryModel& model);

// Seeds a_R'^inf of the g2 propagation: gamma_R' sigma rho_R' sigma^dag +
// sum_R'' gamma_cross(R', R'') sigma rho_R'' sigma^dag.
BlockState emission_seed(const StationaryModel& model);

// Convenience overloads that build the StationaryModel on the fly.
ComplexSeries c1(const ModelSpec& spec, std::span<const double> tau_grid);
RealSeries c2(const ModelSpec& spec, std::span<const double> tau_grid);
RealSeries g2(const ModelSpec& spec, std::span<const double> tau_grid);
double stationary_intensity(const ModelSpec& spec);

}  // namespace smsfluor

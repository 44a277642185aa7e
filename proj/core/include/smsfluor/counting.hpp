#pragma once

#include <optional>
#include <span>
#include <vector>

#include "smsfluor/correl.hpp"

namespace smsfluor {

// L(s) = drift + s * jump, with L(1) the full generator. The jump part
// holds the detected emission gains gamma_R sigma.sigma^dag (diagonal
// blocks) and gamma_cross(R, R') sigma.sigma^dag (off-diagonal blocks).
// Extra jump channels are never counted and stay in the drift.
struct CountingSplit {
    SuperOp drift;
    SuperOp jump;
};

CountingSplit counting_split(const ModelSpec& spec);

struct CountingRecord {
    double t = 0.0;
    std::vector<double> pn;         // P_0 .. P_n_max
    double remainder = 0.0;         // 1 - sum(pn), never renormalized away
    bool truncation_warning = false;  // remainder > 1e-6
    double mean = 0.0;
    double second_factorial = 0.0;
    double mandel_q = 0.0;          // NaN when mean <= 1e-300
};

// A StationaryModel with its counting split, shared by the counting
// observables.
struct CountingModel {
    StationaryModel stationary;
    CountingSplit split;

    explicit CountingModel(ModelSpec spec);
};

// Photon-number distribution after counting for time t from rho0
// (default: steady state).
std::vector<double> pn(const CountingModel& model, double t, int n_max,
                       const std::optional<BlockState>& rho0 = std::nullopt);

struct FactorialMoments {
    double mean = 0.0;
    double second_factorial = 0.0;
};

// Exact first and second factorial moments at time t from the s-derivative
// chain of the generating operator at s = 1.
FactorialMoments factorial_moments(const CountingModel& model, double t,
                                   const std::optional<BlockState>& rho0 = std::nullopt);

double mean_counts(const CountingModel& model, double t, const std::optional<BlockState>& rho0 = std::nullopt);
double second_factorial(const CountingModel& model, double t,
                        const std::optional<BlockState>& rho0 = std::nullopt);

// Q(t) = (N2 + N - N^2) / N - 1. Throws ZeroCounts when N <= 1e-300.
double mandel_q(const CountingModel& model, double t, const std::optional<BlockState>& rho0 = std::nullopt);
double mandel_q_from_moments(const FactorialMoments& m);

CountingRecord counting_record(const CountingModel& model, double t, int n_max,
                               const std::optional<BlockState>& rho0 = std::nullopt);

// Stationary emission rate lim dN/dt, equal to I_st.
double line_shape(const StationaryModel& model);
double line_shape(const ModelSpec& spec);

// line_shape of spec with the laser detuning replaced by each grid value.
// Points are evaluated independently on up to `threads` workers.
RealSeries line_shape_sweep(const ModelSpec& spec, std::span<const double> detuning_grid, int threads = 1);

// Coefficients of the long-time expansion
//   Y'(t) = b t + a + ...,   Y''(t) = B t^2 + A t + ...
// of the s-derivatives of the generating function at s = 1, read off the
// Laurent expansion of the resolvent at u = 0.
struct StationaryMandel {
    double a = 0.0;
    double b = 0.0;
    double big_a = 0.0;
    double big_b = 0.0;
    double q = 0.0;  // A / b - 4 a
};

// Throws NumericalFailure when B = 2 b^2 or I_st = 2 b fail to 1e-9, and
// ZeroIntensity when b vanishes.
StationaryMandel stationary_mandel_coefficients(const CountingModel& model,
                                                const std::optional<BlockState>& rho0 = std::nullopt);
double stationary_mandel(const CountingModel& model);
double stationary_mandel(const ModelSpec& spec);

// Q_st on a grid of laser detunings.
RealSeries mandel_sweep(const ModelSpec& spec, std::span<const double> detuning_grid, int threads = 1);

// Matrix elements of the generating operator per configurational block:
// U = (G_ab + G_ba)/2, V = (G_ab - G_ba)/(2i), W = (G_bb - G_aa)/2,
// Y = (G_bb + G_aa)/2.
struct BlochState {
    std::vector<cplx> u, v, w, y;

    static BlochState from_blocks(const BlockState& g);
    BlockState to_blocks() const;
};

// Right-hand side of the generalized optical Bloch equations at counting
// parameter s. Models with extra jump channels are rejected
// (InvalidArgument); the equations have no terms for them.
BlochState optical_bloch_rhs(const ModelSpec& spec, double s, const BlochState& state);

// Convenience overloads.
std::vector<double> pn(const ModelSpec& spec, double t, int n_max);
double mean_counts(const ModelSpec& spec, double t);
double second_factorial(const ModelSpec& spec, double t);
double mandel_q(const ModelSpec& spec, double t);

}  // namespace smsfluor

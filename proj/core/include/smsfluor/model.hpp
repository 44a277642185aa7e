#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "smsfluor/block_state.hpp"

namespace smsfluor {

// Rate tables are indexed [to][from]: table(R, R') is the rate of the
// configurational transition R' -> R. Loss out of state R therefore uses
// the column sum of column R. Indices are zero-based.
using RateTable = Eigen::MatrixXd;

struct ConfigSpace {
    int r_max = 1;
    std::vector<std::string> labels;  // empty, or exactly r_max names
};

struct PerStateParams {
    double delta_omega = 0.0;  // transition frequency shift [rad/time]
    double gamma = 0.0;        // radiative decay rate [1/time]
    double omega_rabi = 0.0;   // Rabi frequency [rad/time]
};

struct FluctuationRates {
    RateTable phi;          // system-independent transitions
    RateTable gamma_cross;  // emission-assisted transitions
};

enum class JumpOperator { Identity, Lower, Raise, UpperProjector, LowerProjector };

const char* to_string(JumpOperator kind);
std::optional<JumpOperator> jump_operator_from_string(const std::string& name);
Mat2 jump_matrix(JumpOperator kind);

// Extra configurational channel: loss -(eta(R',R)/2){A^dag A, rho_R},
// gain eta(R,R') A rho_R' A^dag. Never counted as a detection.
struct GeneralJumpChannel {
    JumpOperator kind = JumpOperator::Identity;
    RateTable eta;
};

struct ModelSpec {
    ConfigSpace space;
    std::vector<PerStateParams> per_state;
    FluctuationRates rates;
    std::vector<GeneralJumpChannel> extra_channels;
    double detuning = 0.0;  // omega_L - omega_A [rad/time]

    int r_max() const { return space.r_max; }
};

// Convenience: a spec with r_max states, zero rate tables and default
// per-state parameters.
ModelSpec make_empty_spec(int r_max);

struct Violation {
    std::string path;
    std::string message;
};

std::vector<Violation> validate(const ModelSpec& spec);

// Throws InvalidModel listing every violation.
void require_valid(const ModelSpec& spec);

// gamma~_R = gamma_R + sum_R' gamma_cross(R', R).
double effective_decay(const ModelSpec& spec, int r);
std::vector<double> effective_decays(const ModelSpec& spec);

// Rotating-frame detuning of state R: (omega_L - omega_A) - delta_omega_R.
double state_detuning(const ModelSpec& spec, int r);

// Dense Lindblad rate generator in the frame rotating at omega_L (hbar = 1).
SuperOp build_generator(const ModelSpec& spec);

// The same generator applied term by term without assembling a matrix.
BlockState apply_generator(const ModelSpec& spec, const BlockState& x);

}  // namespace smsfluor

#include "fixtures.hpp"

#include <cmath>

#include "smsfluor/scenarios.hpp"

namespace fixtures {

using namespace smsfluor;

namespace {
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
}

ModelSpec markovian(double gamma, double omega, double delta)
{
    ModelSpec s = make_empty_spec(1);
    s.per_state[0] = {0.0, gamma, omega};
    s.detuning = delta;
    return s;
}

ModelSpec narrow_peak() { return spectral_two_state(1.0, kInvSqrt2, 0.1, 1.0 / 125.0, 0.0); }
ModelSpec strong_drive() { return spectral_two_state(1.0, 5.0, 0.1, 1.0 / 500.0, 0.0); }
ModelSpec split_lines() { return spectral_two_state(1.0, kInvSqrt2, 5.0, 1.0 / 4e4, 0.0); }
ModelSpec split_lines_strong() { return spectral_two_state(1.0, 5.0, 5.0, 1.0 / 4e4, 0.0); }
ModelSpec motional(double phi) { return spectral_two_state(1.0, kInvSqrt2, 5.0, phi, 0.0); }
ModelSpec motional_small_shift(double phi) { return spectral_two_state(1.0, kInvSqrt2, 1.0, phi, 0.0); }
ModelSpec crossover(double phi) { return spectral_two_state(1.0, 1.0, 3.0, phi, 0.0); }

ModelSpec blinking(double detuning)
{
    RateTable gc = RateTable::Zero(2, 2);
    gc(0, 1) = kBlinkingGamma12;
    gc(1, 0) = kBlinkingGamma21;
    return light_assisted({kBlinkingGamma1, kBlinkingGamma2}, gc, 1.0, detuning);
}

ModelSpec scaled_mandel(double detuning) { return scaled_triplet(blinking(0.0), detuning, 1.0, 0.25, 0.007); }

std::vector<Named> all_ergodic_fixtures()
{
    return {{"markovian", markovian(1.0, kInvSqrt2)},
            {"narrow_peak", narrow_peak()},
            {"strong_drive", strong_drive()},
            {"split_lines", split_lines()},
            {"split_lines_strong", split_lines_strong()},
            {"motional_phi10", motional(10.0)},
            {"motional_phi50", motional(50.0)},
            {"motional_phi125", motional(125.0)},
            {"motional_small_shift_phi10", motional_small_shift(10.0)},
            {"crossover_phi0.25", crossover(0.25)},
            {"crossover_phi1", crossover(1.0)},
            {"crossover_phi4", crossover(4.0)},
            {"blinking", blinking()}};
}

ModelSpec Random::spec(int r_max, bool extra_channels)
{
    ModelSpec s = make_empty_spec(r_max);
    for (auto& p : s.per_state) p = {uniform(-2.0, 2.0), uniform(0.2, 2.0), uniform(0.0, 2.0)};
    for (int i = 0; i < r_max; ++i) {
        for (int j = 0; j < r_max; ++j) {
            if (i == j) continue;
            s.rates.phi(i, j) = uniform(0.05, 1.0);
            s.rates.gamma_cross(i, j) = uniform(0.0, 0.5);
        }
    }
    if (extra_channels) {
        for (auto kind : {JumpOperator::Identity, JumpOperator::Raise, JumpOperator::UpperProjector}) {
            GeneralJumpChannel ch{kind, RateTable::Zero(r_max, r_max)};
            for (int i = 0; i < r_max; ++i)
                for (int j = 0; j < r_max; ++j)
                    if (i != j) ch.eta(i, j) = uniform(0.0, 0.3);
            s.extra_channels.push_back(ch);
        }
    }
    s.detuning = uniform(-1.0, 1.0);
    return s;
}

BlockState Random::physical_state(int r_max)
{
    BlockState x(static_cast<std::size_t>(r_max));
    for (auto& b : x.blocks) {
        Mat2 a;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) a(i, j) = cplx(uniform(-1.0, 1.0), uniform(-1.0, 1.0));
        b = a * a.adjoint();
    }
    const double tr = x.total_trace().real();
    for (auto& b : x.blocks) b /= tr;
    return x;
}

BlockState Random::any_state(int r_max)
{
    BlockState x(static_cast<std::size_t>(r_max));
    for (auto& b : x.blocks)
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) b(i, j) = cplx(uniform(-1.0, 1.0), uniform(-1.0, 1.0));
    return x;
}

}  // namespace fixtures

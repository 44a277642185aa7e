#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "smsfluor/block_state.hpp"
#include "smsfluor/model.hpp"

// Reference parameter sets (units of gamma for spectral diffusion, units
// of Omega for light-assisted blinking) and random generators for property
// tests.
namespace fixtures {

using smsfluor::ModelSpec;

ModelSpec markovian(double gamma, double omega, double delta = 0.0);

ModelSpec narrow_peak();
ModelSpec strong_drive();
ModelSpec split_lines();
ModelSpec split_lines_strong();
// Fast switching with delta_omega = 5 and with delta_omega = 1.
ModelSpec motional(double phi);
ModelSpec motional_small_shift(double phi);
ModelSpec crossover(double phi);
ModelSpec blinking(double detuning = 0.0);
// Blinking model with power-law dressing at laser detuning d.
ModelSpec scaled_mandel(double detuning);

struct Named {
    std::string name;
    ModelSpec spec;
};

// Every ergodic reference fixture, for checks that must hold on all of them.
std::vector<Named> all_ergodic_fixtures();

inline constexpr double kBlinkingGamma1 = 1.0;
inline constexpr double kBlinkingGamma2 = 10.0;
inline constexpr double kBlinkingGamma12 = 0.02;
inline constexpr double kBlinkingGamma21 = 0.0015;

// Hand-rolled generators.
class Random {
public:
    explicit Random(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

    // Valid spec with every rate positive (ergodic), optionally with extra
    // jump channels.
    ModelSpec spec(int r_max, bool extra_channels = false);
    // Random positive-semidefinite blocks normalized to unit total trace.
    smsfluor::BlockState physical_state(int r_max);
    // Arbitrary complex blocks.
    smsfluor::BlockState any_state(int r_max);

private:
    std::mt19937_64 rng_;
};

}  // namespace fixtures

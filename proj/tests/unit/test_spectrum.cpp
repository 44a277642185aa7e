#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "markov_oracle.hpp"
#include "quadrature.hpp"
#include "smsfluor/errors.hpp"
#include "smsfluor/spectrum.hpp"

using namespace smsfluor;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

double nearest(const std::vector<double>& xs, double target)
{
    double best = std::numeric_limits<double>::quiet_NaN();
    for (double x : xs)
        if (std::isnan(best) || std::abs(x - target) < std::abs(best - target)) best = x;
    return best;
}

}  // namespace

TEST(CoherentWeight, MatchesSingleStateCoherence)
{
    for (double delta : {0.0, 0.8}) {
        const oracle::Markov ref{1.0, kInvSqrt2, delta};
        EXPECT_NEAR(coherent_weight(fixtures::markovian(1.0, kInvSqrt2, delta)),
                    ref.gamma * std::norm(ref.coherence_ba()), 1e-14);
    }
    EXPECT_EQ(coherent_weight(fixtures::markovian(1.0, 0.0)), 0.0);
}

TEST(CoherentWeight, DetunedSubensemblesLoseRayleighLine)
{
    EXPECT_LT(coherent_weight(fixtures::split_lines()), 0.1 * coherent_weight(fixtures::markovian(1.0, kInvSqrt2)));
}

TEST(Spectrum, LaplaceFormMatchesCosineTransform)
{
    const oracle::Markov ref{1.0, kInvSqrt2, 0.4};
    const double s_coh = ref.gamma * std::norm(ref.coherence_ba());
    const StationaryModel m(fixtures::markovian(1.0, kInvSqrt2, 0.4));
    for (double w : {0.0, 0.5, -1.3, 3.0}) {
        const auto re = [&](double tau) {
            return (std::exp(cplx(0.0, w * tau)) * (ref.c1(tau) - s_coh)).real();
        };
        const double direct = 2.0 * oracle::simpson(re, 0.0, 60.0, 6000);
        EXPECT_NEAR(incoherent_spectrum_at(m, w), direct, 1e-6) << "w=" << w;
    }
}

TEST(Spectrum, PositiveOnAllFixtures)
{
    const auto grid = linear_grid(-15.0, 15.0, 301);
    for (const auto& f : fixtures::all_ergodic_fixtures()) {
        const auto s = incoherent_spectrum(f.spec, grid);
        EXPECT_EQ(s.kind, SeriesKind::SpectrumInc);
        for (double v : s.values) EXPECT_GT(v, 0.0) << f.name;
    }
}

TEST(Spectrum, SymmetricForResonantSymmetricModels)
{
    const auto grid = linear_grid(-8.0, 8.0, 161);
    for (const auto& spec : {fixtures::markovian(1.0, 3.0), fixtures::narrow_peak(), fixtures::crossover(1.0)}) {
        const auto s = incoherent_spectrum(spec, grid);
        for (std::size_t k = 0; k < grid.size(); ++k) {
            EXPECT_NEAR(s.values[k], s.values[grid.size() - 1 - k], 1e-10 * (1.0 + std::abs(s.values[k])));
        }
    }
}

TEST(SumRule, SingleState)
{
    const auto r = sum_rule_check(fixtures::markovian(1.0, kInvSqrt2), linear_grid(-200.0, 200.0, 4001));
    EXPECT_LT(r.residual, 1e-3);
    EXPECT_NEAR(r.intensity, 0.25, 1e-14);
    EXPECT_FALSE(r.grid_warning);
}

TEST(SumRule, NarrowPeakFixture)
{
    const auto r = sum_rule_check(fixtures::narrow_peak(), linear_grid(-200.0, 200.0, 40001));
    EXPECT_LT(r.residual, 1e-2);
}

TEST(SumRule, DarkFluorophoreHasZeroResidual)
{
    const auto r = sum_rule_check(fixtures::markovian(1.0, 0.0), linear_grid(-5.0, 5.0, 11));
    EXPECT_EQ(r.residual, 0.0);
    EXPECT_EQ(r.intensity, 0.0);
}

TEST(SumRule, TruncatedGridIsFlagged)
{
    const auto r = sum_rule_check(fixtures::markovian(1.0, 5.0), linear_grid(-1.0, 1.0, 41));
    EXPECT_TRUE(r.grid_warning);
}

TEST(SumRule, RandomModels)
{
    fixtures::Random rng(11);
    for (int trial = 0; trial < 4; ++trial) {
        const auto spec = rng.spec(rng.integer(1, 3));
        const auto r = sum_rule_check(spec, linear_grid(-300.0, 300.0, 12001));
        EXPECT_LT(r.residual, 1e-2) << "trial " << trial;
    }
}

TEST(Spectrum, NarrowPeakWidthIsSetBySwitchingRate)
{
    const double phi = 1.0 / 125.0;
    const auto grid = linear_grid(-0.1, 0.1, 801);
    const auto s = incoherent_spectrum(fixtures::narrow_peak(), grid);
    const auto fit = fit_lorentzian(grid, s.values, 2.0 * phi);
    ASSERT_TRUE(fit.converged);
    EXPECT_NEAR(fit.center, 0.0, 1e-6);
    EXPECT_NEAR(fit.hwhm, 2.0 * phi, 0.1 * 2.0 * phi);
}

TEST(Spectrum, MollowSidebandsAtRabiFrequency)
{
    const auto grid = linear_grid(-10.0, 10.0, 2001);
    for (const auto& spec : {fixtures::markovian(1.0, 5.0), fixtures::strong_drive()}) {
        const auto s = incoherent_spectrum(spec, grid);
        const auto peaks = local_maxima(grid, s.values);
        EXPECT_NEAR(nearest(peaks, 5.0), 5.0, 0.05 * 5.0);
        EXPECT_NEAR(nearest(peaks, -5.0), -5.0, 0.05 * 5.0);
    }
}

TEST(Spectrum, SplitLinesAtSpectralShifts)
{
    const auto grid = linear_grid(-10.0, 10.0, 2001);
    const auto s = incoherent_spectrum(fixtures::split_lines(), grid);
    const auto peaks = local_maxima(grid, s.values);
    EXPECT_NEAR(nearest(peaks, 5.0), 5.0, 0.05 * 5.0);
    EXPECT_NEAR(nearest(peaks, -5.0), -5.0, 0.05 * 5.0);
}

TEST(Spectrum, MotionalNarrowing)
{
    const auto grid = linear_grid(-15.0, 15.0, 3001);
    for (auto make : {&fixtures::motional, &fixtures::motional_small_shift}) {
        double previous = std::numeric_limits<double>::infinity();
        for (double phi : {10.0, 50.0, 125.0}) {
            const auto s = incoherent_spectrum(make(phi), grid);
            const double w = fwhm_of_peak(grid, s.values);
            ASSERT_TRUE(std::isfinite(w)) << "phi=" << phi;
            EXPECT_LT(w, previous) << "phi=" << phi;
            previous = w;
        }
    }
}

TEST(Fit, RecoversSyntheticLorentzian)
{
    const auto x = linear_grid(-1.0, 1.0, 401);
    std::vector<double> y(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double d = (x[k] - 0.05) / 0.1;
        y[k] = 3.0 / (1.0 + d * d) + 0.2 - 0.1 * (x[k] - 0.05) * (x[k] - 0.05);
    }
    const auto fit = fit_lorentzian(x, y, 0.2);
    ASSERT_TRUE(fit.converged);
    EXPECT_NEAR(fit.amplitude, 3.0, 1e-6);
    EXPECT_NEAR(fit.center, 0.05, 1e-8);
    EXPECT_NEAR(fit.hwhm, 0.1, 1e-8);
    EXPECT_NEAR(fit.offset, 0.2, 1e-6);
    EXPECT_NEAR(fit.fwhm(), 0.2, 1e-7);
    EXPECT_LT(fit.rms_residual, 1e-8);
}

TEST(Fit, HalfMaximumWidthAndMaxima)
{
    const auto x = linear_grid(-5.0, 5.0, 1001);
    std::vector<double> y(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) y[k] = 1.0 / (1.0 + x[k] * x[k]);
    EXPECT_NEAR(fwhm_of_peak(x, y), 2.0, 1e-3);

    const std::vector<double> narrow_x{-0.1, 0.0, 0.1};
    const std::vector<double> narrow_y{0.9, 1.0, 0.9};
    EXPECT_TRUE(std::isnan(fwhm_of_peak(narrow_x, narrow_y)));

    std::vector<double> c(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) c[k] = std::cos(std::numbers::pi * x[k]);
    const auto peaks = local_maxima(x, c);
    ASSERT_EQ(peaks.size(), 5u);
    EXPECT_NEAR(peaks[0], -4.0, 1e-4);
    EXPECT_NEAR(peaks[1], -2.0, 1e-4);
    EXPECT_NEAR(peaks[2], 0.0, 1e-4);
}

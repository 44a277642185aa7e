#include <cmath>

#include <gtest/gtest.h>
#include <unsupported/Eigen/MatrixFunctions>

#include "fixtures.hpp"
#include "markov_oracle.hpp"
#include "monte_carlo.hpp"
#include "ode.hpp"
#include "quadrature.hpp"
#include "smsfluor/counting.hpp"
#include "smsfluor/detail/linalg.hpp"
#include "smsfluor/errors.hpp"
#include "smsfluor/scenarios.hpp"
#include "smsfluor/steady.hpp"

using namespace smsfluor;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

BlockState ground(std::size_t r_max, std::size_t r = 0)
{
    return BlockState::localized(r_max, r, op::lower_projector());
}

double max_diff(const BlockState& x, const BlockState& y) { return (x - y).norm(); }

}  // namespace

TEST(Split, SumsToGeneratorAndJumpIsNonNegative)
{
    fixtures::Random rng(3);
    for (int trial = 0; trial < 5; ++trial) {
        const auto spec = rng.spec(rng.integer(1, 4), trial % 2 == 1);
        const auto split = counting_split(spec);
        const auto full = build_generator(spec);
        EXPECT_LT((split.drift.matrix + split.jump.matrix - full.matrix).norm(), 1e-14);
        for (Eigen::Index i = 0; i < split.jump.matrix.size(); ++i) {
            EXPECT_GE(split.jump.matrix(i).real(), 0.0);
            EXPECT_EQ(split.jump.matrix(i).imag(), 0.0);
        }
        // the jump part conserves trace only together with the drift
        const Eigen::RowVectorXcd tr = trace_functional(static_cast<std::size_t>(spec.r_max()));
        EXPECT_LT((tr * full.matrix).norm(), 1e-13);
    }
}

TEST(Split, ExtraChannelsStayInDrift)
{
    fixtures::Random rng(5);
    auto spec = rng.spec(2, true);
    const auto with = counting_split(spec).jump.matrix;
    spec.extra_channels.clear();
    EXPECT_EQ((with - counting_split(spec).jump.matrix).norm(), 0.0);
}

TEST(Pn, ZeroTimeIsCertainlyEmpty)
{
    const CountingModel m(fixtures::narrow_peak());
    const auto p = pn(m, 0.0, 5);
    ASSERT_EQ(p.size(), 6u);
    EXPECT_NEAR(p[0], 1.0, 1e-14);
    for (std::size_t n = 1; n < p.size(); ++n) EXPECT_NEAR(p[n], 0.0, 1e-14);
}

TEST(Pn, UndrivenFluorophoreNeverEmits)
{
    const CountingModel m(fixtures::markovian(1.0, 0.0));
    const auto p = pn(m, 50.0, 4);
    EXPECT_NEAR(p[0], 1.0, 1e-14);
    EXPECT_THROW(mandel_q(m, 10.0), ZeroCounts);
    const auto rec = counting_record(m, 10.0, 4);
    EXPECT_TRUE(std::isnan(rec.mandel_q));
}

TEST(Pn, NormalizationAndMomentsMatch)
{
    for (const auto& spec : {fixtures::markovian(1.0, kInvSqrt2), fixtures::strong_drive(), fixtures::blinking()}) {
        const CountingModel m(spec);
        const double t = 20.0;
        const auto rec = counting_record(m, t, 80);
        EXPECT_LT(rec.remainder, 1e-10);
        EXPECT_FALSE(rec.truncation_warning);
        double s1 = 0.0, s2 = 0.0;
        for (std::size_t n = 0; n < rec.pn.size(); ++n) {
            EXPECT_GE(rec.pn[n], -1e-14);
            const double k = static_cast<double>(n);
            s1 += k * rec.pn[n];
            s2 += k * (k - 1.0) * rec.pn[n];
        }
        EXPECT_NEAR(s1, rec.mean, 1e-8 * rec.mean);
        EXPECT_NEAR(s2, rec.second_factorial, 1e-8 * rec.second_factorial);
    }
}

TEST(Pn, TruncationIsReported)
{
    const auto rec = counting_record(CountingModel(fixtures::markovian(1.0, 1.0)), 100.0, 5);
    EXPECT_GT(rec.remainder, 0.5);
    EXPECT_TRUE(rec.truncation_warning);
}

TEST(Pn, AgreesWithQuantumJumpSimulation)
{
    const double t = 5.0;
    const int n_max = 12;
    const CountingModel m(fixtures::markovian(1.0, 1.0));
    Mat2 rho0 = op::lower_projector();
    const auto p = pn(m, t, n_max, BlockState::localized(1, 0, rho0));
    const auto mc = oracle::quantum_jump_counts(1.0, 1.0, 0.0, rho0, t, 20000, n_max, 17);
    const double trials = static_cast<double>(mc.trajectories);
    for (int n = 0; n <= n_max; ++n) {
        const double pk = p[static_cast<std::size_t>(n)];
        const double sigma = std::sqrt(pk * (1.0 - pk) / trials) + 1.0 / trials;
        EXPECT_NEAR(mc.histogram[static_cast<std::size_t>(n)], pk, 3.0 * sigma) << "n=" << n;
    }
}

TEST(Moments, StationaryStartGrowsAtIntensity)
{
    const CountingModel m(fixtures::blinking());
    const double i_st = stationary_intensity(m.stationary);
    for (double t : {0.5, 10.0, 300.0}) EXPECT_NEAR(mean_counts(m, t), i_st * t, 1e-10 * i_st * t);
}

TEST(Moments, LongTimeSlopeIsIntensityFromAnyStart)
{
    for (const auto& spec : {fixtures::markovian(1.0, kInvSqrt2, 0.3), fixtures::narrow_peak()}) {
        const CountingModel m(spec);
        const auto x0 = ground(static_cast<std::size_t>(spec.r_max()));
        const double t_late = 40.0 / slowest_relaxation_rate(m.stationary.generator);
        const double slope =
            oracle::central_difference([&](double t) { return mean_counts(m, t, x0); }, t_late, 1.0);
        EXPECT_NEAR(slope, line_shape(m.stationary), 1e-8);
    }
}

TEST(Moments, SecondFactorialIsDoubleIntegralOfC2)
{
    const oracle::Markov ref{1.0, kInvSqrt2, 0.0};
    const CountingModel m(fixtures::markovian(1.0, kInvSqrt2));
    for (double t : {1.0, 5.0, 12.0}) {
        const double integral = oracle::simpson([&](double tau) { return (t - tau) * ref.c2(tau); }, 0.0, t, 2000);
        EXPECT_NEAR(second_factorial(m, t), 2.0 * integral, 1e-6);
    }
}

TEST(Moments, ChainMatchesFullBlockExponential)
{
    fixtures::Random rng(19);
    const auto spec = rng.spec(2);
    const auto split = counting_split(spec);
    const auto d = split.drift.dim();
    const int levels = 4;
    CMatrix big = CMatrix::Zero(levels * d, levels * d);
    for (int k = 0; k < levels; ++k) {
        big.block(k * d, k * d, d, d) = split.drift.matrix;
        if (k > 0) big.block(k * d, (k - 1) * d, d, d) = split.jump.matrix;
    }
    const CVector x0 = rng.physical_state(2).to_vector();
    CVector full0 = CVector::Zero(levels * d);
    full0.head(d) = x0;
    const double t = 3.7;
    const CVector ref = (t * big).exp() * full0;
    const auto chain = detail::toeplitz_chain_action(split.drift.matrix, split.jump.matrix, x0, levels, t);
    ASSERT_EQ(chain.size(), static_cast<std::size_t>(levels));
    for (int k = 0; k < levels; ++k) EXPECT_LT((chain[static_cast<std::size_t>(k)] - ref.segment(k * d, d)).norm(), 1e-12);
}

TEST(Mandel, SignsOfSingleStateAndBlinkingModels)
{
    EXPECT_LT(mandel_q(fixtures::markovian(1.0, 1.0), 50.0), 0.0);
    EXPECT_LT(stationary_mandel(fixtures::markovian(1.0, 1.0)), 0.0);
    EXPECT_GT(stationary_mandel(fixtures::blinking()), 1.0);
}

TEST(Mandel, StationaryMatchesExactSingleStateValue)
{
    for (double omega : {0.3, 1.0, 4.0}) {
        for (double delta : {0.0, 1.5}) {
            const oracle::Markov ref{1.0, omega, delta};
            EXPECT_NEAR(stationary_mandel(fixtures::markovian(1.0, omega, delta)), ref.stationary_mandel(), 1e-9);
        }
    }
    EXPECT_NEAR(stationary_mandel(fixtures::markovian(1.0, 1.0)), -2.0 / 3.0, 1e-12);
}

TEST(Mandel, StationaryIsLongTimeLimit)
{
    const CountingModel m(fixtures::markovian(1.0, 1.0));
    const double q = stationary_mandel(m);
    EXPECT_NEAR(mandel_q(m, 1e4), q, 1e-3 * std::abs(q));
    // the finite-time correction falls off as 1/t
    const double e1 = std::abs(mandel_q(m, 1e3) - q);
    const double e2 = std::abs(mandel_q(m, 1e4) - q);
    EXPECT_NEAR(e1 / e2, 10.0, 0.5);
}

TEST(Mandel, StationaryDoesNotDependOnInitialState)
{
    fixtures::Random rng(23);
    const CountingModel m(fixtures::blinking());
    const double q = stationary_mandel(m);
    for (int trial = 0; trial < 3; ++trial) {
        const auto c = stationary_mandel_coefficients(m, rng.physical_state(2));
        EXPECT_NEAR(c.q, q, 1e-9 * std::abs(q));
        EXPECT_NEAR(c.big_b, 2.0 * c.b * c.b, 1e-12);
    }
}

TEST(Mandel, LightAssistedDetuningLimit)
{
    const double limit = mandel_detuning_limit(fixtures::blinking());
    EXPECT_NEAR(limit, 301.114, 0.01);
    EXPECT_NEAR(stationary_mandel(fixtures::blinking(1e3)), limit, 0.01 * limit);
}

TEST(Mandel, ZeroIntensityIsAnError)
{
    EXPECT_THROW(stationary_mandel(fixtures::markovian(1.0, 0.0)), ZeroIntensity);
}

TEST(LineShape, SingleStateLorentzian)
{
    const auto grid = linear_grid(-5.0, 5.0, 41);
    const auto s = line_shape_sweep(fixtures::markovian(1.0, 0.5), grid, 3);
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double d = grid[k];
        EXPECT_NEAR(s.values[k], 0.25 / (1.0 + 0.5 + 4.0 * d * d), 1e-14);
    }
}

TEST(LineShape, SweepsAreThreadIndependent)
{
    const auto grid = linear_grid(0.0, 30.0, 31);
    const auto a = mandel_sweep(fixtures::blinking(), grid, 1);
    const auto b = mandel_sweep(fixtures::blinking(), grid, 4);
    EXPECT_EQ(a.values, b.values);
}

TEST(Bloch, RoundTripOfBlockCoordinates)
{
    fixtures::Random rng(29);
    const auto x = rng.any_state(3);
    EXPECT_LT(max_diff(BlochState::from_blocks(x).to_blocks(), x), 1e-15);
}

TEST(Bloch, MatchesGeneratingOperatorForAnyCountingParameter)
{
    fixtures::Random rng(31);
    for (int trial = 0; trial < 4; ++trial) {
        const auto spec = rng.spec(rng.integer(1, 3));
        const auto split = counting_split(spec);
        const auto x = rng.any_state(spec.r_max());
        for (double s : {0.0, 0.5, 1.0}) {
            const SuperOp gen{split.drift.matrix + s * split.jump.matrix};
            const auto expected = gen.apply(x);
            const auto got = optical_bloch_rhs(spec, s, BlochState::from_blocks(x)).to_blocks();
            EXPECT_LT(max_diff(got, expected), 1e-13) << "s=" << s;
        }
    }
}

TEST(Bloch, RejectsUnsupportedInput)
{
    fixtures::Random rng(37);
    const auto spec = rng.spec(2, true);
    EXPECT_THROW(optical_bloch_rhs(spec, 1.0, BlochState::from_blocks(BlockState(2))), InvalidArgument);
    auto plain = spec;
    plain.extra_channels.clear();
    EXPECT_THROW(optical_bloch_rhs(plain, 1.0, BlochState::from_blocks(BlockState(3))), DimensionMismatch);
}

TEST(Mandel, PoissonHarnessHasZeroQ)
{
    // one block, counts arrive at a constant rate whatever the state
    const double lambda = 0.7, t = 3.0;
    const CMatrix diag = -lambda * CMatrix::Identity(4, 4);
    const CMatrix sub = lambda * CMatrix::Identity(4, 4);
    const CVector x0 = BlockState::localized(1, 0, op::lower_projector()).to_vector();
    const auto chain = detail::toeplitz_chain_action(diag, sub, x0, 40, t);
    double mean = 0.0, f2 = 0.0, fact = 1.0;
    for (std::size_t n = 0; n < chain.size(); ++n) {
        if (n > 0) fact *= static_cast<double>(n);
        const double p = chain[n](0).real();
        EXPECT_NEAR(p, std::exp(-lambda * t) * std::pow(lambda * t, static_cast<double>(n)) / fact, 1e-14);
        mean += static_cast<double>(n) * p;
        f2 += static_cast<double>(n) * (static_cast<double>(n) - 1.0) * p;
    }
    EXPECT_NEAR(mandel_q_from_moments({mean, f2}), 0.0, 1e-12);
}

TEST(Bloch, UndrivenPopulationEquation)
{
    auto spec = fixtures::narrow_peak();
    for (auto& p : spec.per_state) p.omega_rabi = 0.0;
    fixtures::Random rng(41);
    const auto st = BlochState::from_blocks(rng.any_state(2));
    const auto d = optical_bloch_rhs(spec, 0.0, st);
    const auto gt = effective_decays(spec);
    const double phi = spec.rates.phi(0, 1);
    for (std::size_t r = 0; r < 2; ++r) {
        const cplx expected = -0.5 * gt[r] * (st.w[r] + st.y[r]) - phi * st.y[r] + phi * st.y[1 - r];
        EXPECT_LT(std::abs(d.y[r] - expected), 1e-15);
    }
}

TEST(Bloch, GeneratingFunctionFromBothRepresentations)
{
    const auto spec = fixtures::narrow_peak();
    const auto split = counting_split(spec);
    const double s = 0.5;
    const SuperOp gen{split.drift.matrix + s * split.jump.matrix};
    const StationaryModel m(spec);
    const auto rhs = [&](const std::vector<cplx>& x, std::vector<cplx>& dx) {
        BlochState st;
        st.u = {x[0], x[1]};
        st.v = {x[2], x[3]};
        st.w = {x[4], x[5]};
        st.y = {x[6], x[7]};
        const auto d = optical_bloch_rhs(spec, s, st);
        dx = {d.u[0], d.u[1], d.v[0], d.v[1], d.w[0], d.w[1], d.y[0], d.y[1]};
    };
    const auto b0 = BlochState::from_blocks(m.steady());
    std::vector<cplx> x{b0.u[0], b0.u[1], b0.v[0], b0.v[1], b0.w[0], b0.w[1], b0.y[0], b0.y[1]};
    double t_prev = 0.0;
    for (double t : {2.0, 5.0, 10.0}) {
        x = oracle::integrate(rhs, x, t - t_prev, 1e-14, 1e-14);
        t_prev = t;
        const cplx y_bloch = 2.0 * (x[6] + x[7]);
        const cplx y_super = evolve(gen, m.steady(), t).total_trace();
        EXPECT_LT(std::abs(y_bloch - y_super), 1e-10) << "t=" << t;
    }
}

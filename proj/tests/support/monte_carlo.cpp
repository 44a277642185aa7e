#include "monte_carlo.hpp"

#include <cmath>
#include <complex>
#include <random>

#include <Eigen/Eigenvalues>

namespace oracle {

namespace {

using cplx = std::complex<double>;

struct NoJumpPropagator {
    Eigen::Matrix2cd v;
    Eigen::Matrix2cd v_inv;
    Eigen::Vector2cd lambda;  // eigenvalues of -i H_eff

    Eigen::Vector2cd apply(const Eigen::Vector2cd& psi, double t) const
    {
        const Eigen::Vector2cd c = v_inv * psi;
        Eigen::Vector2cd d;
        d(0) = std::exp(lambda(0) * t) * c(0);
        d(1) = std::exp(lambda(1) * t) * c(1);
        return v * d;
    }
};

NoJumpPropagator make_propagator(double gamma, double omega, double delta)
{
    const cplx i(0.0, 1.0);
    Eigen::Matrix2cd h;
    h << delta / 2.0, omega / 2.0, omega / 2.0, -delta / 2.0 - i * gamma / 2.0;
    Eigen::ComplexEigenSolver<Eigen::Matrix2cd> es(-i * h);
    return {es.eigenvectors(), es.eigenvectors().inverse(), es.eigenvalues()};
}

}  // namespace

JumpStatistics quantum_jump_counts(double gamma, double omega, double delta, const Eigen::Matrix2cd& rho0,
                                   double t, std::size_t trajectories, int n_max, std::uint64_t seed)
{
    const auto prop = make_propagator(gamma, omega, delta);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> ens(rho0);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);

    JumpStatistics out;
    out.trajectories = trajectories;
    out.histogram.assign(static_cast<std::size_t>(n_max) + 1, 0.0);
    double sum_n = 0.0;
    double sum_nn1 = 0.0;

    const Eigen::Vector2cd ground(1.0, 0.0);
    for (std::size_t traj = 0; traj < trajectories; ++traj) {
        Eigen::Vector2cd psi = uni(rng) < ens.eigenvalues()(0) ? ens.eigenvectors().col(0)
                                                               : ens.eigenvectors().col(1);
        double clock = 0.0;
        int n = 0;
        for (;;) {
            const double remaining = t - clock;
            const double r = uni(rng);
            if (prop.apply(psi, remaining).squaredNorm() > r) break;
            // survival is non-increasing; bisect for the jump time
            double lo = 0.0;
            double hi = remaining;
            for (int it = 0; it < 60; ++it) {
                const double mid = 0.5 * (lo + hi);
                if (prop.apply(psi, mid).squaredNorm() > r) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            clock += 0.5 * (lo + hi);
            ++n;
            psi = ground;
        }
        if (n <= n_max) out.histogram[static_cast<std::size_t>(n)] += 1.0;
        sum_n += n;
        sum_nn1 += static_cast<double>(n) * (n - 1);
    }
    const double m = static_cast<double>(trajectories);
    for (auto& h : out.histogram) h /= m;
    out.mean = sum_n / m;
    out.second_factorial = sum_nn1 / m;
    return out;
}

}  // namespace oracle

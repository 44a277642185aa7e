#include "smsfluor/correl.hpp"

#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

#include "smsfluor/errors.hpp"

namespace smsfluor {

StationaryModel::StationaryModel(ModelSpec s)
    : spec(std::move(s)),
      generator(build_generator(spec)),
      decomposition(laurent_decomposition(generator)),
      gamma_eff(effective_decays(spec))
{
}

namespace {

// Row vector f with f . vec(y) = sum_R w_R Tr(A y_R).
Eigen::RowVectorXcd readout(const Mat2& a, const std::vector<double>& weights)
{
    const auto n = static_cast<Eigen::Index>(weights.size());
    Eigen::RowVectorXcd f(4 * n);
    for (Eigen::Index r = 0; r < n; ++r) {
        const double w = weights[static_cast<std::size_t>(r)];
        // Tr(A y) = sum_{ij} A(j,i) y(i,j); slot of y(i,j) is i + 2j.
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) f(4 * r + i + 2 * j) = w * a(j, i);
    }
    return f;
}

std::vector<double> sqrt_weights(const std::vector<double>& g)
{
    std::vector<double> out(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) out[i] = std::sqrt(g[i]);
    return out;
}

std::vector<cplx> propagate_readout(const StationaryModel& model, const CVector& seed,
                                    const Eigen::RowVectorXcd& functional, std::span<const double> tau_grid)
{
    std::vector<cplx> out(tau_grid.size());
    for (std::size_t k = 0; k < tau_grid.size(); ++k) {
        const double tau = tau_grid[k];
        if (!(tau >= 0.0)) throw InvalidArgument("correlation delays must be non-negative");
        if (tau == 0.0) {
            out[k] = functional * seed;
        } else {
            const CMatrix prop = (tau * model.generator.matrix).exp();
            out[k] = functional * (prop * seed);
        }
    }
    return out;
}

std::vector<double> grid_copy(std::span<const double> g) { return {g.begin(), g.end()}; }

}  // namespace

ComplexSeries qrt_two_time(const StationaryModel& model, const Mat2& o1, const Mat2& a, const Mat2& o2,
                           std::span<const double> tau_grid)
{
    BlockState seed(model.steady().size());
    for (std::size_t r = 0; r < seed.size(); ++r) seed[r] = o2 * model.steady()[r] * o1;
    const std::vector<double> ones(seed.size(), 1.0);
    auto values = propagate_readout(model, seed.to_vector(), readout(a, ones), tau_grid);
    return make_series(SeriesKind::C1, "tau", grid_copy(tau_grid), std::move(values));
}

ComplexSeries c1(const StationaryModel& model, std::span<const double> tau_grid)
{
    const auto w = sqrt_weights(model.gamma_eff);
    BlockState seed(model.steady().size());
    for (std::size_t r = 0; r < seed.size(); ++r) seed[r] = w[r] * model.steady()[r] * op::raise();
    auto values = propagate_readout(model, seed.to_vector(), readout(op::lower(), w), tau_grid);
    return make_series(SeriesKind::C1, "tau", grid_copy(tau_grid), std::move(values));
}

BlockState emission_seed(const StationaryModel& model)
{
    const auto& ss = model.steady();
    const auto n = ss.size();
    std::vector<Mat2> emitted(n);
    for (std::size_t r = 0; r < n; ++r) emitted[r] = op::lower() * ss[r] * op::raise();
    BlockState seed(n);
    for (std::size_t rp = 0; rp < n; ++rp) {
        seed[rp] = model.spec.per_state[rp].gamma * emitted[rp];
        for (std::size_t rpp = 0; rpp < n; ++rpp) {
            if (rpp == rp) continue;
            seed[rp] += model.spec.rates.gamma_cross(static_cast<Eigen::Index>(rp), static_cast<Eigen::Index>(rpp)) *
                        emitted[rpp];
        }
    }
    return seed;
}

RealSeries c2(const StationaryModel& model, std::span<const double> tau_grid)
{
    const auto seed = emission_seed(model);
    const auto values = propagate_readout(model, seed.to_vector(),
                                          readout(op::upper_projector(), model.gamma_eff), tau_grid);
    std::vector<double> re(values.size());
    for (std::size_t k = 0; k < values.size(); ++k) re[k] = values[k].real();
    return make_series(SeriesKind::C2, "tau", grid_copy(tau_grid), std::move(re));
}

double stationary_intensity(const StationaryModel& model)
{
    double i_st = 0.0;
    for (std::size_t r = 0; r < model.steady().size(); ++r) {
        i_st += model.gamma_eff[r] * model.steady()[r](1, 1).real();
    }
    return i_st;
}

RealSeries g2(const StationaryModel& model, std::span<const double> tau_grid)
{
    const double i_st = stationary_intensity(model);
    if (!(i_st > 1e-300)) throw ZeroIntensity("g2: stationary intensity vanishes");
    auto s = c2(model, tau_grid);
    s.kind = SeriesKind::G2;
    for (auto& v : s.values) v /= i_st * i_st;
    return s;
}

ComplexSeries c1(const ModelSpec& spec, std::span<const double> tau_grid)
{
    return c1(StationaryModel(spec), tau_grid);
}

RealSeries c2(const ModelSpec& spec, std::span<const double> tau_grid)
{
    return c2(StationaryModel(spec), tau_grid);
}

RealSeries g2(const ModelSpec& spec, std::span<const double> tau_grid)
{
    return g2(StationaryModel(spec), tau_grid);
}

double stationary_intensity(const ModelSpec& spec) { return stationary_intensity(StationaryModel(spec)); }

}  // namespace smsfluor

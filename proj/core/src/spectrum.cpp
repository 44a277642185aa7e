#include "smsfluor/spectrum.hpp"

#include <cmath>
#include <numbers>

#include "smsfluor/detail/linalg.hpp"
#include "smsfluor/errors.hpp"

namespace smsfluor {

namespace {

struct FieldSeed {
    CMatrix deflated_generator;  // L - P
    CVector seed;                // (Id - P) applied to sqrt(gamma~) rho sigma^dag
    Eigen::RowVectorXcd readout;
};

FieldSeed field_seed(const StationaryModel& model)
{
    const auto n = static_cast<std::size_t>(model.r_max());
    BlockState seed(n);
    Eigen::RowVectorXcd f = Eigen::RowVectorXcd::Zero(4 * static_cast<Eigen::Index>(n));
    for (std::size_t r = 0; r < n; ++r) {
        const double w = std::sqrt(model.gamma_eff[r]);
        seed[r] = w * model.steady()[r] * op::raise();
        // Tr(sigma y) = y(1,0), slot ba
        f(4 * static_cast<Eigen::Index>(r) + slot::ba) = w;
    }
    const CMatrix& p = model.decomposition.projector.matrix;
    FieldSeed out;
    const CVector v = seed.to_vector();
    out.seed = v - p * v;
    out.deflated_generator = model.generator.matrix - p;
    out.readout = std::move(f);
    return out;
}

double spectrum_point(const FieldSeed& fs, double delta)
{
    const cplx u(0.0, -delta);
    const CVector y = detail::shifted_solve(fs.deflated_generator, u, fs.seed);
    const cplx value = fs.readout * y;
    return 2.0 * value.real();
}

}  // namespace

double coherent_weight(const StationaryModel& model)
{
    cplx amp = 0.0;
    for (std::size_t r = 0; r < model.steady().size(); ++r) {
        amp += std::sqrt(model.gamma_eff[r]) * model.steady()[r](0, 1);
    }
    return std::norm(amp);
}

RealSeries incoherent_spectrum(const StationaryModel& model, std::span<const double> omega_grid)
{
    const auto fs = field_seed(model);
    std::vector<double> values(omega_grid.size());
    for (std::size_t k = 0; k < omega_grid.size(); ++k) {
        if (!std::isfinite(omega_grid[k])) throw InvalidArgument("incoherent_spectrum: non-finite frequency");
        values[k] = spectrum_point(fs, omega_grid[k]);
    }
    return make_series(SeriesKind::SpectrumInc, "omega_minus_omegaL",
                       std::vector<double>(omega_grid.begin(), omega_grid.end()), std::move(values));
}

double incoherent_spectrum_at(const StationaryModel& model, double omega_minus_omega_l)
{
    if (!std::isfinite(omega_minus_omega_l)) throw InvalidArgument("incoherent_spectrum: non-finite frequency");
    return spectrum_point(field_seed(model), omega_minus_omega_l);
}

SumRuleReport sum_rule_check(const StationaryModel& model, std::span<const double> omega_grid,
                             double tail_tolerance)
{
    if (omega_grid.size() < 2) throw InvalidArgument("sum_rule_check: grid needs at least two points");
    SumRuleReport rep;
    rep.intensity = stationary_intensity(model);
    rep.coherent = coherent_weight(model);
    if (!(rep.intensity > 1e-300)) return rep;

    const auto s = incoherent_spectrum(model, omega_grid);
    const auto& x = s.abscissa;
    const auto& y = s.values;
    double trap = 0.0;
    for (std::size_t k = 1; k < x.size(); ++k) trap += 0.5 * (x[k] - x[k - 1]) * (y[k] + y[k - 1]);

    // S ~ c / w^2 beyond the edges: the tail integral is S(w_edge) |w_edge|
    // measured from the origin of the frequency axis.
    double tails = 0.0;
    if (x.front() < 0.0) tails += y.front() * std::abs(x.front());
    if (x.back() > 0.0) tails += y.back() * std::abs(x.back());

    const double two_pi = 2.0 * std::numbers::pi;
    rep.integral = (trap + tails) / two_pi;
    rep.tail_estimate = std::abs(tails) / two_pi / rep.intensity;
    rep.grid_warning = rep.tail_estimate > tail_tolerance;
    rep.residual = std::abs(rep.integral + rep.coherent - rep.intensity) / rep.intensity;
    return rep;
}

double coherent_weight(const ModelSpec& spec) { return coherent_weight(StationaryModel(spec)); }

RealSeries incoherent_spectrum(const ModelSpec& spec, std::span<const double> omega_grid)
{
    return incoherent_spectrum(StationaryModel(spec), omega_grid);
}

SumRuleReport sum_rule_check(const ModelSpec& spec, std::span<const double> omega_grid, double tail_tolerance)
{
    return sum_rule_check(StationaryModel(spec), omega_grid, tail_tolerance);
}

}  // namespace smsfluor

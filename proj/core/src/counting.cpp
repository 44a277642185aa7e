#include "smsfluor/counting.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "smsfluor/detail/linalg.hpp"
#include "smsfluor/errors.hpp"

namespace smsfluor {

CountingSplit counting_split(const ModelSpec& spec)
{
    CountingSplit out;
    const SuperOp full = build_generator(spec);
    const int n = spec.r_max();
    out.jump.matrix = CMatrix::Zero(full.dim(), full.dim());
    // sigma X sigma^dag moves the bb entry of the source block to aa.
    for (int r = 0; r < n; ++r) {
        for (int rp = 0; rp < n; ++rp) {
            const double rate = r == rp ? spec.per_state[static_cast<std::size_t>(r)].gamma
                                        : spec.rates.gamma_cross(r, rp);
            out.jump.matrix(4 * r + slot::aa, 4 * rp + slot::bb) = rate;
        }
    }
    out.drift.matrix = full.matrix - out.jump.matrix;
    return out;
}

CountingModel::CountingModel(ModelSpec spec) : stationary(std::move(spec)), split(counting_split(stationary.spec)) {}

namespace {

CVector initial_vector(const CountingModel& model, const std::optional<BlockState>& rho0)
{
    if (!rho0) return model.stationary.steady().to_vector();
    if (rho0->size() != static_cast<std::size_t>(model.stationary.r_max())) {
        throw DimensionMismatch("initial state has " + std::to_string(rho0->size()) + " blocks, model has r_max=" +
                                std::to_string(model.stationary.r_max()));
    }
    return rho0->to_vector();
}

void require_time(double t)
{
    if (!(t >= 0.0) || !std::isfinite(t)) throw InvalidArgument("counting time must be finite and non-negative");
}

double total_trace(const CVector& v)
{
    double tr = 0.0;
    for (Eigen::Index r = 0; r < v.size() / 4; ++r) tr += (v(4 * r + slot::aa) + v(4 * r + slot::bb)).real();
    return tr;
}

}  // namespace

std::vector<double> pn(const CountingModel& model, double t, int n_max, const std::optional<BlockState>& rho0)
{
    require_time(t);
    if (n_max < 0) throw InvalidArgument("pn: n_max must be non-negative");
    const CVector x0 = initial_vector(model, rho0);
    const auto levels = detail::toeplitz_chain_action(model.split.drift.matrix, model.split.jump.matrix, x0,
                                                      n_max + 1, t);
    std::vector<double> p(levels.size());
    for (std::size_t n = 0; n < levels.size(); ++n) p[n] = total_trace(levels[n]);
    return p;
}

namespace {

struct CenteredMoments {
    double mean = 0.0;
    double second_factorial = 0.0;
    double excess = 0.0;  // N2 - N^2 = N Q
};

// Chain of the centered generating operator L + eps (J - I_st): its levels
// give N - I_st t and the excess N2 - N^2 without the O(t^2) cancellation
// of the raw factorial moments.
CenteredMoments centered_moments(const CountingModel& model, double t, const std::optional<BlockState>& rho0)
{
    require_time(t);
    const CVector x0 = initial_vector(model, rho0);
    const double i_st = stationary_intensity(model.stationary);
    const auto dim = model.split.jump.matrix.rows();
    const CMatrix centered = model.split.jump.matrix - i_st * CMatrix::Identity(dim, dim);
    const auto chain = detail::toeplitz_chain_action(model.stationary.generator.matrix, centered, x0, 3, t);
    const double d1 = total_trace(chain[1]);
    const double d2 = 2.0 * total_trace(chain[2]);
    CenteredMoments m;
    const double drift = i_st * t;
    m.mean = drift + d1;
    m.excess = d2 - d1 * d1;
    m.second_factorial = m.excess + m.mean * m.mean;
    return m;
}

}  // namespace

FactorialMoments factorial_moments(const CountingModel& model, double t, const std::optional<BlockState>& rho0)
{
    const auto m = centered_moments(model, t, rho0);
    return {m.mean, m.second_factorial};
}

double mean_counts(const CountingModel& model, double t, const std::optional<BlockState>& rho0)
{
    return factorial_moments(model, t, rho0).mean;
}

double second_factorial(const CountingModel& model, double t, const std::optional<BlockState>& rho0)
{
    return factorial_moments(model, t, rho0).second_factorial;
}

double mandel_q_from_moments(const FactorialMoments& m)
{
    if (!(m.mean > 1e-300)) throw ZeroCounts("mandel_q: mean photon count vanishes");
    return (m.second_factorial + m.mean - m.mean * m.mean) / m.mean - 1.0;
}

double mandel_q(const CountingModel& model, double t, const std::optional<BlockState>& rho0)
{
    const auto m = centered_moments(model, t, rho0);
    if (!(m.mean > 1e-300)) throw ZeroCounts("mandel_q: mean photon count vanishes");
    return m.excess / m.mean;
}

CountingRecord counting_record(const CountingModel& model, double t, int n_max, const std::optional<BlockState>& rho0)
{
    CountingRecord rec;
    rec.t = t;
    rec.pn = pn(model, t, n_max, rho0);
    double total = 0.0;
    for (double p : rec.pn) total += p;
    rec.remainder = 1.0 - total;
    rec.truncation_warning = rec.remainder > 1e-6;
    const auto m = centered_moments(model, t, rho0);
    rec.mean = m.mean;
    rec.second_factorial = m.second_factorial;
    rec.mandel_q = m.mean > 1e-300 ? m.excess / m.mean : std::numeric_limits<double>::quiet_NaN();
    return rec;
}

double line_shape(const StationaryModel& model) { return stationary_intensity(model); }

double line_shape(const ModelSpec& spec) { return line_shape(StationaryModel(spec)); }

RealSeries line_shape_sweep(const ModelSpec& spec, std::span<const double> detuning_grid, int threads)
{
    std::vector<double> grid(detuning_grid.begin(), detuning_grid.end());
    require_increasing_grid(grid, "line_shape_sweep");
    std::vector<double> values(grid.size());
    detail::parallel_for(grid.size(), threads, [&](std::size_t k) {
        ModelSpec s = spec;
        s.detuning = grid[k];
        values[k] = line_shape(s);
    });
    return make_series(SeriesKind::LineShape, "detuning", std::move(grid), std::move(values));
}

StationaryMandel stationary_mandel_coefficients(const CountingModel& model, const std::optional<BlockState>& rho0)
{
    const auto& dec = model.stationary.decomposition;
    const CMatrix& j = model.split.jump.matrix;
    const CMatrix& p = dec.projector.matrix;
    const CMatrix& r0 = dec.reduced_resolvent.matrix;
    const Eigen::RowVectorXcd tr = trace_functional(static_cast<std::size_t>(model.stationary.r_max()));
    const CVector x0 = initial_vector(model, rho0);

    // With (u - L)^-1 = P/u + R0 + O(u) and tr R0 = 0:
    //   Y'(u)  = (1/2) tr J (P/u + R0) x0 / u
    //   Y''(u) = tr J (P/u + R0) J (P/u + R0 - u R0^2) x0 / u
    const CVector jp_x0 = j * (p * x0);
    const CVector jr_x0 = j * (r0 * x0);
    const double lead1 = (tr * jp_x0).value().real();  // coefficient of u^-2 in 2 Y'
    const double c = (tr * jr_x0).value().real();
    const double lead2 = (tr * (j * (p * jp_x0))).value().real();  // coefficient of u^-3 in Y''
    const double sub2 = (tr * (j * (p * jr_x0))).value().real() + (tr * (j * (r0 * jp_x0))).value().real();

    StationaryMandel out;
    out.b = 0.5 * lead1;
    out.a = 0.5 * c;
    out.big_b = 0.5 * lead2;  // u^-3 <-> t^2 / 2
    out.big_a = sub2;

    const double i_st = stationary_intensity(model.stationary);
    if (!(std::abs(out.b) > 1e-300)) throw ZeroIntensity("stationary_mandel: stationary intensity vanishes");
    const double scale = std::max(1.0, std::abs(out.big_b));
    if (std::abs(out.big_b - 2.0 * out.b * out.b) > 1e-9 * scale) {
        throw NumericalFailure("stationary_mandel: leading coefficients violate B = 2 b^2");
    }
    if (std::abs(2.0 * out.b - i_st) > 1e-9 * std::max(1.0, i_st)) {
        throw NumericalFailure("stationary_mandel: line shape differs from 2 b");
    }
    out.q = out.big_a / out.b - 4.0 * out.a;
    return out;
}

double stationary_mandel(const CountingModel& model) { return stationary_mandel_coefficients(model).q; }

double stationary_mandel(const ModelSpec& spec) { return stationary_mandel(CountingModel(spec)); }

RealSeries mandel_sweep(const ModelSpec& spec, std::span<const double> detuning_grid, int threads)
{
    std::vector<double> grid(detuning_grid.begin(), detuning_grid.end());
    require_increasing_grid(grid, "mandel_sweep");
    std::vector<double> values(grid.size());
    detail::parallel_for(grid.size(), threads, [&](std::size_t k) {
        ModelSpec s = spec;
        s.detuning = grid[k];
        values[k] = stationary_mandel(s);
    });
    return make_series(SeriesKind::MandelQ, "detuning", std::move(grid), std::move(values));
}

BlochState BlochState::from_blocks(const BlockState& g)
{
    BlochState s;
    for (const auto& b : g.blocks) {
        s.u.push_back(0.5 * (b(0, 1) + b(1, 0)));
        s.v.push_back((b(0, 1) - b(1, 0)) / cplx(0.0, 2.0));
        s.w.push_back(0.5 * (b(1, 1) - b(0, 0)));
        s.y.push_back(0.5 * (b(1, 1) + b(0, 0)));
    }
    return s;
}

BlockState BlochState::to_blocks() const
{
    const cplx i(0.0, 1.0);
    BlockState g(u.size());
    for (std::size_t r = 0; r < u.size(); ++r) {
        g[r](0, 1) = u[r] + i * v[r];
        g[r](1, 0) = u[r] - i * v[r];
        g[r](1, 1) = y[r] + w[r];
        g[r](0, 0) = y[r] - w[r];
    }
    return g;
}

BlochState optical_bloch_rhs(const ModelSpec& spec, double s, const BlochState& st)
{
    require_valid(spec);
    if (!spec.extra_channels.empty()) {
        throw InvalidArgument("optical_bloch_rhs: extra jump channels have no Bloch-equation representation");
    }
    const auto n = static_cast<std::size_t>(spec.r_max());
    if (st.u.size() != n || st.v.size() != n || st.w.size() != n || st.y.size() != n) {
        throw DimensionMismatch("optical_bloch_rhs: state lengths do not match r_max");
    }
    const auto& phi = spec.rates.phi;
    const auto& gc = spec.rates.gamma_cross;
    const auto gt = effective_decays(spec);

    BlochState d;
    d.u.assign(n, 0.0);
    d.v.assign(n, 0.0);
    d.w.assign(n, 0.0);
    d.y.assign(n, 0.0);
    for (std::size_t r = 0; r < n; ++r) {
        const auto ri = static_cast<Eigen::Index>(r);
        const double delta = state_detuning(spec, static_cast<int>(r));
        const double omega = spec.per_state[r].omega_rabi;
        const double gamma = spec.per_state[r].gamma;
        const double phi_out = phi.col(ri).sum();
        const cplx wy = st.w[r] + st.y[r];

        cplx du = delta * st.v[r] - (0.5 * gt[r] + phi_out) * st.u[r];
        cplx dv = -delta * st.u[r] - omega * st.w[r] - (0.5 * gt[r] + phi_out) * st.v[r];
        cplx dw = omega * st.v[r] - 0.5 * (gt[r] + s * gamma) * wy - phi_out * st.w[r];
        cplx dy = -0.5 * (gt[r] - s * gamma) * wy - phi_out * st.y[r];
        for (std::size_t rp = 0; rp < n; ++rp) {
            if (rp == r) continue;
            const auto rpi = static_cast<Eigen::Index>(rp);
            const double f = phi(ri, rpi);
            const cplx cross = 0.5 * s * gc(ri, rpi) * (st.w[rp] + st.y[rp]);
            du += f * st.u[rp];
            dv += f * st.v[rp];
            dw += f * st.w[rp] - cross;
            dy += f * st.y[rp] + cross;
        }
        d.u[r] = du;
        d.v[r] = dv;
        d.w[r] = dw;
        d.y[r] = dy;
    }
    return d;
}

std::vector<double> pn(const ModelSpec& spec, double t, int n_max) { return pn(CountingModel(spec), t, n_max); }

double mean_counts(const ModelSpec& spec, double t) { return mean_counts(CountingModel(spec), t); }

double second_factorial(const ModelSpec& spec, double t) { return second_factorial(CountingModel(spec), t); }

double mandel_q(const ModelSpec& spec, double t) { return mandel_q(CountingModel(spec), t); }

}  // namespace smsfluor

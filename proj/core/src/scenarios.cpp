#include "smsfluor/scenarios.hpp"

#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

#include "smsfluor/errors.hpp"

namespace smsfluor {

namespace {

void require_nonneg(double v, const char* what)
{
    if (!(v >= 0.0) || !std::isfinite(v)) throw InvalidModel(std::string(what) + " must be finite and non-negative");
}

void require_two_state_light_assisted(const ModelSpec& spec, const char* what)
{
    require_valid(spec);
    if (spec.r_max() != 2) throw InvalidArgument(std::string(what) + ": requires a two-state model");
    if (spec.rates.phi.cwiseAbs().maxCoeff() != 0.0 || !spec.extra_channels.empty()) {
        throw InvalidArgument(std::string(what) + ": requires a light-assisted model (phi = 0, no extra channels)");
    }
}

}  // namespace

ModelSpec spectral_two_state(double gamma, double omega_rabi, double delta_omega, double phi, double detuning)
{
    require_nonneg(gamma, "gamma");
    require_nonneg(omega_rabi, "omega_rabi");
    require_nonneg(phi, "phi");
    ModelSpec spec = make_empty_spec(2);
    spec.space.labels = {"plus", "minus"};
    spec.per_state[0] = {delta_omega, gamma, omega_rabi};
    spec.per_state[1] = {-delta_omega, gamma, omega_rabi};
    spec.rates.phi(0, 1) = phi;
    spec.rates.phi(1, 0) = phi;
    spec.detuning = detuning;
    require_valid(spec);
    return spec;
}

ModelSpec lifetime_fluct(const std::vector<double>& gammas, const RateTable& phi, double omega_rabi,
                         double detuning)
{
    require_nonneg(omega_rabi, "omega_rabi");
    const int n = static_cast<int>(gammas.size());
    if (n < 1) throw InvalidModel("lifetime_fluct: need at least one state");
    ModelSpec spec = make_empty_spec(n);
    for (int r = 0; r < n; ++r) spec.per_state[static_cast<std::size_t>(r)] = {0.0, gammas[static_cast<std::size_t>(r)], omega_rabi};
    spec.rates.phi = phi;
    spec.detuning = detuning;
    require_valid(spec);
    return spec;
}

ModelSpec diffusion_chain(int n_sites, const std::vector<double>& omega_profile, double phi_hop, double gamma,
                          double detuning)
{
    if (n_sites < 2) throw InvalidModel("diffusion_chain: n_sites must be at least 2");
    if (omega_profile.size() != static_cast<std::size_t>(n_sites)) {
        throw InvalidModel("diffusion_chain: omega_profile length must equal n_sites");
    }
    require_nonneg(phi_hop, "phi_hop");
    ModelSpec spec = make_empty_spec(n_sites);
    for (int r = 0; r < n_sites; ++r) {
        spec.per_state[static_cast<std::size_t>(r)] = {0.0, gamma, omega_profile[static_cast<std::size_t>(r)]};
        if (r + 1 < n_sites) {
            spec.rates.phi(r + 1, r) = phi_hop;
            spec.rates.phi(r, r + 1) = phi_hop;
        }
    }
    spec.detuning = detuning;
    require_valid(spec);
    return spec;
}

ModelSpec light_assisted(const std::vector<double>& gammas, const RateTable& gamma_cross, double omega_rabi,
                         double detuning)
{
    require_nonneg(omega_rabi, "omega_rabi");
    const int n = static_cast<int>(gammas.size());
    if (n < 1) throw InvalidModel("light_assisted: need at least one state");
    ModelSpec spec = make_empty_spec(n);
    for (int r = 0; r < n; ++r) spec.per_state[static_cast<std::size_t>(r)] = {0.0, gammas[static_cast<std::size_t>(r)], omega_rabi};
    spec.rates.gamma_cross = gamma_cross;
    spec.detuning = detuning;
    require_valid(spec);
    return spec;
}

BlinkingApprox blinking_rates(const ModelSpec& spec)
{
    require_valid(spec);
    const int n = spec.r_max();
    const auto gt = effective_decays(spec);
    BlinkingApprox out;
    out.big_gamma = RateTable::Zero(n, n);
    out.intensities.resize(static_cast<std::size_t>(n));
    bool all_small = true;
    bool all_large = true;
    for (int r = 0; r < n; ++r) {
        const auto ur = static_cast<std::size_t>(r);
        const double omega = spec.per_state[ur].omega_rabi;
        const double d = state_detuning(spec, r);
        const double denom = gt[ur] * gt[ur] + 2.0 * omega * omega + 4.0 * d * d;
        const double sat = denom > 0.0 ? omega * omega / denom : 0.0;
        out.intensities[ur] = gt[ur] * sat;
        for (int rp = 0; rp < n; ++rp) {
            if (rp == r) continue;
            const double gc = spec.rates.gamma_cross(rp, r);
            out.big_gamma(rp, r) = gc * sat;
            if (gc == 0.0) continue;
            const double ratio = gc / spec.per_state[ur].gamma;
            if (!(ratio <= 0.1)) all_small = false;
            if (!(ratio >= 10.0)) all_large = false;
        }
    }
    out.valid = all_small || all_large;
    if (!out.valid) {
        out.warning = "emission-assisted rates are comparable to the radiative rates; the blinking approximation "
                      "is not justified";
    }
    return out;
}

std::vector<double> classical_blinking_populations(const BlinkingApprox& approx, const std::vector<double>& p0,
                                                   double t)
{
    const auto n = approx.big_gamma.rows();
    if (approx.big_gamma.cols() != n || static_cast<Eigen::Index>(p0.size()) != n) {
        throw DimensionMismatch("classical_blinking_populations: rate table and populations differ in size");
    }
    if (!(t >= 0.0) || !std::isfinite(t)) throw InvalidArgument("classical_blinking_populations: t must be >= 0");
    Eigen::VectorXd p = Eigen::Map<const Eigen::VectorXd>(p0.data(), n);
    if (t > 0.0) {
        Eigen::MatrixXd m = approx.big_gamma;
        for (Eigen::Index r = 0; r < n; ++r) m(r, r) = -approx.big_gamma.col(r).sum() + approx.big_gamma(r, r);
        const Eigen::MatrixXd prop = (t * m).exp();
        p = prop * p;
    }
    return {p.data(), p.data() + n};
}

double mandel_detuning_limit(const ModelSpec& spec)
{
    require_two_state_light_assisted(spec, "mandel_detuning_limit");
    const double g1 = spec.per_state[0].gamma;
    const double g2 = spec.per_state[1].gamma;
    const double g12 = spec.rates.gamma_cross(0, 1);
    const double g21 = spec.rates.gamma_cross(1, 0);
    const double sum = g12 + g21;
    if (!(sum > 0.0)) throw InvalidArgument("mandel_detuning_limit: both emission-assisted rates vanish");
    const double bracket = (g1 + g21) - (g2 + g12);
    return 2.0 * g12 * g21 * bracket * bracket / (sum * sum * (g1 * g12 + g2 * g21 + 2.0 * g12 * g21));
}

ModelSpec mapped_self_fluct(const ModelSpec& spec)
{
    require_two_state_light_assisted(spec, "mapped_self_fluct");
    const auto approx = blinking_rates(spec);
    const auto gt = effective_decays(spec);
    ModelSpec out = spec;
    for (std::size_t r = 0; r < 2; ++r) out.per_state[r].gamma = gt[r];
    out.rates.gamma_cross.setZero();
    out.rates.phi(1, 0) = approx.big_gamma(1, 0);
    out.rates.phi(0, 1) = approx.big_gamma(0, 1);
    require_valid(out);
    return out;
}

ModelSpec scaled_triplet(const ModelSpec& base, double detuning, double delta0, double omega_bar,
                         double gamma12_bar)
{
    require_two_state_light_assisted(base, "scaled_triplet");
    if (!(delta0 > 0.0)) throw InvalidArgument("scaled_triplet: delta0 must be positive");
    require_nonneg(omega_bar, "omega_bar");
    require_nonneg(gamma12_bar, "gamma12_bar");
    const double x = std::abs(detuning) / delta0;
    ModelSpec out = base;
    out.detuning = detuning;
    out.rates.gamma_cross(0, 1) += gamma12_bar * x;
    for (auto& p : out.per_state) p.omega_rabi += omega_bar * std::sqrt(x);
    require_valid(out);
    return out;
}

}  // namespace smsfluor

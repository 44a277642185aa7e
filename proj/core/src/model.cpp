#include "smsfluor/model.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include "smsfluor/errors.hpp"

namespace smsfluor {

const char* to_string(JumpOperator kind)
{
    switch (kind) {
    case JumpOperator::Identity: return "identity";
    case JumpOperator::Lower: return "lower";
    case JumpOperator::Raise: return "raise";
    case JumpOperator::UpperProjector: return "upper_projector";
    case JumpOperator::LowerProjector: return "lower_projector";
    }
    return "unknown";
}

std::optional<JumpOperator> jump_operator_from_string(const std::string& name)
{
    for (auto k : {JumpOperator::Identity, JumpOperator::Lower, JumpOperator::Raise,
                   JumpOperator::UpperProjector, JumpOperator::LowerProjector}) {
        if (name == to_string(k)) return k;
    }
    return std::nullopt;
}

Mat2 jump_matrix(JumpOperator kind)
{
    switch (kind) {
    case JumpOperator::Identity: return op::identity();
    case JumpOperator::Lower: return op::lower();
    case JumpOperator::Raise: return op::raise();
    case JumpOperator::UpperProjector: return op::upper_projector();
    case JumpOperator::LowerProjector: return op::lower_projector();
    }
    return op::identity();
}

ModelSpec make_empty_spec(int r_max)
{
    ModelSpec spec;
    spec.space.r_max = r_max;
    const auto n = static_cast<Eigen::Index>(std::max(r_max, 0));
    spec.per_state.assign(static_cast<std::size_t>(std::max(r_max, 0)), PerStateParams{});
    spec.rates.phi = RateTable::Zero(n, n);
    spec.rates.gamma_cross = RateTable::Zero(n, n);
    return spec;
}

namespace {

std::string index_path(const std::string& table, Eigen::Index i, Eigen::Index j)
{
    std::ostringstream os;
    os << table << '[' << i << "][" << j << ']';
    return os.str();
}

void check_table(const RateTable& t, const std::string& name, int r_max,
                 std::vector<Violation>& out)
{
    if (t.rows() != r_max || t.cols() != r_max) {
        std::ostringstream os;
        os << "shape " << t.rows() << 'x' << t.cols() << " does not match r_max=" << r_max;
        out.push_back({name, os.str()});
        return;
    }
    for (Eigen::Index i = 0; i < t.rows(); ++i) {
        for (Eigen::Index j = 0; j < t.cols(); ++j) {
            const double v = t(i, j);
            if (!std::isfinite(v)) {
                out.push_back({index_path(name, i, j), "rate is not finite"});
            } else if (v < 0.0) {
                out.push_back({index_path(name, i, j), "rate is negative"});
            } else if (i == j && v != 0.0) {
                out.push_back({index_path(name, i, j), "diagonal (self-transition) rate must be zero"});
            }
        }
    }
}

}  // namespace

std::vector<Violation> validate(const ModelSpec& spec)
{
    std::vector<Violation> out;
    const int r_max = spec.space.r_max;
    if (r_max < 1) {
        out.push_back({"space.r_max", "must be at least 1"});
        return out;
    }
    if (!spec.space.labels.empty() && spec.space.labels.size() != static_cast<std::size_t>(r_max)) {
        out.push_back({"space.labels", "length does not match r_max"});
    }
    if (spec.per_state.size() != static_cast<std::size_t>(r_max)) {
        std::ostringstream os;
        os << "length " << spec.per_state.size() << " does not match r_max=" << r_max;
        out.push_back({"per_state", os.str()});
    }
    for (std::size_t r = 0; r < spec.per_state.size(); ++r) {
        const auto& p = spec.per_state[r];
        const std::string base = "per_state[" + std::to_string(r) + "]";
        if (!std::isfinite(p.delta_omega)) out.push_back({base + ".delta_omega", "not finite"});
        if (!std::isfinite(p.gamma)) {
            out.push_back({base + ".gamma", "not finite"});
        } else if (p.gamma < 0.0) {
            out.push_back({base + ".gamma", "decay rate is negative"});
        }
        if (!std::isfinite(p.omega_rabi)) {
            out.push_back({base + ".omega_rabi", "not finite"});
        } else if (p.omega_rabi < 0.0) {
            out.push_back({base + ".omega_rabi", "Rabi frequency is negative"});
        }
    }
    check_table(spec.rates.phi, "rates.phi", r_max, out);
    check_table(spec.rates.gamma_cross, "rates.gamma_cross", r_max, out);

    std::set<JumpOperator> seen;
    for (std::size_t c = 0; c < spec.extra_channels.size(); ++c) {
        const auto& ch = spec.extra_channels[c];
        const std::string base = "extra_channels[" + std::to_string(c) + "]";
        if (!seen.insert(ch.kind).second) {
            out.push_back({base + ".kind", std::string("duplicate channel of kind ") + to_string(ch.kind)});
        }
        check_table(ch.eta, base + ".eta", r_max, out);
    }
    if (!std::isfinite(spec.detuning)) out.push_back({"detuning", "not finite"});

    // gamma~ finiteness only makes sense once shapes are consistent.
    if (out.empty()) {
        for (int r = 0; r < r_max; ++r) {
            if (!std::isfinite(effective_decay(spec, r))) {
                out.push_back({"per_state[" + std::to_string(r) + "]", "effective decay is not finite"});
            }
        }
    }
    return out;
}

void require_valid(const ModelSpec& spec)
{
    const auto violations = validate(spec);
    if (violations.empty()) return;
    std::ostringstream os;
    os << "invalid model:";
    for (const auto& v : violations) os << ' ' << v.path << ": " << v.message << ';';
    throw InvalidModel(os.str());
}

double effective_decay(const ModelSpec& spec, int r)
{
    if (r < 0 || r >= spec.space.r_max || static_cast<std::size_t>(r) >= spec.per_state.size()) {
        throw InvalidArgument("state index " + std::to_string(r) + " out of range");
    }
    return spec.per_state[static_cast<std::size_t>(r)].gamma + spec.rates.gamma_cross.col(r).sum();
}

std::vector<double> effective_decays(const ModelSpec& spec)
{
    std::vector<double> g(static_cast<std::size_t>(spec.space.r_max));
    for (int r = 0; r < spec.space.r_max; ++r) g[static_cast<std::size_t>(r)] = effective_decay(spec, r);
    return g;
}

double state_detuning(const ModelSpec& spec, int r)
{
    return spec.detuning - spec.per_state.at(static_cast<std::size_t>(r)).delta_omega;
}

namespace {

using Mat4 = Eigen::Matrix4cd;

// Superoperator of X -> A X B in the column-major 2x2 vectorization.
Mat4 sandwich(const Mat2& a, const Mat2& b)
{
    Mat4 s;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l) s(i + 2 * j, k + 2 * l) = a(i, k) * b(l, j);
    return s;
}

Mat4 left(const Mat2& a) { return sandwich(a, Mat2::Identity()); }
Mat4 right(const Mat2& b) { return sandwich(Mat2::Identity(), b); }
Mat4 anticommutator(const Mat2& a) { return left(a) + right(a); }

Mat2 rotating_hamiltonian(const ModelSpec& spec, int r)
{
    const double d = state_detuning(spec, r);
    const double omega = spec.per_state[static_cast<std::size_t>(r)].omega_rabi;
    return -0.5 * d * op::sigma_z() + 0.5 * omega * (op::raise() + op::lower());
}

const Mat2& excited_half()
{
    static const Mat2 d = 0.5 * op::raise() * op::lower();
    return d;
}

}  // namespace

SuperOp build_generator(const ModelSpec& spec)
{
    require_valid(spec);
    const int n = spec.space.r_max;
    SuperOp gen;
    gen.matrix = CMatrix::Zero(4 * n, 4 * n);

    const cplx I(0.0, 1.0);
    const Mat2 sig = op::lower();
    const Mat2 sigd = op::raise();
    const Mat4 emission = sandwich(sig, sigd);
    const Mat4 d_anti = anticommutator(excited_half());

    for (int r = 0; r < n; ++r) {
        auto diag = gen.matrix.block<4, 4>(4 * r, 4 * r);
        const Mat2 h = rotating_hamiltonian(spec, r);
        const double gamma = spec.per_state[static_cast<std::size_t>(r)].gamma;
        const double cross_out = spec.rates.gamma_cross.col(r).sum();
        const double phi_out = spec.rates.phi.col(r).sum();

        diag += -I * (left(h) - right(h));
        diag += -gamma * (d_anti - emission);
        diag += -cross_out * d_anti;
        diag += -phi_out * Mat4::Identity();

        for (int rp = 0; rp < n; ++rp) {
            if (rp == r) continue;
            auto off = gen.matrix.block<4, 4>(4 * r, 4 * rp);
            off += spec.rates.phi(r, rp) * Mat4::Identity();
            off += spec.rates.gamma_cross(r, rp) * emission;
        }

        for (const auto& ch : spec.extra_channels) {
            const Mat2 a = jump_matrix(ch.kind);
            const Mat2 ad = a.adjoint();
            diag += -0.5 * ch.eta.col(r).sum() * anticommutator(ad * a);
            for (int rp = 0; rp < n; ++rp) {
                if (rp == r) continue;
                gen.matrix.block<4, 4>(4 * r, 4 * rp) += ch.eta(r, rp) * sandwich(a, ad);
            }
        }
    }
    return gen;
}

BlockState apply_generator(const ModelSpec& spec, const BlockState& x)
{
    require_valid(spec);
    const int n = spec.space.r_max;
    if (x.size() != static_cast<std::size_t>(n)) {
        throw DimensionMismatch("block state has " + std::to_string(x.size()) +
                                " blocks, model has r_max=" + std::to_string(n));
    }
    const cplx I(0.0, 1.0);
    const Mat2 sig = op::lower();
    const Mat2 sigd = op::raise();
    const Mat2& d = excited_half();

    BlockState out(x.size());
    for (int r = 0; r < n; ++r) {
        const auto ur = static_cast<std::size_t>(r);
        const Mat2& rho = x[ur];
        const Mat2 h = rotating_hamiltonian(spec, r);
        const double gamma = spec.per_state[ur].gamma;
        Mat2 acc = -I * (h * rho - rho * h);
        acc += -gamma * ((d * rho + rho * d) - sig * rho * sigd);

        for (int rp = 0; rp < n; ++rp) {
            if (rp == r) continue;
            const auto urp = static_cast<std::size_t>(rp);
            // loss out of r, gain from rp
            acc -= spec.rates.phi(rp, r) * rho;
            acc += spec.rates.phi(r, rp) * x[urp];
            acc -= spec.rates.gamma_cross(rp, r) * (d * rho + rho * d);
            acc += spec.rates.gamma_cross(r, rp) * (sig * x[urp] * sigd);
        }
        for (const auto& ch : spec.extra_channels) {
            const Mat2 a = jump_matrix(ch.kind);
            const Mat2 ad = a.adjoint();
            const Mat2 ada = ad * a;
            for (int rp = 0; rp < n; ++rp) {
                if (rp == r) continue;
                acc -= 0.5 * ch.eta(rp, r) * (ada * rho + rho * ada);
                acc += ch.eta(r, rp) * (a * x[static_cast<std::size_t>(rp)] * ad);
            }
        }
        out[ur] = acc;
    }
    return out;
}

}  // namespace smsfluor

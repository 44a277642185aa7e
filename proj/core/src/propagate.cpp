#include <cmath>

#include "smsfluor/detail/linalg.hpp"
#include "smsfluor/errors.hpp"

namespace smsfluor::detail {

namespace {

using Toeplitz = std::vector<CMatrix>;

double norm1(const CMatrix& m) { return m.cwiseAbs().colwise().sum().maxCoeff(); }

// (T E) for T = (diag, sub, 0, ...).
Toeplitz apply_generator(const CMatrix& diag, const CMatrix& sub, const Toeplitz& e)
{
    Toeplitz out(e.size());
    for (std::size_t n = 0; n < e.size(); ++n) {
        out[n] = diag * e[n];
        if (n > 0) out[n].noalias() += sub * e[n - 1];
    }
    return out;
}

Toeplitz square(const Toeplitz& e)
{
    Toeplitz out(e.size());
    for (std::size_t n = 0; n < e.size(); ++n) {
        out[n] = e[0] * e[n];
        for (std::size_t j = 1; j <= n; ++j) out[n].noalias() += e[j] * e[n - j];
    }
    return out;
}

}  // namespace

std::vector<CVector> toeplitz_chain_action(const CMatrix& diag, const CMatrix& sub, const CVector& x0,
                                           int levels, double t)
{
    if (levels < 1) throw InvalidArgument("toeplitz_chain_action: need at least one level");
    if (!(t >= 0.0)) throw InvalidArgument("toeplitz_chain_action: time must be non-negative");
    if (diag.rows() != diag.cols() || sub.rows() != diag.rows() || sub.cols() != diag.cols() ||
        x0.size() != diag.rows()) {
        throw DimensionMismatch("toeplitz_chain_action: inconsistent block sizes");
    }
    if (!diag.allFinite() || !sub.allFinite() || !x0.allFinite()) {
        throw NumericalFailure("toeplitz_chain_action: non-finite input");
    }
    const auto d = diag.rows();
    const auto nlev = static_cast<std::size_t>(levels);

    const double bound = t * (norm1(diag) + (levels > 1 ? norm1(sub) : 0.0));
    int squarings = 0;
    if (bound > 0.5) squarings = static_cast<int>(std::ceil(std::log2(bound / 0.5)));
    const double h = std::ldexp(t, -squarings);
    const CMatrix hd = h * diag;
    const CMatrix hs = h * sub;

    // Horner evaluation of sum_k (hT)^k / k! up to order 18.
    constexpr int order = 18;
    Toeplitz e(nlev, CMatrix::Zero(d, d));
    e[0] = CMatrix::Identity(d, d);
    for (int k = order; k >= 1; --k) {
        Toeplitz te = apply_generator(hd, hs, e);
        for (std::size_t n = 0; n < nlev; ++n) e[n] = te[n] / static_cast<double>(k);
        e[0] += CMatrix::Identity(d, d);
    }
    for (int s = 0; s < squarings; ++s) e = square(e);

    std::vector<CVector> out(nlev);
    for (std::size_t n = 0; n < nlev; ++n) {
        out[n] = e[n] * x0;
        if (!out[n].allFinite()) throw NumericalFailure("toeplitz_chain_action: non-finite result");
    }
    return out;
}

}  // namespace smsfluor::detail

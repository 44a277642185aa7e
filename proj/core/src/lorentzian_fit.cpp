#include <algorithm>
#include <cmath>
#include <limits>

#include <unsupported/Eigen/NonLinearOptimization>

#include "smsfluor/errors.hpp"
#include "smsfluor/spectrum.hpp"

namespace smsfluor {

namespace {

struct LorentzianResidual {
    using Scalar = double;
    using InputType = Eigen::VectorXd;
    using ValueType = Eigen::VectorXd;
    using JacobianType = Eigen::MatrixXd;
    enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };

    std::span<const double> x;
    std::span<const double> y;
    int n_params;

    int inputs() const { return n_params; }
    int values() const { return static_cast<int>(x.size()); }

    // p = (amplitude, center, hwhm, offset, curvature)
    int operator()(const Eigen::VectorXd& p, Eigen::VectorXd& r) const
    {
        for (std::size_t k = 0; k < x.size(); ++k) {
            const double d = x[k] - p(1);
            const double z = d / p(2);
            double model = p(0) / (1.0 + z * z);
            if (n_params == 5) model += p(3) + p(4) * d * d;
            r(static_cast<Eigen::Index>(k)) = model - y[k];
        }
        return 0;
    }

    int df(const Eigen::VectorXd& p, Eigen::MatrixXd& jac) const
    {
        for (std::size_t k = 0; k < x.size(); ++k) {
            const auto i = static_cast<Eigen::Index>(k);
            const double d = x[k] - p(1);
            const double z = d / p(2);
            const double q = 1.0 / (1.0 + z * z);
            jac(i, 0) = q;
            jac(i, 1) = p(0) * q * q * 2.0 * d / (p(2) * p(2));
            jac(i, 2) = p(0) * q * q * 2.0 * d * d / (p(2) * p(2) * p(2));
            if (n_params == 5) {
                jac(i, 1) -= 2.0 * p(4) * d;
                jac(i, 3) = 1.0;
                jac(i, 4) = d * d;
            }
        }
        return 0;
    }
};

}  // namespace

LorentzianFit fit_lorentzian(std::span<const double> x, std::span<const double> y, double hwhm_guess,
                             bool with_background)
{
    if (x.size() != y.size()) throw InvalidArgument("fit_lorentzian: x and y differ in length");
    const int n_params = with_background ? 5 : 3;
    if (static_cast<int>(x.size()) < n_params + 1) throw InvalidArgument("fit_lorentzian: too few samples");
    if (!(hwhm_guess > 0.0)) throw InvalidArgument("fit_lorentzian: width guess must be positive");

    const auto peak = std::max_element(y.begin(), y.end()) - y.begin();
    const double y_min = *std::min_element(y.begin(), y.end());
    Eigen::VectorXd p(n_params);
    p(0) = with_background ? y[static_cast<std::size_t>(peak)] - y_min : y[static_cast<std::size_t>(peak)];
    p(1) = x[static_cast<std::size_t>(peak)];
    p(2) = hwhm_guess;
    if (with_background) {
        p(3) = y_min;
        p(4) = 0.0;
    }

    LorentzianResidual functor{x, y, n_params};
    Eigen::LevenbergMarquardt<LorentzianResidual> lm(functor);
    lm.parameters.maxfev = 2000;
    lm.parameters.xtol = 1e-12;
    lm.parameters.ftol = 1e-12;
    const auto status = lm.minimize(p);

    LorentzianFit fit;
    fit.amplitude = p(0);
    fit.center = p(1);
    fit.hwhm = std::abs(p(2));
    if (with_background) {
        fit.offset = p(3);
        fit.curvature = p(4);
    }
    Eigen::VectorXd r(static_cast<Eigen::Index>(x.size()));
    functor(p, r);
    fit.rms_residual = std::sqrt(r.squaredNorm() / static_cast<double>(x.size()));
    fit.converged = status == Eigen::LevenbergMarquardtSpace::RelativeReductionTooSmall ||
                    status == Eigen::LevenbergMarquardtSpace::RelativeErrorTooSmall ||
                    status == Eigen::LevenbergMarquardtSpace::RelativeErrorAndReductionTooSmall ||
                    status == Eigen::LevenbergMarquardtSpace::CosinusTooSmall ||
                    status == Eigen::LevenbergMarquardtSpace::FtolTooSmall ||
                    status == Eigen::LevenbergMarquardtSpace::XtolTooSmall ||
                    status == Eigen::LevenbergMarquardtSpace::GtolTooSmall;
    return fit;
}

double fwhm_of_peak(std::span<const double> x, std::span<const double> y)
{
    if (x.size() != y.size() || x.size() < 3) throw InvalidArgument("fwhm_of_peak: need matching samples");
    const auto k = static_cast<std::size_t>(std::max_element(y.begin(), y.end()) - y.begin());
    const double half = 0.5 * y[k];
    const double nan = std::numeric_limits<double>::quiet_NaN();

    double left = nan;
    for (std::size_t i = k; i > 0; --i) {
        if (y[i - 1] <= half) {
            left = x[i - 1] + (half - y[i - 1]) * (x[i] - x[i - 1]) / (y[i] - y[i - 1]);
            break;
        }
    }
    double right = nan;
    for (std::size_t i = k; i + 1 < y.size(); ++i) {
        if (y[i + 1] <= half) {
            right = x[i] + (y[i] - half) * (x[i + 1] - x[i]) / (y[i] - y[i + 1]);
            break;
        }
    }
    return right - left;
}

std::vector<double> local_maxima(std::span<const double> x, std::span<const double> y)
{
    if (x.size() != y.size()) throw InvalidArgument("local_maxima: x and y differ in length");
    std::vector<double> out;
    for (std::size_t i = 1; i + 1 < y.size(); ++i) {
        if (!(y[i] > y[i - 1] && y[i] > y[i + 1])) continue;
        // vertex of the parabola through the three samples
        const double x0 = x[i - 1], x1 = x[i], x2 = x[i + 1];
        const double y0 = y[i - 1], y1 = y[i], y2 = y[i + 1];
        const double denom = (x0 - x1) * (x0 - x2) * (x1 - x2);
        const double a = (x2 * (y1 - y0) + x1 * (y0 - y2) + x0 * (y2 - y1)) / denom;
        const double b = (x2 * x2 * (y0 - y1) + x1 * x1 * (y2 - y0) + x0 * x0 * (y1 - y2)) / denom;
        out.push_back(a < 0.0 ? -b / (2.0 * a) : x1);
    }
    return out;
}

}  // namespace smsfluor

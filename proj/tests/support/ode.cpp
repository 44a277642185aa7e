#include "ode.hpp"

#include <boost/numeric/odeint.hpp>

namespace oracle {

std::vector<std::complex<double>> integrate(const ComplexRhs& rhs, std::vector<std::complex<double>> x0, double t,
                                            double abs_tol, double rel_tol)
{
    namespace odeint = boost::numeric::odeint;
    using State = std::vector<double>;
    const std::size_t n = x0.size();

    State x(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        x[2 * i] = x0[i].real();
        x[2 * i + 1] = x0[i].imag();
    }
    std::vector<std::complex<double>> zin(n), zout(n);
    auto system = [&](const State& s, State& ds, double) {
        for (std::size_t i = 0; i < n; ++i) zin[i] = {s[2 * i], s[2 * i + 1]};
        rhs(zin, zout);
        for (std::size_t i = 0; i < n; ++i) {
            ds[2 * i] = zout[i].real();
            ds[2 * i + 1] = zout[i].imag();
        }
    };
    if (t > 0.0) {
        auto stepper = odeint::make_controlled(abs_tol, rel_tol, odeint::runge_kutta_fehlberg78<State>());
        odeint::integrate_adaptive(stepper, system, x, 0.0, t, t / 100.0);
    }
    for (std::size_t i = 0; i < n; ++i) x0[i] = {x[2 * i], x[2 * i + 1]};
    return x0;
}

}  // namespace oracle

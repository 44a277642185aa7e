#include "smsfluor/steady.hpp"

#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/MatrixFunctions>

#include "smsfluor/detail/linalg.hpp"
#include "smsfluor/errors.hpp"

namespace smsfluor {

namespace {

bool all_finite(const CMatrix& m)
{
    return m.allFinite();
}

void require_square_generator(const SuperOp& generator)
{
    if (generator.matrix.rows() != generator.matrix.cols() || generator.matrix.rows() % 4 != 0 ||
        generator.matrix.rows() == 0) {
        throw DimensionMismatch("generator must be square with dimension 4 * r_max");
    }
}

}  // namespace

BlockState evolve(const SuperOp& generator, const BlockState& x0, double t)
{
    require_square_generator(generator);
    if (!(t >= 0.0)) throw InvalidArgument("evolve: time must be non-negative");
    if (static_cast<Eigen::Index>(4 * x0.size()) != generator.dim()) {
        throw DimensionMismatch("evolve: state does not match generator dimension");
    }
    if (!all_finite(generator.matrix)) throw NumericalFailure("evolve: generator has non-finite entries");
    const CVector v = x0.to_vector();
    if (!v.allFinite()) throw NumericalFailure("evolve: initial state has non-finite entries");
    if (t == 0.0) return x0;
    const CMatrix prop = (t * generator.matrix).exp();
    const CVector out = prop * v;
    if (!out.allFinite()) throw NumericalFailure("evolve: propagation produced non-finite values");
    return BlockState::from_vector(out);
}

int numerical_nullity(const SuperOp& generator)
{
    require_square_generator(generator);
    const auto& m = generator.matrix;
    Eigen::BDCSVD<CMatrix> svd(m);
    const double threshold = static_cast<double>(m.rows()) * std::numeric_limits<double>::epsilon() *
                             m.norm();
    int zeros = 0;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
        if (svd.singularValues()(i) < threshold) ++zeros;
    }
    return zeros;
}

BlockState steady_state(const SuperOp& generator)
{
    require_square_generator(generator);
    if (!all_finite(generator.matrix)) throw NumericalFailure("steady_state: generator has non-finite entries");
    const int nullity = numerical_nullity(generator);
    if (nullity != 1) {
        throw NullSpaceDegenerate("steady_state: generator has numerical nullity " + std::to_string(nullity) +
                                      " (expected 1; configurational space is disconnected or reducible)",
                                  nullity);
    }
    const std::size_t r_max = generator.r_max();
    CMatrix a = generator.matrix;
    a.row(0) = trace_functional(r_max);
    CVector rhs = CVector::Zero(a.rows());
    rhs(0) = 1.0;
    const CVector sol = a.partialPivLu().solve(rhs);

    BlockState ss = BlockState::from_vector(sol);
    for (auto& b : ss.blocks) b = 0.5 * (b + b.adjoint()).eval();
    const cplx tr = ss.total_trace();
    for (auto& b : ss.blocks) b /= tr.real();

    for (std::size_t r = 0; r < ss.size(); ++r) {
        Eigen::SelfAdjointEigenSolver<Mat2> es(ss[r], Eigen::EigenvaluesOnly);
        if (es.eigenvalues().minCoeff() < -1e-10) {
            throw NumericalFailure("steady_state: block " + std::to_string(r) +
                                   " is not positive semidefinite (eigenvalue " +
                                   std::to_string(es.eigenvalues().minCoeff()) + ")");
        }
    }
    return ss;
}

BlockState resolve(const SuperOp& generator, cplx u, const BlockState& v)
{
    require_square_generator(generator);
    if (static_cast<Eigen::Index>(4 * v.size()) != generator.dim()) {
        throw DimensionMismatch("resolve: state does not match generator dimension");
    }
    return BlockState::from_vector(detail::shifted_solve(generator.matrix, u, v.to_vector()));
}

SteadyDecomposition laurent_decomposition(const SuperOp& generator)
{
    SteadyDecomposition out;
    out.steady = steady_state(generator);
    const auto n = generator.dim();
    const CVector s = out.steady.to_vector();
    const Eigen::RowVectorXcd tr = trace_functional(generator.r_max());
    out.projector.matrix = s * tr;

    // (P - L) acts as Id on range(P) and as -L on its complement, so
    // (P - L)^-1 (Id - P) = R0.
    const CMatrix deflated = out.projector.matrix - generator.matrix;
    const CMatrix complement = CMatrix::Identity(n, n) - out.projector.matrix;
    Eigen::PartialPivLU<CMatrix> lu(deflated);
    out.reduced_resolvent.matrix = lu.solve(complement);
    if (!out.reduced_resolvent.matrix.allFinite()) {
        throw NumericalFailure("laurent_decomposition: deflated solve produced non-finite values");
    }
    return out;
}

double slowest_relaxation_rate(const SuperOp& generator)
{
    require_square_generator(generator);
    return detail::slowest_rate(generator.matrix);
}

namespace detail {

CVector shifted_solve(const CMatrix& a, cplx u, const CVector& v)
{
    const auto n = a.rows();
    const CMatrix m = u * CMatrix::Identity(n, n) - a;
    Eigen::PartialPivLU<CMatrix> lu(m);
    // rcond * ||M||_1 estimates 1 / ||M^-1||_1, the distance of u to the spectrum.
    const double norm1 = m.cwiseAbs().colwise().sum().maxCoeff();
    if (!(lu.rcond() * norm1 > 1e-12)) {
        throw SingularShift("resolve: shift u = (" + std::to_string(u.real()) + ", " +
                            std::to_string(u.imag()) + ") lies on the generator spectrum");
    }
    CVector x = lu.solve(v);
    // one step of iterative refinement
    CVector r = v - m * x;
    x += lu.solve(r);
    r = v - m * x;
    const double vn = v.norm();
    if (!x.allFinite() || r.norm() > 1e-10 * std::max(vn, std::numeric_limits<double>::min())) {
        throw SingularShift("resolve: residual too large; shift is (numerically) on the spectrum");
    }
    return x;
}

double slowest_rate(const CMatrix& a)
{
    Eigen::ComplexEigenSolver<CMatrix> es(a, false);
    const auto& ev = es.eigenvalues();
    const double tol = static_cast<double>(a.rows()) * std::numeric_limits<double>::epsilon() * a.norm() * 10.0;
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        const double rate = -ev(i).real();
        if (std::abs(ev(i)) > tol && rate < best) best = rate;
    }
    return best;
}

}  // namespace detail

}  // namespace smsfluor

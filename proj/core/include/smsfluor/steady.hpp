#pragma once

#include "smsfluor/block_state.hpp"

namespace smsfluor {

// exp(t L) x0 by Pade scaling-and-squaring. Throws InvalidArgument for
// t < 0 and NumericalFailure on non-finite input.
BlockState evolve(const SuperOp& generator, const BlockState& x0, double t);

// Number of singular values of L below dim * eps * ||L||_F.
int numerical_nullity(const SuperOp& generator);

// Unique stationary state normalized to unit total trace. Throws
// NullSpaceDegenerate when the numerical nullity differs from 1 and
// NumericalFailure when a block has an eigenvalue below -1e-10.
BlockState steady_state(const SuperOp& generator);

// Solves (u - L) x = v. Throws SingularShift when u sits on the spectrum.
BlockState resolve(const SuperOp& generator, cplx u, const BlockState& v);

// Laurent data of the resolvent at u = 0:
//   (u - L)^-1 = projector / u + reduced_resolvent + O(u)
// with projector = |steady><trace| and reduced_resolvent the negated
// Drazin inverse of L (R0 L = L R0 = P - Id, R0 P = P R0 = 0).
struct SteadyDecomposition {
    BlockState steady;
    SuperOp projector;
    SuperOp reduced_resolvent;
};

SteadyDecomposition laurent_decomposition(const SuperOp& generator);

// Smallest -Re(lambda) over the non-zero eigenvalues of L.
double slowest_relaxation_rate(const SuperOp& generator);

}  // namespace smsfluor

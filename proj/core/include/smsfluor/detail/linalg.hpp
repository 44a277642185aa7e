#pragma once

#include <vector>

#include "smsfluor/block_state.hpp"

namespace smsfluor::detail {

// Solves (u - a) x = v with one refinement step; throws SingularShift when
// u is within 1e-12 of the spectrum of a or the residual exceeds 1e-10 |v|.
CVector shifted_solve(const CMatrix& a, cplx u, const CVector& v);

// Smallest decay rate -Re(lambda) over the non-zero eigenvalues of a.
double slowest_rate(const CMatrix& a);

// Propagates the chain
//   x_0' = diag x_0,   x_n' = diag x_n + sub x_{n-1}   (n = 1..levels-1)
// from (x0, 0, ..., 0) over time t. This is the first block column of the
// exponential of a block lower-bidiagonal Toeplitz matrix, computed by
// Taylor scaling-and-squaring inside the truncated Toeplitz algebra so the
// cost grows with levels^2 blocks of size dim(diag) instead of the full
// (levels * dim)^3.
std::vector<CVector> toeplitz_chain_action(const CMatrix& diag, const CMatrix& sub, const CVector& x0,
                                           int levels, double t);

// Minimal fixed-size worker pool loop: calls fn(i) for i in [0, n) on up to
// `threads` threads. Each index is touched by exactly one call.
template <class Fn>
void parallel_for(std::size_t n, int threads, Fn&& fn);

}  // namespace smsfluor::detail

#include "smsfluor/detail/parallel.hpp"

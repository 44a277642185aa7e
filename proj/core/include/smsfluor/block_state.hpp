#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace smsfluor {

using cplx = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

// Two-level operators in the basis {|a> (ground), |b> (excited)}.
namespace op {
Mat2 identity();
Mat2 lower();             // sigma = |a><b|
Mat2 raise();             // sigma^dagger = |b><a|
Mat2 upper_projector();   // |b><b|
Mat2 lower_projector();   // |a><a|
Mat2 sigma_z();           // |b><b| - |a><a|
}  // namespace op

// Offset of each 2x2 entry inside a vectorized block (column-major).
namespace slot {
inline constexpr int aa = 0;
inline constexpr int ba = 1;
inline constexpr int ab = 2;
inline constexpr int bb = 3;
}  // namespace slot

// The tuple of auxiliary 2x2 matrices {rho_R}, one per configurational
// state. Physical states have unit total trace and Hermitian blocks; the
// type does not enforce either so it can also carry QRT seeds.
struct BlockState {
    std::vector<Mat2> blocks;

    BlockState() = default;
    explicit BlockState(std::size_t r_max) : blocks(r_max, Mat2::Zero()) {}
    explicit BlockState(std::vector<Mat2> b) : blocks(std::move(b)) {}

    std::size_t size() const { return blocks.size(); }
    Mat2& operator[](std::size_t r) { return blocks[r]; }
    const Mat2& operator[](std::size_t r) const { return blocks[r]; }

    // Block-major, each block column-major over (aa, ba, ab, bb).
    CVector to_vector() const;
    static BlockState from_vector(const CVector& v);

    cplx total_trace() const;
    Mat2 system_state() const;  // sum over R
    double norm() const;        // Frobenius norm of the whole tuple

    // Single-block state rho placed in block r of an r_max tuple.
    static BlockState localized(std::size_t r_max, std::size_t r, const Mat2& rho);
};

BlockState operator+(const BlockState& x, const BlockState& y);
BlockState operator-(const BlockState& x, const BlockState& y);
BlockState operator*(cplx c, const BlockState& x);

// P_R = Tr rho_R.
std::vector<double> config_populations(const BlockState& x);

// Row vector of the total-trace functional on the vectorized space.
Eigen::RowVectorXcd trace_functional(std::size_t r_max);

// A dense generator acting on vectorized BlockStates.
struct SuperOp {
    CMatrix matrix;

    Eigen::Index dim() const { return matrix.rows(); }
    std::size_t r_max() const { return static_cast<std::size_t>(matrix.rows() / 4); }
    BlockState apply(const BlockState& x) const;
};

}  // namespace smsfluor

#include "smsfluor/block_state.hpp"

#include <cmath>

#include "smsfluor/errors.hpp"

namespace smsfluor {

namespace op {
Mat2 identity() { return Mat2::Identity(); }

Mat2 lower()
{
    Mat2 m = Mat2::Zero();
    m(0, 1) = 1.0;
    return m;
}

Mat2 raise()
{
    Mat2 m = Mat2::Zero();
    m(1, 0) = 1.0;
    return m;
}

Mat2 upper_projector()
{
    Mat2 m = Mat2::Zero();
    m(1, 1) = 1.0;
    return m;
}

Mat2 lower_projector()
{
    Mat2 m = Mat2::Zero();
    m(0, 0) = 1.0;
    return m;
}

Mat2 sigma_z() { return upper_projector() - lower_projector(); }
}  // namespace op

CVector BlockState::to_vector() const
{
    CVector v(4 * static_cast<Eigen::Index>(blocks.size()));
    for (std::size_t r = 0; r < blocks.size(); ++r) {
        const auto o = 4 * static_cast<Eigen::Index>(r);
        v(o + slot::aa) = blocks[r](0, 0);
        v(o + slot::ba) = blocks[r](1, 0);
        v(o + slot::ab) = blocks[r](0, 1);
        v(o + slot::bb) = blocks[r](1, 1);
    }
    return v;
}

BlockState BlockState::from_vector(const CVector& v)
{
    if (v.size() % 4 != 0) {
        throw DimensionMismatch("vectorized block state length must be a multiple of 4");
    }
    BlockState x(static_cast<std::size_t>(v.size() / 4));
    for (std::size_t r = 0; r < x.size(); ++r) {
        const auto o = 4 * static_cast<Eigen::Index>(r);
        x.blocks[r](0, 0) = v(o + slot::aa);
        x.blocks[r](1, 0) = v(o + slot::ba);
        x.blocks[r](0, 1) = v(o + slot::ab);
        x.blocks[r](1, 1) = v(o + slot::bb);
    }
    return x;
}

cplx BlockState::total_trace() const
{
    cplx t = 0.0;
    for (const auto& b : blocks) t += b.trace();
    return t;
}

Mat2 BlockState::system_state() const
{
    Mat2 s = Mat2::Zero();
    for (const auto& b : blocks) s += b;
    return s;
}

double BlockState::norm() const
{
    double acc = 0.0;
    for (const auto& b : blocks) acc += b.squaredNorm();
    return std::sqrt(acc);
}

BlockState BlockState::localized(std::size_t r_max, std::size_t r, const Mat2& rho)
{
    if (r >= r_max) throw InvalidArgument("block index out of range");
    BlockState x(r_max);
    x.blocks[r] = rho;
    return x;
}

namespace {
void require_same_size(const BlockState& x, const BlockState& y)
{
    if (x.size() != y.size()) throw DimensionMismatch("block states have different r_max");
}
}  // namespace

BlockState operator+(const BlockState& x, const BlockState& y)
{
    require_same_size(x, y);
    BlockState z(x.size());
    for (std::size_t r = 0; r < x.size(); ++r) z.blocks[r] = x.blocks[r] + y.blocks[r];
    return z;
}

BlockState operator-(const BlockState& x, const BlockState& y)
{
    require_same_size(x, y);
    BlockState z(x.size());
    for (std::size_t r = 0; r < x.size(); ++r) z.blocks[r] = x.blocks[r] - y.blocks[r];
    return z;
}

BlockState operator*(cplx c, const BlockState& x)
{
    BlockState z(x.size());
    for (std::size_t r = 0; r < x.size(); ++r) z.blocks[r] = c * x.blocks[r];
    return z;
}

std::vector<double> config_populations(const BlockState& x)
{
    std::vector<double> p;
    p.reserve(x.size());
    for (const auto& b : x.blocks) p.push_back(b.trace().real());
    return p;
}

Eigen::RowVectorXcd trace_functional(std::size_t r_max)
{
    Eigen::RowVectorXcd t = Eigen::RowVectorXcd::Zero(4 * static_cast<Eigen::Index>(r_max));
    for (std::size_t r = 0; r < r_max; ++r) {
        t(4 * static_cast<Eigen::Index>(r) + slot::aa) = 1.0;
        t(4 * static_cast<Eigen::Index>(r) + slot::bb) = 1.0;
    }
    return t;
}

BlockState SuperOp::apply(const BlockState& x) const
{
    if (static_cast<Eigen::Index>(4 * x.size()) != dim()) {
        throw DimensionMismatch("block state does not match generator dimension");
    }
    return BlockState::from_vector(matrix * x.to_vector());
}

}  // namespace smsfluor

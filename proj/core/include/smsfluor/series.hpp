#pragma once

#include <complex>
#include <string>
#include <vector>

#include "smsfluor/errors.hpp"

namespace smsfluor {

enum class SeriesKind { C1, C2, G2, SpectrumInc, MandelQ, MeanCounts, LineShape, Populations };

const char* to_string(SeriesKind kind);

// Tagged grid of (abscissa, value) pairs. The abscissa is strictly
// increasing; construct through make_series to have that checked.
template <class T>
struct Series {
    SeriesKind kind = SeriesKind::C1;
    std::string abscissa_unit;
    std::vector<double> abscissa;
    std::vector<T> values;

    std::size_t size() const { return abscissa.size(); }
};

using RealSeries = Series<double>;
using ComplexSeries = Series<std::complex<double>>;

// Throws InvalidArgument unless the grid is finite and strictly increasing.
void require_increasing_grid(const std::vector<double>& grid, const char* what);

template <class T>
Series<T> make_series(SeriesKind kind, std::string unit, std::vector<double> abscissa, std::vector<T> values)
{
    require_increasing_grid(abscissa, to_string(kind));
    Series<T> s;
    s.kind = kind;
    s.abscissa_unit = std::move(unit);
    s.abscissa = std::move(abscissa);
    s.values = std::move(values);
    if (s.values.size() != s.abscissa.size()) {
        throw InvalidArgument("series abscissa and values have different lengths");
    }
    return s;
}

// Grid helpers shared by the CLI and tests.
std::vector<double> linear_grid(double start, double stop, int count);
std::vector<double> log_grid(double start, double stop, int count);
// 0 plus +/- log_grid(min_abs, max_abs, count_per_side), sorted.
std::vector<double> symmetric_log_grid(double min_abs, double max_abs, int count_per_side);

}  // namespace smsfluor

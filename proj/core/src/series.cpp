#include "smsfluor/series.hpp"

#include <algorithm>
#include <cmath>

#include "smsfluor/errors.hpp"

namespace smsfluor {

const char* to_string(SeriesKind kind)
{
    switch (kind) {
    case SeriesKind::C1: return "C1";
    case SeriesKind::C2: return "C2";
    case SeriesKind::G2: return "G2";
    case SeriesKind::SpectrumInc: return "SpectrumInc";
    case SeriesKind::MandelQ: return "MandelQ";
    case SeriesKind::MeanCounts: return "MeanCounts";
    case SeriesKind::LineShape: return "LineShape";
    case SeriesKind::Populations: return "Populations";
    }
    return "unknown";
}

void require_increasing_grid(const std::vector<double>& grid, const char* what)
{
    if (grid.empty()) throw InvalidArgument(std::string(what) + ": grid is empty or malformed");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!std::isfinite(grid[i])) throw InvalidArgument(std::string(what) + ": grid has non-finite entries");
        if (i > 0 && !(grid[i] > grid[i - 1])) {
            throw InvalidArgument(std::string(what) + ": grid must be strictly increasing");
        }
    }
}

std::vector<double> linear_grid(double start, double stop, int count)
{
    if (count < 2) throw InvalidArgument("linear_grid: count must be at least 2");
    if (!(stop > start)) throw InvalidArgument("linear_grid: stop must exceed start");
    std::vector<double> g(static_cast<std::size_t>(count));
    const double step = (stop - start) / (count - 1);
    for (int i = 0; i < count; ++i) g[static_cast<std::size_t>(i)] = start + step * i;
    g.back() = stop;
    return g;
}

std::vector<double> log_grid(double start, double stop, int count)
{
    if (count < 2) throw InvalidArgument("log_grid: count must be at least 2");
    if (!(start > 0.0) || !(stop > start)) throw InvalidArgument("log_grid: need 0 < start < stop");
    std::vector<double> g(static_cast<std::size_t>(count));
    const double a = std::log(start);
    const double b = std::log(stop);
    for (int i = 0; i < count; ++i) g[static_cast<std::size_t>(i)] = std::exp(a + (b - a) * i / (count - 1));
    g.front() = start;
    g.back() = stop;
    return g;
}

std::vector<double> symmetric_log_grid(double min_abs, double max_abs, int count_per_side)
{
    const auto side = log_grid(min_abs, max_abs, count_per_side);
    std::vector<double> g;
    g.reserve(2 * side.size() + 1);
    for (auto it = side.rbegin(); it != side.rend(); ++it) g.push_back(-*it);
    g.push_back(0.0);
    g.insert(g.end(), side.begin(), side.end());
    return g;
}

}  // namespace smsfluor

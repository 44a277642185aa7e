#include "smsfluor_cli/run.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <ostream>

#include <fmt/format.h>

#include "smsfluor/counting.hpp"
#include "smsfluor/detail/parallel.hpp"
#include "smsfluor/spectrum.hpp"

namespace smsfluor::cli {

namespace {

struct Column {
    std::string name;
    std::string unit;
};

struct Table {
    std::vector<std::pair<std::string, std::string>> meta;  // '#' key: value lines
    std::vector<Column> columns;
    std::vector<std::vector<double>> rows;
    Json scalars = Json::object();
};

std::string num(double v) { return fmt::format("{:.16e}", v); }

void add_scalar(Table& t, const std::string& key, double v)
{
    t.meta.emplace_back(key, num(v));
    t.scalars[key] = v;
}

void log_line(const RunOptions& o, const std::string& msg)
{
    if (o.log) *o.log << "smsfluor: " << msg << '\n';
}

// Evaluates fn(k) for every grid index on the configured worker count and
// stores the rows by index.
template <class Fn>
std::vector<std::vector<double>> per_point(const std::vector<double>& grid, int threads, Fn&& fn)
{
    std::vector<std::vector<double>> rows(grid.size());
    detail::parallel_for(grid.size(), threads, [&](std::size_t k) { rows[k] = fn(grid[k]); });
    return rows;
}

Table compute(const RunConfig& cfg, const RunOptions& opts)
{
    Table t;
    const std::vector<double> grid = cfg.grid ? cfg.grid->values() : std::vector<double>{};
    const int threads = cfg.threads;

    switch (cfg.task) {
    case Task::Steady: {
        const StationaryModel model(build_model(cfg.model));
        add_scalar(t, "i_st", stationary_intensity(model));
        t.columns = {{"state", "index"}, {"population", "1"}, {"rho_aa", "1"},
                     {"rho_bb", "1"},   {"re_rho_ab", "1"},  {"im_rho_ab", "1"}};
        for (std::size_t r = 0; r < model.steady().size(); ++r) {
            const auto& b = model.steady()[r];
            t.rows.push_back({static_cast<double>(r), b.trace().real(), b(0, 0).real(), b(1, 1).real(),
                              b(0, 1).real(), b(0, 1).imag()});
        }
        break;
    }
    case Task::Spectrum: {
        const StationaryModel model(build_model(cfg.model));
        add_scalar(t, "s_coh", coherent_weight(model));
        add_scalar(t, "i_st", stationary_intensity(model));
        t.columns = {{"omega_minus_omegaL", "rad/time"}, {"s_inc", "1"}};
        t.rows = per_point(grid, threads, [&](double w) {
            return std::vector<double>{w, incoherent_spectrum_at(model, w)};
        });
        break;
    }
    case Task::C1: {
        const StationaryModel model(build_model(cfg.model));
        add_scalar(t, "i_st", stationary_intensity(model));
        t.columns = {{"tau", "time"}, {"re_c1", "1/time"}, {"im_c1", "1/time"}};
        t.rows = per_point(grid, threads, [&](double tau) {
            const auto v = c1(model, std::span<const double>(&tau, 1)).values[0];
            return std::vector<double>{tau, v.real(), v.imag()};
        });
        break;
    }
    case Task::C2:
    case Task::G2: {
        const StationaryModel model(build_model(cfg.model));
        add_scalar(t, "i_st", stationary_intensity(model));
        const bool normalized = cfg.task == Task::G2;
        t.columns = {{"tau", "time"}, {normalized ? "g2" : "c2", normalized ? "1" : "1/time^2"}};
        t.rows = per_point(grid, threads, [&](double tau) {
            const std::span<const double> one(&tau, 1);
            const double v = normalized ? g2(model, one).values[0] : c2(model, one).values[0];
            return std::vector<double>{tau, v};
        });
        break;
    }
    case Task::Counting: {
        const CountingModel model(build_model(cfg.model));
        add_scalar(t, "i_st", stationary_intensity(model.stationary));
        t.meta.emplace_back("n_max", std::to_string(cfg.n_max));
        t.columns = {{"t", "time"}, {"mean", "1"}, {"second_factorial", "1"}, {"mandel_q", "1"}, {"remainder", "1"}};
        for (int n = 0; n <= cfg.n_max; ++n) t.columns.push_back({"p_" + std::to_string(n), "1"});
        t.rows = per_point(grid, threads, [&](double time) {
            const auto rec = counting_record(model, time, cfg.n_max);
            std::vector<double> row{time, rec.mean, rec.second_factorial, rec.mandel_q, rec.remainder};
            row.insert(row.end(), rec.pn.begin(), rec.pn.end());
            return row;
        });
        for (const auto& row : t.rows) {
            if (row[4] > 1e-6) {
                t.meta.emplace_back("warning", "truncation remainder " + num(row[4]) + " at t=" + num(row[0]) +
                                                   " exceeds 1e-6; increase counting.n_max");
            }
        }
        break;
    }
    case Task::MandelSweep: {
        t.columns = {{"detuning", "rad/time"}, {"q_st", "1"}, {"i_st", "1/time"}};
        t.rows = per_point(grid, threads, [&](double d) {
            const CountingModel model(build_model(cfg.model, d));
            return std::vector<double>{d, stationary_mandel(model), stationary_intensity(model.stationary)};
        });
        break;
    }
    case Task::LineshapeSweep: {
        t.columns = {{"detuning", "rad/time"}, {"i_st", "1/time"}};
        t.rows = per_point(grid, threads, [&](double d) {
            return std::vector<double>{d, line_shape(build_model(cfg.model, d))};
        });
        break;
    }
    }
    log_line(opts, std::string(to_string(cfg.task)) + ": " + std::to_string(t.rows.size()) + " rows");
    return t;
}

std::string render(const RunConfig& cfg, const Table& t)
{
    std::string out;
    out += "# smsfluor " SMSFLUOR_VERSION "\n";
    out += fmt::format("# task: {}\n", to_string(cfg.task));
    out += fmt::format("# model: {}\n", cfg.model.scenario);
    for (const auto& [k, v] : t.meta) out += fmt::format("# {}: {}\n", k, v);
    out += "# units:";
    for (const auto& c : t.columns) out += fmt::format(" {} [{}]", c.name, c.unit);
    out += "\n";
    for (std::size_t i = 0; i < t.columns.size(); ++i) out += (i ? "," : "") + t.columns[i].name;
    out += "\n";
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            // integer-valued index columns stay integers
            out += t.columns[i].unit == "index" ? std::to_string(static_cast<long long>(row[i])) : num(row[i]);
        }
        out += '\n';
    }
    return out;
}

void write_file(const std::string& path, const std::string& body)
{
    const auto parent = std::filesystem::path(path).parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path + " for writing");
    f << body;
    if (!f) throw std::runtime_error("failed writing " + path);
}

}  // namespace

std::string render_csv(const RunConfig& config) { return render(config, compute(config, {})); }

RunResult run(const RunConfig& config, const RunOptions& options)
{
    const auto start = std::chrono::steady_clock::now();
    log_line(options, "running " + std::string(to_string(config.task)) + " with " + std::to_string(config.threads) +
                          " thread(s)");
    const Table table = compute(config, options);

    RunResult result;
    const std::string csv_path = config.output + "." + to_string(config.task) + ".csv";
    write_file(csv_path, render(config, table));
    result.files.push_back(csv_path);

    result.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    Json meta = Json::object();
    meta["smsfluor_version"] = SMSFLUOR_VERSION;
    meta["config"] = to_json(config);
    meta["results"] = table.scalars;
    meta["files"] = {csv_path};
    meta["wall_time_seconds"] = result.wall_time_seconds;
    const std::string meta_path = config.output + ".meta.json";
    write_file(meta_path, meta.dump(2) + "\n");
    result.files.push_back(meta_path);
    log_line(options, "wrote " + csv_path + " and " + meta_path);
    return result;
}

}  // namespace smsfluor::cli

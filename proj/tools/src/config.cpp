#include "smsfluor_cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

#include "smsfluor/errors.hpp"
#include "smsfluor/scenarios.hpp"
#include "smsfluor/series.hpp"

namespace smsfluor::cli {

ConfigError::ConfigError(std::string path, const std::string& message, int line, int column)
    : std::runtime_error(path.empty() ? message : path + ": " + message),
      path_(std::move(path)),
      line_(line),
      column_(column)
{
}

namespace {

constexpr Task kAllTasks[] = {Task::Steady,   Task::Spectrum,    Task::G2,
                              Task::C1,       Task::C2,          Task::Counting,
                              Task::MandelSweep, Task::LineshapeSweep};

enum class Kind { Number, Integer, Vector, Matrix, String, Array };

struct Field {
    const char* name;
    Kind kind;
    bool required;
};

// Parameters of every scenario, in emission order. Fields that are not
// required default to zero (numbers) or empty (containers).
const std::map<std::string, std::vector<Field>>& scenario_fields()
{
    static const std::map<std::string, std::vector<Field>> table = {
        {"spectral_two_state",
         {{"gamma", Kind::Number, true},
          {"omega_rabi", Kind::Number, true},
          {"delta_omega", Kind::Number, true},
          {"phi", Kind::Number, true},
          {"detuning", Kind::Number, false}}},
        {"lifetime_fluct",
         {{"gammas", Kind::Vector, true},
          {"phi", Kind::Matrix, true},
          {"omega_rabi", Kind::Number, true},
          {"detuning", Kind::Number, false}}},
        {"diffusion_chain",
         {{"n_sites", Kind::Integer, true},
          {"omega_profile", Kind::Vector, true},
          {"phi_hop", Kind::Number, true},
          {"gamma", Kind::Number, true},
          {"detuning", Kind::Number, false}}},
        {"light_assisted",
         {{"gammas", Kind::Vector, true},
          {"gamma_cross", Kind::Matrix, true},
          {"omega_rabi", Kind::Number, true},
          {"detuning", Kind::Number, false}}},
        {"mapped_self_fluct",
         {{"gammas", Kind::Vector, true},
          {"gamma_cross", Kind::Matrix, true},
          {"omega_rabi", Kind::Number, true},
          {"detuning", Kind::Number, false}}},
        {"scaled_triplet",
         {{"gammas", Kind::Vector, true},
          {"gamma_cross", Kind::Matrix, true},
          {"omega_rabi", Kind::Number, true},
          {"delta0", Kind::Number, true},
          {"omega_bar", Kind::Number, true},
          {"gamma12_bar", Kind::Number, true},
          {"detuning", Kind::Number, false}}},
        {"inline",
         {{"r_max", Kind::Integer, true},
          {"labels", Kind::Array, false},
          {"per_state", Kind::Array, true},
          {"phi", Kind::Matrix, false},
          {"gamma_cross", Kind::Matrix, false},
          {"extra_channels", Kind::Array, false},
          {"detuning", Kind::Number, false}}},
    };
    return table;
}

std::string scenario_names()
{
    std::string out;
    for (const auto& [name, fields] : scenario_fields()) {
        if (name == "inline") continue;
        if (!out.empty()) out += ", ";
        out += name;
    }
    return out;
}

void reject_unknown_keys(const Json& obj, std::initializer_list<const char*> allowed, const std::string& path)
{
    for (const auto& [key, value] : obj.items()) {
        const bool ok = std::any_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; });
        if (!ok) throw ConfigError(path.empty() ? key : path + "." + key, "unknown key");
    }
}

const Json& require_object(const Json& j, const std::string& path)
{
    if (!j.is_object()) throw ConfigError(path, "expected an object");
    return j;
}

double get_number(const Json& j, const std::string& path)
{
    if (!j.is_number()) throw ConfigError(path, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw ConfigError(path, "must be finite");
    return v;
}

int get_integer(const Json& j, const std::string& path)
{
    if (!j.is_number_integer()) throw ConfigError(path, "expected an integer");
    return j.get<int>();
}

std::vector<double> get_vector(const Json& j, const std::string& path)
{
    if (!j.is_array()) throw ConfigError(path, "expected an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(get_number(j[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

RateTable get_matrix(const Json& j, const std::string& path)
{
    if (!j.is_array()) throw ConfigError(path, "expected an array of rows");
    const auto rows = static_cast<Eigen::Index>(j.size());
    Eigen::Index cols = -1;
    RateTable m;
    for (Eigen::Index r = 0; r < rows; ++r) {
        const std::string rp = path + "[" + std::to_string(r) + "]";
        const auto row = get_vector(j[static_cast<std::size_t>(r)], rp);
        if (cols < 0) {
            cols = static_cast<Eigen::Index>(row.size());
            m = RateTable::Zero(rows, cols);
        } else if (static_cast<Eigen::Index>(row.size()) != cols) {
            throw ConfigError(rp, "row length differs from the first row");
        }
        for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = row[static_cast<std::size_t>(c)];
    }
    if (rows == 0) m = RateTable::Zero(0, 0);
    return m;
}

Json matrix_json(const RateTable& m)
{
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

// Normalizes the inline model tables, filling defaults. Returns the
// resolved params and the ModelSpec they describe.
ModelSpec inline_spec(const Json& p, const std::string& path)
{
    const int r_max = get_integer(p.at("r_max"), path + ".r_max");
    if (r_max < 1) throw ConfigError(path + ".r_max", "must be at least 1");
    ModelSpec spec = make_empty_spec(r_max);

    for (std::size_t i = 0; i < p.at("labels").size(); ++i) {
        const auto& l = p.at("labels")[i];
        if (!l.is_string()) throw ConfigError(path + ".labels[" + std::to_string(i) + "]", "expected a string");
        spec.space.labels.push_back(l.get<std::string>());
    }
    const auto& ps = p.at("per_state");
    spec.per_state.clear();
    for (std::size_t i = 0; i < ps.size(); ++i) {
        const std::string ip = path + ".per_state[" + std::to_string(i) + "]";
        require_object(ps[i], ip);
        reject_unknown_keys(ps[i], {"delta_omega", "gamma", "omega_rabi"}, ip);
        PerStateParams s;
        if (ps[i].contains("delta_omega")) s.delta_omega = get_number(ps[i]["delta_omega"], ip + ".delta_omega");
        if (!ps[i].contains("gamma")) throw ConfigError(ip + ".gamma", "missing required field");
        s.gamma = get_number(ps[i]["gamma"], ip + ".gamma");
        if (ps[i].contains("omega_rabi")) s.omega_rabi = get_number(ps[i]["omega_rabi"], ip + ".omega_rabi");
        spec.per_state.push_back(s);
    }
    if (!p.at("phi").empty()) spec.rates.phi = get_matrix(p.at("phi"), path + ".phi");
    if (!p.at("gamma_cross").empty()) spec.rates.gamma_cross = get_matrix(p.at("gamma_cross"), path + ".gamma_cross");
    const auto& ch = p.at("extra_channels");
    for (std::size_t i = 0; i < ch.size(); ++i) {
        const std::string cp = path + ".extra_channels[" + std::to_string(i) + "]";
        require_object(ch[i], cp);
        reject_unknown_keys(ch[i], {"kind", "eta"}, cp);
        if (!ch[i].contains("kind") || !ch[i]["kind"].is_string()) throw ConfigError(cp + ".kind", "expected a string");
        const auto kind = jump_operator_from_string(ch[i]["kind"].get<std::string>());
        if (!kind) {
            throw ConfigError(cp + ".kind",
                              "unknown jump operator (valid: identity, lower, raise, upper_projector, lower_projector)");
        }
        if (!ch[i].contains("eta")) throw ConfigError(cp + ".eta", "missing required field");
        spec.extra_channels.push_back({*kind, get_matrix(ch[i]["eta"], cp + ".eta")});
    }
    spec.detuning = get_number(p.at("detuning"), path + ".detuning");
    return spec;
}

// Rewrites inline tables in canonical form: every per-state field present,
// rate tables filled with zeros when omitted.
Json normalize_inline(Json p)
{
    const ModelSpec spec = inline_spec(p, "model.inline");
    Json ps = Json::array();
    for (const auto& s : spec.per_state) {
        ps.push_back({{"delta_omega", s.delta_omega}, {"gamma", s.gamma}, {"omega_rabi", s.omega_rabi}});
    }
    p["per_state"] = std::move(ps);
    p["phi"] = matrix_json(spec.rates.phi);
    p["gamma_cross"] = matrix_json(spec.rates.gamma_cross);
    Json ch = Json::array();
    for (const auto& c : spec.extra_channels) ch.push_back({{"kind", to_string(c.kind)}, {"eta", matrix_json(c.eta)}});
    p["extra_channels"] = std::move(ch);
    return p;
}

// Violation paths use the library's names; map them to config paths.
std::string config_path_of(const std::string& base, const std::string& violation_path)
{
    std::string p = violation_path;
    for (const char* prefix : {"rates.", "space."}) {
        if (p.rfind(prefix, 0) == 0) p = p.substr(std::string(prefix).size());
    }
    return base + "." + p;
}

// Fills defaults and type-checks a scenario parameter object.
Json resolve_params(const std::string& scenario, const Json& raw, const std::string& path)
{
    require_object(raw, path);
    const auto& fields = scenario_fields().at(scenario);
    for (const auto& [key, value] : raw.items()) {
        const bool ok = std::any_of(fields.begin(), fields.end(), [&](const Field& f) { return key == f.name; });
        if (!ok) throw ConfigError(path + "." + key, "unknown parameter for scenario " + scenario);
    }
    Json out = Json::object();
    for (const auto& f : fields) {
        const std::string fp = path + "." + f.name;
        if (!raw.contains(f.name)) {
            if (f.required) throw ConfigError(fp, "missing required parameter");
            out[f.name] = (f.kind == Kind::Number || f.kind == Kind::Integer) ? Json(0.0) : Json::array();
            continue;
        }
        const Json& v = raw.at(f.name);
        switch (f.kind) {
        case Kind::Number: out[f.name] = get_number(v, fp); break;
        case Kind::Integer: out[f.name] = get_integer(v, fp); break;
        case Kind::Vector: out[f.name] = get_vector(v, fp); break;
        case Kind::Matrix: out[f.name] = matrix_json(get_matrix(v, fp)); break;
        case Kind::String:
            if (!v.is_string()) throw ConfigError(fp, "expected a string");
            out[f.name] = v;
            break;
        case Kind::Array:
            if (!v.is_array()) throw ConfigError(fp, "expected an array");
            out[f.name] = v;
            break;
        }
    }
    return out;
}

ModelSpec build_scenario(const std::string& name, const Json& p, const std::string& path,
                         std::optional<double> detuning_override)
{
    auto num = [&](const char* k) { return get_number(p.at(k), path + "." + k); };
    auto vec = [&](const char* k) { return get_vector(p.at(k), path + "." + k); };
    auto mat = [&](const char* k) { return get_matrix(p.at(k), path + "." + k); };
    const double detuning = detuning_override.value_or(num("detuning"));

    if (name == "inline") {
        ModelSpec spec = inline_spec(p, path);
        spec.detuning = detuning;
        return spec;
    }
    if (name == "spectral_two_state") {
        return spectral_two_state(num("gamma"), num("omega_rabi"), num("delta_omega"), num("phi"), detuning);
    }
    if (name == "lifetime_fluct") return lifetime_fluct(vec("gammas"), mat("phi"), num("omega_rabi"), detuning);
    if (name == "diffusion_chain") {
        return diffusion_chain(get_integer(p.at("n_sites"), path + ".n_sites"), vec("omega_profile"), num("phi_hop"),
                               num("gamma"), detuning);
    }
    if (name == "light_assisted") return light_assisted(vec("gammas"), mat("gamma_cross"), num("omega_rabi"), detuning);
    if (name == "mapped_self_fluct") {
        // rates stay frozen at the configured detuning; a sweep only moves the laser
        ModelSpec mapped =
            mapped_self_fluct(light_assisted(vec("gammas"), mat("gamma_cross"), num("omega_rabi"), num("detuning")));
        mapped.detuning = detuning;
        return mapped;
    }
    if (name == "scaled_triplet") {
        const auto base = light_assisted(vec("gammas"), mat("gamma_cross"), num("omega_rabi"), 0.0);
        return scaled_triplet(base, detuning, num("delta0"), num("omega_bar"), num("gamma12_bar"));
    }
    throw ConfigError(path, "unknown scenario " + name);
}

std::pair<int, int> line_column(std::string_view text, std::size_t byte)
{
    int line = 1;
    int column = 1;
    for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

GridSpec parse_grid(const Json& g)
{
    require_object(g, "grid");
    reject_unknown_keys(g, {"start", "stop", "count", "spacing"}, "grid");
    GridSpec out;
    for (const char* k : {"start", "stop", "count"}) {
        if (!g.contains(k)) throw ConfigError(std::string("grid.") + k, "missing required field");
    }
    out.start = get_number(g["start"], "grid.start");
    out.stop = get_number(g["stop"], "grid.stop");
    out.count = get_integer(g["count"], "grid.count");
    if (g.contains("spacing")) {
        if (!g["spacing"].is_string()) throw ConfigError("grid.spacing", "expected \"linear\" or \"log\"");
        const auto s = g["spacing"].get<std::string>();
        if (s == "log") {
            out.log = true;
        } else if (s != "linear") {
            throw ConfigError("grid.spacing", "expected \"linear\" or \"log\"");
        }
    }
    if (out.count < 2) throw ConfigError("grid.count", "must be at least 2");
    if (!(out.stop > out.start)) throw ConfigError("grid.stop", "must exceed grid.start");
    if (out.log && !(out.start > 0.0)) throw ConfigError("grid.start", "log spacing needs a positive start");
    return out;
}

}  // namespace

const char* to_string(Task task)
{
    switch (task) {
    case Task::Steady: return "steady";
    case Task::Spectrum: return "spectrum";
    case Task::G2: return "g2";
    case Task::C1: return "c1";
    case Task::C2: return "c2";
    case Task::Counting: return "counting";
    case Task::MandelSweep: return "mandel-sweep";
    case Task::LineshapeSweep: return "lineshape-sweep";
    }
    return "unknown";
}

std::optional<Task> task_from_string(std::string_view name)
{
    for (Task t : kAllTasks) {
        if (name == to_string(t)) return t;
    }
    return std::nullopt;
}

std::string valid_task_names()
{
    std::string out;
    for (Task t : kAllTasks) {
        if (!out.empty()) out += ", ";
        out += to_string(t);
    }
    return out;
}

std::vector<double> GridSpec::values() const
{
    return log ? log_grid(start, stop, count) : linear_grid(start, stop, count);
}

RunConfig parse_config(std::string_view text, std::optional<Task> task_hint)
{
    Json root;
    try {
        root = Json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error& e) {
        const auto [line, column] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
        throw ConfigError("", "parse error at line " + std::to_string(line) + ", column " + std::to_string(column) +
                                  ": " + e.what(),
                          line, column);
    }
    require_object(root, "(root)");
    reject_unknown_keys(root, {"schema_version", "task", "model", "grid", "counting", "output", "threads"}, "");

    RunConfig cfg;
    if (!root.contains("schema_version")) throw ConfigError("schema_version", "missing required field");
    cfg.schema_version = get_integer(root["schema_version"], "schema_version");
    if (cfg.schema_version != kSchemaVersion) {
        throw ConfigError("schema_version", "unsupported version " + std::to_string(cfg.schema_version) +
                                                " (supported: " + std::to_string(kSchemaVersion) + ")");
    }

    std::optional<Task> task = task_hint;
    if (root.contains("task")) {
        if (!root["task"].is_string()) throw ConfigError("task", "expected a string");
        const auto name = root["task"].get<std::string>();
        const auto parsed = task_from_string(name);
        if (!parsed) throw ConfigError("task", "unknown task '" + name + "' (valid: " + valid_task_names() + ")");
        if (task_hint && *task_hint != *parsed) {
            throw ConfigError("task", "config task '" + name + "' differs from requested task '" +
                                          to_string(*task_hint) + "'");
        }
        task = parsed;
    }
    if (!task) throw ConfigError("task", "missing (valid: " + valid_task_names() + ")");
    cfg.task = *task;

    if (!root.contains("model")) throw ConfigError("model", "missing required section");
    const Json& m = require_object(root["model"], "model");
    if (m.contains("inline")) {
        reject_unknown_keys(m, {"inline"}, "model");
        cfg.model.scenario = "inline";
        cfg.model.params = normalize_inline(resolve_params("inline", m["inline"], "model.inline"));
    } else {
        reject_unknown_keys(m, {"scenario", "params"}, "model");
        if (!m.contains("scenario") || !m["scenario"].is_string()) {
            throw ConfigError("model.scenario", "expected a scenario name (" + scenario_names() +
                                                    ") or an \"inline\" model");
        }
        cfg.model.scenario = m["scenario"].get<std::string>();
        if (cfg.model.scenario == "inline" || !scenario_fields().count(cfg.model.scenario)) {
            throw ConfigError("model.scenario",
                              "unknown scenario '" + cfg.model.scenario + "' (valid: " + scenario_names() + ")");
        }
        if (!m.contains("params")) throw ConfigError("model.params", "missing required section");
        cfg.model.params = resolve_params(cfg.model.scenario, m["params"], "model.params");
    }

    if (cfg.task == Task::Steady) {
        if (root.contains("grid")) throw ConfigError("grid", "not used by task steady");
    } else {
        if (!root.contains("grid")) throw ConfigError("grid", "missing; task " + std::string(to_string(cfg.task)) +
                                                                  " needs a grid");
        cfg.grid = parse_grid(root["grid"]);
        if (cfg.task != Task::Spectrum && cfg.task != Task::MandelSweep && cfg.task != Task::LineshapeSweep &&
            cfg.grid->start < 0.0) {
            throw ConfigError("grid.start", "delays and counting times must be non-negative");
        }
    }

    if (root.contains("counting")) {
        if (cfg.task != Task::Counting) throw ConfigError("counting", "only used by task counting");
        const Json& c = require_object(root["counting"], "counting");
        reject_unknown_keys(c, {"n_max"}, "counting");
        if (c.contains("n_max")) cfg.n_max = get_integer(c["n_max"], "counting.n_max");
        if (cfg.n_max < 0) throw ConfigError("counting.n_max", "must be non-negative");
    }

    cfg.output = to_string(cfg.task);
    if (root.contains("output")) {
        if (!root["output"].is_string() || root["output"].get<std::string>().empty()) {
            throw ConfigError("output", "expected a non-empty path prefix");
        }
        cfg.output = root["output"].get<std::string>();
    }
    if (root.contains("threads")) {
        cfg.threads = get_integer(root["threads"], "threads");
        if (cfg.threads < 1) throw ConfigError("threads", "must be at least 1");
    }

    // Model validation, reported against config paths.
    const std::string model_path = cfg.model.scenario == "inline" ? "model.inline" : "model.params";
    ModelSpec spec;
    try {
        spec = build_model(cfg.model);
    } catch (const ConfigError&) {
        throw;
    } catch (const smsfluor::Error& e) {
        throw ConfigError(model_path, e.what());
    }
    const auto violations = validate(spec);
    if (!violations.empty()) throw ConfigError(config_path_of(model_path, violations.front().path), violations.front().message);
    return cfg;
}

ModelSpec build_model(const ModelConfig& model, std::optional<double> detuning)
{
    const std::string path = model.scenario == "inline" ? "model.inline" : "model.params";
    if (!scenario_fields().count(model.scenario)) throw ConfigError("model.scenario", "unknown scenario " + model.scenario);
    return build_scenario(model.scenario, model.params, path, detuning);
}

Json to_json(const RunConfig& config)
{
    Json j = Json::object();
    j["schema_version"] = config.schema_version;
    j["task"] = to_string(config.task);
    Json m = Json::object();
    if (config.model.scenario == "inline") {
        m["inline"] = config.model.params;
    } else {
        m["scenario"] = config.model.scenario;
        m["params"] = config.model.params;
    }
    j["model"] = std::move(m);
    if (config.grid) {
        j["grid"] = {{"start", config.grid->start},
                     {"stop", config.grid->stop},
                     {"count", config.grid->count},
                     {"spacing", config.grid->log ? "log" : "linear"}};
    }
    if (config.task == Task::Counting) j["counting"] = {{"n_max", config.n_max}};
    j["output"] = config.output;
    j["threads"] = config.threads;
    return j;
}

std::string emit_config(const RunConfig& config) { return to_json(config).dump(2) + "\n"; }

}  // namespace smsfluor::cli

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "smsfluor/model.hpp"

namespace smsfluor::cli {

using Json = nlohmann::ordered_json;

enum class Task { Steady, Spectrum, G2, C1, C2, Counting, MandelSweep, LineshapeSweep };

const char* to_string(Task task);
std::optional<Task> task_from_string(std::string_view name);
// "steady, spectrum, ..." for error messages.
std::string valid_task_names();

struct GridSpec {
    double start = 0.0;
    double stop = 1.0;
    int count = 2;
    bool log = false;

    std::vector<double> values() const;
    bool operator==(const GridSpec&) const = default;
};

// Either a named scenario constructor with its parameters, or an inline
// model ("inline" scenario) given as explicit tables. params holds every
// field with defaults filled in.
struct ModelConfig {
    std::string scenario;
    Json params;

    bool operator==(const ModelConfig&) const = default;
};

struct RunConfig {
    int schema_version = 1;
    Task task = Task::Steady;
    ModelConfig model;
    std::optional<GridSpec> grid;  // absent only for the steady task
    int n_max = 20;                // counting task
    std::string output;
    int threads = 1;

    bool operator==(const RunConfig&) const = default;
};

inline constexpr int kSchemaVersion = 1;

// Parse and validation failures. path is a dotted field path (empty for
// syntax errors); line/column are 1-based and set for syntax errors only.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string path, const std::string& message, int line = 0, int column = 0);

    const std::string& path() const noexcept { return path_; }
    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    std::string path_;
    int line_;
    int column_;
};

// Parses a JSON run configuration. task_hint supplies the task when the
// file omits it; when both are present they must agree.
RunConfig parse_config(std::string_view text, std::optional<Task> task_hint = std::nullopt);

// Canonical JSON text of a resolved configuration; parse_config of the
// result gives back an equal RunConfig.
std::string emit_config(const RunConfig& config);
Json to_json(const RunConfig& config);

// Builds the model. detuning, when given, replaces the configured laser
// detuning; scenarios whose rates depend on detuning are rebuilt for it.
ModelSpec build_model(const ModelConfig& model, std::optional<double> detuning = std::nullopt);

}  // namespace smsfluor::cli

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "smsfluor/errors.hpp"
#include "smsfluor_cli/config.hpp"
#include "smsfluor_cli/run.hpp"

namespace {

using smsfluor::cli::ConfigError;

void report(const char* kind, const std::string& message, int exit_code, const std::string& path = {},
            int line = 0, int column = 0)
{
    nlohmann::ordered_json j;
    j["error"] = kind;
    j["exit_code"] = exit_code;
    j["message"] = message;
    if (!path.empty()) j["path"] = path;
    if (line > 0) {
        j["line"] = line;
        j["column"] = column;
    }
    std::cerr << j.dump() << '\n';
}

}  // namespace

int main(int argc, char** argv)
{
    using namespace smsfluor::cli;

    CLI::App app{"Lindblad rate equation observables for single-molecule fluorescence"};
    app.set_version_flag("--version", SMSFLUOR_VERSION);
    app.require_subcommand(1);

    std::string config_path;
    std::string out_prefix;
    int threads = 0;
    bool verbose = false;
    for (const char* name : {"steady", "spectrum", "g2", "c1", "c2", "counting", "mandel-sweep", "lineshape-sweep"}) {
        auto* sub = app.add_subcommand(name, std::string("run the ") + name + " task");
        sub->add_option("--config", config_path, "JSON run configuration")->required();
        sub->add_option("--out", out_prefix, "output path prefix (overrides the config)");
        sub->add_option("--threads", threads, "worker threads (overrides the config)")->check(CLI::PositiveNumber);
        sub->add_flag("--verbose", verbose, "progress messages on stderr");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitConfig;
    }

    const auto task = task_from_string(app.get_subcommands().front()->get_name());
    try {
        std::ifstream in(config_path, std::ios::binary);
        if (!in) throw ConfigError("--config", "cannot read " + config_path);
        std::ostringstream text;
        text << in.rdbuf();
        RunConfig cfg = parse_config(text.str(), task);
        if (!out_prefix.empty()) cfg.output = out_prefix;
        if (threads > 0) cfg.threads = threads;

        RunOptions opts;
        if (verbose) opts.log = &std::cerr;
        run(cfg, opts);
        return kExitOk;
    } catch (const ConfigError& e) {
        report("ConfigError", e.what(), kExitConfig, e.path(), e.line(), e.column());
        return kExitConfig;
    } catch (const smsfluor::InvalidModel& e) {
        report(e.code(), e.what(), kExitConfig);
        return kExitConfig;
    } catch (const smsfluor::Error& e) {
        report(e.code(), e.what(), kExitNumerical);
        return kExitNumerical;
    } catch (const std::exception& e) {
        report("Failure", e.what(), kExitNumerical);
        return kExitNumerical;
    }
}

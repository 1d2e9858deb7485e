#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "mildflow/config.hpp"
#include "mildflow/csv.hpp"
#include "mildflow/errors.hpp"
#include "mildflow/experiments.hpp"

// Exit codes: 0 success, 1 validation error, 2 I/O error, 3 numerical failure.
int main(int argc, char** argv) {
    CLI::App app{"mildflow: mild Navier-Stokes solutions and Lorentz-space norm experiments"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    std::string out_path;
    std::optional<std::uint64_t> seed;
    bool no_timestamp = false;
    app.add_option("--config", config_path, "key=value experiment config");
    app.add_option("--out", out_path, "CSV output path (default: config output, else stdout)");
    app.add_option("--seed", seed, "override the corpus seed");
    app.add_flag("--no-timestamp", no_timestamp, "omit the timestamp comment line");

    for (const char* name : {"corpus", "norms", "embedding", "product", "bilinear", "solve"}) {
        app.add_subcommand(name);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        mildflow::ExperimentConfig cfg;
        if (!config_path.empty()) cfg = mildflow::load_config(config_path);
        cfg.experiment = app.get_subcommands().front()->get_name();
        if (seed) cfg.seed = *seed;
        if (!out_path.empty()) cfg.output = out_path;

        const mildflow::CsvTable table = mildflow::run_experiment(cfg);
        if (cfg.output.empty()) {
            table.write(std::cout, !no_timestamp);
        } else {
            mildflow::emit_csv(table, cfg.output, !no_timestamp);
        }
        return 0;
    } catch (const mildflow::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const mildflow::IoError& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return 2;
    } catch (const mildflow::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 3;
    }
}

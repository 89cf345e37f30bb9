#include "modstrip/suites.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv)
{
    CLI::App app{"modstrip: verification suites for inner-function semigroups, "
                 "the rapidity-grid standard pair, and the one-particle current net"};

    std::string spec, suite, out, csv_dir;
    std::string seed_hex = "0xB0F7";
    int grid_n = 0;
    double tol = 0.0;

    app.add_option("--spec", spec, "spec or scenario file (JSON)")->required();
    app.add_option("--suite", suite,
                   "inner-verify | semigroup | pair-verify | borchers | blax | "
                   "current-locality | bmt-transport | cocycle")
        ->required();
    app.add_option("--out", out, "write the report here instead of stdout");
    app.add_option("--grid-n", grid_n, "override the rapidity grid size (power of two)");
    app.add_option("--tol", tol, "override per-check tolerances");
    app.add_option("--seed", seed_hex, "sample seed (hex)");
    app.add_option("--csv-dump", csv_dir, "directory for CSV dumps of vectors/tables");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0)
            return app.exit(e);   // --help
        app.exit(e);
        return 2;
    }

    modstrip::SuiteConfig cfg;
    cfg.suite = suite;
    cfg.spec_path = spec;
    cfg.out_path = out;
    cfg.csv_dir = csv_dir;
    if (grid_n > 0)
        cfg.grid_n = grid_n;
    if (tol > 0.0)
        cfg.tol = tol;
    try {
        cfg.seed = std::stoull(seed_hex, nullptr, 16);
    } catch (const std::exception&) {
        std::cerr << "error: --seed expects a hex value\n";
        return 2;
    }

    return modstrip::run_suite_cli(cfg);
}

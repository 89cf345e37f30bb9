#pragma once

#include "modstrip/io.hpp"

#include <cstdint>
#include <optional>

namespace modstrip {

/// Suite names: inner-verify | semigroup | pair-verify | borchers | blax |
/// current-locality | bmt-transport | cocycle.
struct SuiteConfig {
    std::string suite;
    std::string spec_path;
    std::optional<int> grid_n;
    std::optional<double> tol;
    std::uint64_t seed = 0xB0F7;
    std::string out_path;   // empty: stdout
    std::string csv_dir;    // empty: no dumps
};

struct CheckRecord {
    std::string name;
    double residual = 0.0;
    double tol = 0.0;
    bool pass = false;          // raw verdict of the check itself
    bool expected_fail = false; // counterexample checks listed in expect_fail
    std::string anchor;         // stable identifier of the verified relation
};

struct Report {
    std::string suite;
    std::string grid;
    std::vector<CheckRecord> checks;
    double wall_ms = 0.0;
    bool overall = false;       // conjunction of (pass XOR expected_fail)
};

Json to_json(const Report& report);

/// Dispatch a suite. Input and admissibility problems throw (ParseError,
/// std::invalid_argument, std::domain_error); verification failures are
/// recorded in the report, not thrown.
Report run_suite(const SuiteConfig& cfg);

/// Full CLI semantics: run, write the report to cfg.out_path or stdout,
/// map errors to the exit-code contract 0 = pass, 1 = failed verdict,
/// 2 = input error.
int run_suite_cli(const SuiteConfig& cfg);

} // namespace modstrip

#pragma once

/// @file campaign.hpp
/// @brief Run orchestration, report bundles and the subcommand bodies.
///
/// Exit codes: 0 all enabled checks hold (possibly with certificate),
/// 1 usage or configuration error, 2 some check violated, 3 numerical abort,
/// 4 I/O failure, 5 nothing violated but some check inconclusive.

#include "nsbound/inequality_lab.hpp"
#include "nsbound/run_config.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace nsbound {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int usage = 1;
inline constexpr int violated = 2;
inline constexpr int numerical_abort = 3;
inline constexpr int io_failure = 4;
inline constexpr int inconclusive = 5;
}  // namespace exit_code

int exit_code_for(Status overall);

CheckOptions check_options(const RunConfig& config);

/// Enabled checks only, in verify_all order.
std::vector<InequalityReport> run_checks(const EnergyLedger& ledger, const RunConfig& config);

EnergyLedger apply_injection(EnergyLedger ledger, Injection inj);

struct RunOutcome {
    EnergyLedger ledger;
    std::vector<InequalityReport> reports;
    Status overall = Status::holds;
    double wall_seconds = 0.0;
};

/// Simulate, inject (if configured) and check. Throws NumericalAbort.
RunOutcome execute(const RunConfig& config);

nlohmann::json report_json(const InequalityReport& r);
nlohmann::json bundle_json(const RunConfig& config, const RunOutcome& outcome);

/// Creates the directory (and parents); throws std::ios_base::failure.
void ensure_directory(const std::string& dir);
void write_text(const std::string& path, const std::string& text);

int cmd_run(const RunConfig& config, std::ostream& log);
int cmd_verify(const std::string& ledger_path, const RunConfig& config, std::ostream& log);

struct SweepPoint {
    double alpha;
    double delta;
    int n;
};

/// Cross product of the sweep axes; an empty axis falls back to the base value.
/// Throws ConfigError when every axis is empty.
std::vector<SweepPoint> sweep_points(const RunConfig& config);

/// Worker threads for sweeps: NSB_THREADS if set and positive, else 1.
int sweep_threads();

int cmd_sweep(const RunConfig& config, std::ostream& log);

/// Sign brackets on 10^4-point grids; exit 0 iff every maximum is <= 1e-12.
int cmd_signcheck(const std::vector<double>& alphas, std::ostream& log);

/// Table of Hausdorff-Young constants for alpha in {1/32, 1/16, 3/32, 0.124}, m in {4, inf}.
int cmd_constants(std::ostream& log);

}  // namespace nsbound

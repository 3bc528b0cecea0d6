#pragma once

/// @file run_config.hpp
/// @brief Line-oriented `key = value` run configuration.
///
/// `#` starts a comment, blank lines are ignored, keys may appear at most once
/// and unknown keys are errors. Sweep axes are comma-separated lists.

#include "nsbound/ns_dynamics.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace nsbound {

enum class Injection { none, energy_bump, trilinear_flip };

std::string to_string(Injection inj);

struct RunConfig {
    SimulationConfig sim;

    double epsilon = 0.1;
    double burn_in = 1.0;
    std::optional<double> decay_reference;  ///< gate certificate for the decay check

    bool check_l2 = true;
    bool check_h1 = true;
    bool check_h2 = true;
    bool check_decay = true;
    bool check_blowup = true;
    bool check_routes = true;

    std::string out_dir = "nsbound_out";
    bool strict = false;

    std::vector<double> sweep_alpha;
    std::vector<double> sweep_delta;
    std::vector<int> sweep_n;

    Injection inject = Injection::none;

    bool operator==(const RunConfig& o) const;
};

class ConfigError : public std::invalid_argument {
public:
    ConfigError(const std::string& what, int line) : std::invalid_argument(format(what, line)), line_(line) {}
    /// 1-based; 0 when the error is not tied to a line.
    int line() const { return line_; }

private:
    static std::string format(const std::string& what, int line) {
        return line > 0 ? "line " + std::to_string(line) + ": " + what : what;
    }
    int line_;
};

/// Parses and validates; defaults fill every absent key. Throws ConfigError.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// Every key, one per line, numbers with 17 significant digits.
std::string serialize_config(const RunConfig& config);

/// Range checks shared by the parser and programmatic callers. Throws ConfigError.
void validate_config(const RunConfig& config);

/// FNV-1a 64 of serialize_config.
std::uint64_t config_hash(const RunConfig& config);

}  // namespace nsbound

// nsbound: simulate small-data flows and check similarity-variable energy bounds.

#include "nsbound/campaign.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>

using namespace nsbound;

namespace {

struct CommonFlags {
    std::string config_path;
    std::string out_dir;
    bool strict = false;
    int stride = 0;
};

void add_common(CLI::App* sub, CommonFlags& f) {
    sub->add_option("--config", f.config_path, "key = value configuration file");
    sub->add_option("--out", f.out_dir, "output directory (overrides out_dir)");
    sub->add_flag("--strict", f.strict, "run-to-run reproducible transforms");
    sub->add_option("--stride", f.stride, "log every N-th step (overrides output_stride)")->check(CLI::PositiveNumber);
}

// Returns nullopt after printing a diagnostic; rc receives the exit code.
std::optional<RunConfig> resolve(const CommonFlags& f, int& rc) {
    rc = exit_code::usage;
    try {
        RunConfig c = f.config_path.empty() ? parse_config("") : load_config(f.config_path);
        if (!f.out_dir.empty()) c.out_dir = f.out_dir;
        if (f.strict) c.strict = true;
        if (f.stride > 0) c.sim.output_stride = f.stride;
        validate_config(c);
        return c;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
    } catch (const std::ios_base::failure& e) {
        std::cerr << "error: " << e.what() << '\n';
        rc = exit_code::io_failure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
    }
    return std::nullopt;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Navier-Stokes similarity-variable bound checker"};
    app.require_subcommand(1);

    CommonFlags run_flags, sweep_flags, verify_flags;
    auto* run_cmd = app.add_subcommand("run", "simulate one configuration and check every enabled bound");
    add_common(run_cmd, run_flags);

    auto* sweep_cmd = app.add_subcommand("sweep", "cross product over sweep_alpha x sweep_delta x sweep_n");
    add_common(sweep_cmd, sweep_flags);

    std::string ledger_path;
    auto* verify_cmd = app.add_subcommand("verify", "re-run the checks on an existing ledger");
    add_common(verify_cmd, verify_flags);
    verify_cmd->add_option("--ledger", ledger_path, "ledger CSV")->required();

    std::vector<double> alphas;
    auto* sign_cmd = app.add_subcommand("signcheck", "pointwise sign brackets of the cutoff profiles");
    sign_cmd->add_option("--alpha", alphas, "comma-separated alpha values")->delimiter(',')->required();

    auto* const_cmd = app.add_subcommand("constants", "print the low-band L^m constants");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : exit_code::usage;
    }

    if (*sign_cmd) return cmd_signcheck(alphas, std::cout);
    if (*const_cmd) return cmd_constants(std::cout);

    CommonFlags& flags = *run_cmd ? run_flags : *sweep_cmd ? sweep_flags : verify_flags;
    int rc = exit_code::ok;
    const auto config = resolve(flags, rc);
    if (!config) return rc;
    if (*run_cmd) return cmd_run(*config, std::cout);
    if (*sweep_cmd) return cmd_sweep(*config, std::cout);
    return cmd_verify(ledger_path, *config, std::cout);
}

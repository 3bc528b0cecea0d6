#include "nsbound/campaign.hpp"

#include "nsbound/fft.hpp"
#include "nsbound/multiplier_bank.hpp"

#include <fftw3.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <mutex>
#include <ostream>
#include <thread>

namespace nsbound {

namespace {

constexpr const char* kVersion = "1.0.0";
constexpr int kSchema = 1;

std::string hex64(std::uint64_t v) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

int severity(int code) {
    switch (code) {
        case exit_code::ok: return 0;
        case exit_code::inconclusive: return 1;
        case exit_code::violated: return 2;
        case exit_code::numerical_abort: return 3;
        case exit_code::io_failure: return 4;
        default: return 5;
    }
}

}  // namespace

int exit_code_for(Status overall) {
    switch (overall) {
        case Status::holds:
        case Status::holds_with_certificate: return exit_code::ok;
        case Status::inconclusive: return exit_code::inconclusive;
        case Status::violated: return exit_code::violated;
    }
    return exit_code::violated;
}

CheckOptions check_options(const RunConfig& config) {
    CheckOptions o;
    o.alpha = config.sim.alpha;
    o.epsilon = config.epsilon;
    o.burn_in = config.burn_in;
    o.reference_decay_certificate = config.decay_reference;
    return o;
}

std::vector<InequalityReport> run_checks(const EnergyLedger& ledger, const RunConfig& config) {
    const CheckOptions opt = check_options(config);
    std::vector<InequalityReport> out;
    // The Laplacian check consumes the gradient certificate even when the latter is not reported.
    const InequalityReport h1 = verify_h1_inequality(ledger, opt);
    if (config.check_l2) out.push_back(verify_l2_inequality(ledger, opt));
    if (config.check_h1) out.push_back(h1);
    if (config.check_h2) out.push_back(verify_h2_inequality(ledger, h1.certificate, opt));
    if (config.check_decay) out.push_back(verify_decomposition_decay(ledger, opt));
    if (config.check_blowup) out.push_back(verify_blowup_rate(ledger, opt));
    if (config.check_routes) out.push_back(two_route_report(ledger, opt));
    return out;
}

EnergyLedger apply_injection(EnergyLedger ledger, Injection inj) {
    switch (inj) {
        case Injection::none: return ledger;
        case Injection::energy_bump: return corrupt_energy_bump(std::move(ledger));
        case Injection::trilinear_flip: return corrupt_trilinear_flip(std::move(ledger));
    }
    return ledger;
}

RunOutcome execute(const RunConfig& config) {
    const auto start = std::chrono::steady_clock::now();
    RunOutcome out;
    out.ledger = apply_injection(run(config.sim), config.inject);
    out.reports = run_checks(out.ledger, config);
    out.overall = overall_status(out.reports);
    out.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

nlohmann::json report_json(const InequalityReport& r) {
    nlohmann::json j;
    j["id"] = r.id;
    j["status"] = to_string(r.status);
    j["max_residual"] = r.max_residual;
    j["certificate"] = r.certificate;
    j["tolerance"] = r.tolerance;
    j["tau_range"] = {r.tau_begin, r.tau_end};
    nlohmann::json values = nlohmann::json::object();
    for (const auto& [k, v] : r.values) {
        if (std::isfinite(v)) values[k] = v;
        else values[k] = nullptr;
    }
    j["values"] = values;
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

nlohmann::json bundle_json(const RunConfig& config, const RunOutcome& outcome) {
    nlohmann::json j;
    j["schema"] = kSchema;
    j["config_hash"] = hex64(config_hash(config));
    j["versions"] = {{"nsbound", kVersion}, {"fftw", std::string(fftw_version)}};
    j["wall_seconds"] = outcome.wall_seconds;
    j["rows"] = outcome.ledger.rows.size();
    j["overall"] = to_string(outcome.overall);
    j["config"] = serialize_config(config);
    nlohmann::json reports = nlohmann::json::array();
    for (const auto& r : outcome.reports) reports.push_back(report_json(r));
    j["reports"] = reports;
    return j;
}

void ensure_directory(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir)) {
        throw std::ios_base::failure("cannot create output directory " + dir +
                                     (ec ? ": " + ec.message() : std::string()));
    }
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::ios_base::failure("cannot open " + path + " for writing");
    out << text;
    out.flush();
    if (!out) throw std::ios_base::failure("write failed: " + path);
}

namespace {

void print_reports(std::ostream& log, const std::vector<InequalityReport>& reports) {
    for (const auto& r : reports) {
        char buf[256];
        std::snprintf(buf, sizeof buf, "  %-20s %-24s residual %.3e  tol %.3e  cert %.3e", r.id.c_str(),
                      to_string(r.status).c_str(), r.max_residual, r.tolerance, r.certificate);
        log << buf;
        if (!r.note.empty()) log << "  (" << r.note << ")";
        log << '\n';
    }
}

}  // namespace

int cmd_run(const RunConfig& config, std::ostream& log) {
    set_fft_strict(config.strict);
    try {
        ensure_directory(config.out_dir);
    } catch (const std::exception& e) {
        log << "error: " << e.what() << '\n';
        return exit_code::io_failure;
    }
    RunOutcome outcome;
    try {
        outcome = execute(config);
    } catch (const NumericalAbort& e) {
        log << "numerical abort: " << e.what() << '\n';
        return exit_code::numerical_abort;
    }
    try {
        save_ledger(config.out_dir + "/ledger.csv", outcome.ledger);
        write_text(config.out_dir + "/report.json", bundle_json(config, outcome).dump(2) + "\n");
    } catch (const std::exception& e) {
        log << "error: " << e.what() << '\n';
        return exit_code::io_failure;
    }
    log << "run: " << outcome.ledger.rows.size() << " rows, " << outcome.wall_seconds << " s, overall "
        << to_string(outcome.overall) << '\n';
    print_reports(log, outcome.reports);
    return exit_code_for(outcome.overall);
}

int cmd_verify(const std::string& ledger_path, const RunConfig& config, std::ostream& log) {
    EnergyLedger ledger;
    try {
        ledger = load_ledger(ledger_path);
    } catch (const std::ios_base::failure& e) {
        log << "error: " << e.what() << '\n';
        return exit_code::io_failure;
    } catch (const std::invalid_argument& e) {
        log << "error: " << e.what() << '\n';
        return exit_code::usage;
    }
    RunOutcome outcome;
    outcome.ledger = apply_injection(std::move(ledger), config.inject);
    try {
        outcome.reports = run_checks(outcome.ledger, config);
    } catch (const std::invalid_argument& e) {
        log << "error: " << e.what() << '\n';
        return exit_code::usage;
    }
    outcome.overall = overall_status(outcome.reports);
    try {
        ensure_directory(config.out_dir);
        write_text(config.out_dir + "/report.json", bundle_json(config, outcome).dump(2) + "\n");
    } catch (const std::exception& e) {
        log << "error: " << e.what() << '\n';
        return exit_code::io_failure;
    }
    log << "verify: " << outcome.ledger.rows.size() << " rows, overall " << to_string(outcome.overall) << '\n';
    print_reports(log, outcome.reports);
    return exit_code_for(outcome.overall);
}

// ---------------------------------------------------------------------------
// Sweeps
// ---------------------------------------------------------------------------

std::vector<SweepPoint> sweep_points(const RunConfig& config) {
    if (config.sweep_alpha.empty() && config.sweep_delta.empty() && config.sweep_n.empty()) {
        throw ConfigError("sweep needs at least one nonempty axis (sweep_alpha, sweep_delta, sweep_n)", 0);
    }
    const std::vector<double> alphas = config.sweep_alpha.empty() ? std::vector<double>{config.sim.alpha}
                                                                   : config.sweep_alpha;
    const std::vector<double> deltas = config.sweep_delta.empty() ? std::vector<double>{config.sim.delta}
                                                                   : config.sweep_delta;
    const std::vector<int> ns = config.sweep_n.empty() ? std::vector<int>{config.sim.n} : config.sweep_n;
    std::vector<SweepPoint> out;
    for (double a : alphas) {
        for (double d : deltas) {
            for (int n : ns) out.push_back({a, d, n});
        }
    }
    return out;
}

int sweep_threads() {
    if (const char* env = std::getenv("NSB_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    return 1;
}

namespace {

struct PointResult {
    SweepPoint point;
    std::string dir;
    int code = exit_code::ok;
    RunOutcome outcome;
    std::string error;
};

const InequalityReport* find_report(const RunOutcome& o, const std::string& id) {
    for (const auto& r : o.reports) {
        if (r.id == id) return &r;
    }
    return nullptr;
}

}  // namespace

int cmd_sweep(const RunConfig& config, std::ostream& log) {
    std::vector<SweepPoint> points;
    try {
        points = sweep_points(config);
    } catch (const ConfigError& e) {
        log << "error: " << e.what() << '\n';
        return exit_code::usage;
    }
    set_fft_strict(config.strict);
    try {
        ensure_directory(config.out_dir);
    } catch (const std::exception& e) {
        log << "error: " << e.what() << '\n';
        return exit_code::io_failure;
    }

    std::vector<PointResult> results(points.size());
    std::atomic<std::size_t> next{0};
    std::mutex log_mutex;
    auto worker = [&] {
        for (std::size_t i = next++; i < points.size(); i = next++) {
            PointResult& pr = results[i];
            pr.point = points[i];
            RunConfig pc = config;
            pc.sim.alpha = points[i].alpha;
            pc.sim.delta = points[i].delta;
            pc.sim.n = points[i].n;
            pc.sweep_alpha.clear();
            pc.sweep_delta.clear();
            pc.sweep_n.clear();
            char name[96];
            std::snprintf(name, sizeof name, "/point_%03zu_n%d_delta%g_alpha%g", i, points[i].n, points[i].delta,
                          points[i].alpha);
            pc.out_dir = config.out_dir + name;
            pr.dir = pc.out_dir;
            try {
                validate_config(pc);
                ensure_directory(pc.out_dir);
                pr.outcome = execute(pc);
                save_ledger(pc.out_dir + "/ledger.csv", pr.outcome.ledger);
                write_text(pc.out_dir + "/report.json", bundle_json(pc, pr.outcome).dump(2) + "\n");
                pr.code = exit_code_for(pr.outcome.overall);
            } catch (const NumericalAbort& e) {
                pr.code = exit_code::numerical_abort;
                pr.error = e.what();
            } catch (const ConfigError& e) {
                pr.code = exit_code::usage;
                pr.error = e.what();
            } catch (const std::exception& e) {
                pr.code = exit_code::io_failure;
                pr.error = e.what();
            }
            std::lock_guard lock(log_mutex);
            log << "point " << i << " (n=" << points[i].n << ", delta=" << points[i].delta
                << ", alpha=" << points[i].alpha << "): exit " << pr.code;
            if (!pr.error.empty()) log << " (" << pr.error << ")";
            log << '\n';
        }
    };
    const int threads = std::min<int>(sweep_threads(), static_cast<int>(points.size()));
    std::vector<std::thread> pool;
    for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    // Combined certificate table, written by this thread alone.
    int worst = exit_code::ok;
    std::string table = "alpha,delta,n,status,decay_certificate,h1_certificate,h2_rate,exit\n";
    nlohmann::json summary;
    summary["schema"] = kSchema;
    summary["config_hash"] = hex64(config_hash(config));
    summary["points"] = nlohmann::json::array();
    for (const auto& pr : results) {
        if (severity(pr.code) > severity(worst)) worst = pr.code;
        const auto* decay = find_report(pr.outcome, "decomposition_decay");
        const auto* h1 = find_report(pr.outcome, "h1_ladder");
        const auto* h2 = find_report(pr.outcome, "h2_ladder");
        double rho = std::numeric_limits<double>::quiet_NaN();
        if (h2) {
            const auto it = h2->values.find("rho");
            if (it != h2->values.end()) rho = it->second;
        }
        char buf[256];
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%d,%s,%.17g,%.17g,%.17g,%d\n", pr.point.alpha, pr.point.delta,
                      pr.point.n, pr.error.empty() ? to_string(pr.outcome.overall).c_str() : "error",
                      decay ? decay->certificate : std::numeric_limits<double>::quiet_NaN(),
                      h1 ? h1->certificate : std::numeric_limits<double>::quiet_NaN(), rho, pr.code);
        table += buf;
        nlohmann::json p;
        p["alpha"] = pr.point.alpha;
        p["delta"] = pr.point.delta;
        p["n"] = pr.point.n;
        p["dir"] = pr.dir;
        p["exit"] = pr.code;
        if (!pr.error.empty()) p["error"] = pr.error;
        else p["bundle"] = bundle_json(config, pr.outcome);
        summary["points"].push_back(p);
    }
    try {
        write_text(config.out_dir + "/certificates.csv", table);
        write_text(config.out_dir + "/sweep.json", summary.dump(2) + "\n");
    } catch (const std::exception& e) {
        log << "error: " << e.what() << '\n';
        return exit_code::io_failure;
    }
    log << "sweep: " << results.size() << " points, exit " << worst << '\n';
    return worst;
}

// ---------------------------------------------------------------------------
// Static checks
// ---------------------------------------------------------------------------

int cmd_signcheck(const std::vector<double>& alphas, std::ostream& log) {
    if (alphas.empty()) {
        log << "error: no alpha given\n";
        return exit_code::usage;
    }
    for (double a : alphas) {
        try {
            validate_alpha(a);
        } catch (const std::invalid_argument& e) {
            log << "error: " << e.what() << '\n';
            return exit_code::usage;
        }
    }
    const auto low = uniform_grid(0.0, 1.0, 10000);
    const auto high = uniform_grid(1.0, 2.0, 10000);
    bool ok = true;
    for (double a : alphas) {
        const double ma = sign_certificate_a(a, low);
        const double mb = sign_certificate_b(a, high);
        const bool pass = ma <= 1e-12 && mb <= 1e-12;
        ok = ok && pass;
        char buf[160];
        std::snprintf(buf, sizeof buf, "alpha %.6g  max low-band bracket %.6e  max transition bracket %.6e  %s\n", a,
                      ma, mb, pass ? "ok" : "POSITIVE");
        log << buf;
    }
    return ok ? exit_code::ok : exit_code::violated;
}

int cmd_constants(std::ostream& log) {
    const double alphas[] = {1.0 / 32.0, 1.0 / 16.0, 3.0 / 32.0, 0.124};
    log << "alpha            C(alpha, 4)          C(alpha, inf)\n";
    for (double a : alphas) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "%-16.6g %-20.12g %-20.12g\n", a, hausdorff_young_constant(a, 4.0),
                      hausdorff_young_constant(a, std::numeric_limits<double>::infinity()));
        log << buf;
    }
    return exit_code::ok;
}

}  // namespace nsbound

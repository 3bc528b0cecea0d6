#include "nsbound/inequality_lab.hpp"

#include "nsbound/gronwall_comparator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace nsbound {

std::string to_string(Status s) {
    switch (s) {
        case Status::holds: return "holds";
        case Status::holds_with_certificate: return "holds_with_certificate";
        case Status::violated: return "violated";
        case Status::inconclusive: return "inconclusive";
    }
    return "unknown";
}

// ---------------------------------------------------------------------------
// Differencing
// ---------------------------------------------------------------------------

namespace {

void check_series(std::span<const double> tau, std::span<const double> f) {
    if (tau.size() != f.size()) throw std::invalid_argument("tau and series lengths differ");
    if (tau.size() < 3) throw std::invalid_argument("differencing needs at least 3 rows");
    for (std::size_t i = 1; i < tau.size(); ++i) {
        if (!(tau[i] > tau[i - 1])) throw std::invalid_argument("tau must be strictly increasing");
    }
}

double third_divided(std::span<const double> x, std::span<const double> f, std::size_t i) {
    // f[x_i, ..., x_{i+3}] via the recursive table
    double d[4] = {f[i], f[i + 1], f[i + 2], f[i + 3]};
    for (std::size_t level = 1; level < 4; ++level) {
        for (std::size_t j = 0; j + level < 4; ++j) {
            d[j] = (d[j + 1] - d[j]) / (x[i + j + level] - x[i + j]);
        }
    }
    return d[0];
}

}  // namespace

std::vector<double> d_dtau(std::span<const double> tau, std::span<const double> f) {
    check_series(tau, f);
    const std::size_t n = tau.size();
    std::vector<double> d(n);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double h1 = tau[i] - tau[i - 1];
        const double h2 = tau[i + 1] - tau[i];
        d[i] = -h2 / (h1 * (h1 + h2)) * f[i - 1] + (h2 - h1) / (h1 * h2) * f[i] + h1 / (h2 * (h1 + h2)) * f[i + 1];
    }
    {
        const double h1 = tau[1] - tau[0];
        const double h2 = tau[2] - tau[1];
        d[0] = -(2.0 * h1 + h2) / (h1 * (h1 + h2)) * f[0] + (h1 + h2) / (h1 * h2) * f[1] -
               h1 / (h2 * (h1 + h2)) * f[2];
    }
    {
        const double h1 = tau[n - 2] - tau[n - 3];
        const double h2 = tau[n - 1] - tau[n - 2];
        d[n - 1] = h2 / (h1 * (h1 + h2)) * f[n - 3] - (h1 + h2) / (h1 * h2) * f[n - 2] +
                   (2.0 * h2 + h1) / (h2 * (h1 + h2)) * f[n - 1];
    }
    return d;
}

std::vector<double> d_dtau_tolerance(std::span<const double> tau, std::span<const double> f) {
    check_series(tau, f);
    const std::size_t n = tau.size();
    std::vector<double> third;
    if (n >= 4) {
        third.resize(n - 3);
        for (std::size_t i = 0; i + 3 < n; ++i) third[i] = 6.0 * std::abs(third_divided(tau, f, i));
    }
    std::vector<double> tol(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double f3 = 0.0;
        // windows [j, j+3] with j in [i-3, i]
        for (std::size_t j = (i >= 3 ? i - 3 : 0); j <= i && j < third.size(); ++j) f3 = std::max(f3, third[j]);
        double h = 0.0;
        if (i > 0) h = std::max(h, tau[i] - tau[i - 1]);
        if (i + 1 < n) h = std::max(h, tau[i + 1] - tau[i]);
        tol[i] = h * h * f3;
        if (i == 0 || i + 1 == n) tol[i] *= 4.0;
    }
    return tol;
}

// ---------------------------------------------------------------------------
// Helpers
// ---------------------------------------------------------------------------

namespace {

using Member = double LedgerRow::*;

std::vector<double> column(const EnergyLedger& l, Member m) {
    std::vector<double> v;
    v.reserve(l.rows.size());
    for (const auto& r : l.rows) v.push_back(r.*m);
    return v;
}

std::vector<double> energy_column(const EnergyLedger& l) {
    std::vector<double> v;
    v.reserve(l.rows.size());
    for (const auto& r : l.rows) v.push_back(r.energy());
    return v;
}

double local_spacing(const std::vector<double>& tau, std::size_t i) {
    double h = 0.0;
    if (i > 0) h = std::max(h, tau[i] - tau[i - 1]);
    if (i + 1 < tau.size()) h = std::max(h, tau[i + 1] - tau[i]);
    return h;
}

InequalityReport base_report(const std::string& id, const EnergyLedger& ledger) {
    validate_ledger(ledger);
    InequalityReport r;
    r.id = id;
    if (!ledger.rows.empty()) {
        r.tau_begin = ledger.rows.front().tau;
        r.tau_end = ledger.rows.back().tau;
    }
    return r;
}

// Fills max_residual / tolerance from the row with the largest excess and
// returns whether every row is within its tolerance.
bool fold_rowwise(InequalityReport& rep, const std::vector<double>& residual, const std::vector<double>& tol,
                  const std::vector<double>& tau) {
    double worst = -std::numeric_limits<double>::infinity();
    double raw = -std::numeric_limits<double>::infinity();
    double fit_a = 0.0;
    bool ok = true;
    for (std::size_t i = 0; i < residual.size(); ++i) {
        const double excess = residual[i] - tol[i];
        if (excess > worst) {
            worst = excess;
            rep.max_residual = residual[i];
            rep.tolerance = tol[i];
        }
        raw = std::max(raw, residual[i]);
        const double h = local_spacing(tau, i);
        if (h > 0.0) fit_a = std::max(fit_a, std::abs(residual[i]) / (h * h));
        if (excess > 0.0) ok = false;
    }
    rep.values["max_raw_residual"] = raw;
    rep.values["max_abs_residual_over_dtau_sq"] = fit_a;
    double max_abs = 0.0;
    for (double r : residual) max_abs = std::max(max_abs, std::abs(r));
    rep.values["max_abs_residual"] = max_abs;
    return ok;
}

std::size_t tail_start(const std::vector<double>& tau, double burn_in) {
    const double tau0 = tau.front() + burn_in;
    std::size_t i = 0;
    while (i < tau.size() && tau[i] < tau0) ++i;
    return i;
}

bool nonincreasing(const std::vector<double>& v, std::size_t from, std::size_t to) {
    double scale = 0.0;
    for (std::size_t i = from; i < to; ++i) scale = std::max(scale, std::abs(v[i]));
    for (std::size_t i = from + 1; i < to; ++i) {
        if (v[i] > v[i - 1] * (1.0 + 1e-12) + 1e-14 * scale) return false;
    }
    return true;
}

}  // namespace

// ---------------------------------------------------------------------------
// L^2 balance
// ---------------------------------------------------------------------------

InequalityReport verify_l2_inequality(const EnergyLedger& ledger, const CheckOptions& opt) {
    InequalityReport rep = base_report("l2_energy", ledger);
    const auto& rows = ledger.rows;
    if (rows.size() < 3) {
        rep.note = "fewer than 3 rows";
        return rep;
    }
    const auto tau = column(ledger, &LedgerRow::tau);
    const auto wl2 = column(ledger, &LedgerRow::w_l2sq);
    const auto d = d_dtau(tau, wl2);
    const auto dtol = d_dtau_tolerance(tau, wl2);

    std::vector<double> res(rows.size()), tol(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const double lhs = 0.5 * d[i];
        const double rhs = -(rows[i].w_h1sq - 0.25 * rows[i].w_l2sq);
        res[i] = lhs - rhs;
        tol[i] = 0.5 * dtol[i] + opt.route_slack * (std::abs(lhs) + rows[i].w_h1sq + 0.25 * rows[i].w_l2sq);
    }
    const bool rowwise = fold_rowwise(rep, res, tol, tau);

    // u-side stream: physical energy never increases
    double max_increase = 0.0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double prev = rows[i - 1].u_l2sq;
        const double inc = rows[i].u_l2sq - prev;
        if (prev > 0.0) max_increase = std::max(max_increase, inc / prev);
        else if (inc > 0.0) max_increase = std::numeric_limits<double>::max();
    }
    const bool monotone = max_increase <= 1e-13;
    rep.values["u_energy_max_relative_increase"] = max_increase;
    rep.values["u_energy_nonincreasing"] = monotone ? 1.0 : 0.0;

    rep.status = rowwise && monotone ? Status::holds : Status::violated;
    if (!rowwise) rep.note = "similarity-variable balance exceeded its tolerance";
    if (!monotone) rep.note += std::string(rep.note.empty() ? "" : "; ") + "physical energy increased";
    return rep;
}

// ---------------------------------------------------------------------------
// Gradient ladder
// ---------------------------------------------------------------------------

InequalityReport verify_h1_inequality(const EnergyLedger& ledger, const CheckOptions& opt) {
    InequalityReport rep = base_report("h1_ladder", ledger);
    const auto& rows = ledger.rows;
    if (rows.size() < 3) {
        rep.note = "fewer than 3 rows";
        return rep;
    }
    const auto tau = column(ledger, &LedgerRow::tau);
    const auto h1 = column(ledger, &LedgerRow::w_h1sq);
    const auto d = d_dtau(tau, h1);
    const auto dtol = d_dtau_tolerance(tau, h1);

    std::vector<double> res(rows.size()), tol(rows.size());
    double cert = 0.0;
    double max_tol = 0.0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        const double rhs = -2.0 * r.w_h2sq - 0.5 * r.w_h1sq - 2.0 * r.trilinear_w;
        res[i] = d[i] - rhs;
        tol[i] = dtol[i] + opt.route_slack * (std::abs(d[i]) + 2.0 * r.w_h2sq + 0.5 * r.w_h1sq +
                                              2.0 * std::abs(r.trilinear_w));
        max_tol = std::max(max_tol, tol[i]);
        if (i > 0 && i + 1 < rows.size()) {
            // d/dtau |grad w|^2 <= -|grad^2 w|^2 - |grad w|^2 / 2 + c
            cert = std::max(cert, d[i] + r.w_h2sq + 0.5 * r.w_h1sq - tol[i]);
        }
    }
    const bool raw_ok = fold_rowwise(rep, res, tol, tau);
    rep.certificate = cert;

    // Integrated form with rate 1/2 and the fitted offset.
    const double envelope = gronwall_envelope(tau, h1, 0.5, cert);
    const double h1_scale = *std::max_element(h1.begin(), h1.end());
    const double env_tol = 2.0 * max_tol + opt.route_slack * h1_scale;
    const bool env_ok = envelope <= env_tol;
    rep.values["envelope_violation"] = envelope;
    rep.values["envelope_tolerance"] = env_tol;
    rep.values["envelope_bound_offset"] = 2.0 * cert;

    if (!raw_ok || !env_ok) {
        rep.status = Status::violated;
        rep.note = !raw_ok ? "gradient balance exceeded its tolerance" : "gradient envelope exceeded";
    } else {
        rep.status = cert > 0.0 ? Status::holds_with_certificate : Status::holds;
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Laplacian ladder
// ---------------------------------------------------------------------------

InequalityReport verify_h2_inequality(const EnergyLedger& ledger, double h1_certificate, const CheckOptions& opt) {
    InequalityReport rep = base_report("h2_ladder", ledger);
    const auto& rows = ledger.rows;
    if (rows.size() < 3) {
        rep.note = "fewer than 3 rows";
        return rep;
    }
    const auto tau = column(ledger, &LedgerRow::tau);
    const auto h2 = column(ledger, &LedgerRow::w_h2sq);
    const auto d = d_dtau(tau, h2);
    const auto dtol = d_dtau_tolerance(tau, h2);

    std::vector<double> res(rows.size()), tol(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        const double rhs = -2.0 * r.w_h3sq - 1.5 * r.w_h2sq - 2.0 * r.lap_coupling;
        res[i] = d[i] - rhs;
        tol[i] = dtol[i] + opt.route_slack * (std::abs(d[i]) + 2.0 * r.w_h3sq + 1.5 * r.w_h2sq +
                                              2.0 * std::abs(r.lap_coupling));
    }
    const bool raw_ok = fold_rowwise(rep, res, tol, tau);

    const std::size_t i0 = tail_start(tau, opt.burn_in);
    double delta1 = 0.0;
    for (std::size_t i = i0; i < rows.size(); ++i) delta1 = std::max(delta1, std::sqrt(rows[i].grad_high_sq));
    rep.values["delta1"] = delta1;
    rep.values["h1_certificate"] = h1_certificate;
    rep.values["rate_target"] = 1.5;

    if (!raw_ok) {
        rep.status = Status::violated;
        rep.note = "Laplacian balance exceeded its tolerance";
        return rep;
    }
    if (i0 + 1 >= rows.size()) {
        rep.status = Status::inconclusive;
        rep.note = "tail after burn-in has fewer than 2 rows";
        return rep;
    }
    const double base = h2[i0];
    if (base == 0.0) {
        rep.status = Status::holds;
        rep.note = "zero Laplacian energy on the tail";
        return rep;
    }
    double rho = std::numeric_limits<double>::infinity();
    for (std::size_t i = i0 + 1; i < rows.size(); ++i) {
        const double ratio = h2[i] / base;
        const double rate = ratio > 0.0 ? -std::log(ratio) / (tau[i] - tau[i0])
                                        : std::numeric_limits<double>::infinity();
        rho = std::min(rho, rate);
    }
    rep.values["rho"] = rho;
    rep.values["tau0"] = tau[i0];

    if (rho >= 1.5) {
        rep.status = Status::holds;
    } else if (rho >= 1.5 - h1_certificate) {
        rep.status = Status::holds_with_certificate;
        rep.certificate = delta1 > 0.0 ? (1.5 - rho) / delta1 : 0.0;
    } else {
        rep.status = Status::inconclusive;
        rep.certificate = delta1 > 0.0 ? (1.5 - rho) / delta1 : 0.0;
        rep.note = "tail decay rate below 3/2 minus the gradient certificate";
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Frequency-split decay
// ---------------------------------------------------------------------------

InequalityReport verify_decomposition_decay(const EnergyLedger& ledger, const CheckOptions& opt) {
    validate_alpha(opt.alpha);
    InequalityReport rep = base_report("decomposition_decay", ledger);
    const auto& rows = ledger.rows;
    if (rows.size() < 3) {
        rep.note = "fewer than 3 rows";
        return rep;
    }
    const double alpha = opt.alpha;
    const auto tau = column(ledger, &LedgerRow::tau);
    const auto e = energy_column(ledger);
    const auto d = d_dtau(tau, e);
    const auto dtol = d_dtau_tolerance(tau, e);

    // (a) smallest C with E'/2 <= -alpha E + C E^{3/2}
    double c_fit = 0.0;
    for (std::size_t i = 1; i + 1 < rows.size(); ++i) {
        if (!(e[i] > 0.0)) continue;
        const double excess = 0.5 * d[i] + alpha * e[i] - 0.5 * dtol[i] - opt.route_slack * (0.5 * std::abs(d[i]) + alpha * e[i]);
        if (excess > 0.0) c_fit = std::max(c_fit, excess / std::pow(e[i], 1.5));
    }
    rep.certificate = c_fit;

    bool violated = false;
    bool inconclusive = false;
    std::vector<std::string> notes;

    // Split energy cannot exceed the full energy at the first row.
    const double margin0 = rows.front().w_l2sq - e.front();
    rep.values["initial_energy_margin"] = margin0;
    if (margin0 < -1e-12 * std::max(1.0, rows.front().w_l2sq)) {
        violated = true;
        notes.emplace_back("split energy exceeds the full energy at the first row");
    }

    // (b) decay envelope on the tail when the small-energy gate is open
    const std::size_t i0 = tail_start(tau, opt.burn_in);
    const double c_gate = opt.reference_decay_certificate.value_or(c_fit);
    rep.values["gate_certificate"] = c_gate;
    if (i0 < rows.size()) {
        const double gate = c_gate > 0.0 ? std::pow(alpha / (2.0 * c_gate), 2.0) : std::numeric_limits<double>::max();
        const bool active = e[i0] <= gate;
        rep.values["gate_active"] = active ? 1.0 : 0.0;
        rep.values["tau0"] = tau[i0];
        double worst_ratio = 0.0;
        for (std::size_t i = i0; i < rows.size(); ++i) {
            const double bound = e[i0] * std::exp(-alpha * (tau[i] - tau[i0]));
            if (bound > 0.0) worst_ratio = std::max(worst_ratio, e[i] / bound);
            else if (e[i] > 0.0) worst_ratio = std::numeric_limits<double>::max();
        }
        rep.values["envelope_ratio"] = worst_ratio;
        if (active && worst_ratio > opt.decay_factor) {
            violated = true;
            notes.emplace_back("split energy decays slower than rate alpha");
        }

        // (c) tail behaviour of the low-band L^4 norm and the tilde-high energy
        const auto l4 = column(ledger, &LedgerRow::low_l4);
        const auto high = column(ledger, &LedgerRow::E_high);
        const bool l4_mono = nonincreasing(l4, i0, rows.size());
        const bool high_mono = nonincreasing(high, i0, rows.size());
        rep.values["low_l4_nonincreasing"] = l4_mono ? 1.0 : 0.0;
        rep.values["E_high_nonincreasing"] = high_mono ? 1.0 : 0.0;
        const double l4_ratio = l4[i0] > 0.0 ? l4.back() / l4[i0] : 0.0;
        const double high_ratio = high[i0] > 0.0 ? high.back() / high[i0] : 0.0;
        rep.values["low_l4_tail_ratio"] = l4_ratio;
        rep.values["E_high_tail_ratio"] = high_ratio;
        if (!l4_mono || !high_mono) {
            violated = true;
            notes.emplace_back("tail quantity increased after burn-in");
        }
        if (!violated && (l4_ratio > opt.limit_ratio || high_ratio > opt.limit_ratio)) {
            inconclusive = true;
            notes.emplace_back("tail did not fall below the limit ratio within the logged horizon");
        }
    } else {
        notes.emplace_back("no rows after burn-in");
        inconclusive = true;
    }

    if (violated) {
        rep.status = Status::violated;
    } else if (inconclusive) {
        rep.status = Status::inconclusive;
    } else {
        rep.status = c_fit > 0.0 ? Status::holds_with_certificate : Status::holds;
    }
    for (const auto& n : notes) rep.note += (rep.note.empty() ? "" : "; ") + n;
    return rep;
}

// ---------------------------------------------------------------------------
// Blow-up rate monitor
// ---------------------------------------------------------------------------

InequalityReport verify_blowup_rate(const EnergyLedger& ledger, const CheckOptions& opt) {
    InequalityReport rep = base_report("blowup_rate", ledger);
    const auto& rows = ledger.rows;
    rep.tolerance = opt.epsilon;
    if (rows.empty()) {
        rep.note = "empty ledger";
        return rep;
    }
    double max_sup = 0.0;
    for (const auto& r : rows) max_sup = std::max(max_sup, r.w_sup);
    rep.max_residual = max_sup;

    // Nonincreasing over the final third.
    const std::size_t third = rows.size() - (rows.size() + 2) / 3;
    bool mono = true;
    for (std::size_t i = std::max<std::size_t>(third, 1); i < rows.size(); ++i) {
        if (rows[i].w_sup > rows[i - 1].w_sup * (1.0 + 1e-12)) mono = false;
    }
    rep.values["final_third_nonincreasing"] = mono ? 1.0 : 0.0;

    if (opt.epsilon <= 0.0 && max_sup > 0.0) {
        rep.status = Status::inconclusive;
        rep.note = "threshold zero cannot be met by nonzero data";
        return rep;
    }
    std::size_t last_above = rows.size();
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].w_sup > opt.epsilon) last_above = i;
    }
    if (last_above == rows.size()) {
        rep.status = Status::holds;
        rep.values["t0"] = rows.front().t;
        rep.values["tau0"] = rows.front().tau;
    } else if (last_above + 1 < rows.size()) {
        rep.status = Status::holds;
        rep.values["t0"] = rows[last_above].t;
        rep.values["tau0"] = rows[last_above].tau;
    } else {
        rep.status = Status::inconclusive;
        rep.note = "monitored quantity still above threshold at the last row";
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Route agreement
// ---------------------------------------------------------------------------

double two_route_audit(const EnergyLedger& ledger) {
    double g = 0.0;
    for (const auto& r : ledger.rows) g = std::max(g, r.route_gap);
    return g;
}

InequalityReport two_route_report(const EnergyLedger& ledger, const CheckOptions& opt) {
    InequalityReport rep = base_report("two_route", ledger);
    rep.max_residual = two_route_audit(ledger);
    rep.tolerance = opt.route_slack;
    rep.status = rep.max_residual <= opt.route_slack ? Status::holds : Status::violated;
    return rep;
}

std::vector<InequalityReport> verify_all(const EnergyLedger& ledger, const CheckOptions& opt) {
    std::vector<InequalityReport> out;
    out.push_back(verify_l2_inequality(ledger, opt));
    out.push_back(verify_h1_inequality(ledger, opt));
    out.push_back(verify_h2_inequality(ledger, out.back().certificate, opt));
    out.push_back(verify_decomposition_decay(ledger, opt));
    out.push_back(verify_blowup_rate(ledger, opt));
    out.push_back(two_route_report(ledger, opt));
    return out;
}

Status overall_status(const std::vector<InequalityReport>& reports) {
    auto rank = [](Status s) {
        switch (s) {
            case Status::holds: return 0;
            case Status::holds_with_certificate: return 1;
            case Status::inconclusive: return 2;
            case Status::violated: return 3;
        }
        return 3;
    };
    Status worst = Status::holds;
    for (const auto& r : reports) {
        if (rank(r.status) > rank(worst)) worst = r.status;
    }
    return worst;
}

// ---------------------------------------------------------------------------
// Fixtures
// ---------------------------------------------------------------------------

EnergyLedger corrupt_energy_bump(EnergyLedger ledger, double relative) {
    if (ledger.rows.empty()) throw std::invalid_argument("cannot corrupt an empty ledger");
    auto& r = ledger.rows.back();
    r.u_l2sq *= 1.0 + relative;
    r.w_l2sq *= 1.0 + relative;
    return ledger;
}

EnergyLedger corrupt_trilinear_flip(EnergyLedger ledger) {
    for (auto& r : ledger.rows) r.trilinear_w = -r.trilinear_w;
    return ledger;
}

EnergyLedger synthetic_energy_series(double e0, double rate, double tau_end, std::size_t rows) {
    if (rows < 3) throw std::invalid_argument("need at least 3 rows");
    EnergyLedger l;
    for (std::size_t i = 0; i < rows; ++i) {
        LedgerRow r;
        r.tau = tau_end * static_cast<double>(i) / static_cast<double>(rows - 1);
        r.t = 1.0 - std::exp(-r.tau);
        r.E_low = e0 * std::exp(-rate * r.tau);
        r.E_high = 0.0;
        r.w_l2sq = r.E_low;
        r.low_l4 = std::sqrt(r.E_low);
        r.low_sup = std::sqrt(r.E_low);
        l.rows.push_back(r);
    }
    return l;
}

}  // namespace nsbound

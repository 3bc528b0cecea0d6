#include "nsbound/ledger.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace nsbound {

namespace {

using Member = double LedgerRow::*;

struct Column {
    const char* name;
    Member member;
};

const std::array<Column, 20> kColumns = {{
    {"t", &LedgerRow::t},
    {"tau", &LedgerRow::tau},
    {"dt", &LedgerRow::dt},
    {"u_l2sq", &LedgerRow::u_l2sq},
    {"u_h1sq", &LedgerRow::u_h1sq},
    {"u_h2sq", &LedgerRow::u_h2sq},
    {"u_sup", &LedgerRow::u_sup},
    {"w_l2sq", &LedgerRow::w_l2sq},
    {"w_h1sq", &LedgerRow::w_h1sq},
    {"w_h2sq", &LedgerRow::w_h2sq},
    {"w_sup", &LedgerRow::w_sup},
    {"E_low", &LedgerRow::E_low},
    {"E_high", &LedgerRow::E_high},
    {"low_l4", &LedgerRow::low_l4},
    {"low_sup", &LedgerRow::low_sup},
    {"grad_high_sq", &LedgerRow::grad_high_sq},
    {"trilinear_w", &LedgerRow::trilinear_w},
    {"lap_coupling", &LedgerRow::lap_coupling},
    {"route_gap", &LedgerRow::route_gap},
    {"w_h3sq", &LedgerRow::w_h3sq},
}};

}  // namespace

const std::vector<std::string>& ledger_columns() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& c : kColumns) v.emplace_back(c.name);
        return v;
    }();
    return names;
}

LedgerRow make_ledger_row(const VectorField& u_hat, double t, double dt, double horizon, const MultiplierSet& set) {
    const SimilarityClock clock = SimilarityClock::at_time(t, horizon);
    const UFunctionals u = measure_u(u_hat);
    const ScalingRouteFunctionals a = w_functionals_scaling_route(u, clock);
    const MultiplierRouteFunctionals b = w_functionals_multiplier_route(u_hat, clock, set);

    LedgerRow r;
    r.t = t;
    r.tau = clock.tau();
    r.dt = dt;
    r.u_l2sq = u.norms.l2_sq;
    r.u_h1sq = u.norms.h1_sq;
    r.u_h2sq = u.norms.h2_sq;
    r.u_sup = u.norms.sup;
    r.w_l2sq = a.w_l2_sq;
    r.w_h1sq = a.w_h1_sq;
    r.w_h2sq = a.w_h2_sq;
    r.w_sup = a.w_sup;
    r.E_low = b.E_low;
    r.E_high = b.E_high;
    r.low_l4 = b.low_l4;
    r.low_sup = b.low_sup;
    r.grad_high_sq = b.grad_high_sq;
    r.trilinear_w = a.trilinear;
    r.lap_coupling = a.lap_coupling;
    r.route_gap = route_gap(a, b);
    r.w_h3sq = a.w_h3_sq;
    return r;
}

void validate_ledger(const EnergyLedger& ledger) {
    for (std::size_t i = 0; i < ledger.rows.size(); ++i) {
        const auto& r = ledger.rows[i];
        for (const auto& c : kColumns) {
            if (!std::isfinite(r.*(c.member))) {
                throw std::invalid_argument("ledger row " + std::to_string(i) + ": non-finite " + c.name);
            }
        }
        if (i > 0 && !(r.tau > ledger.rows[i - 1].tau)) {
            throw std::invalid_argument("ledger row " + std::to_string(i) + ": tau not strictly increasing");
        }
    }
}

void write_ledger_csv(std::ostream& out, const EnergyLedger& ledger) {
    for (std::size_t i = 0; i < kColumns.size(); ++i) out << (i ? "," : "") << kColumns[i].name;
    out << '\n';
    char buf[40];
    for (const auto& r : ledger.rows) {
        for (std::size_t i = 0; i < kColumns.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%.17g", r.*(kColumns[i].member));
            out << (i ? "," : "") << buf;
        }
        out << '\n';
    }
}

EnergyLedger read_ledger_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("ledger: missing header");
    {
        std::stringstream hs(line);
        std::string name;
        std::size_t i = 0;
        while (std::getline(hs, name, ',')) {
            if (i >= kColumns.size() || name != kColumns[i].name) {
                throw std::invalid_argument("ledger: unexpected column '" + name + "'");
            }
            ++i;
        }
        if (i != kColumns.size()) throw std::invalid_argument("ledger: header has too few columns");
    }
    EnergyLedger ledger;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::stringstream ls(line);
        std::string cell;
        LedgerRow r;
        std::size_t i = 0;
        while (std::getline(ls, cell, ',')) {
            if (i >= kColumns.size()) throw std::invalid_argument("ledger line " + std::to_string(line_no) + ": too many fields");
            std::size_t used = 0;
            double v;
            try {
                v = std::stod(cell, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used == 0 || used != cell.size()) {
                throw std::invalid_argument("ledger line " + std::to_string(line_no) + ": bad number '" + cell + "'");
            }
            r.*(kColumns[i].member) = v;
            ++i;
        }
        if (i != kColumns.size()) throw std::invalid_argument("ledger line " + std::to_string(line_no) + ": too few fields");
        ledger.rows.push_back(r);
    }
    return ledger;
}

void save_ledger(const std::string& path, const EnergyLedger& ledger) {
    std::ofstream out(path);
    if (!out) throw std::ios_base::failure("cannot open " + path + " for writing");
    write_ledger_csv(out, ledger);
    out.flush();
    if (!out) throw std::ios_base::failure("write failed: " + path);
}

EnergyLedger load_ledger(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::ios_base::failure("cannot open " + path);
    return read_ledger_csv(in);
}

}  // namespace nsbound

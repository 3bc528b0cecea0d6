#pragma once

/// @file ledger.hpp
/// @brief Per-output-step record of u-side and w-side functionals, with a
/// fixed CSV layout.

#include "nsbound/multiplier_bank.hpp"
#include "nsbound/similarity_frame.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace nsbound {

struct LedgerRow {
    double t = 0.0;
    double tau = 0.0;
    double dt = 0.0;
    double u_l2sq = 0.0;
    double u_h1sq = 0.0;
    double u_h2sq = 0.0;
    double u_sup = 0.0;
    double w_l2sq = 0.0;
    double w_h1sq = 0.0;
    double w_h2sq = 0.0;
    double w_sup = 0.0;
    double E_low = 0.0;
    double E_high = 0.0;
    double low_l4 = 0.0;
    double low_sup = 0.0;
    double grad_high_sq = 0.0;
    double trilinear_w = 0.0;
    double lap_coupling = 0.0;
    double route_gap = 0.0;
    double w_h3sq = 0.0;

    double energy() const { return E_low + E_high; }
    bool operator==(const LedgerRow&) const = default;
};

struct EnergyLedger {
    std::vector<LedgerRow> rows;
    bool operator==(const EnergyLedger&) const = default;
};

/// Column names in file order.
const std::vector<std::string>& ledger_columns();

/// Snapshot of one spectral state at time t.
LedgerRow make_ledger_row(const VectorField& u_hat, double t, double dt, double horizon, const MultiplierSet& set);

/// Throws std::invalid_argument if tau is not strictly increasing or any entry is non-finite.
void validate_ledger(const EnergyLedger& ledger);

/// Values use 17 significant digits so that reading reproduces them bit-exactly.
void write_ledger_csv(std::ostream& out, const EnergyLedger& ledger);
EnergyLedger read_ledger_csv(std::istream& in);

void save_ledger(const std::string& path, const EnergyLedger& ledger);
EnergyLedger load_ledger(const std::string& path);

}  // namespace nsbound

#pragma once

/// @file inequality_lab.hpp
/// @brief Verdicts on ledgers: rowwise residuals of the similarity-variable
/// energy inequalities, fitted certificate constants, decay envelopes and the
/// blow-up-rate monitor.
///
/// On the periodic box the L^2, gradient and Laplacian balances hold with
/// equality, so every rowwise residual is finite-difference error in tau plus
/// roundoff. Tolerances are built from a local third-derivative estimate.

#include "nsbound/ledger.hpp"

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace nsbound {

enum class Status { holds, holds_with_certificate, violated, inconclusive };

std::string to_string(Status s);

struct InequalityReport {
    std::string id;
    Status status = Status::inconclusive;
    double max_residual = 0.0;  ///< max over rows of (lhs - rhs - tol), <= 0 when holding
    double certificate = 0.0;
    double tolerance = 0.0;     ///< largest row tolerance used
    double tau_begin = 0.0;
    double tau_end = 0.0;
    std::map<std::string, double> values;  ///< named secondary measurements
    std::string note;
};

/// Three-point nonuniform derivative (second-order one-sided stencils at the ends).
/// Throws std::invalid_argument with fewer than 3 points or non-increasing tau.
std::vector<double> d_dtau(std::span<const double> tau, std::span<const double> f);

/// Row tolerance for d_dtau: safety * dtau^2 * |f'''| from neighbouring third
/// divided differences, times 4 at the two ends.
std::vector<double> d_dtau_tolerance(std::span<const double> tau, std::span<const double> f);

struct CheckOptions {
    double alpha = 0.0625;
    double epsilon = 0.1;               ///< blow-up monitor threshold
    double burn_in = 1.0;               ///< tau_0 = first logged tau + burn_in
    double route_slack = 1e-10;         ///< relative slack for route agreement
    double decay_factor = 1.05;         ///< allowed overshoot of the decay envelope
    double limit_ratio = 0.1;           ///< final / initial for the tail-limit claims
    /// Certificate gating the small-energy condition of the decay check. When
    /// absent the ledger's own fitted constant is used.
    std::optional<double> reference_decay_certificate;
};

InequalityReport verify_l2_inequality(const EnergyLedger& ledger, const CheckOptions& opt = {});
InequalityReport verify_h1_inequality(const EnergyLedger& ledger, const CheckOptions& opt = {});
/// h1_certificate: the constant from verify_h1_inequality.
InequalityReport verify_h2_inequality(const EnergyLedger& ledger, double h1_certificate, const CheckOptions& opt = {});
InequalityReport verify_decomposition_decay(const EnergyLedger& ledger, const CheckOptions& opt = {});
InequalityReport verify_blowup_rate(const EnergyLedger& ledger, const CheckOptions& opt = {});

/// Largest route_gap column entry.
double two_route_audit(const EnergyLedger& ledger);
InequalityReport two_route_report(const EnergyLedger& ledger, const CheckOptions& opt = {});

/// Every check in a fixed order: l2, h1, h2, decay, blowup, routes.
std::vector<InequalityReport> verify_all(const EnergyLedger& ledger, const CheckOptions& opt = {});

/// Worst status: violated > inconclusive > holds_with_certificate > holds.
Status overall_status(const std::vector<InequalityReport>& reports);

// Corruption fixtures for detector tests.

/// Raises the last row's energy (u and w side) by the given relative amount.
EnergyLedger corrupt_energy_bump(EnergyLedger ledger, double relative = 0.01);
/// Negates the trilinear column.
EnergyLedger corrupt_trilinear_flip(EnergyLedger ledger);
/// Pure decay series E = e0 exp(-rate tau) on a uniform tau grid; all other columns
/// are filled consistently with a field whose energy sits in the low band.
EnergyLedger synthetic_energy_series(double e0, double rate, double tau_end, std::size_t rows);

}  // namespace nsbound

#pragma once

/// @file ns_dynamics.hpp
/// @brief Pseudo-spectral integration of du/dt + (u.grad)u + grad p = Lap u,
/// div u = 0 on the periodic box (unit viscosity).

#include "nsbound/ledger.hpp"
#include "nsbound/spectral_core.hpp"

#include <cstdint>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>

namespace nsbound {

enum class InitialKind { taylor_green, random_low_mode };

std::string to_string(InitialKind kind);
InitialKind parse_initial_kind(const std::string& text);

struct SimulationConfig {
    int n = 32;
    double box_length = 2.0 * std::numbers::pi;
    double horizon = 1.0;
    InitialKind kind = InitialKind::random_low_mode;
    std::uint64_t seed = 1;
    double delta = 0.01;      ///< requested ||u_0||_{L^2}
    double k_max = 4.0;       ///< random_low_mode support radius in wavenumber units
    double c_cfl = 0.5;
    double alpha = 0.0625;
    double t_min = -1.0;      ///< run stops at T - t_min; negative selects T e^{-6}
    int output_stride = 1;
    double dtau_max = 0.01;   ///< cap on the similarity-time increment of one step
    double sharpness = 1.0;   ///< transition sharpness of the cutoff profile
    bool linear_only = false; ///< drop the nonlinearity (heat-flow reference runs)

    double effective_t_min() const;
    /// Throws std::invalid_argument on any range violation.
    void validate() const;
};

/// Real, mean-free, divergence-free initial field with ||u_0||_{L^2} = delta.
VectorField make_initial_data(InitialKind kind, const SpectralGrid& grid, double delta, std::uint64_t seed,
                              double k_max = 4.0);
VectorField make_initial_data(const SimulationConfig& config);

/// -P dealias(F[(u.grad)u]).
VectorField nonlinear_rhs(const VectorField& u_hat);

struct TrajectoryState {
    VectorField u_hat;
    double t = 0.0;
    long steps = 0;
    double last_dt = 0.0;
};

/// c_cfl min(dx / max|u|, 1 / k_max^2) with k_max the largest axis wavenumber.
double cfl_dt(const VectorField& u_hat, double c_cfl);

/// One integrating-factor RK4 step. Throws std::invalid_argument unless 0 < dt <= cfl_dt.
TrajectoryState step(const TrajectoryState& state, double dt, double c_cfl, bool linear_only = false);

class NumericalAbort : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Called with every logged row as it is produced.
using RowSink = std::function<void(const LedgerRow&)>;

/// Integrates from t = 0 to T - t_min and logs every output_stride-th step plus
/// the first and last states. Throws NumericalAbort on non-finite values.
EnergyLedger run(const SimulationConfig& config, const RowSink& sink = {});

}  // namespace nsbound

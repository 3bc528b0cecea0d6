#pragma once

/// @file gronwall_comparator.hpp
/// @brief Comparison ODE h' = C delta - B h + h^5, its trap interval [0, h_-],
/// and the linear Gronwall envelope used by the decay checks.

#include <span>
#include <vector>

namespace nsbound {

struct ComparisonParams {
    double B = 1.0;
    double C = 1.0;
    double delta = 0.0;
    double h0 = 0.0;
};

/// Smaller root of h^2 - B h + C delta, as 2 C delta / (B + sqrt(B^2 - 4 C delta)).
/// Throws std::domain_error if the discriminant is negative.
double h_minus(double B, double C, double delta);

struct TrapResult {
    bool trapped = false;
    double h_minus = 0.0;
    double max_h = 0.0;
    double min_h = 0.0;
    double max_excess = 0.0;      ///< max(h - h_minus, 0) along the trajectory
    double rhs_at_h_minus = 0.0;  ///< C delta - B h_- + h_-^5 (must be <= 0)
    bool nonincreasing = false;   ///< h never increased between steps
    std::vector<double> tau;
    std::vector<double> h;
};

/// RK4 on the equality ODE from h0 over [0, tau_max]. Requires B, C > 0,
/// delta >= 0, h_- in (0, 1) unless delta = 0, and 0 <= h0 <= h_-.
TrapResult verify_trap(const ComparisonParams& params, double tau_max = 50.0, double dt = 1e-3);

/// max_i E_i - [e^{-rho (tau_i - tau_0)} E_0 + (c / rho)(1 - e^{-rho (tau_i - tau_0)})],
/// the supersolution of E' = -rho E + c. Throws on empty or mismatched input.
double gronwall_envelope(std::span<const double> tau, std::span<const double> series, double rho, double c);

}  // namespace nsbound

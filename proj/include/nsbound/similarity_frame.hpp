#pragma once

/// @file similarity_frame.hpp
/// @brief Self-similar change of variables y = x / s^{1/2}, tau = -ln s,
/// w = s^{1/2} u with s = T - t, evaluated from the physical state.
///
/// Every w-functional is available from two independent routes:
///   - scaling route: exact power of s applied to the matching u-integral;
///   - multiplier route: Fourier sums of |u_k|^2 against rescaled symbols
///     psi(s^{1/2} |k|), with the power of s derived on the Fourier side.
/// The w-equation itself is never integrated.

#include "nsbound/multiplier_bank.hpp"
#include "nsbound/spectral_core.hpp"

namespace nsbound {

double tau_of_t(double t, double horizon);
double t_of_tau(double tau, double horizon);

class SimilarityClock {
public:
    static SimilarityClock at_time(double t, double horizon);
    static SimilarityClock at_tau(double tau, double horizon);

    double horizon() const { return horizon_; }
    double t() const { return t_; }
    double tau() const { return tau_; }
    /// s = T - t > 0.
    double remaining() const { return horizon_ - t_; }

private:
    SimilarityClock(double t, double tau, double horizon) : horizon_(horizon), t_(t), tau_(tau) {}
    double horizon_;
    double t_;
    double tau_;
};

/// Powers of s relating w-integrals to u-integrals: F_w = s^e F_u.
/// Derived from w(y) = s^{1/2} u(s^{1/2} y), dy = s^{-3/2} dx, grad_y = s^{1/2} grad_x.
struct ScalingExponents {
    static constexpr double l2_sq = -0.5;
    static constexpr double h1_sq = 0.5;
    static constexpr double h2_sq = 1.5;
    static constexpr double h3_sq = 2.5;
    static constexpr double sup = 0.5;
    static constexpr double trilinear = 1.5;
    static constexpr double lap_coupling = 2.5;
    /// ||w||_{L^m} = s^{1/2 - 3/(2m)} ||u||_{L^m}
    static constexpr double lm(double m) { return 0.5 - 1.5 / m; }
};

/// Physical-variable integrals of one velocity snapshot.
struct UFunctionals {
    NormSuite norms;
    double l2_sq_quadrature = 0.0;  ///< collocation quadrature of |u|^2
    double trilinear = 0.0;         ///< sum_{jkl} int d_j u_k d_j u_l d_l u_k
    double lap_coupling = 0.0;      ///< int Lap u . Lap((u . grad) u)
};

/// Requires a spectral, dealiased, divergence-free u (products are then exact
/// under collocation quadrature).
UFunctionals measure_u(const VectorField& u_hat);

struct ScalingRouteFunctionals {
    double w_l2_sq = 0.0;
    double w_h1_sq = 0.0;
    double w_h2_sq = 0.0;   ///< ||Lap w||^2 (= ||grad^2 w||^2 on the torus)
    double w_h3_sq = 0.0;   ///< ||grad Lap w||^2
    double w_sup = 0.0;
    double w_l4 = 0.0;
    double trilinear = 0.0;
    double lap_coupling = 0.0;
};

struct MultiplierRouteFunctionals {
    double w_l2_sq = 0.0;       ///< E_low_phi + E_high
    double w_h1_sq = 0.0;
    double w_h2_sq = 0.0;
    double w_h3_sq = 0.0;
    double E_low = 0.0;         ///< ||tilde-Delta_{-1} w||^2 (chi)
    double E_low_phi = 0.0;     ///< ||Delta_{-1} w||^2 (phi)
    double E_high = 0.0;        ///< ||tilde-overline w||^2 (sqrt(1 - phi^2))
    double low_l4 = 0.0;        ///< ||Delta_{-1} w||_{L^4}
    double low_sup = 0.0;       ///< ||Delta_{-1} w||_{L^inf}
    double grad_high_sq = 0.0;  ///< ||grad Delta_0 w||^2
};

ScalingRouteFunctionals w_functionals_scaling_route(const UFunctionals& u, const SimilarityClock& clock);

MultiplierRouteFunctionals w_functionals_multiplier_route(const VectorField& u_hat, const SimilarityClock& clock,
                                                          const MultiplierSet& set);

/// Multiplier-route value of ||F^{-1}[psi] * w||^2 for an arbitrary radial symbol.
double w_multiplier_energy(const VectorField& u_hat, const SimilarityClock& clock, const RadialMultiplier& psi);

/// Largest relative gap over the functionals both routes compute.
double route_gap(const ScalingRouteFunctionals& a, const MultiplierRouteFunctionals& b);

struct InitialSimilarityEnergy {
    double energy = 0.0;   ///< E at t = 0: ||tilde-Delta_{-1} w||^2 + ||tilde-overline w||^2
    double w_l2_sq = 0.0;  ///< ||w(0)||^2 = T^{-1/2} ||u_0||^2
    double margin() const { return w_l2_sq - energy; }
};

/// Throws std::logic_error if E(0) exceeds ||w(0)||^2 beyond roundoff.
InitialSimilarityEnergy initial_similarity_energy(const VectorField& u0_hat, double horizon,
                                                  const MultiplierSet& set);

}  // namespace nsbound

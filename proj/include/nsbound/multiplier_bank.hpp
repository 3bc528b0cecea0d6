#pragma once

/// @file multiplier_bank.hpp
/// @brief Radial Fourier multipliers of the low/high frequency split and the
/// pointwise certificates attached to them.
///
/// phi is the smooth cutoff (1 on r <= 1, 0 on r >= 2, nonincreasing), chi the
/// weighted low-frequency symbol built from it, and one_minus_phi /
/// sqrt_one_minus_phi_sq the two high-frequency symbols.

#include "nsbound/spectral_core.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <tuple>
#include <vector>

namespace nsbound {

enum class MultiplierLabel { phi, chi, one_minus_phi, sqrt_one_minus_phi_sq };

std::string to_string(MultiplierLabel label);

/// Throws std::invalid_argument unless alpha lies in the open interval (0, 1/8).
void validate_alpha(double alpha);

class RadialMultiplier {
public:
    double operator()(double r) const;
    /// d(profile)/dr. For chi at r = 0 the derivative is +inf.
    double derivative(double r) const;
    /// r d(profile^2)/dr, i.e. xi . grad(psi^2) for a radial symbol psi.
    double xi_dot_grad_sq(double r) const;

    MultiplierLabel label() const { return label_; }
    double alpha() const { return alpha_; }
    double sharpness() const { return sharpness_; }

private:
    friend RadialMultiplier build_phi(double);
    friend RadialMultiplier build_chi(const RadialMultiplier&, double);
    friend RadialMultiplier derive_multiplier(const RadialMultiplier&, MultiplierLabel);

    RadialMultiplier(MultiplierLabel label, double alpha, double sharpness)
        : label_(label), alpha_(alpha), sharpness_(sharpness) {}

    double phi(double r) const;
    double phi_prime(double r) const;

    MultiplierLabel label_;
    double alpha_;
    double sharpness_;
};

/// phi(r) = S(2 - r) with S(s) = b(s) / (b(s) + b(1 - s)), b(s) = exp(-sharpness / s)
/// for s > 0 and 0 otherwise. The sharpness only reshapes the transition inside [1, 2].
RadialMultiplier build_phi(double transition_sharpness = 1.0);

/// chi(r) = r^{1/2+2a} phi(r) for r <= 1/2 + a and (1/2+a)^{1/2+2a} phi(r) beyond.
RadialMultiplier build_chi(const RadialMultiplier& phi, double alpha);

/// one_minus_phi or sqrt_one_minus_phi_sq from a phi profile.
RadialMultiplier derive_multiplier(const RadialMultiplier& phi, MultiplierLabel label);

/// The four profiles for one alpha, with per-grid cached symbol tables.
class MultiplierSet {
public:
    explicit MultiplierSet(double alpha, double transition_sharpness = 1.0);

    double alpha() const { return alpha_; }
    const RadialMultiplier& get(MultiplierLabel label) const;
    const RadialMultiplier& phi() const { return phi_; }
    const RadialMultiplier& chi() const { return chi_; }
    const RadialMultiplier& one_minus_phi() const { return one_minus_phi_; }
    const RadialMultiplier& sqrt_one_minus_phi_sq() const { return sqrt_one_minus_phi_sq_; }

    /// profile(|k|) over the grid's storage order. Safe for concurrent callers.
    std::shared_ptr<const std::vector<double>> symbol(const SpectralGrid& grid, MultiplierLabel label) const;

private:
    struct Cache {
        std::mutex mutex;
        std::map<std::tuple<int, double, int>, std::shared_ptr<const std::vector<double>>> tables;
    };

    double alpha_;
    RadialMultiplier phi_;
    RadialMultiplier chi_;
    RadialMultiplier one_minus_phi_;
    RadialMultiplier sqrt_one_minus_phi_sq_;
    std::shared_ptr<Cache> cache_;
};

/// coef(k) <- profile(scale |k|) coef(k).
VectorField apply(const RadialMultiplier& multiplier, const VectorField& field, double scale = 1.0);
/// Cached variant at scale 1.
VectorField apply(const MultiplierSet& set, MultiplierLabel label, const VectorField& field);

/// Hausdorff-Young/Hoelder constant for ||Delta_{-1} f||_{L^m} <= C ||chi-part of f||_{L^2}:
///   C = (2 pi)^{3/m'} (int_{|xi|<=2} |xi|^{-p} dxi)^{(2-m')/(2m')},
///   p = (1/2 + 2 alpha) 2m'/(2 - m'), 1/m + 1/m' = 1,
/// with the radial integral 4 pi int_0^2 r^{2-p} dr done by exp-sinh quadrature after r = 2 e^{-x}.
/// Accepts m in [4, inf]; pass std::numeric_limits<double>::infinity() for m = inf.
double hausdorff_young_constant(double alpha, double m);

/// Radial exponent p of the integrand above.
double hausdorff_young_exponent(double alpha, double m);

/// ||D^beta tilde-high f||^2 - ||D^beta Delta_0 f||^2 for |beta| <= 2.
double check_bernstein(const MultiplierSet& set, const VectorField& field, MultiIndex beta);

/// (1/4) r d(-chi^2)/dr - r^2 chi^2 + (1/4 + alpha) chi^2 on r in [0, 1].
double bracket_a(const MultiplierSet& set, double r);
/// (1/4)(1 - c) r d(phi^2)/dr - (r^2 - (1/4 + alpha)) c phi^2, c = (1/2+alpha)^{1+4 alpha}, on r in [1, 2].
double bracket_b(const MultiplierSet& set, double r);

/// Maximum of bracket_a over r_grid (must lie in [0, 1]).
double sign_certificate_a(double alpha, std::span<const double> r_grid);
/// Maximum of bracket_b over r_grid (must lie in [1, 2]).
double sign_certificate_b(double alpha, std::span<const double> r_grid);

/// count equispaced points on [a, b], endpoints included.
std::vector<double> uniform_grid(double a, double b, std::size_t count);

}  // namespace nsbound

#include "nsbound/multiplier_bank.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace nsbound {

std::string to_string(MultiplierLabel label) {
    switch (label) {
        case MultiplierLabel::phi: return "phi";
        case MultiplierLabel::chi: return "chi";
        case MultiplierLabel::one_minus_phi: return "one_minus_phi";
        case MultiplierLabel::sqrt_one_minus_phi_sq: return "sqrt_one_minus_phi_sq";
    }
    return "unknown";
}

void validate_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 0.125)) {
        throw std::invalid_argument("alpha must lie in the open interval (0, 1/8), got " + std::to_string(alpha));
    }
}

// ---------------------------------------------------------------------------
// Profiles
// ---------------------------------------------------------------------------

namespace {

struct SmoothStep {
    double value;
    double slope;
};

// S(s) = b(s) / (b(s) + b(1-s)) written as a logistic in g = sigma/s - sigma/(1-s).
SmoothStep smooth_step(double s, double sigma) {
    if (s <= 0.0) return {0.0, 0.0};
    if (s >= 1.0) return {1.0, 0.0};
    const double g = sigma / s - sigma / (1.0 - s);
    double value;
    if (g > 0.0) {
        const double e = std::exp(-g);
        value = e / (1.0 + e);
    } else {
        value = 1.0 / (1.0 + std::exp(g));
    }
    if (value == 0.0 || value == 1.0) return {value, 0.0};
    const double slope = sigma * (1.0 / (s * s) + 1.0 / ((1.0 - s) * (1.0 - s))) * value * (1.0 - value);
    return {value, slope};
}

double chi_exponent(double alpha) { return 0.5 + 2.0 * alpha; }
double chi_knee(double alpha) { return 0.5 + alpha; }

}  // namespace

double RadialMultiplier::phi(double r) const { return smooth_step(2.0 - r, sharpness_).value; }

double RadialMultiplier::phi_prime(double r) const { return -smooth_step(2.0 - r, sharpness_).slope; }

double RadialMultiplier::operator()(double r) const {
    switch (label_) {
        case MultiplierLabel::phi: return phi(r);
        case MultiplierLabel::one_minus_phi: return 1.0 - phi(r);
        case MultiplierLabel::sqrt_one_minus_phi_sq: {
            const double p = phi(r);
            return std::sqrt(std::max(0.0, (1.0 - p) * (1.0 + p)));
        }
        case MultiplierLabel::chi: {
            const double a = chi_exponent(alpha_);
            const double knee = chi_knee(alpha_);
            return (r <= knee ? std::pow(r, a) : std::pow(knee, a)) * phi(r);
        }
    }
    return 0.0;
}

double RadialMultiplier::derivative(double r) const {
    switch (label_) {
        case MultiplierLabel::phi: return phi_prime(r);
        case MultiplierLabel::one_minus_phi: return -phi_prime(r);
        case MultiplierLabel::sqrt_one_minus_phi_sq: {
            const double p = phi(r);
            const double q = (1.0 - p) * (1.0 + p);
            return q > 0.0 ? -p * phi_prime(r) / std::sqrt(q) : 0.0;
        }
        case MultiplierLabel::chi: {
            const double a = chi_exponent(alpha_);
            const double knee = chi_knee(alpha_);
            if (r <= knee) {
                if (r == 0.0) return std::numeric_limits<double>::infinity();
                return a * std::pow(r, a - 1.0) * phi(r) + std::pow(r, a) * phi_prime(r);
            }
            return std::pow(knee, a) * phi_prime(r);
        }
    }
    return 0.0;
}

double RadialMultiplier::xi_dot_grad_sq(double r) const {
    const double p = phi(r);
    const double dp = phi_prime(r);
    switch (label_) {
        case MultiplierLabel::phi: return 2.0 * r * p * dp;
        case MultiplierLabel::one_minus_phi: return -2.0 * r * (1.0 - p) * dp;
        case MultiplierLabel::sqrt_one_minus_phi_sq: return -2.0 * r * p * dp;
        case MultiplierLabel::chi: {
            const double a = chi_exponent(alpha_);
            const double knee = chi_knee(alpha_);
            if (r <= knee) {
                // chi^2 = r^{2a} phi^2, r d/dr -> 2a r^{2a} phi^2 + r^{2a} r d(phi^2)/dr
                const double r2a = std::pow(r, 2.0 * a);
                return 2.0 * a * r2a * p * p + r2a * 2.0 * r * p * dp;
            }
            return std::pow(knee, 2.0 * a) * 2.0 * r * p * dp;
        }
    }
    return 0.0;
}

RadialMultiplier build_phi(double transition_sharpness) {
    if (!(transition_sharpness > 0.0) || !std::isfinite(transition_sharpness)) {
        throw std::invalid_argument("transition sharpness must be positive");
    }
    return RadialMultiplier(MultiplierLabel::phi, 0.0, transition_sharpness);
}

RadialMultiplier build_chi(const RadialMultiplier& phi, double alpha) {
    validate_alpha(alpha);
    if (phi.label() != MultiplierLabel::phi) throw std::invalid_argument("build_chi expects a phi profile");
    return RadialMultiplier(MultiplierLabel::chi, alpha, phi.sharpness());
}

RadialMultiplier derive_multiplier(const RadialMultiplier& phi, MultiplierLabel label) {
    if (phi.label() != MultiplierLabel::phi) throw std::invalid_argument("derive_multiplier expects a phi profile");
    if (label == MultiplierLabel::chi) throw std::invalid_argument("chi needs alpha; use build_chi");
    return RadialMultiplier(label, phi.alpha(), phi.sharpness());
}

// ---------------------------------------------------------------------------
// MultiplierSet
// ---------------------------------------------------------------------------

MultiplierSet::MultiplierSet(double alpha, double transition_sharpness)
    : alpha_(alpha),
      phi_(build_phi(transition_sharpness)),
      chi_(build_chi(phi_, alpha)),
      one_minus_phi_(derive_multiplier(phi_, MultiplierLabel::one_minus_phi)),
      sqrt_one_minus_phi_sq_(derive_multiplier(phi_, MultiplierLabel::sqrt_one_minus_phi_sq)),
      cache_(std::make_shared<Cache>()) {}

const RadialMultiplier& MultiplierSet::get(MultiplierLabel label) const {
    switch (label) {
        case MultiplierLabel::phi: return phi_;
        case MultiplierLabel::chi: return chi_;
        case MultiplierLabel::one_minus_phi: return one_minus_phi_;
        case MultiplierLabel::sqrt_one_minus_phi_sq: return sqrt_one_minus_phi_sq_;
    }
    throw std::invalid_argument("unknown multiplier label");
}

std::shared_ptr<const std::vector<double>> MultiplierSet::symbol(const SpectralGrid& grid,
                                                                 MultiplierLabel label) const {
    const auto key = std::make_tuple(grid.n(), grid.box_length(), static_cast<int>(label));
    std::lock_guard lock(cache_->mutex);
    auto it = cache_->tables.find(key);
    if (it != cache_->tables.end()) return it->second;
    const auto& profile = get(label);
    auto table = std::make_shared<std::vector<double>>(grid.size());
    for (std::size_t idx = 0; idx < grid.size(); ++idx) (*table)[idx] = profile(grid.k_magnitude(idx));
    cache_->tables.emplace(key, table);
    return table;
}

VectorField apply(const RadialMultiplier& multiplier, const VectorField& field, double scale) {
    if (!field.is_spectral()) throw std::invalid_argument("multiplier apply requires a spectral field");
    VectorField out = field;
    const auto& grid = field.grid();
    for (std::size_t idx = 0; idx < grid.size(); ++idx) {
        const double m = multiplier(scale * grid.k_magnitude(idx));
        for (int c = 0; c < 3; ++c) out.component(c)[idx] *= m;
    }
    return out;
}

VectorField apply(const MultiplierSet& set, MultiplierLabel label, const VectorField& field) {
    if (!field.is_spectral()) throw std::invalid_argument("multiplier apply requires a spectral field");
    const auto table = set.symbol(field.grid(), label);
    VectorField out = field;
    for (int c = 0; c < 3; ++c) {
        auto comp = out.component(c);
        for (std::size_t idx = 0; idx < comp.size(); ++idx) comp[idx] *= (*table)[idx];
    }
    return out;
}

// ---------------------------------------------------------------------------
// Constants and certificates
// ---------------------------------------------------------------------------

namespace {

double dual_exponent(double m) {
    if (std::isinf(m)) return 1.0;
    return m / (m - 1.0);
}

}  // namespace

double hausdorff_young_exponent(double alpha, double m) {
    validate_alpha(alpha);
    if (!(m >= 4.0)) throw std::invalid_argument("Lebesgue exponent m must lie in [4, inf]");
    const double mp = dual_exponent(m);
    return chi_exponent(alpha) * 2.0 * mp / (2.0 - mp);
}

double hausdorff_young_constant(double alpha, double m) {
    const double p = hausdorff_young_exponent(alpha, m);
    if (!(p < 3.0)) {
        throw std::domain_error("radial integrand r^{2-p} is not integrable at the origin");
    }
    const double mp = dual_exponent(m);
    // r = 2 e^{-x} moves the origin singularity to infinity, where it decays
    // exponentially; tanh-sinh on [0, 2] loses ~15% as p approaches 3.
    boost::math::quadrature::exp_sinh<double> integrator;
    const double radial = integrator.integrate(
        [p](double x) { return std::pow(2.0, 3.0 - p) * std::exp(-(3.0 - p) * x); }, 0.0,
        std::numeric_limits<double>::infinity());
    const double ball = 4.0 * std::numbers::pi * radial;
    return std::pow(2.0 * std::numbers::pi, 3.0 / mp) * std::pow(ball, (2.0 - mp) / (2.0 * mp));
}

double check_bernstein(const MultiplierSet& set, const VectorField& field, MultiIndex beta) {
    if (beta.order() > 2) throw std::invalid_argument("Bernstein check supports |beta| <= 2");
    const VectorField d = spectral_derivative(field, beta);
    const double tilde_high = l2_sq_plancherel(apply(set, MultiplierLabel::sqrt_one_minus_phi_sq, d));
    const double high = l2_sq_plancherel(apply(set, MultiplierLabel::one_minus_phi, d));
    return tilde_high - high;
}

double bracket_a(const MultiplierSet& set, double r) {
    const auto& chi = set.chi();
    const double c = chi(r);
    return -0.25 * chi.xi_dot_grad_sq(r) - r * r * c * c + (0.25 + set.alpha()) * c * c;
}

double bracket_b(const MultiplierSet& set, double r) {
    const double alpha = set.alpha();
    const double c = std::pow(chi_knee(alpha), 1.0 + 4.0 * alpha);
    const auto& phi = set.phi();
    const double p = phi(r);
    return 0.25 * (1.0 - c) * phi.xi_dot_grad_sq(r) - (r * r - (0.25 + alpha)) * c * p * p;
}

double sign_certificate_a(double alpha, std::span<const double> r_grid) {
    const MultiplierSet set(alpha);
    if (r_grid.empty()) throw std::invalid_argument("empty radial grid");
    double worst = -std::numeric_limits<double>::infinity();
    for (double r : r_grid) {
        if (r < 0.0 || r > 1.0) throw std::invalid_argument("A-bracket grid must lie in [0, 1]");
        worst = std::max(worst, bracket_a(set, r));
    }
    return worst;
}

double sign_certificate_b(double alpha, std::span<const double> r_grid) {
    const MultiplierSet set(alpha);
    if (r_grid.empty()) throw std::invalid_argument("empty radial grid");
    double worst = -std::numeric_limits<double>::infinity();
    for (double r : r_grid) {
        if (r < 1.0 || r > 2.0) throw std::invalid_argument("B-bracket grid must lie in [1, 2]");
        worst = std::max(worst, bracket_b(set, r));
    }
    return worst;
}

std::vector<double> uniform_grid(double a, double b, std::size_t count) {
    if (count < 2) throw std::invalid_argument("uniform grid needs at least two points");
    std::vector<double> g(count);
    for (std::size_t i = 0; i < count; ++i) {
        g[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1);
    }
    g.back() = b;
    return g;
}

}  // namespace nsbound

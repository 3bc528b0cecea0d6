#include "nsbound/similarity_frame.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace nsbound {

double tau_of_t(double t, double horizon) {
    if (!(horizon > 0.0)) throw std::invalid_argument("horizon must be positive");
    if (!(t < horizon)) throw std::invalid_argument("similarity clock requires t < T");
    return -std::log(horizon - t);
}

double t_of_tau(double tau, double horizon) {
    if (!(horizon > 0.0)) throw std::invalid_argument("horizon must be positive");
    if (!std::isfinite(tau)) throw std::invalid_argument("tau must be finite");
    return horizon - std::exp(-tau);
}

SimilarityClock SimilarityClock::at_time(double t, double horizon) {
    return SimilarityClock(t, tau_of_t(t, horizon), horizon);
}

SimilarityClock SimilarityClock::at_tau(double tau, double horizon) {
    const double t = t_of_tau(tau, horizon);
    if (!(t < horizon)) throw std::invalid_argument("tau too large to resolve T - t");
    return SimilarityClock(t, tau, horizon);
}

UFunctionals measure_u(const VectorField& u_hat) {
    if (!u_hat.is_spectral()) throw std::invalid_argument("measure_u requires a spectral field");
    const auto& grid = u_hat.grid();
    UFunctionals out;
    out.norms = norms(u_hat);
    out.l2_sq_quadrature = l2_sq_quadrature(to_physical(u_hat));

    const VelocityGradient g = velocity_gradient(u_hat);
    double tri = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        for (int j = 0; j < 3; ++j) {
            for (int k = 0; k < 3; ++k) {
                const double djuk = g.grad[static_cast<std::size_t>(3 * k + j)][i];
                for (int l = 0; l < 3; ++l) {
                    tri += djuk * g.grad[static_cast<std::size_t>(3 * l + j)][i] *
                           g.grad[static_cast<std::size_t>(3 * k + l)][i];
                }
            }
        }
    }
    const double h = grid.spacing();
    out.trilinear = h * h * h * tri;

    // Lap u has only dealiased modes, so aliased tails of the product never pair with it.
    const VectorField adv = advective_product(grid, g);
    double lap = 0.0;
    for (int c = 0; c < 3; ++c) {
        const auto a = u_hat.component(c);
        const auto b = adv.component(c);
        for (std::size_t idx = 0; idx < grid.size(); ++idx) {
            const double k2 = grid.k_squared(idx);
            lap += k2 * k2 * (std::conj(a[idx]) * b[idx]).real();
        }
    }
    out.lap_coupling = grid.volume() * lap;
    return out;
}

ScalingRouteFunctionals w_functionals_scaling_route(const UFunctionals& u, const SimilarityClock& clock) {
    const double s = clock.remaining();
    if (!(s > 0.0)) throw std::invalid_argument("similarity clock past the horizon");
    using E = ScalingExponents;
    ScalingRouteFunctionals w;
    w.w_l2_sq = std::pow(s, E::l2_sq) * u.norms.l2_sq;
    w.w_h1_sq = std::pow(s, E::h1_sq) * u.norms.h1_sq;
    w.w_h2_sq = std::pow(s, E::h2_sq) * u.norms.h2_sq;
    w.w_h3_sq = std::pow(s, E::h3_sq) * u.norms.h3_sq;
    w.w_sup = std::pow(s, E::sup) * u.norms.sup;
    w.w_l4 = std::pow(s, E::lm(4.0)) * u.norms.l4;
    w.trilinear = std::pow(s, E::trilinear) * u.trilinear;
    w.lap_coupling = std::pow(s, E::lap_coupling) * u.lap_coupling;
    return w;
}

namespace {

// Fourier-side weights: |xi|^{2j} -> s^j |k|^{2j}, d xi -> s^{3/2} dk, |F[w]|^2 -> s^{-2} |F[u]|^2.
double fourier_prefactor(double s, int derivative_order) { return std::pow(s, derivative_order - 0.5); }

}  // namespace

MultiplierRouteFunctionals w_functionals_multiplier_route(const VectorField& u_hat, const SimilarityClock& clock,
                                                          const MultiplierSet& set) {
    if (!u_hat.is_spectral()) throw std::invalid_argument("multiplier route requires a spectral field");
    const double s = clock.remaining();
    if (!(s > 0.0)) throw std::invalid_argument("similarity clock past the horizon");
    const double rs = std::sqrt(s);
    const auto& grid = u_hat.grid();

    double low_phi[4] = {0, 0, 0, 0};
    double high[4] = {0, 0, 0, 0};
    double e_low = 0.0;
    double grad_high = 0.0;
    VectorField low = u_hat;
    for (std::size_t idx = 0; idx < grid.size(); ++idx) {
        double a = 0.0;
        for (int c = 0; c < 3; ++c) a += std::norm(u_hat.component(c)[idx]);
        const double k2 = grid.k_squared(idx);
        const double r = rs * std::sqrt(k2);
        const double p = set.phi()(r);
        const double x = set.chi()(r);
        const double p2 = p * p;
        const double q2 = set.sqrt_one_minus_phi_sq()(r);
        double kp = 1.0;
        for (int j = 0; j < 4; ++j) {
            low_phi[j] += kp * p2 * a;
            high[j] += kp * q2 * q2 * a;
            kp *= k2;
        }
        e_low += x * x * a;
        const double om = 1.0 - p;
        grad_high += k2 * om * om * a;
        for (int c = 0; c < 3; ++c) low.component(c)[idx] *= p;
    }
    const double vol = grid.volume();
    MultiplierRouteFunctionals w;
    w.E_low_phi = fourier_prefactor(s, 0) * vol * low_phi[0];
    w.E_high = fourier_prefactor(s, 0) * vol * high[0];
    w.w_l2_sq = w.E_low_phi + w.E_high;
    w.w_h1_sq = fourier_prefactor(s, 1) * vol * (low_phi[1] + high[1]);
    w.w_h2_sq = fourier_prefactor(s, 2) * vol * (low_phi[2] + high[2]);
    w.w_h3_sq = fourier_prefactor(s, 3) * vol * (low_phi[3] + high[3]);
    w.E_low = fourier_prefactor(s, 0) * vol * e_low;
    w.grad_high_sq = fourier_prefactor(s, 1) * vol * grad_high;

    const VectorField low_phys = to_physical(low);
    w.low_l4 = std::pow(s, ScalingExponents::lm(4.0)) * lm_norm(low_phys, 4);
    w.low_sup = std::pow(s, ScalingExponents::sup) * sup_norm(low_phys);
    return w;
}

double w_multiplier_energy(const VectorField& u_hat, const SimilarityClock& clock, const RadialMultiplier& psi) {
    if (!u_hat.is_spectral()) throw std::invalid_argument("multiplier route requires a spectral field");
    const double s = clock.remaining();
    const double rs = std::sqrt(s);
    const auto& grid = u_hat.grid();
    double acc = 0.0;
    for (std::size_t idx = 0; idx < grid.size(); ++idx) {
        double a = 0.0;
        for (int c = 0; c < 3; ++c) a += std::norm(u_hat.component(c)[idx]);
        if (a == 0.0) continue;
        const double m = psi(rs * grid.k_magnitude(idx));
        acc += m * m * a;
    }
    return fourier_prefactor(s, 0) * grid.volume() * acc;
}

namespace {

double relative_gap(double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    if (scale == 0.0) return 0.0;
    return std::abs(a - b) / scale;
}

}  // namespace

double route_gap(const ScalingRouteFunctionals& a, const MultiplierRouteFunctionals& b) {
    double g = relative_gap(a.w_l2_sq, b.w_l2_sq);
    g = std::max(g, relative_gap(a.w_h1_sq, b.w_h1_sq));
    g = std::max(g, relative_gap(a.w_h2_sq, b.w_h2_sq));
    g = std::max(g, relative_gap(a.w_h3_sq, b.w_h3_sq));
    return g;
}

InitialSimilarityEnergy initial_similarity_energy(const VectorField& u0_hat, double horizon,
                                                  const MultiplierSet& set) {
    const SimilarityClock clock = SimilarityClock::at_time(0.0, horizon);
    InitialSimilarityEnergy out;
    out.energy = w_multiplier_energy(u0_hat, clock, set.chi()) +
                 w_multiplier_energy(u0_hat, clock, set.sqrt_one_minus_phi_sq());
    out.w_l2_sq = std::pow(horizon, ScalingExponents::l2_sq) * l2_sq_plancherel(u0_hat);
    if (out.margin() < -1e-12 * std::max(1.0, out.w_l2_sq)) {
        throw std::logic_error("initial similarity energy exceeds ||w(0)||^2: margin " +
                               std::to_string(out.margin()));
    }
    return out;
}

}  // namespace nsbound

#include "nsbound/gronwall_comparator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace nsbound {

double h_minus(double B, double C, double delta) {
    const double disc = B * B - 4.0 * C * delta;
    if (disc < 0.0) throw std::domain_error("B^2 - 4 C delta is negative");
    const double denom = B + std::sqrt(disc);
    if (denom == 0.0) return 0.0;
    return 2.0 * C * delta / denom;
}

namespace {

double comparison_rhs(const ComparisonParams& p, double h) {
    const double h2 = h * h;
    return p.C * p.delta - p.B * h + h2 * h2 * h;
}

}  // namespace

TrapResult verify_trap(const ComparisonParams& p, double tau_max, double dt) {
    if (!(p.B > 0.0) || !(p.C > 0.0)) throw std::invalid_argument("B and C must be positive");
    if (!(p.delta >= 0.0)) throw std::invalid_argument("delta must be nonnegative");
    if (!(tau_max > 0.0) || !(dt > 0.0)) throw std::invalid_argument("tau_max and dt must be positive");
    // Explicit RK4 on the linear part is stable for B dt below about 2.78.
    if (p.B * dt > 2.0) throw std::invalid_argument("step too large for RK4 stability");

    TrapResult r;
    r.h_minus = h_minus(p.B, p.C, p.delta);
    if (p.delta > 0.0 && !(r.h_minus > 0.0 && r.h_minus < 1.0)) {
        throw std::invalid_argument("trap requires h_- in (0, 1)");
    }
    if (!(p.h0 >= 0.0) || p.h0 > r.h_minus) throw std::invalid_argument("h0 must lie in [0, h_-]");
    r.rhs_at_h_minus = comparison_rhs(p, r.h_minus);

    const auto steps = static_cast<long>(std::ceil(tau_max / dt - 1e-9));
    const double step = tau_max / static_cast<double>(steps);
    double h = p.h0;
    r.tau.reserve(static_cast<std::size_t>(steps) + 1);
    r.h.reserve(static_cast<std::size_t>(steps) + 1);
    r.tau.push_back(0.0);
    r.h.push_back(h);
    r.max_h = r.min_h = h;
    r.nonincreasing = true;
    for (long i = 0; i < steps; ++i) {
        const double k1 = comparison_rhs(p, h);
        const double k2 = comparison_rhs(p, h + 0.5 * step * k1);
        const double k3 = comparison_rhs(p, h + 0.5 * step * k2);
        const double k4 = comparison_rhs(p, h + step * k3);
        const double next = h + step / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (!std::isfinite(next)) throw std::runtime_error("comparison ODE diverged");
        if (next > h) r.nonincreasing = false;
        h = next;
        r.tau.push_back(static_cast<double>(i + 1) * step);
        r.h.push_back(h);
        r.max_h = std::max(r.max_h, h);
        r.min_h = std::min(r.min_h, h);
    }
    r.max_excess = std::max(0.0, r.max_h - r.h_minus);
    r.trapped = r.min_h >= 0.0 && r.max_h <= r.h_minus + 1e-9 && r.rhs_at_h_minus <= 0.0;
    return r;
}

double gronwall_envelope(std::span<const double> tau, std::span<const double> series, double rho, double c) {
    if (series.empty()) throw std::invalid_argument("empty series");
    if (tau.size() != series.size()) throw std::invalid_argument("tau and series lengths differ");
    if (!(rho > 0.0)) throw std::invalid_argument("rate must be positive");
    const double e0 = series[0];
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < series.size(); ++i) {
        const double decay = std::exp(-rho * (tau[i] - tau[0]));
        const double bound = decay * e0 + (c / rho) * (1.0 - decay);
        worst = std::max(worst, series[i] - bound);
    }
    return worst;
}

}  // namespace nsbound

#include "nsbound/ns_dynamics.hpp"

#include "nsbound/multiplier_bank.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace nsbound {

std::string to_string(InitialKind kind) {
    switch (kind) {
        case InitialKind::taylor_green: return "taylor_green";
        case InitialKind::random_low_mode: return "random_low_mode";
    }
    return "unknown";
}

InitialKind parse_initial_kind(const std::string& text) {
    if (text == "taylor_green") return InitialKind::taylor_green;
    if (text == "random_low_mode") return InitialKind::random_low_mode;
    throw std::invalid_argument("unknown initial data kind '" + text + "'");
}

double SimulationConfig::effective_t_min() const { return t_min < 0.0 ? horizon * std::exp(-6.0) : t_min; }

void SimulationConfig::validate() const {
    if (n < 8 || n % 2 != 0) throw std::invalid_argument("n must be even and >= 8");
    if (!(box_length > 0.0) || !std::isfinite(box_length)) throw std::invalid_argument("box_length must be positive");
    if (!(horizon > 0.0) || !std::isfinite(horizon)) throw std::invalid_argument("horizon T must be positive");
    if (!(delta >= 0.0) || !std::isfinite(delta)) throw std::invalid_argument("delta must be nonnegative");
    if (!(k_max > 0.0)) throw std::invalid_argument("k_max must be positive");
    if (!(c_cfl > 0.0 && c_cfl <= 1.0)) throw std::invalid_argument("c_cfl must lie in (0, 1]");
    validate_alpha(alpha);
    const double tm = effective_t_min();
    if (!(tm > 0.0 && tm < horizon)) throw std::invalid_argument("t_min must lie in (0, T)");
    if (output_stride < 1) throw std::invalid_argument("output_stride must be >= 1");
    if (!(dtau_max > 0.0)) throw std::invalid_argument("dtau_max must be positive");
    if (!(sharpness > 0.0)) throw std::invalid_argument("sharpness must be positive");
}

// ---------------------------------------------------------------------------
// Initial data
// ---------------------------------------------------------------------------

namespace {

void remove_mean(VectorField& f) {
    for (int c = 0; c < 3; ++c) f.component(c)[0] = 0.0;
}

void scale_to(VectorField& f, double delta) {
    const double e = l2_sq_plancherel(f);
    if (e == 0.0) {
        if (delta != 0.0) throw std::logic_error("cannot rescale a zero field to nonzero norm");
        return;
    }
    f *= delta / std::sqrt(e);
}

VectorField taylor_green(const SpectralGrid& grid) {
    VectorField u(grid, Representation::physical);
    const int n = grid.n();
    const double a = grid.dk();
    const double h = grid.spacing();
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            for (int l = 0; l < n; ++l) {
                const double x = a * h * i, y = a * h * j, z = a * h * l;
                const std::size_t idx = grid.flat(i, j, l);
                u.component(0)[idx] = std::sin(x) * std::cos(y) * std::cos(z);
                u.component(1)[idx] = -std::cos(x) * std::sin(y) * std::cos(z);
                u.component(2)[idx] = 0.0;
            }
        }
    }
    return to_spectral(u);
}

VectorField random_low_mode(const SpectralGrid& grid, std::uint64_t seed, double k_max) {
    VectorField u(grid, Representation::spectral);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (std::size_t idx = 0; idx < grid.size(); ++idx) {
        const double k = grid.k_magnitude(idx);
        if (k == 0.0 || k > k_max) continue;
        const auto [i, j, l] = grid.unflat(idx);
        if (grid.is_nyquist(i) || grid.is_nyquist(j) || grid.is_nyquist(l)) continue;
        const std::size_t mir = grid.mirror(idx);
        if (mir < idx) continue;
        for (int c = 0; c < 3; ++c) {
            const Complex z{gauss(rng), gauss(rng)};
            u.component(c)[idx] = z;
            u.component(c)[mir] = std::conj(z);
        }
    }
    return u;
}

}  // namespace

VectorField make_initial_data(InitialKind kind, const SpectralGrid& grid, double delta, std::uint64_t seed,
                              double k_max) {
    if (!(delta >= 0.0)) throw std::invalid_argument("delta must be nonnegative");
    VectorField u = kind == InitialKind::taylor_green ? taylor_green(grid) : random_low_mode(grid, seed, k_max);
    u = dealias(leray_project(u));
    remove_mean(u);
    if (delta == 0.0) {
        u *= 0.0;
        return u;
    }
    scale_to(u, delta);
    return u;
}

VectorField make_initial_data(const SimulationConfig& config) {
    return make_initial_data(config.kind, SpectralGrid::make(config.n, config.box_length), config.delta, config.seed,
                             config.k_max);
}

// ---------------------------------------------------------------------------
// Dynamics
// ---------------------------------------------------------------------------

VectorField nonlinear_rhs(const VectorField& u_hat) {
    if (!u_hat.is_spectral()) throw std::invalid_argument("nonlinear_rhs requires a spectral field");
    VectorField n = leray_project(dealias(advective_product(u_hat.grid(), velocity_gradient(u_hat))));
    remove_mean(n);
    n *= -1.0;
    return n;
}

double cfl_dt(const VectorField& u_hat, double c_cfl) {
    const auto& grid = u_hat.grid();
    const double kmax = grid.max_axis_wavenumber();
    double bound = 1.0 / (kmax * kmax);
    const double umax = sup_norm(u_hat.is_spectral() ? to_physical(u_hat) : u_hat);
    if (umax > 0.0) bound = std::min(bound, grid.spacing() / umax);
    return c_cfl * bound;
}

namespace {

struct Factors {
    std::vector<double> full;
    std::vector<double> half;
};

Factors integrating_factors(const SpectralGrid& grid, double dt) {
    Factors f{std::vector<double>(grid.size()), std::vector<double>(grid.size())};
    for (std::size_t idx = 0; idx < grid.size(); ++idx) {
        const double k2 = grid.k_squared(idx);
        f.full[idx] = std::exp(-k2 * dt);
        f.half[idx] = std::exp(-0.5 * k2 * dt);
    }
    return f;
}

// out = fa * a + s * fb * b, per mode.
VectorField combine(const std::vector<double>& fa, const VectorField& a, double s, const std::vector<double>* fb,
                    const VectorField& b) {
    VectorField out(a.grid(), Representation::spectral);
    for (int c = 0; c < 3; ++c) {
        auto o = out.component(c);
        auto x = a.component(c);
        auto y = b.component(c);
        for (std::size_t i = 0; i < o.size(); ++i) o[i] = fa[i] * x[i] + s * (fb ? (*fb)[i] : 1.0) * y[i];
    }
    return out;
}

VectorField rhs(const VectorField& u, bool linear_only) {
    if (linear_only) return VectorField(u.grid(), Representation::spectral);
    return nonlinear_rhs(u);
}

TrajectoryState advance(const TrajectoryState& s, double dt, bool linear_only) {
    const auto& grid = s.u_hat.grid();
    const Factors f = integrating_factors(grid, dt);
    const VectorField& u = s.u_hat;

    const VectorField a = rhs(u, linear_only);
    // u1 = E_h (u + dt/2 a)
    const VectorField u1 = combine(f.half, u, 0.5 * dt, &f.half, a);
    const VectorField b = rhs(u1, linear_only);
    // u2 = E_h u + dt/2 b
    const VectorField u2 = combine(f.half, u, 0.5 * dt, nullptr, b);
    const VectorField c = rhs(u2, linear_only);
    // u3 = E u + dt E_h c
    const VectorField u3 = combine(f.full, u, dt, &f.half, c);
    const VectorField d = rhs(u3, linear_only);

    VectorField out(grid, Representation::spectral);
    for (int comp = 0; comp < 3; ++comp) {
        auto o = out.component(comp);
        auto x = u.component(comp);
        auto ka = a.component(comp);
        auto kb = b.component(comp);
        auto kc = c.component(comp);
        auto kd = d.component(comp);
        for (std::size_t i = 0; i < o.size(); ++i) {
            o[i] = f.full[i] * x[i] +
                   dt / 6.0 * (f.full[i] * ka[i] + 2.0 * f.half[i] * (kb[i] + kc[i]) + kd[i]);
        }
    }
    return TrajectoryState{std::move(out), s.t + dt, s.steps + 1, dt};
}

bool all_finite(const VectorField& f) {
    for (int c = 0; c < 3; ++c) {
        for (const auto& z : f.component(c)) {
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
        }
    }
    return true;
}

}  // namespace

TrajectoryState step(const TrajectoryState& state, double dt, double c_cfl, bool linear_only) {
    if (!state.u_hat.is_spectral()) throw std::invalid_argument("step requires a spectral state");
    if (!(dt > 0.0)) throw std::invalid_argument("time step must be positive");
    const double limit = cfl_dt(state.u_hat, c_cfl);
    if (dt > limit) {
        throw std::invalid_argument("time step " + std::to_string(dt) + " exceeds CFL limit " + std::to_string(limit));
    }
    return advance(state, dt, linear_only);
}

EnergyLedger run(const SimulationConfig& config, const RowSink& sink) {
    config.validate();
    const MultiplierSet set(config.alpha, config.sharpness);
    TrajectoryState state{make_initial_data(config), 0.0, 0, 0.0};
    const double t_end = config.horizon - config.effective_t_min();

    EnergyLedger ledger;
    auto log = [&](const TrajectoryState& s) {
        if (!all_finite(s.u_hat)) {
            throw NumericalAbort("non-finite velocity at t = " + std::to_string(s.t) + " after " +
                                 std::to_string(s.steps) + " steps");
        }
        LedgerRow row = make_ledger_row(s.u_hat, s.t, s.last_dt, config.horizon, set);
        if (!std::isfinite(row.w_h3sq) || !std::isfinite(row.trilinear_w) || !std::isfinite(row.lap_coupling)) {
            throw NumericalAbort("non-finite diagnostics at t = " + std::to_string(s.t));
        }
        ledger.rows.push_back(row);
        if (sink) sink(row);
    };

    log(state);
    while (state.t < t_end) {
        double dt = std::min(cfl_dt(state.u_hat, config.c_cfl), config.dtau_max * (config.horizon - state.t));
        const bool last = state.t + dt >= t_end * (1.0 - 1e-14);
        if (last) dt = t_end - state.t;
        state = advance(state, dt, config.linear_only);
        if (last) state.t = t_end;
        if (!all_finite(state.u_hat)) {
            throw NumericalAbort("non-finite velocity at t = " + std::to_string(state.t) + " after " +
                                 std::to_string(state.steps) + " steps");
        }
        if (last || state.steps % config.output_stride == 0) log(state);
    }
    return ledger;
}

}  // namespace nsbound

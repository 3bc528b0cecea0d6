#include "nsbound/ns_dynamics.hpp"
#include "test_fields.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace nsbound;
using testing_fields::max_abs;
using testing_fields::max_abs_diff;
using testing_fields::sample;

namespace {

constexpr double pi = std::numbers::pi;

VectorField cellular_flow(const SpectralGrid& g, double amplitude) {
    return to_spectral(sample(g, [amplitude](double x, double y, double) {
        return std::array<double, 3>{amplitude * std::sin(x) * std::cos(y), -amplitude * std::cos(x) * std::sin(y), 0};
    }));
}

TrajectoryState evolve(VectorField u, double dt, int steps, bool linear_only = false) {
    TrajectoryState s{std::move(u), 0.0, 0, 0.0};
    for (int i = 0; i < steps; ++i) s = step(s, dt, 1.0, linear_only);
    return s;
}

}  // namespace

TEST_CASE("initial data kinds") {
    CHECK(parse_initial_kind("taylor_green") == InitialKind::taylor_green);
    CHECK(parse_initial_kind(to_string(InitialKind::random_low_mode)) == InitialKind::random_low_mode);
    CHECK_THROWS_AS(parse_initial_kind("vortex"), std::invalid_argument);
}

TEST_CASE("configuration validation") {
    SimulationConfig c;
    CHECK_NOTHROW(c.validate());
    CHECK(c.effective_t_min() == doctest::Approx(std::exp(-6.0)));
    auto bad = [](auto mutate) {
        SimulationConfig x;
        mutate(x);
        CHECK_THROWS_AS(x.validate(), std::invalid_argument);
    };
    bad([](SimulationConfig& x) { x.n = 9; });
    bad([](SimulationConfig& x) { x.horizon = 0; });
    bad([](SimulationConfig& x) { x.delta = -1; });
    bad([](SimulationConfig& x) { x.c_cfl = 1.5; });
    bad([](SimulationConfig& x) { x.alpha = 0.125; });
    bad([](SimulationConfig& x) { x.t_min = 1.0; });
    bad([](SimulationConfig& x) { x.output_stride = 0; });
    bad([](SimulationConfig& x) { x.dtau_max = 0; });
}

TEST_CASE("initial data is admissible and normalized") {
    const auto g = SpectralGrid::make(16, 2 * pi);
    for (auto kind : {InitialKind::taylor_green, InitialKind::random_low_mode}) {
        const auto u = make_initial_data(kind, g, 0.01, 7);
        CHECK(std::sqrt(l2_sq_plancherel(u)) == doctest::Approx(0.01).epsilon(1e-14));
        CHECK(max_divergence(u) <= 1e-12 * max_abs(u));
        CHECK(hermitian_defect(u) <= 1e-15 * max_abs(u) + 1e-300);
        CHECK(max_abs_diff(dealias(u), u) == 0.0);
        for (int c = 0; c < 3; ++c) CHECK(u.component(c)[0] == Complex{});
    }
    const auto a = make_initial_data(InitialKind::random_low_mode, g, 1.0, 1);
    const auto b = make_initial_data(InitialKind::random_low_mode, g, 1.0, 1);
    const auto c = make_initial_data(InitialKind::random_low_mode, g, 1.0, 2);
    CHECK(max_abs_diff(a, b) == 0.0);
    CHECK(max_abs_diff(a, c) > 0.0);
    // Support radius
    for (std::size_t idx = 0; idx < g.size(); ++idx) {
        if (g.k_magnitude(idx) > 4.0) REQUIRE(std::abs(a.component(0)[idx]) == 0.0);
    }
    const auto z = make_initial_data(InitialKind::random_low_mode, g, 0.0, 1);
    CHECK(max_abs(z) == 0.0);
}

TEST_CASE("nonlinear term of a cellular flow is a pure gradient") {
    const auto g = SpectralGrid::make(16, 2 * pi);
    CHECK(max_abs(nonlinear_rhs(cellular_flow(g, 3.0))) <= 1e-14);
}

TEST_CASE("cellular flow decays as exp(-2 t)") {
    // An exact Navier-Stokes solution: the integrating factor carries it exactly.
    const auto g = SpectralGrid::make(16, 2 * pi);
    const auto u0 = cellular_flow(g, 2.0);
    const auto s = evolve(u0, 0.005, 40);
    CHECK(s.t == doctest::Approx(0.2));
    CHECK(s.steps == 40);
    CHECK(max_abs_diff(s.u_hat, std::exp(-0.4) * u0) <= 1e-14);
}

TEST_CASE("heat flow of a single mode") {
    const auto g = SpectralGrid::make(8, 2 * pi);
    VectorField u(g, Representation::spectral);
    u.component(2)[g.flat(1, 2, 0)] = Complex{0.3, -0.1};
    u.component(2)[g.mirror(g.flat(1, 2, 0))] = Complex{0.3, 0.1};
    const auto s = evolve(u, 0.01, 10, true);
    CHECK(max_abs_diff(s.u_hat, std::exp(-5.0 * 0.1) * u) <= 1e-15);
}

TEST_CASE("time stepping is fourth order") {
    const auto g = SpectralGrid::make(16, 2 * pi);
    const auto u0 = make_initial_data(InitialKind::random_low_mode, g, 50.0, 3);
    const double t = 0.012;
    const auto ref = evolve(u0, t / 32, 32).u_hat;
    const double e1 = max_abs_diff(evolve(u0, t / 2, 2).u_hat, ref);
    const double e2 = max_abs_diff(evolve(u0, t / 4, 4).u_hat, ref);
    MESSAGE("errors " << e1 << " " << e2 << " ratio " << e1 / e2);
    CHECK(e1 > 1e-12);
    CHECK(e1 / e2 > 12.0);
    CHECK(e1 / e2 < 20.0);
}

TEST_CASE("step rejects time steps beyond the CFL bound") {
    const auto g = SpectralGrid::make(16, 2 * pi);
    const auto u = make_initial_data(InitialKind::random_low_mode, g, 50.0, 3);
    const double limit = cfl_dt(u, 0.5);
    CHECK(limit <= 0.5 / 64.0);
    CHECK(cfl_dt(u, 1.0) == doctest::Approx(2 * limit));
    TrajectoryState s{u, 0.0, 0, 0.0};
    CHECK_THROWS_AS(step(s, 1.01 * limit, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(step(s, 0.0, 0.5), std::invalid_argument);
    CHECK_NOTHROW(step(s, limit, 0.5));
    VectorField zero(g, Representation::spectral);
    CHECK(cfl_dt(zero, 0.5) == doctest::Approx(0.5 / 64.0));
}

TEST_CASE("logged run") {
    SimulationConfig c;
    c.n = 16;
    c.t_min = 0.2;
    c.dtau_max = 0.05;
    std::size_t streamed = 0;
    const auto ledger = run(c, [&](const LedgerRow&) { ++streamed; });
    REQUIRE(ledger.rows.size() > 10);
    CHECK(streamed == ledger.rows.size());
    CHECK(ledger.rows.front().t == 0.0);
    CHECK(ledger.rows.back().t == doctest::Approx(0.8).epsilon(1e-14));
    CHECK(ledger.rows.front().u_l2sq == doctest::Approx(1e-4).epsilon(1e-13));
    CHECK_NOTHROW(validate_ledger(ledger));
    for (std::size_t i = 1; i < ledger.rows.size(); ++i) {
        REQUIRE(ledger.rows[i].u_l2sq <= ledger.rows[i - 1].u_l2sq);
        REQUIRE(ledger.rows[i].dt <= 0.05 * (1.0 - ledger.rows[i - 1].t) * (1 + 1e-12));
    }

    c.output_stride = 4;
    const auto sparse = run(c);
    CHECK(sparse.rows.size() < ledger.rows.size() / 3);
    CHECK(sparse.rows.back().t == doctest::Approx(0.8).epsilon(1e-14));
    CHECK(sparse.rows[1].t == ledger.rows[4].t);
}

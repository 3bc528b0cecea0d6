#include "nsbound/similarity_frame.hpp"
#include "test_fields.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace nsbound;
using testing_fields::random_field;

namespace {

constexpr double pi = std::numbers::pi;

VectorField admissible_field(const SpectralGrid& g, std::uint64_t seed, double scale = 1.0) {
    auto f = leray_project(dealias(random_field(g, seed)));
    f *= scale;
    return f;
}

// Same coefficients on a box shrunk by s^{1/2}, amplitude times s^{1/2}: the similarity profile.
VectorField rescaled_copy(const VectorField& u, double s) {
    const auto& g = u.grid();
    const auto gw = SpectralGrid::make(g.n(), g.box_length() / std::sqrt(s));
    VectorField w(gw, Representation::spectral);
    for (int c = 0; c < 3; ++c) {
        for (std::size_t i = 0; i < g.size(); ++i) w.component(c)[i] = std::sqrt(s) * u.component(c)[i];
    }
    return w;
}

}  // namespace

TEST_CASE("similarity clock") {
    CHECK(tau_of_t(0.0, 1.0) == 0.0);
    CHECK(tau_of_t(1.0 - std::exp(-2.0), 1.0) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(tau_of_t(0.0, 2.0) == doctest::Approx(-std::log(2.0)));
    CHECK(t_of_tau(tau_of_t(0.3, 1.0), 1.0) == doctest::Approx(0.3).epsilon(1e-15));
    CHECK_THROWS_AS(tau_of_t(1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(tau_of_t(1.5, 1.0), std::invalid_argument);

    const auto c = SimilarityClock::at_time(0.75, 1.0);
    CHECK(c.remaining() == doctest::Approx(0.25));
    CHECK(c.tau() == doctest::Approx(std::log(4.0)));
    const auto d = SimilarityClock::at_tau(std::log(4.0), 1.0);
    CHECK(d.t() == doctest::Approx(0.75));
}

TEST_CASE("scaling exponents") {
    using E = ScalingExponents;
    CHECK(E::l2_sq == -0.5);
    CHECK(E::h1_sq == 0.5);
    CHECK(E::h2_sq == 1.5);
    CHECK(E::h3_sq == 2.5);
    CHECK(E::sup == 0.5);
    CHECK(E::lm(4.0) == 0.125);
    CHECK(E::lm(2.0) == -0.25);
    CHECK(E::lm(2.0) * 2 == E::l2_sq);
}

TEST_CASE("scaling route equals direct evaluation on the shrunken box") {
    const auto g = SpectralGrid::make(16, 2 * pi);
    const auto u = admissible_field(g, 5, 0.1);
    for (double s : {1.0, 0.5, 0.01}) {
        const auto clock = SimilarityClock::at_time(1.0 - s, 1.0);
        const auto route = w_functionals_scaling_route(measure_u(u), clock);
        const auto direct = measure_u(rescaled_copy(u, s));
        CHECK(route.w_l2_sq == doctest::Approx(direct.norms.l2_sq).epsilon(1e-12));
        CHECK(route.w_h1_sq == doctest::Approx(direct.norms.h1_sq).epsilon(1e-12));
        CHECK(route.w_h2_sq == doctest::Approx(direct.norms.h2_sq).epsilon(1e-12));
        CHECK(route.w_h3_sq == doctest::Approx(direct.norms.h3_sq).epsilon(1e-12));
        CHECK(route.w_sup == doctest::Approx(direct.norms.sup).epsilon(1e-12));
        CHECK(route.w_l4 == doctest::Approx(direct.norms.l4).epsilon(1e-12));
        CHECK(route.trilinear == doctest::Approx(direct.trilinear).epsilon(1e-10));
        CHECK(route.lap_coupling == doctest::Approx(direct.lap_coupling).epsilon(1e-10));
    }
}

TEST_CASE("trilinear form is minus the advective pairing with the Laplacian") {
    // int (u.grad u) . Lap u = -int d_j u_k d_j u_l d_l u_k for divergence-free u.
    const auto g = SpectralGrid::make(16, 2 * pi);
    const auto u = admissible_field(g, 8);
    const auto adv = advective_product(g, velocity_gradient(u));
    const auto lap = spectral_derivative(u, MultiIndex{2, 0, 0}) + spectral_derivative(u, MultiIndex{0, 2, 0}) +
                     spectral_derivative(u, MultiIndex{0, 0, 2});
    const double pairing = inner_product(adv, lap).real();
    const auto m = measure_u(u);
    CHECK(std::abs(pairing + m.trilinear) <= 1e-12 * std::abs(pairing) + 1e-12);
    CHECK(m.l2_sq_quadrature == doctest::Approx(m.norms.l2_sq).epsilon(1e-12));
}

TEST_CASE("two routes agree") {
    const auto g = SpectralGrid::make(16, 2 * pi);
    const MultiplierSet set(1.0 / 16);
    const auto u = admissible_field(g, 21, 0.05);
    for (double t : {0.0, 0.9, 1.0 - 1e-4}) {
        const auto clock = SimilarityClock::at_time(t, 1.0);
        const auto a = w_functionals_scaling_route(measure_u(u), clock);
        const auto b = w_functionals_multiplier_route(u, clock, set);
        CHECK(route_gap(a, b) <= 1e-12);
        CHECK(b.E_low + b.E_high <= b.w_l2_sq * (1 + 1e-12));
        CHECK(b.E_low_phi == doctest::Approx(w_multiplier_energy(u, clock, set.phi())).epsilon(1e-14));
        CHECK(b.E_low == doctest::Approx(w_multiplier_energy(u, clock, set.chi())).epsilon(1e-14));
        CHECK(b.E_high == doctest::Approx(w_multiplier_energy(u, clock, set.sqrt_one_minus_phi_sq())).epsilon(1e-14));
    }
}

TEST_CASE("multiplier energy of a single mode") {
    // u = (0, sin x, 0): |u_k|^2 = 1/4 at k = +-e_1, so ||psi_s u||^2 on the
    // w side is s^{-1/2} (2 pi)^3 psi(s^{1/2})^2 / 2.
    const auto g = SpectralGrid::make(8, 2 * pi);
    const MultiplierSet set(1.0 / 16);
    const auto u = to_spectral(testing_fields::sample(g, [](double x, double, double) {
        return std::array<double, 3>{0, std::sin(x), 0};
    }));
    for (double s : {1.0, 0.64, 2.25}) {
        const auto clock = SimilarityClock::at_time(3.0 - s, 3.0);
        const double p = set.phi()(std::sqrt(s));
        const double expect = std::pow(s, -0.5) * 4 * pi * pi * pi * p * p;
        CHECK(w_multiplier_energy(u, clock, set.phi()) == doctest::Approx(expect).epsilon(1e-13));
    }
}

TEST_CASE("initial similarity energy") {
    const auto g = SpectralGrid::make(16, 2 * pi);
    const MultiplierSet set(1.0 / 16);
    const auto u = admissible_field(g, 4, 0.3);
    const auto e = initial_similarity_energy(u, 2.0, set);
    CHECK(e.w_l2_sq == doctest::Approx(l2_sq_plancherel(u) / std::sqrt(2.0)).epsilon(1e-14));
    CHECK(e.margin() >= 0.0);
    CHECK(e.energy > 0.0);
}

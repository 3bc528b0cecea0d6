#include "nsbound/inequality_lab.hpp"
#include "nsbound/ns_dynamics.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

using namespace nsbound;

namespace {

constexpr double pi = std::numbers::pi;

const EnergyLedger& small_run() {
    static const EnergyLedger ledger = [] {
        SimulationConfig c;
        c.n = 16;
        c.t_min = 2e-9;
        c.dtau_max = 0.05;
        return run(c);
    }();
    return ledger;
}

// u = A sin(x) e^{-t} e_2 on the 2 pi box, horizon 1, logged exactly on a tau grid.
EnergyLedger heat_mode_ledger(double amplitude, std::size_t rows, double tau_end) {
    EnergyLedger l;
    const double k = 4 * pi * pi * pi * amplitude * amplitude;
    for (std::size_t i = 0; i < rows; ++i) {
        LedgerRow r;
        r.tau = tau_end * static_cast<double>(i) / static_cast<double>(rows - 1);
        const double s = std::exp(-r.tau);
        r.t = 1.0 - s;
        r.u_l2sq = r.u_h1sq = r.u_h2sq = k * std::exp(-2 * r.t);
        r.w_l2sq = std::pow(s, -0.5) * r.u_l2sq;
        r.w_h1sq = std::pow(s, 0.5) * r.u_h1sq;
        r.w_h2sq = std::pow(s, 1.5) * r.u_h2sq;
        r.w_h3sq = std::pow(s, 2.5) * r.u_h2sq;
        l.rows.push_back(r);
    }
    return l;
}

}  // namespace

TEST_CASE("nonuniform derivative") {
    const std::vector<double> tau{0.0, 0.1, 0.25, 0.3, 0.7, 1.0};
    std::vector<double> f, df;
    for (double t : tau) {
        f.push_back(3 * t * t - 2 * t + 1);
        df.push_back(6 * t - 2);
    }
    const auto d = d_dtau(tau, f);
    for (std::size_t i = 0; i < tau.size(); ++i) CHECK(d[i] == doctest::Approx(df[i]).epsilon(1e-12));
    const auto tol = d_dtau_tolerance(tau, f);
    for (double t : tol) CHECK(t <= 1e-10);

    // A cubic has error dtau^2 |f'''| / 6-ish; the tolerance must cover it.
    std::vector<double> g, dg;
    for (double t : tau) {
        g.push_back(t * t * t);
        dg.push_back(3 * t * t);
    }
    const auto d3 = d_dtau(tau, g);
    const auto tol3 = d_dtau_tolerance(tau, g);
    for (std::size_t i = 0; i < tau.size(); ++i) CHECK(std::abs(d3[i] - dg[i]) <= tol3[i]);

    CHECK_THROWS_AS(d_dtau(std::vector<double>{0, 1}, std::vector<double>{0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(d_dtau(std::vector<double>{0, 1, 1}, std::vector<double>{0, 1, 2}), std::invalid_argument);
}

TEST_CASE("exact heat-mode ledger satisfies the energy and gradient balances") {
    const auto l = heat_mode_ledger(0.1, 401, 4.0);
    const auto e = verify_l2_inequality(l);
    CHECK(e.status == Status::holds);
    const auto g = verify_h1_inequality(l);
    CHECK(g.status == Status::holds);
    CHECK(g.certificate == 0.0);
    CHECK(g.values.at("max_abs_residual_over_dtau_sq") > 0.0);
}

TEST_CASE("balances on a simulated trajectory") {
    const auto& l = small_run();
    const auto reports = verify_all(l, CheckOptions{});
    REQUIRE(reports.size() == 6);
    CHECK(reports[0].id == "l2_energy");
    CHECK(reports[5].id == "two_route");
    for (const auto& r : reports) {
        INFO(r.id << " " << r.note);
        CHECK(r.status == Status::holds);
    }
    CHECK(overall_status(reports) == Status::holds);
    CHECK(reports[2].values.at("rho") > 0.0);
    CHECK(reports[3].values.at("low_l4_tail_ratio") <= 0.1);
    CHECK(two_route_audit(l) <= 1e-10);
}

TEST_CASE("corrupted ledgers are flagged") {
    const auto& l = small_run();
    const auto bumped = corrupt_energy_bump(l);
    CHECK(bumped.rows.back().u_l2sq == doctest::Approx(l.rows.back().u_l2sq * 1.01));
    CHECK(verify_l2_inequality(bumped).status == Status::violated);

    const auto flipped = corrupt_trilinear_flip(l);
    CHECK(flipped.rows[3].trilinear_w == -l.rows[3].trilinear_w);

    CheckOptions opt;
    opt.reference_decay_certificate = 1.0;
    const auto slow = synthetic_energy_series(1e-4, opt.alpha / 2, 50.0, 501);
    const auto slow_report = verify_decomposition_decay(slow, opt);
    CHECK(slow_report.status == Status::violated);
    CHECK(slow_report.values.at("envelope_ratio") > 1.05);

    const auto fast = synthetic_energy_series(1e-4, 2 * opt.alpha, 50.0, 501);
    CHECK(verify_decomposition_decay(fast, opt).status == Status::holds);
    CHECK_THROWS_AS(synthetic_energy_series(1.0, 1.0, 1.0, 2), std::invalid_argument);
    CHECK_THROWS_AS(corrupt_energy_bump(EnergyLedger{}), std::invalid_argument);
}

TEST_CASE("sub-rate decay passes when no certificate gates it") {
    // Without a reference the fitted constant closes the small-energy gate.
    CheckOptions opt;
    const auto slow = synthetic_energy_series(1e-4, opt.alpha / 2, 50.0, 501);
    const auto r = verify_decomposition_decay(slow, opt);
    CHECK(r.certificate > 0.0);
    CHECK(r.values.at("gate_active") == 0.0);
    CHECK(r.status != Status::violated);
}

TEST_CASE("blow-up rate monitor") {
    EnergyLedger l = synthetic_energy_series(1.0, 0.5, 5.0, 11);
    for (std::size_t i = 0; i < l.rows.size(); ++i) l.rows[i].w_sup = 0.3 * std::exp(-0.5 * l.rows[i].tau);
    CheckOptions opt;
    auto r = verify_blowup_rate(l, opt);
    CHECK(r.status == Status::holds);
    CHECK(r.values.at("final_third_nonincreasing") == 1.0);
    // last row above 0.1 is at tau = 2 (0.3 e^{-1} = 0.110)
    CHECK(r.values.at("tau0") == doctest::Approx(2.0));

    opt.epsilon = 0.01;
    CHECK(verify_blowup_rate(l, opt).status == Status::inconclusive);
    opt.epsilon = 0.0;
    CHECK(verify_blowup_rate(l, opt).status == Status::inconclusive);

    l.rows.back().w_sup = 0.05;
    opt.epsilon = 0.1;
    CHECK(verify_blowup_rate(l, opt).values.at("final_third_nonincreasing") == 0.0);
}

TEST_CASE("route audit and status ordering") {
    EnergyLedger l = synthetic_energy_series(1.0, 0.5, 5.0, 5);
    l.rows[2].route_gap = 1e-9;
    CHECK(two_route_audit(l) == 1e-9);
    CHECK(two_route_report(l).status == Status::violated);

    auto rep = [](Status s) {
        InequalityReport r;
        r.status = s;
        return r;
    };
    CHECK(overall_status({rep(Status::holds), rep(Status::holds_with_certificate)}) == Status::holds_with_certificate);
    CHECK(overall_status({rep(Status::inconclusive), rep(Status::holds_with_certificate)}) == Status::inconclusive);
    CHECK(overall_status({rep(Status::inconclusive), rep(Status::violated)}) == Status::violated);
    CHECK(to_string(Status::holds_with_certificate) == "holds_with_certificate");
}

TEST_CASE("short and malformed ledgers") {
    const auto l = synthetic_energy_series(1.0, 0.5, 5.0, 5);
    EnergyLedger two;
    two.rows.assign(l.rows.begin(), l.rows.begin() + 2);
    CHECK(verify_l2_inequality(two).status == Status::inconclusive);
    EnergyLedger bad = l;
    bad.rows[3].tau = bad.rows[2].tau;
    CHECK_THROWS_AS(verify_l2_inequality(bad), std::invalid_argument);
    bad = l;
    bad.rows[1].w_h1sq = std::nan("");
    CHECK_THROWS_AS(verify_h1_inequality(bad), std::invalid_argument);
}

TEST_CASE("ledger CSV round trip") {
    const auto& l = small_run();
    std::stringstream ss;
    write_ledger_csv(ss, l);
    std::string header;
    std::getline(std::stringstream(ss.str()), header);
    CHECK(header.rfind("t,tau,dt,u_l2sq", 0) == 0);
    CHECK(ledger_columns().size() == 20);
    CHECK(ledger_columns().back() == "w_h3sq");
    const auto back = read_ledger_csv(ss);
    CHECK(back == l);

    std::stringstream wrong("t,tau\n0,0\n");
    CHECK_THROWS_AS(read_ledger_csv(wrong), std::invalid_argument);
    CHECK_THROWS_AS(load_ledger("/nonexistent/ledger.csv"), std::ios_base::failure);
}

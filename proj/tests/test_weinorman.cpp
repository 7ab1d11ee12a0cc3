// test_weinorman.cpp — Wei-Norman integration against the exact drive solutions

#include <doctest.h>

#include <cmath>
#include <random>

#include "krylov_lie/weinorman.hpp"
#include "support.hpp"

using namespace klie;
using klie::testing::linspace;
using klie::testing::random_drive;
using klie::testing::riccati_z;

namespace {
constexpr cplx kI{0.0, 1.0};
}

TEST_CASE("constant real drive solves to tan / tanh") {
    const double alpha = 0.35;
    const auto gamma = [alpha](double) { return cplx(alpha, 0.0); };
    const auto grid = linspace(3.0, 61);

    const auto su2 = integrate_wn(make_sector(1, -0.5), gamma, grid);
    const auto su11 = integrate_wn(make_sector(-1, 0.25, 8), gamma, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double r = alpha * grid[i];
        CHECK(std::abs(su2[i].z - (-kI * std::tan(r))) <= 1e-9 * std::max(1.0, std::abs(std::tan(r))));
        CHECK(std::abs(su2[i].eta - cplx(-2.0 * std::log(std::abs(std::cos(r))), 0.0)) <= 1e-8);
        CHECK(std::abs(su11[i].z - (-kI * std::tanh(r))) <= 1e-9);
        // the ordered product closes with w = -conj(b)/a
        CHECK(std::abs(su11[i].w - (-kI * std::tanh(r))) <= 1e-9);
    }
}

TEST_CASE("zero drive stays at the origin") {
    const auto gamma = [](double) { return cplx(0.0, 0.0); };
    const auto grid = linspace(5.0, 11);
    for (int sigma : {1, -1}) {
        const auto traj = integrate_wn(make_sector(sigma, sigma == 1 ? -1.0 : 0.5, sigma == 1 ? 0 : 8),
                                       gamma, grid);
        for (const auto& s : traj) {
            CHECK(std::abs(s.z) == 0.0);
            CHECK(std::abs(s.eta) == 0.0);
            CHECK(std::abs(s.w) == 0.0);
        }
    }
}

TEST_CASE("quench closed form matches the integrated trajectory") {
    const double w0 = 1.0, w1 = 2.0, tau = 10.0;
    const double f0 = (w1 * w1 - w0 * w0) / (4.0 * w0);
    const double g0 = (w1 * w1 + w0 * w0) / (2.0 * w0);

    SUBCASE("initial condition and no-quench degeneracy") {
        const auto s0 = closed_form_quench(w0, w1, 0.0, tau);
        CHECK(std::abs(s0.z) == 0.0);
        CHECK(std::abs(s0.eta) == 0.0);
        for (double t : {0.5, 2.0}) CHECK(std::abs(closed_form_quench(1.3, 1.3, t, tau).z) == 0.0);
    }

    SUBCASE("modulus formula and ODE cross-check") {
        const auto gamma = [&](double t) {
            return t < tau ? 2.0 * f0 * std::exp(2.0 * kI * (g0 * t)) : cplx(0.0, 0.0);
        };
        const auto grid = linspace(3.0, 121);
        const auto traj = integrate_wn(make_sector(-1, 0.25, 8), gamma, grid, 1e-11);
        for (std::size_t i = 1; i < grid.size(); ++i) {
            const double t = grid[i];
            const auto cf = closed_form_quench(w0, w1, t, tau);
            CHECK(std::abs(traj[i].z - cf.z) <= 1e-8);
            CHECK(std::abs(traj[i].eta - cf.eta) <= 1e-8);  // branch-continuous on both sides
            const double z2 = 4.0 * f0 * f0 * std::pow(std::sin(w1 * t), 2) /
                              (w1 * w1 + 4.0 * f0 * f0 * std::pow(std::sin(w1 * t), 2));
            CHECK(std::norm(cf.z) == doctest::Approx(z2).epsilon(1e-12));
        }
        // t = pi/4 spot value from the example
        const auto cf = closed_form_quench(w0, w1, 0.7853981633974483, tau);
        const cplx ode_z = riccati_z(gamma, -1, 0.7853981633974483, 8000);
        CHECK(std::abs(cf.z - ode_z) <= 1e-8);
    }

    SUBCASE("freezes past tau") {
        const auto frozen = closed_form_quench(w0, w1, 2.0, 1.5);
        const auto at_tau = closed_form_quench(w0, w1, 1.5, 1.5);
        CHECK(std::abs(frozen.z - at_tau.z) == 0.0);
    }

    CHECK_THROWS_AS(closed_form_quench(0.0, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("rotating-field closed form") {
    SUBCASE("t = 0") { CHECK(std::abs(closed_form_rotating(1.2, 0.7, 0.0).z) == 0.0); }

    SUBCASE("theta0 = pi/2, Omega = 1 printed form") {
        const double t = 2.7;
        const double root2 = std::sqrt(2.0);
        const cplx expected = -kI * std::exp(-kI * t) * std::sin(root2 * t / 2.0) /
                              (root2 * std::cos(root2 * t / 2.0) - kI * std::sin(root2 * t / 2.0));
        CHECK(std::abs(closed_form_rotating(1.5707963267948966, 1.0, t).z - expected) <= 1e-14);
    }

    SUBCASE("matches the ODE for several parameters") {
        for (double theta0 : {0.6, 1.5707963267948966}) {
            for (double Omega : {0.5, 2.0}) {
                const double delta = Omega - std::cos(theta0);
                const auto gamma = [&](double t) {
                    return (std::sin(theta0) / 2.0) * std::exp(-kI * (delta * t));
                };
                const auto grid = linspace(8.0, 161);
                const auto traj = integrate_wn(make_sector(1, -1.0), gamma, grid, 1e-11);
                for (std::size_t i = 0; i < grid.size(); ++i) {
                    const auto cf = closed_form_rotating(theta0, Omega, grid[i]);
                    CHECK(std::abs(traj[i].z - cf.z) <= 1e-8);
                    CHECK(std::abs(traj[i].w - cf.w) <= 1e-8);
                    CHECK(std::abs(traj[i].eta - cf.eta) <= 1e-7);
                }
            }
        }
    }
}

TEST_CASE("unitarity identity holds along random complex drives") {
    std::mt19937 rng(20240811);
    for (int trial = 0; trial < 6; ++trial) {
        const int sigma = trial % 2 == 0 ? 1 : -1;
        const auto tab = random_drive(rng, 6.0);
        DriveEnvelope env;
        env.form = tab;
        const auto grid = linspace(6.0, 301);
        const auto traj = integrate_wn(make_sector(sigma, sigma == 1 ? -1.5 : 0.7, sigma == 1 ? 0 : 8),
                                       env, {}, grid);
        for (const auto& s : traj) {
            CHECK(std::abs(std::norm(s.a) + sigma * std::norm(s.b) - 1.0) <= 1e-9);
            // the derived views stay consistent with the regular pair
            CHECK(std::abs(s.z - s.b / s.a) <= 1e-12 * std::max(1.0, std::abs(s.z)));
            CHECK(std::abs(std::exp(-s.eta / 2.0) - s.a) <= 1e-9 * std::max(1.0, std::abs(s.a)));
        }
    }
}

TEST_CASE("riccati chart agrees with the regular pair away from poles") {
    std::mt19937 rng(7);
    const auto tab = random_drive(rng, 4.0, 0.4);
    DriveEnvelope env;
    env.form = tab;
    auto gamma = coupling_function(env, {});
    for (int sigma : {1, -1}) {
        const auto traj = integrate_wn(make_sector(sigma, sigma == 1 ? -1.0 : 0.5, sigma == 1 ? 0 : 8),
                                       gamma, linspace(4.0, 5), 1e-11);
        const cplx z_direct = riccati_z(gamma, sigma, 4.0, 40000);
        CHECK(std::abs(traj.back().z - z_direct) <= 1e-8);
    }
}

TEST_CASE("constant-phase drives keep z on the fixed ray") {
    const double delta = 0.9;
    const auto gamma = [&](double t) { return std::exp(kI * delta) * (0.5 / std::cosh(t)); };
    for (int sigma : {1, -1}) {
        const auto traj = integrate_wn(make_sector(sigma, sigma == 1 ? -1.0 : 0.8, sigma == 1 ? 0 : 8),
                                       gamma, linspace(5.0, 101));
        for (const auto& s : traj) {
            // z = -i e^{i delta} zeta with zeta real
            const cplx zeta = kI * std::exp(-kI * delta) * s.z;
            CHECK(std::abs(zeta.imag()) <= 1e-10);
        }
    }
}

TEST_CASE("time-reversal smoke check") {
    const double half = 2.0;
    const auto pulse = [](double t) { return cplx(0.6 * std::exp(-(t - 1.0) * (t - 1.0)), 0.2 * std::sin(t)); };
    const auto gamma = [&](double t) { return t <= half ? pulse(t) : -pulse(2.0 * half - t); };
    for (int sigma : {1, -1}) {
        const auto traj = integrate_wn(make_sector(sigma, sigma == 1 ? -0.5 : 0.5, sigma == 1 ? 0 : 8),
                                       gamma, {0.0, half, 2.0 * half}, 1e-10, {half});
        CHECK(std::abs(traj.back().z) <= 1e-9);  // 10x tol
    }
}

TEST_CASE("su(1,1) breakdown near |z| = 1 raises") {
    const auto gamma = [](double) { return cplx(1.0, 0.0); };
    // z = -i tanh(t) reaches 1 - 1e-12 around t ~ 14
    CHECK_THROWS_AS(integrate_wn(make_sector(-1, 0.25, 8), gamma, linspace(16.0, 17)), std::runtime_error);
}

TEST_CASE("heisenberg-weyl displacement") {
    SUBCASE("constant phase has no ordering phase") {
        const auto gamma = [](double t) { return std::exp(kI * 0.7) * std::cos(t); };
        const auto disp = hw_displacement(gamma, linspace(6.0, 121));
        for (const auto& d : disp) CHECK(std::abs(d.phi) <= 1e-12);
    }
    SUBCASE("dragged-cosine alpha matches the closed form") {
        const double x0 = 0.5, omega = 2.0, m = 1.0;
        DriveEnvelope env;
        env.form = DraggedCosine{x0, omega, m};
        env.cartan_drives = {DraggedCosine{x0, omega, m}};
        const auto disp = hw_displacement(coupling_function(env, {1}), linspace(6.0, 121));
        const double scale = -x0 * std::sqrt(m * omega * omega * omega / 2.0);
        for (const auto& d : disp) {
            const double t = d.t;
            const cplx expected = scale * (t / 2.0 + (std::exp(2.0 * kI * (omega * t)) - 1.0) / (4.0 * kI * omega));
            CHECK(std::abs(d.alpha - expected) <= 1e-9);
        }
    }
    SUBCASE("zero drive") {
        const auto disp = hw_displacement([](double) { return cplx(0.0, 0.0); }, linspace(2.0, 5));
        for (const auto& d : disp) {
            CHECK(std::abs(d.alpha) == 0.0);
            CHECK(d.phi == 0.0);
        }
    }
    SUBCASE("alpha and phi start at zero") {
        const auto disp = hw_displacement([](double t) { return cplx(std::sin(t), 0.3); }, linspace(2.0, 5));
        CHECK(std::abs(disp[0].alpha) == 0.0);
        CHECK(disp[0].phi == 0.0);
    }
}

TEST_CASE("projective chart reproduces z") {
    const auto gamma = [](double t) { return cplx(0.4, 0.1 * t); };
    for (int sigma : {1, -1}) {
        const auto traj = integrate_wn(make_sector(sigma, sigma == 1 ? -0.5 : 0.5, sigma == 1 ? 0 : 8),
                                       gamma, linspace(2.0, 5));
        const auto& s = traj.back();
        const auto p = projective_from_wn(s, gamma(s.t), sigma);
        CHECK((std::abs(p.u) > 0.0 || std::abs(p.u_dot) > 0.0));
        const cplx z_back = -p.u_dot / (kI * static_cast<double>(sigma) * std::conj(gamma(s.t)) * p.u);
        CHECK(std::abs(z_back - s.z) <= 1e-12 * std::max(1.0, std::abs(s.z)));
    }
}

TEST_CASE("integrate_wn input validation") {
    const auto gamma = [](double) { return cplx(0.1, 0.0); };
    CHECK_THROWS_AS(integrate_wn(make_sector(0, 0.0, 8), gamma, linspace(1.0, 3)), std::invalid_argument);
    CHECK_THROWS_AS(integrate_wn(make_sector(1, -0.5), gamma, {1.0, 2.0}), std::invalid_argument);
    CHECK_THROWS_AS(integrate_wn(make_sector(1, -0.5), gamma, linspace(1.0, 3), 0.0), std::invalid_argument);
}

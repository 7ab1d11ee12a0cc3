// test_algebra.cpp — sectors, Lanczos coefficients, Cartan dressing, root data

#include <doctest.h>

#include <cmath>
#include <complex>

#include "krylov_lie/algebra.hpp"
#include "krylov_lie/drive.hpp"
#include "krylov_lie/oracle.hpp"

using namespace klie;

TEST_CASE("sector construction validates and snaps") {
    const auto su2 = make_sector(1, -1.0);
    CHECK(su2.dim == 3);
    CHECK(su2.lowest_weight == -1.0);

    // decimal inputs snap to the nearest half-integer within 1e-9
    const auto snapped = make_sector(1, -0.9999999997);
    CHECK(snapped.lowest_weight == -1.0);
    CHECK_THROWS_AS(make_sector(1, -0.6), std::invalid_argument);
    CHECK_THROWS_AS(make_sector(1, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(make_sector(1, -1.0, 4), std::invalid_argument);  // dim != 2j+1

    CHECK_THROWS_AS(make_sector(-1, -0.2), std::invalid_argument);
    CHECK_THROWS_AS(make_sector(-1, 0.0), std::invalid_argument);
    CHECK(make_sector(-1, 0.25).dim == kDefaultTruncationDim);
    CHECK(make_sector(0, 0.0, 32).dim == 32);
    CHECK_THROWS_AS(make_sector(3, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(make_sector(0, 0.0, -1), std::invalid_argument);
}

TEST_CASE("Lanczos coefficients match the closed forms") {
    const auto su4 = make_sector(1, -1.0);  // j = 1 sector
    const auto b = lanczos_coefficients(su4, 2);
    CHECK(b[0] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(b[1] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    // b_n = sqrt(n(3-n)) terminates at b_3 = 0
    CHECK(lanczos_coefficients(su4, 3)[2] == 0.0);
    CHECK_THROWS_AS(lanczos_coefficients(su4, 4), std::invalid_argument);

    const auto dil = make_sector(-1, 0.25, 8);  // b_n = sqrt(n(2n-1)/2)
    const auto bd = lanczos_coefficients(dil, 2);
    CHECK(bd[0] == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
    CHECK(bd[1] == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));

    const auto hw = make_sector(0, 0.0, 8);
    const auto bh = lanczos_coefficients(hw, 4);
    CHECK(bh[0] == doctest::Approx(1.0));
    CHECK(bh[1] == doctest::Approx(std::sqrt(2.0)));
    CHECK(bh[2] == doctest::Approx(std::sqrt(3.0)));
    CHECK(bh[3] == doctest::Approx(2.0));

    // recursion seed
    CHECK(lanczos_b(su4, 0) == 0.0);
    CHECK(lanczos_b(dil, 0) == 0.0);
    CHECK(lanczos_b(hw, 0) == 0.0);
}

TEST_CASE("b_n^2 equals the ladder matrix-element ratio") {
    // <l|Lm^n Lp^n|l> / <l|Lm^{n-1} Lp^{n-1}|l> evaluated on dense matrices
    for (const auto& sector :
         {make_sector(1, -1.5), make_sector(-1, 0.25, 16), make_sector(-1, 1.5, 16), make_sector(0, 0.0, 16)}) {
        const auto rep = oracle::build_rep(sector);
        Eigen::VectorXcd v = Eigen::VectorXcd::Zero(sector.dim);
        v[0] = 1.0;
        double prev_norm2 = 1.0;
        const int n_top = std::min(sector.dim - 1, 6);
        for (int n = 1; n <= n_top; ++n) {
            v = (rep.Lp * v).eval();  // Lp^n |l>
            const double norm2 = v.squaredNorm();
            const double ratio = norm2 / prev_norm2;
            const double bn = lanczos_b(sector, n);
            CHECK(std::abs(ratio - bn * bn) <= 1e-12 * std::max(1.0, bn * bn));
            prev_norm2 = norm2;
        }
    }
}

TEST_CASE("compact chains terminate exactly") {
    for (double j : {0.5, 1.0, 2.5}) {
        const auto sector = make_sector(1, -j);
        CHECK(lanczos_b(sector, sector.dim) == 0.0);  // b_{2j+1}
    }
}

TEST_CASE("virasoro weights") {
    CHECK(virasoro_weight(0.0, 24.0, 2).lowest_weight == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(virasoro_weight(1.0, 0.0, 1).lowest_weight == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(virasoro_weight(0.5, 1.0, 3).lowest_weight == doctest::Approx(5.0 / 18.0).epsilon(1e-15));
    CHECK(virasoro_weight(0.0, 24.0, 2).sigma == -1);
    CHECK_THROWS_AS(virasoro_weight(0.0, 0.0, 1), std::domain_error);    // lambda = 0
    CHECK_THROWS_AS(virasoro_weight(0.0, -24.0, 2), std::domain_error);  // lambda < 0
    CHECK_THROWS_AS(virasoro_weight(0.0, 24.0, 0), std::invalid_argument);
}

TEST_CASE("effective coupling dresses the drive with Cartan phases") {
    SUBCASE("su(4) choice cancels the phase") {
        DriveEnvelope env;
        env.form = SechPulse{1.0, 1.0};
        env.cartan_drives = {SechPulse{1.0, 1.0}, SechPulse{2.0, 1.0}, SechPulse{1.0, 1.0}};
        const std::vector<int> row{2, -1, 0};
        for (double t : {0.0, 0.7, 3.0}) {
            const cplx g = effective_coupling(env, row, t);
            const cplx f = drive_value(env.form, t);
            CHECK(std::abs(g - f) <= 1e-14);
        }
    }
    SUBCASE("zero Cartan drives leave f untouched") {
        DriveEnvelope env;
        env.form = SechPulse{0.7, 2.0};
        CHECK(std::abs(effective_coupling(env, {}, 1.3) - drive_value(env.form, 1.3)) == 0.0);
    }
    SUBCASE("rotating field gives the detuned coupling") {
        const double theta0 = 1.1, Omega = 0.7;
        DriveEnvelope env;
        env.form = RotatingField{theta0, Omega, 1.0};
        env.cartan_drives = {RotatingField{theta0, Omega, 1.0}};
        const double delta = Omega - std::cos(theta0);
        for (double t : {0.4, 2.0, 9.0}) {
            const cplx expected = (std::sin(theta0) / 2.0) * std::exp(cplx(0.0, -delta * t));
            CHECK(std::abs(effective_coupling(env, {1}, t) - expected) <= 1e-13);
        }
    }
    SUBCASE("constant-phase envelope has time-independent argument") {
        DriveEnvelope env;
        env.form = constant_amplitude(0.8, 0.4);
        for (double t : {0.1, 1.0, 5.0}) {
            CHECK(std::arg(effective_coupling(env, {}, t)) == doctest::Approx(0.4).epsilon(1e-14));
        }
    }
}

TEST_CASE("quench envelope carries its Cartan component") {
    const PiecewiseConstantQuench q{0.6, 2.0, 10.0};
    const double f0 = (4.0 - 0.36) / (4.0 * 0.6);
    const double g0 = (4.0 + 0.36) / (2.0 * 0.6);
    CHECK(drive_value(q, 5.0).real() == doctest::Approx(2.0 * f0).epsilon(1e-15));
    CHECK(drive_value(q, 15.0) == cplx(0.0, 0.0));
    CHECK(cartan_value(q, 5.0) == doctest::Approx(g0).epsilon(1e-15));
    CHECK(cartan_value(q, 15.0) == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(cartan_integral(q, 12.0) == doctest::Approx(g0 * 10.0 + 0.6 * 2.0).epsilon(1e-15));
    CHECK(form_breakpoints(EnvelopeForm{q}) == std::vector<double>{10.0});
}

TEST_CASE("tabulated envelope rejects evaluation outside its domain") {
    Tabulated tab;
    tab.times = {0.0, 1.0, 2.0};
    tab.values = {cplx(0, 0), cplx(1, 0), cplx(0, 0)};
    CHECK(std::abs(drive_value(tab, 0.5) - cplx(0.5, 0.0)) <= 1e-15);
    CHECK_THROWS_AS(drive_value(tab, 2.5), std::domain_error);
    CHECK_THROWS_AS(drive_value(tab, -0.1), std::domain_error);
    // exact trapezoid integral of the interpolant
    CHECK(cartan_integral(tab, 2.0) == doctest::Approx(1.0).epsilon(1e-15));

    Tabulated complex_tab;
    complex_tab.times = {0.0, 1.0};
    complex_tab.values = {cplx(0, 1), cplx(0, 1)};
    CHECK_THROWS_AS(cartan_value(complex_tab, 0.5), std::invalid_argument);
}

TEST_CASE("constant-phase envelope as Cartan drive") {
    auto cp = constant_amplitude(0.3, 0.0);
    CHECK(cartan_integral(cp, 2.0) == doctest::Approx(0.6).epsilon(1e-15));
    auto bad = constant_amplitude(0.3, 0.5);
    CHECK_THROWS_AS(cartan_integral(bad, 2.0), std::invalid_argument);

    // function amplitude without an antiderivative falls back to quadrature
    ConstantPhase fn;
    fn.amplitude = [](double t) { return std::exp(-t) * std::cos(t); };
    const double exact = 0.5 * (1.0 - std::exp(-2.0) * (std::cos(2.0) - std::sin(2.0)));
    CHECK(cartan_integral(fn, 2.0) == doctest::Approx(exact).epsilon(1e-12));
}

TEST_CASE("sech pulse integral is the closed form") {
    const SechPulse p{1.3, 0.8};
    for (double t : {0.3, 1.0, 4.0}) {
        CHECK(cartan_integral(p, t) ==
              doctest::Approx(2.0 * 1.3 * 0.8 * std::atan(std::tanh(t / 1.6))).epsilon(1e-15));
    }
}

TEST_CASE("commuting-sector validation") {
    RootData a3;
    a3.cartan_matrix.resize(3, 3);
    a3.cartan_matrix << 2, -1, 0, -1, 2, -1, 0, -1, 2;

    a3.selected_roots = {1, 3};
    CHECK(validate_commuting_sectors(a3).ok);

    a3.selected_roots = {1, 2};
    const auto bad = validate_commuting_sectors(a3);
    CHECK_FALSE(bad.ok);
    REQUIRE(bad.offending_pairs.size() == 1);
    CHECK(bad.offending_pairs[0] == std::pair<int, int>{1, 2});

    a3.selected_roots = {2};
    CHECK(validate_commuting_sectors(a3).ok);  // no pairs

    // symmetric in selection order
    a3.selected_roots = {3, 1};
    CHECK(validate_commuting_sectors(a3).ok);
    a3.selected_roots = {2, 1};
    CHECK_FALSE(validate_commuting_sectors(a3).ok);

    RootData malformed = a3;
    malformed.cartan_matrix(0, 0) = 1;
    CHECK_THROWS_AS(validate_commuting_sectors(malformed), std::invalid_argument);
    malformed = a3;
    malformed.cartan_matrix(0, 1) = 1;
    CHECK_THROWS_AS(validate_commuting_sectors(malformed), std::invalid_argument);
    malformed = a3;
    malformed.selected_roots = {0};
    CHECK_THROWS_AS(validate_commuting_sectors(malformed), std::invalid_argument);
    malformed = a3;
    malformed.selected_roots = {4};
    CHECK_THROWS_AS(validate_commuting_sectors(malformed), std::invalid_argument);
}

TEST_CASE("cartan_phase requires matching row length") {
    DriveEnvelope env;
    env.form = SechPulse{1.0, 1.0};
    env.cartan_drives = {SechPulse{1.0, 1.0}};
    CHECK_THROWS_AS(cartan_phase(env, {1, 2}, 1.0), std::invalid_argument);
    CHECK(cartan_phase(env, {2}, 1.0) ==
          doctest::Approx(2.0 * cartan_integral(env.cartan_drives[0], 1.0)).epsilon(1e-15));
    CHECK(cartan_phase(env, {0}, 1.0) == 0.0);
}

#include "doctest.h"

#include "diejen/scattering.hpp"
#include "gen.hpp"

using namespace diejen;

namespace {

const Coupling g0{0.7, 0.4};

double sup_diff(const AsymptoticPoint& a, const AsymptoticPoint& b) {
    return std::max((a.xi - b.xi).cwiseAbs().maxCoeff(), (a.eta - b.eta).cwiseAbs().maxCoeff());
}

}  // namespace

TEST_CASE("shift function against direct sums") {
    RVector x(1);
    x << 0.8;
    CHECK(delta_shift(x, g0, 0) == doctest::Approx(0.5 * std::log(1 + std::pow(std::sin(0.4) / std::sinh(1.6), 2))));
    RVector y(2);
    y << 1.1, 0.5;
    auto L = [](double s, double a) { return std::log(1 + std::pow(std::sin(a) / std::sinh(s), 2)); };
    const double d0 = 0.5 * L(2.2, 0.4) + 0.5 * L(0.6, 0.7) + 0.5 * L(1.6, 0.7);
    const double d1 = 0.5 * L(1.0, 0.4) - 0.5 * L(-0.6, 0.7) + 0.5 * L(1.6, 0.7);
    CHECK(delta_shift(y, g0, 0) == doctest::Approx(d0).epsilon(1e-14));
    CHECK(delta_shift(y, g0, 1) == doctest::Approx(d1).epsilon(1e-14));
    y << 0.5, 1.1;
    CHECK_THROWS_AS(delta_shift(y, g0), Error);
}

TEST_CASE("Upsilon maps invert each other") {
    gen::Rng rng(41);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 1 + trial % 4;
        const Coupling g = rng.coupling();
        PhasePoint q = rng.point(n);
        for (int s : {+1, -1}) {
            const AsymptoticPoint z = upsilon(q, g, s);
            CHECK_FALSE(validate(z));
            const PhasePoint back = upsilon_inverse(z, g);
            CHECK((back.xi - q.xi).cwiseAbs().maxCoeff() < 1e-14);
            CHECK((back.eta - q.eta).cwiseAbs().maxCoeff() < 1e-13);
        }
    }
}

TEST_CASE("wave maps, scattering map and its inverse") {
    gen::Rng rng(42);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 1 + trial % 4;
        const Coupling g = rng.coupling();
        const PhasePoint p = rng.point(n);
        const AsymptoticData ad = asymptotic_data(p, g);
        CHECK(ad.sum_residual < 1e-9);
        CHECK(ad.minor_residual < 1e-9);
        const AsymptoticPoint wp = wave_map(p, g, +1), wm = wave_map(p, g, -1);
        CHECK(sup_diff(wp, wave_map_factorized(p, g, +1)) < 1e-9);
        CHECK(sup_diff(wm, wave_map_factorized(p, g, -1)) < 1e-9);
        const AsymptoticPoint s = scattering_map(wm, g);
        CHECK(s.sign == +1);
        CHECK(sup_diff(s, wp) < 1e-9);
        CHECK(sup_diff(s, scattering_map_composite(wm, g)) < 1e-12);
        CHECK(sup_diff(inverse_scattering_map(s, g), wm) < 1e-10);
        CHECK_THROWS_AS(scattering_map(wp, g), Error);
        CHECK_THROWS_AS(inverse_scattering_map(wm, g), Error);
    }
}

TEST_CASE("decay fit on synthetic data") {
    std::vector<double> t, r;
    for (int k = 1; k <= 10; ++k) {
        t.push_back(k);
        r.push_back(3.0 * std::exp(-1.7 * k) * (k % 2 ? 1 : -1));
    }
    const DecayFit f = fit_exponential_decay(t, r);
    CHECK(f.rate == doctest::Approx(1.7).epsilon(1e-12));
    CHECK(f.rms < 1e-12);
    CHECK(f.used == 5);
    const DecayFit z = fit_exponential_decay(t, std::vector<double>(10, 0.0));
    CHECK(std::isinf(z.rate));
    CHECK(z.used == 0);
    std::vector<double> few(10, 0.0);
    few[9] = 1e-3;
    few[8] = 2e-3;
    CHECK_THROWS_AS(fit_exponential_decay(t, few), Error);
    CHECK_THROWS_AS(fit_exponential_decay(t, std::vector<double>(3, 1.0)), Error);
}

TEST_CASE("residuals decay at the minimal gap rate") {
    gen::Rng rng(43);
    for (int trial = 0; trial < 8; ++trial) {
        const int n = 1 + trial % 3;
        const PhasePoint p = rng.point(n);
        const std::vector<double> grid = default_trace_grid(p, g0);
        CHECK(grid.size() == 12);
        for (double sign : {1.0, -1.0}) {
            std::vector<double> gr = grid;
            for (double& v : gr) v *= sign;
            const ResidualTrace tr = residual_trace(p, g0, gr);
            for (double rate : {tr.E_sup_fit.rate, tr.G_sup_fit.rate}) {
                CHECK(rate / tr.min_gap > 0.5);
                CHECK(rate / tr.min_gap < 1.5);
            }
            CHECK(tr.monotone_after_onset);
        }
    }
    const PhasePoint p = rng.point(2);
    CHECK_THROWS_AS(residual_trace(p, g0, {1.0}), Error);
    CHECK_THROWS_AS(residual_trace(p, g0, {1.0, -2.0}), Error);
    CHECK_THROWS_AS(residual_trace(p, g0, {2.0, 1.0}), Error);
}

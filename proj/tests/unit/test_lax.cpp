#include "doctest.h"

#include "diejen/lax.hpp"
#include "gen.hpp"
#include "oracles.hpp"

using namespace diejen;

namespace {

PhasePoint point(std::initializer_list<double> xi, std::initializer_list<double> eta) {
    PhasePoint p{RVector(static_cast<int>(xi.size())), RVector(static_cast<int>(eta.size()))};
    int i = 0;
    for (double v : xi) p.xi(i++) = v;
    i = 0;
    for (double v : eta) p.eta(i++) = v;
    return p;
}

const Coupling g0{0.7, 0.4};

}  // namespace

TEST_CASE("one particle coefficients match frozen values") {
    const PhasePoint p = point({0.8}, {0.3});
    const cplx z = z_coeff(p, g0, 0);
    CHECK(z.real() == doctest::Approx(-0.9210609940028852).epsilon(1e-13));
    CHECK(z.imag() == doctest::Approx(-0.4225145150573407).epsilon(1e-13));
    CHECK(u_coeff(p, g0, 0) == doctest::Approx(1.0133468656426203).epsilon(1e-13));
    CHECK(hamiltonian(p, g0) == doctest::Approx(1.0592905068279947).epsilon(1e-13));

    const LaxBundle b = lax_matrix(p, g0);
    CHECK(b.L(0, 0).real() == doctest::Approx(1.3678751917172276).epsilon(1e-12));
    CHECK(std::abs(b.L(0, 1) - cplx(0.0, -0.1639264167476448)) < 1e-12);
    const auto [lo, hi] = oracle::hermitian2(b.L(0, 0).real(), b.L(0, 1), b.L(1, 1).real());
    CHECK(lo == doctest::Approx(0.7098675856337636).epsilon(1e-12));
    CHECK(hi == doctest::Approx(1.4087134280222255).epsilon(1e-12));
}

TEST_CASE("two particle spectrum matches frozen values") {
    const LaxBundle b = lax_matrix(point({1.3, 0.6}, {0.4, -0.2}), g0);
    CHECK(b.L(0, 0).real() == doctest::Approx(1.9982284925841538).epsilon(1e-12));
    CHECK(std::abs(b.L(0, 1) - cplx(0.7905222102738694, 0.5672239604235021)) < 1e-12);
    const RVector w = hermitian_eig(b.L).eigenvalues;
    const double frozen[] = {0.33617077360127007, 0.5356204770277555, 1.8669935950715746, 2.9746785816249894};
    for (int k = 0; k < 4; ++k) CHECK(w(k) == doctest::Approx(frozen[k]).epsilon(1e-11));
    CHECK(b.L.trace().real() == doctest::Approx(5.713463427325589).epsilon(1e-12));
}

TEST_CASE("Lax matrix is Hermitian, unimodular and reciprocally paired") {
    gen::Rng rng(11);
    for (int trial = 0; trial < 80; ++trial) {
        const int n = 1 + trial % 4;
        const Coupling g = rng.coupling();
        const PhasePoint p = rng.point(n);
        const LaxBundle b = lax_matrix(p, g);
        const double scale = max_abs(b.L);
        CHECK(max_abs(b.L - b.L.adjoint()) <= 1e-12 * scale);
        CHECK(std::abs(b.L.determinant() - 1.0) < 1e-8);
        const RVector w = hermitian_eig(b.L).eigenvalues;
        for (int j = 0; j < 2 * n; ++j) CHECK(std::abs(w(j) * w(2 * n - 1 - j) - 1.0) < 1e-8);
        CHECK(commutation_residual(b, g) <= 1e-10 * scale);
        CHECK(b.H == doctest::Approx(hamiltonian(p, g)).epsilon(1e-12));
        for (int a = 0; a < n; ++a) CHECK(b.u(a) == doctest::Approx(std::abs(b.z(a))).epsilon(1e-15));
    }
}

TEST_CASE("F vector and swap structure") {
    const PhasePoint p = point({1.3, 0.6}, {0.4, -0.2});
    const CVector F = f_vector(p, g0);
    for (int a = 0; a < 2; ++a) {
        CHECK(F(a).imag() == 0.0);
        CHECK(std::abs(F(a) * F(2 + a) - std::conj(z_coeff(p, g0, a))) < 1e-14);
    }
    const CMatrix C = swap_matrix(2);
    CHECK(max_abs(C * C - CMatrix::Identity(4, 4)) == 0.0);
    const CMatrix R = reversal_matrix(3);
    CHECK(R(0, 2) == 1.0);
    CHECK(R(1, 1) == 1.0);
    CHECK(R(2, 0) == 1.0);
    CHECK(trace_power_observable(lax_matrix(p, g0), 1) == doctest::Approx(5.713463427325589).epsilon(1e-12));
    CHECK_THROWS_AS(trace_power_observable(lax_matrix(p, g0), 0), Error);
}

TEST_CASE("input errors") {
    const PhasePoint p = point({1.3, 0.6}, {0.4, -0.2});
    CHECK_THROWS_AS(lax_matrix(p, {0.0, 0.4}), Error);
    CHECK_THROWS_AS(lax_matrix(p, {0.7, 1.4}), Error);  // in the larger class only
    CHECK_NOTHROW(z_coeff(p, {0.7, 1.4}, 0));
    CHECK_THROWS_AS(z_coeff(p, g0, 2), Error);
    CHECK_THROWS_AS(lax_matrix(point({0.6, 1.3}, {0, 0}), g0), Error);
    try {
        lax_matrix(point({301.0, 0.6}, {0, 0}), g0);
        FAIL("expected overflow");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::overflow);
    }
}

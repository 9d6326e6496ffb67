#include "doctest.h"

#include "diejen/spectral_asymptotics.hpp"
#include "gen.hpp"
#include "oracles.hpp"

using namespace diejen;

namespace {

FlowSpec two_by_two() {
    FlowSpec s{CMatrix(2, 2), CVector(2), FlowKind::exponential};
    s.M << cplx(3.0, 0.2), cplx(0.5, -0.3), cplx(-0.4, 0.1), cplx(2.5, 0.4);
    s.d << cplx(1.0, 0.05), cplx(-1.0, -0.02);
    return s;
}

}  // namespace

TEST_CASE("coefficients of a 2x2 spec") {
    const FlowSpec s = two_by_two();
    const auto m = m_coeffs(s.M);
    CHECK(std::abs(m[0] - s.M(0, 0)) < 1e-15);
    CHECK(std::abs(m[1] - s.M.determinant() / s.M(0, 0)) < 1e-14);
    const auto p = p_coeffs(s.M);
    REQUIRE(p.size() == 1);
    CHECK(std::abs(p[0] - s.M(0, 1) * s.M(1, 0) / (s.M(0, 0) * s.M(0, 0))) < 1e-14);
    const auto al = alpha_coeffs(s.M, s.d);
    CHECK(std::abs(al[0] - s.M(0, 1) * s.M(1, 0) / (s.d(0) - s.d(1))) < 1e-15);
    CHECK(std::abs(al[0] + al[1]) < 1e-15);
}

TEST_CASE("2x2 eigenvalues against the quadratic formula") {
    const FlowSpec s = two_by_two();
    for (double t : {1.0, 3.0, 6.0}) {
        CMatrix A = s.M;
        for (int k = 0; k < 2; ++k) A.col(k) *= std::exp(t * s.d(k));
        const auto [big, small] = oracle::quadratic_roots(A.trace(), s.M.determinant() * std::exp(t * s.d.sum()));
        const auto ev = flow_eigenvalues(s, t);
        CHECK(std::abs(ev[0] - big) < 1e-12 * std::abs(big));
        CHECK(std::abs(ev[1] - small) < 1e-9 * std::abs(small));
        const auto rho = relative_remainders(s, t);
        CHECK(std::abs(rho[0] - (big / (s.M(0, 0) * std::exp(t * s.d(0))) - 1.0)) < 1e-12);
    }
}

TEST_CASE("compound and direct routes agree at moderate times") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const FlowSpec s = sample_spec(2 + static_cast<int>(seed % 4), FlowKind::exponential, seed);
        const auto a = flow_eigenvalues(s, 2.0), b = flow_eigenvalues_direct(s, 2.0);
        for (size_t j = 0; j < a.size(); ++j) CHECK(std::abs(a[j] - b[j]) < 1e-8 * std::abs(a[j]));
    }
}

TEST_CASE("exponential flows satisfy the expansion") {
    for (int N = 2; N <= 4; ++N)
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            const FlowSpec s = sample_spec(N, FlowKind::exponential, 100 + seed);
            const AsymptoticReport r = verify_theorem_a1(s, default_a1_grid());
            CHECK(r.pass());
            CHECK(r.p_rel_error < 1e-3);
            for (double o : r.fitted_orders) CHECK(o >= 1.8 * r.R);
        }
}

TEST_CASE("triangular M has vanishing p and exact exponents") {
    FlowSpec s = sample_spec(3, FlowKind::exponential, 7);
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) s.M(i, j) = 0.0;
    for (const cplx& p : p_coeffs(s.M)) CHECK(std::abs(p) < 1e-12);
    for (const cplx& r : relative_remainders(s, 4.0)) CHECK(std::abs(r) < 1e-12);
}

TEST_CASE("linear flows satisfy the expansion") {
    for (int N = 2; N <= 4; ++N)
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            const FlowSpec s = sample_spec(N, FlowKind::linear, 200 + seed, linear_spec_bounds());
            const AsymptoticReport r = verify_theorem_a2(s, default_a2_grid());
            CHECK(r.pass());
        }
}

TEST_CASE("spec validation and sampling") {
    FlowSpec s = two_by_two();
    s.d << cplx(-1.0, 0), cplx(1.0, 0);
    CHECK_THROWS_AS(validate_spec(s), Error);
    s = two_by_two();
    s.M(0, 0) = 0.0;
    CHECK_THROWS_AS(validate_spec(s), Error);
    s.kind = FlowKind::linear;
    CHECK_NOTHROW(validate_spec(s));
    const FlowSpec a = sample_spec(3, FlowKind::exponential, 9), b = sample_spec(3, FlowKind::exponential, 9);
    CHECK(max_abs(a.M - b.M) == 0.0);
    for (int j = 0; j + 1 < 3; ++j) {
        const double gap = (a.d(j) - a.d(j + 1)).real();
        CHECK(gap >= 1.8);
        CHECK(gap <= 2.2);
    }
    CHECK(default_a1_grid().front() == 2.0);
    CHECK(default_a1_grid().back() == 12.0);
}

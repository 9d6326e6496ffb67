#include "doctest.h"

#include "diejen/duality.hpp"
#include "gen.hpp"

using namespace diejen;

namespace {

const Coupling g0{0.7, 0.4};

double sup_diff(const PhasePoint& a, const PhasePoint& b) {
    return std::max((a.xi - b.xi).cwiseAbs().maxCoeff(), (a.eta - b.eta).cwiseAbs().maxCoeff());
}

}  // namespace

TEST_CASE("one particle frame matches frozen values") {
    PhasePoint p{RVector(1), RVector(1)};
    p.xi << 0.8;
    p.eta << 0.3;
    const DualFrame f = dual_frame(p, g0);
    CHECK(f.theta_hat(0) == doctest::Approx(0.17133841272363606).epsilon(1e-12));
    CHECK(f.lambda_hat(0) == doctest::Approx(1.138623422464468).epsilon(1e-11));
    CHECK(std::abs(f.z_hat(0) - cplx(-0.9210609940028853, 1.1805383338403008)) < 1e-11);
    CHECK(std::abs(dual_z_closed_form(f.theta_hat, hat_coupling(g0), 0) - f.z_hat(0)) < 1e-11);
}

TEST_CASE("frame structure") {
    gen::Rng rng(21);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 1 + trial % 4;
        const Coupling g = rng.coupling();
        const PhasePoint p = rng.point(n);
        const LaxBundle b = lax_matrix(p, g);
        const DualFrame f = dual_frame(b, g);
        const int N = 2 * n;
        CHECK(max_abs(f.y_hat.adjoint() * f.y_hat - CMatrix::Identity(N, N)) < 1e-12);
        CHECK(max_abs(f.y_hat.adjoint() * b.C * f.y_hat - b.C) < 1e-12);
        RVector e2(N);
        for (int k = 0; k < N; ++k) e2(k) = std::exp(2.0 * f.Theta_hat(k));
        CHECK(max_abs(b.L * f.y_hat - f.y_hat * e2.asDiagonal()) < 1e-10 * max_abs(b.L));
        for (int a = 0; a < n; ++a) {
            CHECK(f.F_hat(a).real() > 0.0);
            CHECK(f.u_hat(a) > 1.0);
            if (a + 1 < n) CHECK(f.theta_hat(a) > f.theta_hat(a + 1));
        }
        CHECK(f.theta_hat(n - 1) > 0.0);
        CHECK(max_abs(dual_angles(b) - f.theta_hat) == 0.0);
    }
}

TEST_CASE("duality is an involution and intertwines the Lax matrices") {
    gen::Rng rng(22);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 1 + trial % 4;
        const Coupling g = rng.coupling(), gh = hat_coupling(g);
        const PhasePoint p = rng.point(n);
        const PhasePoint q = duality_map(p, g);
        CHECK(sup_diff(duality_map(q, gh), p) < 1e-7);
        const DualLaxCheck d = dual_lax(p, g);
        CHECK(d.theorem_residual < 1e-8);
        CHECK(d.entries_residual < 1e-8);
        CHECK(std::abs(d.det - 1.0) < 1e-8);

        const DualFrame f = dual_frame(p, g);
        const LaxBundle b = lax_matrix(p, g);
        double sz = 0, szh = 0, scale = 0;
        for (int c = 0; c < n; ++c) {
            sz += b.z(c).real();
            szh += f.z_hat(c).real();
            scale += std::abs(b.z(c));
            const cplx cf = dual_z_closed_form(f.theta_hat, gh, c);
            CHECK(std::abs(f.z_hat(c) - cf) < 1e-8 * std::abs(cf));
        }
        CHECK(std::abs(sz - szh) < 1e-10 * scale);
        const IdentityResiduals id = minor_identity_residuals(f, gh);
        CHECK(id.linear < 1e-8);
        CHECK(id.quadratic < 1e-8);
    }
}

TEST_CASE("both sign branches satisfy the relations but only one is realized") {
    gen::Rng rng(23);
    const Coupling gh = hat_coupling(g0);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 1 + trial % 3;
        const DualFrame f = dual_frame(rng.point(n), g0);
        CVector bad(n);
        for (int c = 0; c < n; ++c) bad(c) = dual_z_rejected_branch(f.theta_hat, gh, c);
        const IdentityResiduals r = minor_identity_residuals(f.theta_hat, bad, gh);
        CHECK(r.linear < 1e-10);
        CHECK(r.quadratic < 1e-10);
        CHECK(std::abs(bad(0) - f.z_hat(0)) > 1e-3);
    }
}

TEST_CASE("degenerate inputs are rejected") {
    PhasePoint p{RVector(2), RVector::Zero(2)};
    p.xi << 1.3, 0.6;
    CHECK_THROWS_AS(dual_frame(p, {0.7, 1.4}), Error);
    RVector th(2);
    th << 0.5, 0.5;
    CHECK_THROWS_AS(dual_z_closed_form(th, hat_coupling(g0), 0), Error);
    const LaxBundle b = lax_matrix(p, g0);
    CHECK_THROWS_AS(diagonalizer_from_basis(b, dual_angles(b), CMatrix::Identity(3, 2)), Error);
}

TEST_CASE("phase fixing removes the eigenvector phase freedom") {
    gen::Rng rng(24);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 1 + trial % 4;
        const Coupling g = rng.coupling();
        const LaxBundle b = lax_matrix(rng.point(n), g);
        const CMatrix y = diagonalizer(b, g);
        CMatrix top = y.leftCols(n);
        for (int a = 0; a < n; ++a) top.col(a) *= std::exp(I * rng.uniform(0.0, 2.0 * M_PI));
        CHECK(max_abs(diagonalizer_from_basis(b, dual_angles(b), top) - y) < 1e-9);
    }
}

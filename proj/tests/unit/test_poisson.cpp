#include "doctest.h"

#include "diejen/poisson.hpp"
#include "gen.hpp"

using namespace diejen;

namespace {
const Coupling g0{0.7, 0.4};
}

TEST_CASE("symplectic matrix and coordinate brackets") {
    const Eigen::MatrixXd O = omega_matrix(2);
    CHECK((O + O.transpose()).norm() == 0.0);
    CHECK((O * O + Eigen::MatrixXd::Identity(4, 4)).norm() == 0.0);
    gen::Rng rng(51);
    const PhasePoint p = rng.point(3);
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            CHECK(poisson_bracket(obs::position(a), obs::rapidity(b), p) == doctest::Approx(a == b ? 1.0 : 0.0));
            CHECK(std::abs(poisson_bracket(obs::position(a), obs::position(b), p)) < 1e-12);
        }
    CHECK(obs::position(1).label == "lambda_2");
}

TEST_CASE("brackets with the energy reproduce the vector field") {
    gen::Rng rng(52);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 1 + trial % 3;
        const PhasePoint p = rng.point(n);
        const VectorField v = vector_field(p, g0);
        for (int a = 0; a < n; ++a) {
            CHECK(poisson_bracket(obs::position(a), obs::energy(g0), p) == doctest::Approx(v.lambda_dot(a)).epsilon(1e-8));
            CHECK(poisson_bracket(obs::rapidity(a), obs::energy(g0), p) == doctest::Approx(v.theta_dot(a)).epsilon(1e-7));
        }
    }
}

TEST_CASE("dual coordinates are canonical") {
    gen::Rng rng(53);
    for (int trial = 0; trial < 12; ++trial) {
        const int n = 1 + trial % 3;
        const Coupling g = rng.coupling();
        const PhasePoint p = rng.point(n);
        const CanonicityReport r = canonicity_suite(p, g);
        CHECK(r.pass);
        CHECK(r.entries.size() == static_cast<size_t>(n * (2 * n - 1)));
        CHECK(r.max_deviation < 1e-5);
        CHECK(antisymplectic_check(p, g) < 1e-4);
        CHECK(flow_symplectic_check(p, g) < 1e-4);
        CHECK(involution_jacobian_check(p, g) < 1e-4);
    }
}

TEST_CASE("bracket error is second order in the step") {
    gen::Rng rng(54);
    for (int trial = 0; trial < 4; ++trial) {
        const double ratio = halving_ratio(rng.point(2), g0);
        CHECK(ratio > 3.5);
        CHECK(ratio < 4.5);
    }
}

TEST_CASE("Jacobian of a linear map") {
    const PhaseMap f = [](const PhasePoint& q) { return PhasePoint{2.0 * q.xi, q.eta + q.xi}; };
    PhasePoint p{RVector(2), RVector::Zero(2)};
    p.xi << 1.0, 0.5;
    const Eigen::MatrixXd J = jacobian(f, p);
    Eigen::MatrixXd expect = Eigen::MatrixXd::Zero(4, 4);
    expect.topLeftCorner(2, 2) = 2.0 * Eigen::MatrixXd::Identity(2, 2);
    expect.bottomLeftCorner(2, 2).setIdentity();
    expect.bottomRightCorner(2, 2).setIdentity();
    CHECK((J - expect).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("stencils must stay inside the chamber") {
    PhasePoint p{RVector(2), RVector::Zero(2)};
    p.xi << 1.0, 0.99995;
    CHECK_THROWS_AS(require_stencil(p, 1e-5), Error);
    p.xi << 1.0, 5e-5;
    CHECK_THROWS_AS(require_stencil(p, 1e-5), Error);
    p.xi << 1.0, 0.5;
    CHECK_NOTHROW(require_stencil(p, 1e-5));
    CHECK_THROWS_AS(require_stencil(p, 0.0), Error);
}

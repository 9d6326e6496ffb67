#include "doctest.h"

#include <set>

#include "diejen/phase_space.hpp"
#include "gen.hpp"

using namespace diejen;

TEST_CASE("validate reports the first offending pair") {
    PhasePoint p{RVector(3), RVector::Zero(3)};
    p.xi << 2.0, 1.0, 1.0;
    auto v = validate(p);
    REQUIRE(v);
    CHECK(v->first == 1);
    CHECK(v->second == 2);
    p.xi << 2.0, 1.0, -0.1;
    v = validate(p);
    REQUIRE(v);
    CHECK(v->first == 2);
    CHECK(v->second == -1);
    p.xi << 2.0, 1.0, 0.5;
    CHECK_FALSE(validate(p));
    CHECK_THROWS_AS(require_valid(PhasePoint{RVector::Zero(2), RVector::Zero(3)}), Error);
}

TEST_CASE("coupling classes") {
    CHECK(classify({0.0, 0.4}) == CouplingClass::outside);
    CHECK(classify({0.7, 0.0}) == CouplingClass::outside);
    CHECK(classify({0.7, 1.4}) == CouplingClass::M);  // sin(2 mu - nu) = 0
    CHECK(classify({1.0, 1.0 - M_PI / 2}) == CouplingClass::M_tilde);
    CHECK(classify({0.7, 0.4}) == CouplingClass::M_tilde_0);
    try {
        require_M({0.0, 0.4});
        FAIL("expected a coupling error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::coupling);
        CHECK(std::string(e.what()) == "coupling outside 𝔐");
    }
    CHECK_THROWS_AS(require_M_tilde({0.7, 1.4}), Error);
    const Coupling h = hat_coupling({0.7, 0.4});
    CHECK(h.mu == -0.7);
    CHECK(h.nu == -0.4);
}

TEST_CASE("samples are valid, bounded and reproducible") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const int n = 1 + static_cast<int>(seed % 4);
        const PhasePoint p = sample(n, seed);
        CHECK_FALSE(validate(p));
        CHECK(p.xi.maxCoeff() <= 2.5);
        CHECK(p.xi.minCoeff() >= 0.3);
        CHECK(p.eta.cwiseAbs().maxCoeff() <= 1.5);
        for (int a = 0; a + 1 < n; ++a) CHECK(p.xi(a) - p.xi(a + 1) >= 0.2 - 1e-12);
        const PhasePoint q = sample(n, seed);
        CHECK(p.xi == q.xi);
        CHECK(p.eta == q.eta);
    }
    SampleBounds tight;
    tight.xi_hi = 0.5;
    CHECK_THROWS_AS(sample(4, 1, tight), Error);
}

TEST_CASE("asymptotic points follow the rapidity ordering of their sign") {
    AsymptoticPoint z{RVector::Zero(2), RVector(2), +1};
    z.eta << 1.0, 0.5;
    CHECK_FALSE(validate(z));
    z.sign = -1;
    CHECK(validate(z));
    z.eta << -1.0, -0.5;
    CHECK_FALSE(validate(z));
    z.eta << -0.5, -1.0;
    CHECK(validate(z));
    z.sign = 0;
    CHECK(validate(z));
}

TEST_CASE("derived seeds are distinct") {
    std::set<std::uint64_t> seen;
    for (std::uint64_t b = 0; b < 5; ++b)
        for (std::uint64_t i = 0; i < 100; ++i) seen.insert(derive_seed(b, i));
    CHECK(seen.size() == 500);
    CHECK(derive_seed(7, 3) == derive_seed(7, 3));
}

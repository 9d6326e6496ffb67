#include "doctest.h"

#include <cstdlib>
#include <limits>

#include "diejen/serialize.hpp"

using namespace diejen;

TEST_CASE("CSV numbers round-trip") {
    for (double x : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.0}) CHECK(std::strtod(csv_number(x).c_str(), nullptr) == x);
    CHECK(csv_number(1.5) == "1.5");
}

TEST_CASE("CSV fields with separators are quoted") {
    CHECK(csv_line({"a", "1", "2"}) == "a,1,2\n");
    CHECK(csv_line({"{x,y}", "3"}) == "\"{x,y}\",3\n");
    CHECK(csv_line({"say \"hi\""}) == "\"say \"\"hi\"\"\"\n");
}

TEST_CASE("JSON numbers") {
    CHECK(round15(0.1 + 0.2) == 0.3);
    CHECK(round15(1.0 / 3.0) == 0.333333333333333);
    CHECK(json_number(std::numeric_limits<double>::infinity()).is_null());
    CHECK(json_number(std::nan("")).is_null());
    CHECK(json_number(2.0).get<double>() == 2.0);
    const Json z = json_complex({1.0, -2.0});
    CHECK(z.dump() == "[1.0,-2.0]");
    CMatrix m(1, 2);
    m << cplx(1, 0), cplx(0, 1);
    CHECK(json_matrix(m).dump() == "[[[1.0,0.0],[0.0,1.0]]]");
}

TEST_CASE("phase points serialize with stable keys") {
    PhasePoint p{RVector(2), RVector(2)};
    p.xi << 1.25, 0.5;
    p.eta << -0.25, 0.75;
    CHECK(to_json(p).dump() == R"({"lambda":[1.25,0.5],"theta":[-0.25,0.75]})");
}

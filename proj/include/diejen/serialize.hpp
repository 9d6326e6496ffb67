#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "diejen/poisson.hpp"
#include "diejen/scattering.hpp"
#include "diejen/spectral_asymptotics.hpp"

namespace diejen {

using Json = nlohmann::ordered_json;

// CSV fields carry 17 significant digits so that doubles round-trip; fields holding commas
// or quotes are quoted.
std::string csv_number(double x);
std::string csv_line(const std::vector<std::string>& fields);

// JSON numbers are rounded to 15 significant digits; non-finite values become null.
double round15(double x);
Json json_number(double x);
Json json_complex(cplx z);
Json json_vector(const RVector& v);
Json json_vector(const std::vector<double>& v);
Json json_vector(const CVector& v);
Json json_vector(const std::vector<cplx>& v);
Json json_matrix(const CMatrix& m);

Json to_json(const PhasePoint& p);
Json to_json(const DualFrame& f);
Json to_json(const AsymptoticData& a);
Json to_json(const CanonicityReport& r);
Json to_json(const AsymptoticReport& r);

}  // namespace diejen

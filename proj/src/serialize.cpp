#include "diejen/serialize.hpp"

#include <cmath>
#include <cstdio>

namespace diejen {

std::string csv_number(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string csv_line(const std::vector<std::string>& fields) {
    std::string s;
    for (size_t i = 0; i < fields.size(); ++i) {
        if (i) s += ',';
        const std::string& f = fields[i];
        if (f.find_first_of(",\"\n") == std::string::npos) {
            s += f;
            continue;
        }
        s += '"';
        for (char c : f) {
            if (c == '"') s += '"';
            s += c;
        }
        s += '"';
    }
    s += '\n';
    return s;
}

double round15(double x) {
    if (!std::isfinite(x) || x == 0.0) return x;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    return std::strtod(buf, nullptr);
}

Json json_number(double x) {
    if (!std::isfinite(x)) return nullptr;
    return round15(x);
}

Json json_complex(cplx z) { return Json::array({json_number(z.real()), json_number(z.imag())}); }

Json json_vector(const RVector& v) {
    Json a = Json::array();
    for (int i = 0; i < v.size(); ++i) a.push_back(json_number(v(i)));
    return a;
}

Json json_vector(const std::vector<double>& v) {
    Json a = Json::array();
    for (double x : v) a.push_back(json_number(x));
    return a;
}

Json json_vector(const CVector& v) {
    Json a = Json::array();
    for (int i = 0; i < v.size(); ++i) a.push_back(json_complex(v(i)));
    return a;
}

Json json_vector(const std::vector<cplx>& v) {
    Json a = Json::array();
    for (cplx z : v) a.push_back(json_complex(z));
    return a;
}

Json json_matrix(const CMatrix& m) {
    Json rows = Json::array();
    for (int i = 0; i < m.rows(); ++i) {
        Json r = Json::array();
        for (int j = 0; j < m.cols(); ++j) r.push_back(json_complex(m(i, j)));
        rows.push_back(std::move(r));
    }
    return rows;
}

Json to_json(const PhasePoint& p) { return {{"lambda", json_vector(p.xi)}, {"theta", json_vector(p.eta)}}; }

Json to_json(const DualFrame& f) {
    return {{"theta_hat", json_vector(f.theta_hat)}, {"Theta_hat", json_vector(f.Theta_hat)},
            {"y_hat", json_matrix(f.y_hat)},         {"F_hat", json_vector(f.F_hat)},
            {"z_hat", json_vector(f.z_hat)},         {"u_hat", json_vector(f.u_hat)},
            {"lambda_hat", json_vector(f.lambda_hat)}, {"L_hat", json_matrix(f.L_hat)}};
}

Json to_json(const AsymptoticData& a) {
    return {{"theta_plus", json_vector(a.theta_plus)},
            {"theta_minus", json_vector(a.theta_minus)},
            {"lambda_plus", json_vector(a.lambda_plus)},
            {"lambda_minus", json_vector(a.lambda_minus)},
            {"lambda_plus_minor", json_vector(a.lambda_plus_minor)},
            {"lambda_minus_minor", json_vector(a.lambda_minus_minor)},
            {"delta", json_vector(a.delta)},
            {"sum_residual", json_number(a.sum_residual)},
            {"minor_residual", json_number(a.minor_residual)}};
}

Json to_json(const CanonicityReport& r) {
    Json entries = Json::array();
    for (const auto& e : r.entries)
        entries.push_back({{"observable_pair", e.pair},
                           {"value", json_number(e.value)},
                           {"expected", json_number(e.expected)},
                           {"deviation", json_number(e.deviation)}});
    return {{"brackets", entries},
            {"theta_theta", json_number(r.theta_theta)},
            {"lambda_lambda", json_number(r.lambda_lambda)},
            {"lambda_theta", json_number(r.lambda_theta)},
            {"max_deviation", json_number(r.max_deviation)},
            {"pass", r.pass}};
}

Json to_json(const AsymptoticReport& r) {
    Json rho = Json::array();
    for (size_t i = 0; i < r.rho.size(); ++i) rho.push_back({{"t", json_number(r.t[i])}, {"values", json_vector(r.rho[i])}});
    Json verdicts = Json::object();
    for (const auto& [k, v] : r.verdicts) verdicts[k] = v;
    Json out = {{"mu", json_vector(r.mu)}, {"R", json_number(r.R)},         {"m", json_vector(r.m)},
                {"p", json_vector(r.p)},   {"alpha", json_vector(r.alpha)}, {"rho_table", rho},
                {"fitted_orders", json_vector(r.fitted_orders)}};
    if (!r.fitted_orders_without_alpha.empty())
        out["fitted_orders_without_alpha"] = json_vector(r.fitted_orders_without_alpha);
    if (!r.p_two_point.empty()) {
        out["p_two_point"] = json_vector(r.p_two_point);
        out["p_rel_error"] = json_number(r.p_rel_error);
    }
    out["verdicts"] = verdicts;
    out["pass"] = r.pass();
    return out;
}

}  // namespace diejen

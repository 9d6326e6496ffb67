#include "diejen/poisson.hpp"

#include <cmath>
#include <sstream>

namespace diejen {

namespace obs {

Observable position(int a) {
    return {[a](const PhasePoint& p) { return p.xi(a); }, "lambda_" + std::to_string(a + 1)};
}

Observable rapidity(int a) {
    return {[a](const PhasePoint& p) { return p.eta(a); }, "theta_" + std::to_string(a + 1)};
}

Observable energy(const Coupling& g) {
    return {[g](const PhasePoint& p) { return hamiltonian(p, g); }, "H"};
}

Observable dual_angle(int a, const Coupling& g) {
    return {[a, g](const PhasePoint& p) { return dual_frame(p, g).theta_hat(a); }, "theta_hat_" + std::to_string(a + 1)};
}

Observable dual_position(int a, const Coupling& g) {
    return {[a, g](const PhasePoint& p) { return dual_frame(p, g).lambda_hat(a); }, "lambda_hat_" + std::to_string(a + 1)};
}

}  // namespace obs

namespace {

PhasePoint shifted(const PhasePoint& p, int k, double h) {
    PhasePoint q = p;
    const int n = p.n();
    if (k < n)
        q.xi(k) += h;
    else
        q.eta(k - n) += h;
    return q;
}

RVector flatten(const PhasePoint& p) {
    RVector x(2 * p.n());
    x << p.xi, p.eta;
    return x;
}

Eigen::MatrixXd dual_brackets(const PhasePoint& p, const Coupling& g, double step) {
    const Eigen::MatrixXd J = jacobian([&g](const PhasePoint& q) { return duality_map(q, g); }, p, step);
    return J * omega_matrix(p.n()) * J.transpose();
}

}  // namespace

Eigen::MatrixXd omega_matrix(int n) {
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    w.topRightCorner(n, n).setIdentity();
    w.bottomLeftCorner(n, n) = -Eigen::MatrixXd::Identity(n, n);
    return w;
}

void require_stencil(const PhasePoint& p, double step) {
    if (!(step > 0.0) || !std::isfinite(step)) throw Error(ErrorKind::invalid_input, "finite differences: step must be positive");
    require_valid(p);
    const int n = p.n();
    const double margin = 10.0 * step;
    for (int a = 0; a < n; ++a) {
        const double room = a + 1 < n ? p.xi(a) - p.xi(a + 1) : p.xi(a);
        if (!(room > margin)) {
            std::ostringstream os;
            os << "finite differences: stencil of step " << step << " leaves phase space near position " << a + 1;
            throw Error(ErrorKind::stencil, os.str());
        }
    }
}

RVector gradient(const Observable& f, const PhasePoint& p, double step) {
    require_stencil(p, step);
    const int m = 2 * p.n();
    RVector grad(m);
    for (int k = 0; k < m; ++k) grad(k) = (f.eval(shifted(p, k, step)) - f.eval(shifted(p, k, -step))) / (2.0 * step);
    return grad;
}

double poisson_bracket(const Observable& f, const Observable& h, const PhasePoint& p, double step) {
    return gradient(f, p, step).dot(omega_matrix(p.n()) * gradient(h, p, step));
}

Eigen::MatrixXd jacobian(const PhaseMap& f, const PhasePoint& p, double step) {
    require_stencil(p, step);
    const int m = 2 * p.n();
    Eigen::MatrixXd J(m, m);
    for (int k = 0; k < m; ++k) J.col(k) = (flatten(f(shifted(p, k, step))) - flatten(f(shifted(p, k, -step)))) / (2.0 * step);
    return J;
}

CanonicityReport canonicity_suite(const PhasePoint& p, const Coupling& g, double step, double tol) {
    const int n = p.n();
    // rows/cols 0..n-1 are theta_hat, n..2n-1 are lambda_hat
    const Eigen::MatrixXd B = dual_brackets(p, g, step);
    CanonicityReport r;
    auto add = [&](const std::string& pair, double value, double expected, double& family) {
        const double dev = std::abs(value - expected);
        r.entries.push_back({pair, value, expected, dev});
        family = std::max(family, dev);
    };
    auto th = [](int a) { return "theta_hat_" + std::to_string(a + 1); };
    auto la = [](int a) { return "lambda_hat_" + std::to_string(a + 1); };
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) add("{" + th(a) + "," + th(b) + "}", B(a, b), 0.0, r.theta_theta);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) add("{" + la(a) + "," + la(b) + "}", B(n + a, n + b), 0.0, r.lambda_lambda);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) add("{" + la(a) + "," + th(b) + "}", B(n + a, b), a == b ? 1.0 : 0.0, r.lambda_theta);
    r.max_deviation = std::max({r.theta_theta, r.lambda_lambda, r.lambda_theta});
    r.pass = r.max_deviation <= tol;
    return r;
}

double halving_ratio(const PhasePoint& p, const Coupling& g, double h) {
    const Eigen::MatrixXd expected = -omega_matrix(p.n());
    const Eigen::MatrixXd d1 = (dual_brackets(p, g, h) - expected).cwiseAbs();
    const Eigen::MatrixXd d2 = (dual_brackets(p, g, 0.5 * h) - expected).cwiseAbs();
    Eigen::Index i = 0, j = 0;
    d1.maxCoeff(&i, &j);
    if (!(d2(i, j) > 0.0)) throw Error(ErrorKind::degenerate, "halving_ratio: deviation vanishes at the halved step");
    return d1(i, j) / d2(i, j);
}

double antisymplectic_check(const PhasePoint& p, const Coupling& g, double step) {
    const Eigen::MatrixXd J = jacobian([&g](const PhasePoint& q) { return duality_map(q, g); }, p, step);
    const Eigen::MatrixXd W = omega_matrix(p.n());
    return (J.transpose() * W * J + W).cwiseAbs().maxCoeff();
}

double flow_symplectic_check(const PhasePoint& p, const Coupling& g, double s, double step) {
    const Eigen::MatrixXd J = jacobian([&g, s](const PhasePoint& q) { return projection_flow(q, g, s); }, p, step);
    const Eigen::MatrixXd W = omega_matrix(p.n());
    return (J.transpose() * W * J - W).cwiseAbs().maxCoeff();
}

double involution_jacobian_check(const PhasePoint& p, const Coupling& g, double step) {
    const Coupling gh = hat_coupling(g);
    const Eigen::MatrixXd J =
        jacobian([&g, &gh](const PhasePoint& q) { return duality_map(duality_map(q, g), gh); }, p, step);
    return (J - Eigen::MatrixXd::Identity(J.rows(), J.cols())).cwiseAbs().maxCoeff();
}

}  // namespace diejen

#pragma once

#include <functional>
#include <string>
#include <vector>

#include "diejen/dynamics.hpp"

namespace diejen {

inline constexpr double default_fd_step = 1e-5;

struct Observable {
    std::function<double(const PhasePoint&)> eval;
    std::string label;
};

namespace obs {
Observable position(int a);  // lambda_a
Observable rapidity(int a);  // theta_a
Observable energy(const Coupling& g);
Observable dual_angle(int a, const Coupling& g);     // theta_hat_a
Observable dual_position(int a, const Coupling& g);  // lambda_hat_a
}  // namespace obs

// [[0, I], [-I, 0]] in n x n blocks; coordinates are ordered (lambda, theta).
Eigen::MatrixXd omega_matrix(int n);

// Rejects p when any central-difference stencil point could leave the ordered chamber.
void require_stencil(const PhasePoint& p, double step);

RVector gradient(const Observable& f, const PhasePoint& p, double step = default_fd_step);
double poisson_bracket(const Observable& f, const Observable& h, const PhasePoint& p, double step = default_fd_step);

using PhaseMap = std::function<PhasePoint(const PhasePoint&)>;

// Central-difference Jacobian of a map written in (positions, rapidities) coordinates.
Eigen::MatrixXd jacobian(const PhaseMap& f, const PhasePoint& p, double step = default_fd_step);

struct BracketEntry {
    std::string pair;
    double value = 0.0;
    double expected = 0.0;
    double deviation = 0.0;
};

struct CanonicityReport {
    std::vector<BracketEntry> entries;  // n(2n-1) brackets among (lambda_hat, theta_hat)
    double theta_theta = 0.0;           // max |{theta_hat_a, theta_hat_b}|
    double lambda_lambda = 0.0;         // max |{lambda_hat_a, lambda_hat_b}|
    double lambda_theta = 0.0;          // max |{lambda_hat_a, theta_hat_b} - delta_ab|
    double max_deviation = 0.0;
    bool pass = false;
};

CanonicityReport canonicity_suite(const PhasePoint& p, const Coupling& g, double step = default_fd_step,
                                  double tol = 1e-5);

// Ratio of the largest bracket deviation at step h to the deviation of the same bracket
// at h/2; close to 4 for second-order differences once truncation dominates.
double halving_ratio(const PhasePoint& p, const Coupling& g, double h = 1e-2);

// max |J^T Omega J + Omega| for Psi
double antisymplectic_check(const PhasePoint& p, const Coupling& g, double step = default_fd_step);
// max |J^T Omega J - Omega| for the time-s flow
double flow_symplectic_check(const PhasePoint& p, const Coupling& g, double s = 1.0, double step = default_fd_step);
// max |J - Id| for Psi^ghat o Psi^g
double involution_jacobian_check(const PhasePoint& p, const Coupling& g, double step = default_fd_step);

}  // namespace diejen

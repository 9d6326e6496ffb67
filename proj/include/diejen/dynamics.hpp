#pragma once

#include <vector>

#include "diejen/duality.hpp"

namespace diejen {

inline constexpr double flow_exponent_cap = 600.0;

enum class FlowMethod { projection, runge_kutta, both };
enum class RapidityMode { analytic, finite_difference };

struct FlowConfig {
    FlowMethod method = FlowMethod::both;
    double rk_rel_tol = 1e-10;
    double rk_abs_tol = 1e-12;
    std::vector<double> t_values;
    RapidityMode rapidity = RapidityMode::analytic;
};

struct TrajectorySample {
    double t = 0.0;
    PhasePoint point;
    double energy = 0.0;
};

// Xi(y, alpha) = sin^2 alpha coth y / (sin^2 alpha + sinh^2 y)
double xi_aux(double y, double alpha);

struct XiTable {
    RVector u;
    Eigen::MatrixXd dlog_u;  // (a, b) -> d ln u_a / d lambda_b
};

XiTable xi_table(const PhasePoint& p, const Coupling& g);

struct VectorField {
    RVector lambda_dot;
    RVector theta_dot;
};

VectorField vector_field(const PhasePoint& p, const Coupling& g);

std::vector<TrajectorySample> rk_flow(const PhasePoint& p, const Coupling& g, const FlowConfig& cfg);

// Exact propagation by spectral identification. Construction diagonalizes L once; each
// evaluation then costs one graded compound spectrum.
class ProjectionPropagator {
public:
    ProjectionPropagator(const PhasePoint& p, const Coupling& g, RapidityMode mode = RapidityMode::analytic);

    PhasePoint at(double t) const;
    double max_time() const { return flow_exponent_cap / cap_rate_; }  // |t| beyond this saturates
    const DualFrame& frame() const { return frame_; }
    const LaxBundle& bundle() const { return bundle_; }

private:
    struct Positions {
        RVector lambda;
        RVector rate;
    };
    Positions positions(double t) const;

    PhasePoint p0_;
    Coupling g_;
    RapidityMode mode_;
    LaxBundle bundle_;
    DualFrame frame_;
    RVector sinh_rate_;  // sinh(2 Theta_hat)
    double cap_rate_;    // 2 max|Lambda| + 2 sinh(2 max|Theta_hat|)
};

PhasePoint projection_flow(const PhasePoint& p, const Coupling& g, double t,
                           RapidityMode mode = RapidityMode::analytic);

std::vector<TrajectorySample> projection_trajectory(const PhasePoint& p, const Coupling& g, const FlowConfig& cfg);

struct RegularForm {
    CMatrix L_tilde;     // W L_hat W
    RVector Theta_plus;  // diagonal of 2 W Theta_hat W, strictly decreasing
};

CMatrix w_matrix(int n);
RegularForm flow_matrix_regular_form(const LaxBundle& b, const DualFrame& f);

}  // namespace diejen

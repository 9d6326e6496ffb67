#include "diejen/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <boost/numeric/odeint.hpp>

namespace diejen {

namespace {

constexpr double fd_time_step = 1e-5;
constexpr double collision_dominance = 1.0 - 1e-8;

using State = std::vector<double>;

void require_flow_inputs(const PhasePoint& p, const Coupling& g) {
    require_M_tilde(g);
    require_valid(p);
    require_representable(p);
}

}  // namespace

double xi_aux(double y, double alpha) {
    const double s2 = std::sin(alpha) * std::sin(alpha);
    const double sh = std::sinh(y);
    return s2 / std::tanh(y) / (s2 + sh * sh);
}

XiTable xi_table(const PhasePoint& p, const Coupling& g) {
    const int n = p.n();
    const RVector& l = p.xi;
    XiTable x{RVector(n), Eigen::MatrixXd(n, n)};
    for (int a = 0; a < n; ++a) {
        x.u(a) = u_product(l, g.mu, g.nu, a);
        double diag = -2.0 * xi_aux(2.0 * l(a), g.nu);
        for (int d = 0; d < n; ++d) {
            if (d == a) continue;
            diag -= xi_aux(l(a) - l(d), g.mu) + xi_aux(l(a) + l(d), g.mu);
            x.dlog_u(a, d) = -xi_aux(l(d) - l(a), g.mu) - xi_aux(l(d) + l(a), g.mu);
        }
        x.dlog_u(a, a) = diag;
    }
    return x;
}

VectorField vector_field(const PhasePoint& p, const Coupling& g) {
    require_flow_inputs(p, g);
    const int n = p.n();
    const XiTable x = xi_table(p, g);
    VectorField v{RVector(n), RVector::Zero(n)};
    for (int a = 0; a < n; ++a) v.lambda_dot(a) = std::sinh(p.eta(a)) * x.u(a);
    for (int c = 0; c < n; ++c) {
        const double w = std::cosh(p.eta(c)) * x.u(c);
        for (int a = 0; a < n; ++a) v.theta_dot(a) -= w * x.dlog_u(c, a);
    }
    return v;
}

std::vector<TrajectorySample> rk_flow(const PhasePoint& p, const Coupling& g, const FlowConfig& cfg) {
    require_flow_inputs(p, g);
    if (!(cfg.rk_rel_tol > 0.0) || !(cfg.rk_abs_tol > 0.0))
        throw Error(ErrorKind::invalid_input, "rk_flow: tolerances must be positive");
    const int n = p.n();
    auto rhs = [&](const State& x, State& dx, double) {
        PhasePoint q{Eigen::Map<const RVector>(x.data(), n), Eigen::Map<const RVector>(x.data() + n, n)};
        const VectorField v = vector_field(q, g);
        for (int a = 0; a < n; ++a) {
            dx[static_cast<size_t>(a)] = v.lambda_dot(a);
            dx[static_cast<size_t>(n + a)] = v.theta_dot(a);
        }
    };

    std::vector<TrajectorySample> out(cfg.t_values.size());
    State x0(static_cast<size_t>(2 * n));
    for (int a = 0; a < n; ++a) {
        x0[static_cast<size_t>(a)] = p.xi(a);
        x0[static_cast<size_t>(n + a)] = p.eta(a);
    }

    // forward and backward legs, each integrated outward from t = 0
    for (int dir : {+1, -1}) {
        std::vector<size_t> idx;
        for (size_t i = 0; i < cfg.t_values.size(); ++i) {
            const double t = cfg.t_values[i];
            if (!std::isfinite(t)) throw Error(ErrorKind::invalid_input, "rk_flow: non-finite time");
            if ((dir > 0 && t >= 0.0) || (dir < 0 && t < 0.0)) idx.push_back(i);
        }
        if (idx.empty()) continue;
        std::stable_sort(idx.begin(), idx.end(),
                         [&](size_t a, size_t b) { return dir * cfg.t_values[a] < dir * cfg.t_values[b]; });
        std::vector<double> times{0.0};
        for (size_t i : idx) times.push_back(cfg.t_values[i]);

        std::vector<State> states;
        State x = x0;
        auto stepper = boost::numeric::odeint::make_controlled<boost::numeric::odeint::runge_kutta_dopri5<State>>(
            cfg.rk_abs_tol, cfg.rk_rel_tol);
        try {
            boost::numeric::odeint::integrate_times(
                stepper, rhs, x, times.begin(), times.end(), dir * 1e-3,
                [&](const State& s, double) { states.push_back(s); },
                boost::numeric::odeint::max_step_checker(1000000));
        } catch (const Error&) {
            throw;
        } catch (const std::exception& e) {
            throw Error(ErrorKind::convergence, std::string("rk_flow: step-size control failed: ") + e.what());
        }
        if (states.size() != times.size()) throw Error(ErrorKind::convergence, "rk_flow: integration stopped early");
        for (size_t k = 0; k < idx.size(); ++k) {
            const State& s = states[k + 1];
            TrajectorySample ts;
            ts.t = cfg.t_values[idx[k]];
            ts.point = {Eigen::Map<const RVector>(s.data(), n), Eigen::Map<const RVector>(s.data() + n, n)};
            if (ts.t == 0.0) ts.point = p;
            ts.energy = hamiltonian(ts.point, g);
            out[idx[k]] = ts;
        }
    }
    return out;
}

ProjectionPropagator::ProjectionPropagator(const PhasePoint& p, const Coupling& g, RapidityMode mode)
    : p0_(p), g_(g), mode_(mode) {
    require_flow_inputs(p, g);
    bundle_ = lax_matrix(p, g);
    frame_ = dual_frame(bundle_, g);
    sinh_rate_ = (2.0 * frame_.Theta_hat.array()).sinh().matrix();
    cap_rate_ = 2.0 * bundle_.Lambda.cwiseAbs().maxCoeff() + 2.0 * std::sinh(2.0 * frame_.theta_hat.cwiseAbs().maxCoeff());
}

ProjectionPropagator::Positions ProjectionPropagator::positions(double t) const {
    if (!std::isfinite(t)) throw Error(ErrorKind::invalid_input, "projection_flow: non-finite time");
    if (std::abs(t) * cap_rate_ > flow_exponent_cap) {
        std::ostringstream os;
        os << "projection_flow: flow exponent " << std::abs(t) * cap_rate_ << " beyond cap 600 (saturation)";
        throw Error(ErrorKind::overflow, os.str());
    }
    const int n = p0_.n();
    const GradedSpectrum gs = graded_gram_spectrum(bundle_.Lambda, frame_.y_hat, t * sinh_rate_, sinh_rate_, n);
    for (int k = 0; k < n; ++k)
        if (!(gs.dominance(k) < collision_dominance))
            throw Error(ErrorKind::degenerate, "projection_flow: eigenvalue collision along the flow");
    return {0.5 * gs.log_eigenvalues, 0.5 * gs.log_rates};
}

PhasePoint ProjectionPropagator::at(double t) const {
    if (t == 0.0) return p0_;
    const Positions pos = positions(t);
    PhasePoint q{pos.lambda, RVector(p0_.n())};
    if (auto v = validate(PhasePoint{q.xi, RVector::Zero(q.n())}))
        throw Error(ErrorKind::degenerate, "projection_flow: eigenvalue collision along the flow (" + v->message + ")");
    RVector rate = pos.rate;
    if (mode_ == RapidityMode::finite_difference) {
        const RVector up = positions(t + fd_time_step).lambda, dn = positions(t - fd_time_step).lambda;
        rate = (up - dn) / (2.0 * fd_time_step);
    }
    for (int a = 0; a < q.n(); ++a) q.eta(a) = std::asinh(rate(a) / u_product(q.xi, g_.mu, g_.nu, a));
    return q;
}

PhasePoint projection_flow(const PhasePoint& p, const Coupling& g, double t, RapidityMode mode) {
    return ProjectionPropagator(p, g, mode).at(t);
}

std::vector<TrajectorySample> projection_trajectory(const PhasePoint& p, const Coupling& g, const FlowConfig& cfg) {
    const ProjectionPropagator prop(p, g, cfg.rapidity);
    std::vector<TrajectorySample> out;
    out.reserve(cfg.t_values.size());
    for (double t : cfg.t_values) {
        TrajectorySample s{t, prop.at(t), 0.0};
        s.energy = hamiltonian(s.point, g);
        out.push_back(std::move(s));
    }
    return out;
}

CMatrix w_matrix(int n) {
    CMatrix w = CMatrix::Zero(2 * n, 2 * n);
    w.topLeftCorner(n, n).setIdentity();
    w.bottomRightCorner(n, n) = reversal_matrix(n);
    return w;
}

RegularForm flow_matrix_regular_form(const LaxBundle& b, const DualFrame& f) {
    const int n = b.n();
    const CMatrix W = w_matrix(n);
    RegularForm r;
    r.L_tilde = W * f.L_hat * W;
    r.Theta_plus.resize(2 * n);
    for (int a = 0; a < n; ++a) {
        r.Theta_plus(a) = 2.0 * f.theta_hat(a);
        r.Theta_plus(2 * n - 1 - a) = -2.0 * f.theta_hat(a);
    }
    for (int k = 0; k + 1 < 2 * n; ++k)
        if (!(r.Theta_plus(k) > r.Theta_plus(k + 1)))
            throw Error(ErrorKind::degenerate, "flow_matrix_regular_form: Theta_plus not strictly decreasing");
    return r;
}

}  // namespace diejen

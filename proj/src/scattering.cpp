#include "diejen/scattering.hpp"

#include <cmath>
#include <limits>

namespace diejen {

namespace {

double log_term(double x, double s) {
    const double sh = std::sinh(x);
    return std::log1p(s * s / (sh * sh));
}

void require_ordered_positive(const RVector& xi, const char* who) {
    const int n = static_cast<int>(xi.size());
    for (int c = 0; c < n; ++c) {
        if (!(xi(c) > 0.0) || (c + 1 < n && !(xi(c) > xi(c + 1))))
            throw Error(ErrorKind::degenerate, std::string(who) + ": arguments must be strictly descending positive");
    }
}

RVector closed_lambda(const RVector& lambda_hat, const RVector& delta, int sign) {
    return 0.5 * sign * lambda_hat + 0.5 * delta;
}

RVector half_log_ratios(const CMatrix& m, int count) {
    const auto pi = leading_principal_minors(m);
    RVector out(count);
    cplx prev = 1.0;
    for (int a = 0; a < count; ++a) {
        const cplx cur = pi[static_cast<size_t>(a)];
        if (!(cur.real() > 0.0) || std::abs(cur.imag()) > 1e-8 * std::abs(cur))
            throw Error(ErrorKind::degenerate, "asymptotic_data: non-positive principal minor");
        out(a) = 0.5 * std::log((cur / prev).real());
        prev = cur;
    }
    return out;
}

}  // namespace

double delta_shift(const RVector& xi, const Coupling& g, int c) {
    require_ordered_positive(xi, "delta_shift");
    const int n = static_cast<int>(xi.size());
    if (c < 0 || c >= n) throw Error(ErrorKind::invalid_input, "delta_shift: index out of range");
    const double sm = std::sin(g.mu), sn = std::sin(g.nu);
    double d = 0.5 * log_term(2.0 * xi(c), sn);
    for (int e = 0; e < n; ++e) {
        if (e == c) continue;
        d += (e < c ? -0.5 : 0.5) * log_term(xi(c) - xi(e), sm);
        d += 0.5 * log_term(xi(c) + xi(e), sm);
    }
    return d;
}

RVector delta_shift(const RVector& xi, const Coupling& g) {
    RVector d(xi.size());
    for (int c = 0; c < xi.size(); ++c) d(c) = delta_shift(xi, g, c);
    return d;
}

AsymptoticData asymptotic_data(const PhasePoint& p, const Coupling& g) {
    const LaxBundle b = lax_matrix(p, g);
    const DualFrame f = dual_frame(b, g);
    const RegularForm rf = flow_matrix_regular_form(b, f);
    const int n = p.n();
    AsymptoticData a;
    a.theta_plus = 2.0 * f.theta_hat;
    a.theta_minus = -a.theta_plus;
    a.delta = delta_shift(f.theta_hat, g);
    a.lambda_plus = closed_lambda(f.lambda_hat, a.delta, +1);
    a.lambda_minus = closed_lambda(f.lambda_hat, a.delta, -1);
    a.lambda_plus_minor = half_log_ratios(rf.L_tilde, n);
    const CMatrix R = reversal_matrix(2 * n);
    a.lambda_minus_minor = half_log_ratios(R * rf.L_tilde * R, n);
    a.sum_residual = (a.lambda_plus_minor + a.lambda_minus_minor - a.delta).cwiseAbs().maxCoeff();
    a.minor_residual = std::max((a.lambda_plus_minor - a.lambda_plus).cwiseAbs().maxCoeff(),
                                (a.lambda_minus_minor - a.lambda_minus).cwiseAbs().maxCoeff());
    return a;
}

AsymptoticPoint upsilon(const PhasePoint& q, const Coupling& g, int sign) {
    return {0.5 * sign * q.eta + 0.5 * delta_shift(q.xi, g), 2.0 * sign * q.xi, sign};
}

PhasePoint upsilon_inverse(const AsymptoticPoint& z, const Coupling& g) {
    const RVector a = 0.5 * z.sign * z.eta;
    return {a, z.sign * (2.0 * z.xi - delta_shift(a, g))};
}

AsymptoticPoint wave_map(const PhasePoint& p, const Coupling& g, int sign) {
    const AsymptoticData a = asymptotic_data(p, g);
    if (sign > 0) return {a.lambda_plus, a.theta_plus, +1};
    return {a.lambda_minus, a.theta_minus, -1};
}

AsymptoticPoint wave_map_factorized(const PhasePoint& p, const Coupling& g, int sign) {
    return upsilon(duality_map(p, g), g, sign > 0 ? +1 : -1);
}

AsymptoticPoint scattering_map(const AsymptoticPoint& zeta, const Coupling& g) {
    if (zeta.sign != -1) throw Error(ErrorKind::invalid_input, "scattering_map: input must lie in P-");
    if (auto v = validate(zeta)) throw Error(ErrorKind::invalid_input, "scattering_map: " + *v);
    return {-zeta.xi + delta_shift(-0.5 * zeta.eta, g), -zeta.eta, +1};
}

AsymptoticPoint scattering_map_composite(const AsymptoticPoint& zeta, const Coupling& g) {
    if (auto v = validate(zeta)) throw Error(ErrorKind::invalid_input, "scattering_map: " + *v);
    return upsilon(upsilon_inverse(zeta, g), g, +1);
}

AsymptoticPoint inverse_scattering_map(const AsymptoticPoint& zeta, const Coupling& g) {
    if (zeta.sign != +1) throw Error(ErrorKind::invalid_input, "inverse_scattering_map: input must lie in P+");
    if (auto v = validate(zeta)) throw Error(ErrorKind::invalid_input, "inverse_scattering_map: " + *v);
    return {-zeta.xi + delta_shift(0.5 * zeta.eta, g), -zeta.eta, -1};
}

DecayFit fit_exponential_decay(const std::vector<double>& t, const std::vector<double>& r, double clamp) {
    if (t.size() != r.size()) throw Error(ErrorKind::invalid_input, "fit_exponential_decay: size mismatch");
    std::vector<double> x, y;
    for (size_t i = t.size() / 2; i < t.size(); ++i) {
        const double v = std::abs(r[i]);
        if (std::isfinite(v) && v >= clamp) {
            x.push_back(std::abs(t[i]));
            y.push_back(std::log(v));
        }
    }
    DecayFit fit;
    fit.used = static_cast<int>(x.size());
    if (x.empty()) {
        fit.rate = std::numeric_limits<double>::infinity();
        return fit;
    }
    if (x.size() < 3) throw Error(ErrorKind::fit, "decay fit: fewer than 3 usable grid points above the clamp");
    const double m = static_cast<double>(x.size());
    double sx = 0, sy = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / m, my = sy / m;
    double sxx = 0, sxy = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    const double slope = sxy / sxx;
    double ss = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        const double e = y[i] - (my + slope * (x[i] - mx));
        ss += e * e;
    }
    fit.rate = -slope;
    fit.rms = std::sqrt(ss / m);
    return fit;
}

namespace {

// A single particle may reach the rounding floor inside the window; its decay is then
// faster than the grid resolves and is reported as infinite.
DecayFit particle_fit(const std::vector<double>& t, const std::vector<double>& r) {
    try {
        return fit_exponential_decay(t, r);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::fit) throw;
        DecayFit f;
        f.rate = std::numeric_limits<double>::infinity();
        return f;
    }
}

double minimal_gap(const RVector& theta_plus) {
    const int n = static_cast<int>(theta_plus.size());
    RVector diag(2 * n);
    for (int a = 0; a < n; ++a) {
        diag(a) = 2.0 * std::sinh(theta_plus(a));
        diag(2 * n - 1 - a) = -diag(a);
    }
    double gap = std::numeric_limits<double>::infinity();
    for (int k = 0; k + 1 < 2 * n; ++k) gap = std::min(gap, diag(k) - diag(k + 1));
    return gap;
}

}  // namespace

std::vector<double> default_trace_grid(const PhasePoint& p, const Coupling& g) {
    const ProjectionPropagator prop(p, g);
    const double R = minimal_gap(2.0 * prop.frame().theta_hat);
    const double T = std::min(24.0 / R, 0.9 * prop.max_time());
    std::vector<double> grid;
    for (int k = 1; k <= 12; ++k) grid.push_back(k * T / 12.0);
    return grid;
}

ResidualTrace residual_trace(const PhasePoint& p, const Coupling& g, const std::vector<double>& t_grid) {
    if (t_grid.size() < 2) throw Error(ErrorKind::invalid_input, "residual_trace: grid needs at least two times");
    const double sign = t_grid.front() < 0.0 ? -1.0 : 1.0;
    for (size_t i = 0; i < t_grid.size(); ++i) {
        if (!(sign * t_grid[i] > 0.0) || (i > 0 && !(sign * t_grid[i] > sign * t_grid[i - 1])))
            throw Error(ErrorKind::invalid_input, "residual_trace: grid must be nonzero, single-signed and increasing in |t|");
    }
    const AsymptoticData ad = asymptotic_data(p, g);
    const ProjectionPropagator prop(p, g);
    const int n = p.n(), m = static_cast<int>(t_grid.size());
    const RVector& th = sign > 0 ? ad.theta_plus : ad.theta_minus;
    const RVector& la = sign > 0 ? ad.lambda_plus : ad.lambda_minus;

    ResidualTrace tr;
    tr.t = t_grid;
    tr.E.resize(m, n);
    tr.G.resize(m, n);
    for (int i = 0; i < m; ++i) {
        const double t = t_grid[static_cast<size_t>(i)];
        const PhasePoint q = prop.at(t);
        for (int a = 0; a < n; ++a) {
            tr.E(i, a) = q.xi(a) - t * std::sinh(th(a)) - la(a);
            tr.G(i, a) = q.eta(a) - th(a);
        }
    }
    std::vector<double> esup(static_cast<size_t>(m)), gsup(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) {
        esup[static_cast<size_t>(i)] = tr.E.row(i).cwiseAbs().maxCoeff();
        gsup[static_cast<size_t>(i)] = tr.G.row(i).cwiseAbs().maxCoeff();
    }
    for (int a = 0; a < n; ++a) {
        std::vector<double> e(static_cast<size_t>(m)), gg(static_cast<size_t>(m));
        for (int i = 0; i < m; ++i) {
            e[static_cast<size_t>(i)] = tr.E(i, a);
            gg[static_cast<size_t>(i)] = tr.G(i, a);
        }
        tr.E_fit.push_back(particle_fit(t_grid, e));
        tr.G_fit.push_back(particle_fit(t_grid, gg));
    }
    tr.E_sup_fit = fit_exponential_decay(t_grid, esup);
    tr.G_sup_fit = fit_exponential_decay(t_grid, gsup);

    tr.min_gap = minimal_gap(ad.theta_plus);

    int onset = m - 1;
    for (int i = 0; i < m; ++i)
        if (esup[static_cast<size_t>(i)] < 0.1 * esup[0]) {
            onset = i;
            break;
        }
    tr.onset = std::abs(t_grid[static_cast<size_t>(onset)]);
    tr.monotone_after_onset = true;
    for (int i = onset + 1; i < m; ++i) {
        const double cur = esup[static_cast<size_t>(i)], prev = esup[static_cast<size_t>(i - 1)];
        if (prev >= 1e-14 && cur > prev) tr.monotone_after_onset = false;
    }
    return tr;
}

}  // namespace diejen

#include "diejen/spectral_asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace diejen {

namespace {

constexpr double ordering_gap = 1e-8;
constexpr double matching_gap = 1e-6;
constexpr double linear_floor = 1e-11;

struct CompoundData {
    std::vector<cplx> rho;
    double worst_dominance = 0.0;  // largest |second| / |first| over compound orders
};

using LReal = long double;
using LCplx = std::complex<LReal>;
using LMatrix = Eigen::Matrix<LCplx, Eigen::Dynamic, Eigen::Dynamic>;

// Dominant eigenvalue of C_k(M) diag(e^{t (sum_J d - sum_{1..k} d)}) for every k. The
// weights never exceed one in modulus, so nothing overflows at large t; extended precision
// keeps the remainders resolvable down to about 1e-18.
CompoundData compound_remainders(const FlowSpec& s, double t) {
    const int N = s.N();
    const LMatrix M = s.M.cast<LCplx>();
    const Eigen::Matrix<LCplx, Eigen::Dynamic, 1> d = s.d.cast<LCplx>();
    CompoundData out;
    out.rho.resize(static_cast<size_t>(N));
    LCplx c_prev = 1.0L, top_sum = 0.0L;
    for (int k = 1; k <= N; ++k) {
        top_sum += d(k - 1);
        const auto sets = combinations(N, k);
        const int m = static_cast<int>(sets.size());
        auto sub = [&](const std::vector<int>& rows, const std::vector<int>& cols) {
            LMatrix a(k, k);
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j) a(i, j) = M(rows[static_cast<size_t>(i)], cols[static_cast<size_t>(j)]);
            return a.determinant();
        };
        LMatrix B(m, m);
        for (int J = 0; J < m; ++J) {
            LCplx sum = 0.0L;
            for (int i : sets[static_cast<size_t>(J)]) sum += d(i);
            const LCplx w = std::exp(static_cast<LReal>(t) * (sum - top_sum));
            for (int a = 0; a < m; ++a) B(a, J) = sub(sets[static_cast<size_t>(a)], sets[static_cast<size_t>(J)]) * w;
        }
        LCplx lead = B(0, 0);
        if (m > 1) {
            Eigen::ComplexEigenSolver<LMatrix> es(B, false);
            if (es.info() != Eigen::Success) throw Error(ErrorKind::convergence, "flow eigenvalues: compound eigensolve failed");
            std::vector<LCplx> ev(es.eigenvalues().data(), es.eigenvalues().data() + m);
            std::sort(ev.begin(), ev.end(), [](const LCplx& x, const LCplx& y) { return std::abs(x) > std::abs(y); });
            lead = ev[0];
            out.worst_dominance = std::max(out.worst_dominance, static_cast<double>(std::abs(ev[1]) / std::abs(lead)));
        }
        const LMatrix lead_block = M.topLeftCorner(k, k);
        const LCplx c = lead / lead_block.determinant();
        const LCplx r = c / c_prev - 1.0L;
        out.rho[static_cast<size_t>(k - 1)] = cplx(static_cast<double>(r.real()), static_cast<double>(r.imag()));
        c_prev = c;
    }
    return out;
}

void require_kind(const FlowSpec& s, FlowKind k, const char* who) {
    validate_spec(s);
    if (s.kind != k) throw Error(ErrorKind::invalid_input, std::string(who) + ": wrong flow kind");
}

struct LineFit {
    double slope = 0.0;
    int used = 0;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    const double m = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        mx += x[i] / m;
        my += y[i] / m;
    }
    double sxx = 0, sxy = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    return {sxy / sxx, static_cast<int>(x.size())};
}

// Decay order of |r| against t (log_x = false) or against ln t (log_x = true); points below
// the floor are dropped, and a fully floored series decays at an infinite rate.
double decay_order(const std::vector<double>& t, const std::vector<double>& r, double floor, bool log_x) {
    std::vector<double> x, y;
    for (size_t i = 0; i < t.size(); ++i)
        if (std::isfinite(r[i]) && r[i] >= floor) {
            x.push_back(log_x ? std::log(t[i]) : t[i]);
            y.push_back(std::log(r[i]));
        }
    if (x.empty()) return std::numeric_limits<double>::infinity();
    const size_t need = log_x ? 3 : 4;
    if (x.size() < need) {
        std::ostringstream os;
        os << "decay order: only " << x.size() << " usable grid points above the floor";
        throw Error(ErrorKind::fit, os.str());
    }
    return -fit_line(x, y).slope;
}

}  // namespace

void validate_spec(const FlowSpec& s) {
    const int N = s.N();
    if (N < 1 || s.M.rows() != N || s.M.cols() != N) throw Error(ErrorKind::invalid_input, "flow spec: M must be N x N with N = len(d)");
    if (!s.M.allFinite() || !s.d.allFinite()) throw Error(ErrorKind::invalid_input, "flow spec: non-finite entries");
    for (int j = 0; j + 1 < N; ++j)
        if (!(s.d(j).real() - s.d(j + 1).real() > ordering_gap))
            throw Error(ErrorKind::invalid_input, "flow spec: Re d must be strictly decreasing");
    if (s.kind == FlowKind::exponential) {
        const auto pi = leading_principal_minors(s.M);
        const double scale = std::max(1.0, max_abs(s.M));
        for (int j = 0; j < N; ++j)
            if (!(std::abs(pi[static_cast<size_t>(j)]) > 1e-10 * std::pow(scale, j + 1)))
                throw Error(ErrorKind::degenerate, "flow spec: vanishing leading principal minor " + std::to_string(j + 1));
    }
}

std::vector<cplx> m_coeffs(const CMatrix& M) {
    const auto pi = leading_principal_minors(M);
    std::vector<cplx> m(pi.size());
    cplx prev = 1.0;
    for (size_t j = 0; j < pi.size(); ++j) {
        if (pi[j] == 0.0) throw Error(ErrorKind::degenerate, "m_coeffs: zero principal minor");
        m[j] = pi[j] / prev;
        prev = pi[j];
    }
    return m;
}

std::vector<cplx> p_coeffs(const CMatrix& M) {
    const int N = static_cast<int>(M.rows());
    const auto pi = leading_principal_minors(M);
    const auto m = m_coeffs(M);
    std::vector<cplx> p(static_cast<size_t>(std::max(N - 1, 0)));
    for (int j = 1; j < N; ++j) {
        // principal minor on {1..j-1, j+1}
        std::vector<int> idx;
        for (int i = 0; i + 1 < j; ++i) idx.push_back(i);
        idx.push_back(j);
        p[static_cast<size_t>(j - 1)] =
            minor(M, idx, idx) / pi[static_cast<size_t>(j - 1)] - m[static_cast<size_t>(j)] / m[static_cast<size_t>(j - 1)];
    }
    return p;
}

std::vector<cplx> alpha_coeffs(const CMatrix& M, const CVector& d) {
    const int N = static_cast<int>(d.size());
    if (M.rows() != N || M.cols() != N) throw Error(ErrorKind::invalid_input, "alpha_coeffs: size mismatch");
    std::vector<cplx> a(static_cast<size_t>(N), 0.0);
    for (int j = 0; j < N; ++j)
        for (int k = 0; k < N; ++k) {
            if (k == j) continue;
            if (d(j) == d(k)) throw Error(ErrorKind::degenerate, "alpha_coeffs: repeated diagonal values");
            a[static_cast<size_t>(j)] += M(j, k) * M(k, j) / (d(j) - d(k));
        }
    return a;
}

std::vector<cplx> relative_remainders(const FlowSpec& s, double t) {
    require_kind(s, FlowKind::exponential, "relative_remainders");
    const CompoundData cd = compound_remainders(s, t);
    if (!(cd.worst_dominance < 1.0 - ordering_gap)) {
        std::ostringstream os;
        os << "flow eigenvalues: modulus ordering ambiguous at t = " << t << " (t too small)";
        throw Error(ErrorKind::degenerate, os.str());
    }
    return cd.rho;
}

std::vector<cplx> flow_eigenvalues(const FlowSpec& s, double t) {
    validate_spec(s);
    const int N = s.N();
    if (s.kind == FlowKind::linear) {
        const CMatrix A = s.M + t * CMatrix(s.d.asDiagonal());
        return general_eig(A).eigenvalues;
    }
    for (int j = 0; j < N; ++j)
        if (std::abs(t * s.d(j).real()) > 600.0) throw Error(ErrorKind::overflow, "flow eigenvalues: exponent beyond cap 600");
    const auto rho = relative_remainders(s, t);
    const auto m = m_coeffs(s.M);
    std::vector<cplx> ev(static_cast<size_t>(N));
    for (int j = 0; j < N; ++j) ev[static_cast<size_t>(j)] = (1.0 + rho[static_cast<size_t>(j)]) * m[static_cast<size_t>(j)] * std::exp(t * s.d(j));
    return ev;
}

std::vector<cplx> flow_eigenvalues_direct(const FlowSpec& s, double t) {
    validate_spec(s);
    const int N = s.N();
    if (s.kind == FlowKind::linear) return flow_eigenvalues(s, t);
    if (std::abs(t) * (s.d(0).real() - s.d(N - 1).real()) > 600.0)
        throw Error(ErrorKind::overflow, "flow eigenvalues: centered exponent beyond cap 600");
    const cplx dbar = s.d.mean();
    CVector w(N);
    for (int j = 0; j < N; ++j) w(j) = std::exp(t * (s.d(j) - dbar));
    auto ev = general_eig(s.M * w.asDiagonal()).eigenvalues;
    for (size_t j = 1; j < ev.size(); ++j)
        if (!(std::abs(ev[j]) < (1.0 - ordering_gap) * std::abs(ev[j - 1])))
            throw Error(ErrorKind::degenerate, "flow eigenvalues: modulus ordering ambiguous (t too small)");
    const cplx back = std::exp(t * dbar);
    for (auto& e : ev) e *= back;
    return ev;
}

bool AsymptoticReport::pass() const {
    return std::all_of(verdicts.begin(), verdicts.end(), [](const auto& kv) { return kv.second; });
}

AsymptoticReport verify_theorem_a1(const FlowSpec& s, const std::vector<double>& t_grid, const std::vector<double>& p_times) {
    require_kind(s, FlowKind::exponential, "verify_theorem_a1");
    const int N = s.N();
    if (N < 2) throw Error(ErrorKind::invalid_input, "verify_theorem_a1: N must be at least 2");
    if (p_times.size() != 2) throw Error(ErrorKind::invalid_input, "verify_theorem_a1: two-point solve needs two times");
    AsymptoticReport r;
    for (int j = 0; j + 1 < N; ++j) r.mu.push_back(s.d(j).real() - s.d(j + 1).real());
    r.R = *std::min_element(r.mu.begin(), r.mu.end());
    r.m = m_coeffs(s.M);
    r.p = p_coeffs(s.M);
    r.t = t_grid;

    auto eps = [&](int j, double t) -> cplx {  // e^{t (d_{j+1} - d_j)}, 0-based j in [0, N-2]
        return std::exp(t * (s.d(j + 1) - s.d(j)));
    };
    auto p_at = [&](int j) -> cplx { return j >= 0 && j < N - 1 ? r.p[static_cast<size_t>(j)] : cplx(0.0); };
    auto first_order = [&](int j, double t) -> cplx {
        cplx v = 0.0;
        if (j < N - 1) v += p_at(j) * eps(j, t);
        if (j > 0) v -= p_at(j - 1) * eps(j - 1, t);
        return v;
    };

    bool ordered = true;
    for (double t : t_grid) {
        const CompoundData cd = compound_remainders(s, t);
        if (!(cd.worst_dominance < 1.0 - ordering_gap)) {
            std::ostringstream os;
            os << "verify_theorem_a1: modulus ordering ambiguous at t = " << t << " (t too small)";
            throw Error(ErrorKind::degenerate, os.str());
        }
        r.rho.push_back(cd.rho);
    }
    for (double t : {8.0, 10.0, 12.0}) {
        const CompoundData cd = compound_remainders(s, t);
        ordered = ordered && cd.worst_dominance < 1.0 - ordering_gap;
    }
    r.verdicts["modulus_ordering"] = ordered;

    // two-term bound shape of |rho_j|
    bool bounded = true;
    for (int j = 0; j < N; ++j) {
        auto bound = [&](double t) {
            double b = 0.0;
            if (j < N - 1) b += std::exp(-t * r.mu[static_cast<size_t>(j)]);
            if (j > 0) b += std::exp(-t * r.mu[static_cast<size_t>(j - 1)]);
            return b;
        };
        const double cap = 2.0 * (std::abs(p_at(j)) + std::abs(p_at(j - 1)));
        double first = -1.0;
        for (size_t i = 0; i < t_grid.size(); ++i) {
            const double v = std::abs(r.rho[i][static_cast<size_t>(j)]);
            if (v < remainder_floor) continue;
            const double ratio = v / bound(t_grid[i]);
            if (first < 0.0) first = ratio;
            if (ratio > std::max(1.2 * first, cap)) bounded = false;
        }
    }
    r.verdicts["two_term_bound"] = bounded;

    // second-order remainder after subtracting p_j eps_j - p_{j-1} eps_{j-1}
    bool second = true;
    for (int j = 0; j < N; ++j) {
        std::vector<double> mag(t_grid.size());
        for (size_t i = 0; i < t_grid.size(); ++i)
            mag[i] = std::abs(r.rho[i][static_cast<size_t>(j)] - first_order(j, t_grid[i]));
        const double order = decay_order(t_grid, mag, remainder_floor, false);
        r.fitted_orders.push_back(order);
        second = second && order >= 1.8 * r.R;
    }
    r.verdicts["second_order_decay"] = second;

    // p_j from the remainders at two large times
    std::vector<std::vector<cplx>> rho_p;
    for (double t : p_times) rho_p.push_back(relative_remainders(s, t));
    r.p_two_point.assign(static_cast<size_t>(N - 1), 0.0);
    double worst = 0.0;
    auto record = [&](int j, cplx est) {
        const cplx exact = p_at(j);
        const double err = std::abs(est - exact) / std::max(std::abs(exact), 1e-12);
        worst = std::max(worst, err);
    };
    for (int j = 0; j < N; ++j) {
        const int unknowns = (j < N - 1) + (j > 0);
        Eigen::MatrixXcd A(2, unknowns);
        Eigen::VectorXcd b(2);
        for (int row = 0; row < 2; ++row) {
            const double t = p_times[static_cast<size_t>(row)];
            int col = 0;
            if (j < N - 1) A(row, col++) = eps(j, t);
            if (j > 0) A(row, col++) = -eps(j - 1, t);
            b(row) = rho_p[static_cast<size_t>(row)][static_cast<size_t>(j)];
        }
        const Eigen::VectorXcd x = A.colPivHouseholderQr().solve(b);
        int col = 0;
        if (j < N - 1) {
            r.p_two_point[static_cast<size_t>(j)] = x(col);
            record(j, x(col++));
        }
        if (j > 0) record(j - 1, x(col));
    }
    r.p_rel_error = worst;
    r.verdicts["p_two_point"] = worst <= 1e-3;
    return r;
}

AsymptoticReport verify_theorem_a2(const FlowSpec& s, const std::vector<double>& t_grid) {
    require_kind(s, FlowKind::linear, "verify_theorem_a2");
    const int N = s.N();
    if (t_grid.size() < 3) throw Error(ErrorKind::invalid_input, "verify_theorem_a2: grid needs at least three times");
    AsymptoticReport r;
    for (int j = 0; j + 1 < N; ++j) r.mu.push_back(s.d(j).real() - s.d(j + 1).real());
    r.R = r.mu.empty() ? 0.0 : *std::min_element(r.mu.begin(), r.mu.end());
    r.alpha = alpha_coeffs(s.M, s.d);
    r.t = t_grid;

    std::vector<std::vector<double>> with(static_cast<size_t>(N)), without(static_cast<size_t>(N));
    for (double t : t_grid) {
        if (!(t > 0.0)) throw Error(ErrorKind::invalid_input, "verify_theorem_a2: times must be positive");
        const auto ev = flow_eigenvalues(s, t);
        std::vector<cplx> res(static_cast<size_t>(N));
        std::vector<bool> taken(ev.size(), false);
        for (int j = 0; j < N; ++j) {
            const cplx base = s.M(j, j) + t * s.d(j);
            const cplx pred = base + r.alpha[static_cast<size_t>(j)] / t;
            size_t best = 0;
            double d1 = std::numeric_limits<double>::infinity(), d2 = d1;
            for (size_t k = 0; k < ev.size(); ++k) {
                const double dist = std::abs(ev[k] - pred);
                if (dist < d1) {
                    d2 = d1;
                    d1 = dist;
                    best = k;
                } else if (dist < d2) {
                    d2 = dist;
                }
            }
            if (N > 1 && !(d2 - d1 > matching_gap * std::max(1.0, std::abs(pred))))
                throw Error(ErrorKind::degenerate, "verify_theorem_a2: eigenvalue matching ambiguous");
            if (taken[best]) throw Error(ErrorKind::degenerate, "verify_theorem_a2: two indices matched the same eigenvalue");
            taken[best] = true;
            res[static_cast<size_t>(j)] = ev[best] - pred;
            with[static_cast<size_t>(j)].push_back(std::abs(ev[best] - pred));
            without[static_cast<size_t>(j)].push_back(std::abs(ev[best] - base));
        }
        r.rho.push_back(res);
    }

    bool bounded = true;
    for (int j = 0; j < N; ++j) {
        const auto& w = with[static_cast<size_t>(j)];
        const double ref = t_grid[0] * t_grid[0] * w[0];
        for (size_t i = 1; i < t_grid.size(); ++i)
            if (t_grid[i] * t_grid[i] * w[i] > 1.2 * ref + linear_floor * t_grid[i] * t_grid[i]) bounded = false;
    }
    r.verdicts["t2_bounded"] = bounded;

    // orders of the worst index, so that an accidentally small alpha_j does not decide the verdict
    std::vector<double> sup_with(t_grid.size(), 0.0), sup_without(t_grid.size(), 0.0);
    for (int j = 0; j < N; ++j) {
        r.fitted_orders.push_back(decay_order(t_grid, with[static_cast<size_t>(j)], linear_floor, true));
        r.fitted_orders_without_alpha.push_back(decay_order(t_grid, without[static_cast<size_t>(j)], linear_floor, true));
        for (size_t i = 0; i < t_grid.size(); ++i) {
            sup_with[i] = std::max(sup_with[i], with[static_cast<size_t>(j)][i]);
            sup_without[i] = std::max(sup_without[i], without[static_cast<size_t>(j)][i]);
        }
    }
    const double ow = decay_order(t_grid, sup_with, linear_floor, true);
    const double owo = decay_order(t_grid, sup_without, linear_floor, true);
    r.fitted_orders.push_back(ow);
    r.fitted_orders_without_alpha.push_back(owo);
    r.verdicts["order_with_alpha"] = std::isinf(ow) || std::abs(ow - 2.0) <= 0.3;
    r.verdicts["order_without_alpha"] = std::isinf(owo) || std::abs(owo - 1.0) <= 0.3;
    return r;
}

std::vector<double> default_a1_grid() {
    std::vector<double> g;
    for (int t = 2; t <= 12; ++t) g.push_back(t);
    return g;
}

std::vector<double> default_a2_grid() { return {10.0, 15.0, 20.0}; }

FlowSpec sample_spec(int N, FlowKind kind, std::uint64_t seed, const SpecBounds& b) {
    if (N < 1) throw Error(ErrorKind::invalid_input, "sample_spec: N must be positive");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> gap(b.gap_lo, b.gap_hi), im(-b.imag, b.imag), unit(-1.0, 1.0);
    FlowSpec s;
    s.kind = kind;
    s.d.resize(N);
    std::vector<double> re(static_cast<size_t>(N), 0.0);
    for (int j = 1; j < N; ++j) re[static_cast<size_t>(j)] = re[static_cast<size_t>(j - 1)] - gap(rng);
    const double centre = re.empty() ? 0.0 : 0.5 * (re.front() + re.back());
    for (int j = 0; j < N; ++j) s.d(j) = cplx(re[static_cast<size_t>(j)] - centre, im(rng));
    for (int attempt = 0; attempt < 1000; ++attempt) {
        s.M.resize(N, N);
        for (int i = 0; i < N; ++i)
            for (int k = 0; k < N; ++k) s.M(i, k) = cplx(unit(rng), unit(rng));
        s.M.diagonal().array() += b.diag_shift;
        if (kind == FlowKind::linear) return s;
        const auto pi = leading_principal_minors(s.M);
        if (std::all_of(pi.begin(), pi.end(), [&](cplx v) { return std::abs(v) >= b.min_minor; })) return s;
    }
    throw Error(ErrorKind::convergence, "sample_spec: no admissible matrix after 1000 draws");
}

}  // namespace diejen

#include "diejen/lax.hpp"

#include <cmath>

namespace diejen {

namespace {

void require_index(int a, int n, const char* who) {
    if (a < 0 || a >= n) throw Error(ErrorKind::invalid_input, std::string(who) + ": index out of range");
}

void check_inputs(const PhasePoint& p, const Coupling& g) {
    require_M(g);
    require_valid(p);
    require_representable(p);
}

}  // namespace

void require_representable(const PhasePoint& p) {
    for (int a = 0; a < p.n(); ++a)
        if (std::abs(p.xi(a)) > overflow_cap || std::abs(p.eta(a)) > overflow_cap)
            throw Error(ErrorKind::overflow, "coordinate beyond overflow cap 300");
}

cplx z_product(const RVector& xi, double mu, double nu, int a) {
    const int n = static_cast<int>(xi.size());
    require_index(a, n, "z_product");
    const double la = xi(a);
    cplx z = -std::sinh(I * nu + 2.0 * la) / std::sinh(2.0 * la);
    for (int c = 0; c < n; ++c) {
        if (c == a) continue;
        const double dm = la - xi(c), dp = la + xi(c);
        z *= std::sinh(I * mu + dm) / std::sinh(dm) * (std::sinh(I * mu + dp) / std::sinh(dp));
    }
    return z;
}

double u_product(const RVector& xi, double mu, double nu, int a) {
    const int n = static_cast<int>(xi.size());
    require_index(a, n, "u_product");
    const double sm = std::sin(mu), sn = std::sin(nu);
    const double la = xi(a);
    const double s2 = std::sinh(2.0 * la);
    double u = std::sqrt(1.0 + sn * sn / (s2 * s2));
    for (int c = 0; c < n; ++c) {
        if (c == a) continue;
        const double sd = std::sinh(la - xi(c)), ss = std::sinh(la + xi(c));
        u *= std::sqrt(1.0 + sm * sm / (sd * sd)) * std::sqrt(1.0 + sm * sm / (ss * ss));
    }
    return u;
}

cplx z_coeff(const PhasePoint& p, const Coupling& g, int a) {
    check_inputs(p, g);
    return z_product(p.xi, g.mu, g.nu, a);
}

double u_coeff(const PhasePoint& p, const Coupling& g, int a) {
    check_inputs(p, g);
    return u_product(p.xi, g.mu, g.nu, a);
}

CVector f_vector(const PhasePoint& p, const Coupling& g) {
    check_inputs(p, g);
    const int n = p.n();
    CVector F(2 * n);
    for (int a = 0; a < n; ++a) {
        const cplx z = z_product(p.xi, g.mu, g.nu, a);
        const double u = u_product(p.xi, g.mu, g.nu, a);
        const double th = p.eta(a);
        F(a) = std::exp(0.5 * th) * std::sqrt(u);
        F(n + a) = std::exp(-0.5 * th) * std::conj(z) / std::sqrt(u);
    }
    return F;
}

double hamiltonian(const PhasePoint& p, const Coupling& g) {
    check_inputs(p, g);
    double h = 0.0;
    for (int a = 0; a < p.n(); ++a) h += std::cosh(p.eta(a)) * u_product(p.xi, g.mu, g.nu, a);
    return h;
}

CMatrix swap_matrix(int n) {
    CMatrix c = CMatrix::Zero(2 * n, 2 * n);
    for (int a = 0; a < n; ++a) {
        c(a, n + a) = 1.0;
        c(n + a, a) = 1.0;
    }
    return c;
}

CMatrix reversal_matrix(int m) {
    CMatrix r = CMatrix::Zero(m, m);
    for (int k = 0; k < m; ++k) r(k, m - 1 - k) = 1.0;
    return r;
}

CMatrix lax_entries(const CVector& F, const RVector& Lambda, double mu, double nu) {
    const int N = static_cast<int>(F.size());
    const int n = N / 2;
    const double sm = std::sin(mu), smn = std::sin(mu - nu);
    CMatrix L(N, N);
    for (int k = 0; k < N; ++k)
        for (int l = 0; l < N; ++l) {
            const cplx den = std::sinh(I * mu + (Lambda(k) - Lambda(l)));
            if (std::abs(den) < sinh_floor)
                throw Error(ErrorKind::degenerate, "Lax entry denominator below 1e-12 (near-degenerate positions)");
            const double ckl = (std::abs(k - l) == n) ? 1.0 : 0.0;
            L(k, l) = (I * sm * F(k) * std::conj(F(l)) + I * smn * ckl) / den;
        }
    return L;
}

LaxBundle lax_matrix(const PhasePoint& p, const Coupling& g) {
    require_M_tilde(g);
    check_inputs(p, g);
    const int n = p.n();
    LaxBundle b;
    b.z.resize(n);
    b.u.resize(n);
    for (int a = 0; a < n; ++a) {
        b.z(a) = z_product(p.xi, g.mu, g.nu, a);
        b.u(a) = std::abs(b.z(a));
    }
    b.F = f_vector(p, g);
    b.Lambda.resize(2 * n);
    b.Lambda.head(n) = p.xi;
    b.Lambda.tail(n) = -p.xi;
    b.L = lax_entries(b.F, b.Lambda, g.mu, g.nu);
    b.C = swap_matrix(n);
    b.H = 0.5 * b.L.trace().real();
    return b;
}

double commutation_residual(const CMatrix& L, const CVector& F, const RVector& Lambda, const Coupling& g) {
    const int N = static_cast<int>(L.rows());
    const int n = N / 2;
    const cplx e = std::exp(I * g.mu);
    double worst = 0.0;
    for (int k = 0; k < N; ++k)
        for (int l = 0; l < N; ++l) {
            const double d = Lambda(k) - Lambda(l);
            cplx r = e * std::exp(d) * L(k, l) - std::conj(e) * std::exp(-d) * L(k, l);
            r -= 2.0 * I * std::sin(g.mu) * F(k) * std::conj(F(l));
            if (std::abs(k - l) == n) r -= 2.0 * I * std::sin(g.mu - g.nu);
            worst = std::max(worst, std::abs(r));
        }
    return worst;
}

double commutation_residual(const LaxBundle& b, const Coupling& g) {
    return commutation_residual(b.L, b.F, b.Lambda, g);
}

double trace_power_observable(const LaxBundle& b, int k) {
    if (k < 1) throw Error(ErrorKind::invalid_input, "trace_power_observable: k must be positive");
    CMatrix pow = b.L;
    for (int i = 1; i < k; ++i) pow = pow * b.L;
    const cplx tr = pow.trace();
    if (std::abs(tr.imag()) > 1e-10 * std::max(1.0, std::abs(tr)))
        throw Error(ErrorKind::degenerate, "trace_power_observable: trace not real");
    return tr.real();
}

}  // namespace diejen

#include "diejen/duality.hpp"

#include <cmath>
#include <sstream>

namespace diejen {

namespace {

constexpr double pairing_tol = 1e-8;
constexpr double spectral_gap = 1e-7;
constexpr double component_floor = 1e-10;

struct Spectrum {
    HermitianEigen eig;
    RVector theta_hat;
};

Spectrum spectrum_of(const LaxBundle& b) {
    Spectrum s{hermitian_eig(b.L), RVector()};
    const RVector& w = s.eig.eigenvalues;
    const int N = static_cast<int>(w.size());
    const int n = N / 2;
    if (!(w(0) > 0.0)) throw Error(ErrorKind::degenerate, "Lax matrix not positive definite");
    for (int j = 0; j < N; ++j) {
        const double pr = w(j) * w(N - 1 - j);
        if (std::abs(pr - 1.0) > pairing_tol) {
            std::ostringstream os;
            os << "reciprocal pairing violated: w_" << j + 1 << " w_" << N - j << " = " << pr;
            throw Error(ErrorKind::degenerate, os.str());
        }
    }
    for (int j = 0; j + 1 < N; ++j) {
        const double gap = (w(j + 1) - w(j)) / w(j + 1);
        if (!(gap > spectral_gap)) {
            std::ostringstream os;
            os << "degenerate Lax spectrum: relative gap " << gap << " between eigenvalues " << j + 1 << " and " << j + 2;
            throw Error(ErrorKind::degenerate, os.str());
        }
    }
    s.theta_hat.resize(n);
    for (int a = 0; a < n; ++a) s.theta_hat(a) = 0.5 * std::log(w(N - 1 - a));
    return s;
}

RVector doubled(const RVector& th) {
    const int n = static_cast<int>(th.size());
    RVector T(2 * n);
    T.head(n) = th;
    T.tail(n) = -th;
    return T;
}

// e^{-Theta} y^{-1} e^{Lambda} F, with the size of the summed terms for each component so
// that vanishing can be judged at working precision.
struct Components {
    CVector v;
    RVector scale;
};

Components normalized_components(const LaxBundle& b, const RVector& Theta, const CMatrix& y) {
    const int N = static_cast<int>(Theta.size());
    CVector eF(N);
    for (int k = 0; k < N; ++k) eF(k) = std::exp(b.Lambda(k)) * b.F(k);
    Components c{y.adjoint() * eF, RVector(N)};
    const double norm = eF.norm();
    for (int k = 0; k < N; ++k) {
        c.v(k) *= std::exp(-Theta(k));
        c.scale(k) = std::exp(-Theta(k)) * norm;
    }
    return c;
}

void require_ordered_angles(const RVector& th) {
    const int n = static_cast<int>(th.size());
    for (int c = 0; c < n; ++c) {
        if (!(th(c) > 0.0)) throw Error(ErrorKind::degenerate, "spectral angles must be positive");
        if (c + 1 < n && !(th(c) > th(c + 1))) throw Error(ErrorKind::degenerate, "degenerate spectral angle differences");
    }
}

}  // namespace

RVector dual_angles(const LaxBundle& b) { return spectrum_of(b).theta_hat; }

CMatrix diagonalizer_from_basis(const LaxBundle& b, const RVector& theta_hat, const CMatrix& top_basis) {
    const int n = static_cast<int>(theta_hat.size());
    const int N = 2 * n;
    if (top_basis.rows() != N || top_basis.cols() != n)
        throw Error(ErrorKind::invalid_input, "diagonalizer: basis must be N x n");
    CMatrix y(N, N);
    y.leftCols(n) = top_basis;
    y.rightCols(n) = b.C * top_basis;
    const RVector Theta = doubled(theta_hat);
    const Components c = normalized_components(b, Theta, y);
    const CVector& v = c.v;
    for (int a = 0; a < n; ++a) {
        const double m = std::abs(v(a));
        if (m < component_floor * c.scale(a))
            throw Error(ErrorKind::degenerate, "diagonalizer: positivity-normalizing component below 1e-10");
        const cplx phase = v(a) / m;
        y.col(a) *= phase;
        y.col(n + a) *= phase;
    }
    return y;
}

CMatrix diagonalizer(const LaxBundle& b, const Coupling& g) {
    require_M_tilde(g);
    const Spectrum s = spectrum_of(b);
    const int n = b.n();
    const int N = 2 * n;
    CMatrix top(N, n);
    for (int a = 0; a < n; ++a) top.col(a) = s.eig.basis.col(N - 1 - a);
    return diagonalizer_from_basis(b, s.theta_hat, top);
}

CVector dual_f(const LaxBundle& b, const RVector& theta_hat, const CMatrix& y_hat) {
    const int n = static_cast<int>(theta_hat.size());
    const Components c = normalized_components(b, doubled(theta_hat), y_hat);
    const CVector& Fh = c.v;
    // trailing components are tiny far out in phase space and only need to be nonzero
    for (int k = 0; k < 2 * n; ++k)
        if ((k < n && std::abs(Fh(k)) < component_floor * c.scale(k)) || Fh(k) == 0.0)
            throw Error(ErrorKind::degenerate, "dual_f: vanishing component");
    for (int a = 0; a < n; ++a)
        if (!(Fh(a).real() > 0.0) || std::abs(Fh(a).imag()) > 1e-9 * std::abs(Fh(a)))
            throw Error(ErrorKind::degenerate, "dual_f: leading components not positive");
    return Fh;
}

cplx dual_z_closed_form(const RVector& theta_hat, const Coupling& g_hat, int c) {
    require_ordered_angles(theta_hat);
    return z_product(theta_hat, g_hat.mu, g_hat.nu, c);
}

cplx dual_z_rejected_branch(const RVector& theta_hat, const Coupling& g_hat, int c) {
    require_ordered_angles(theta_hat);
    const double t2 = 2.0 * theta_hat(c);
    const cplx lead_ok = -std::sinh(I * g_hat.nu + t2);
    const cplx lead_bad = std::sinh(I * (2.0 * g_hat.mu - g_hat.nu) + t2);
    return z_product(theta_hat, g_hat.mu, g_hat.nu, c) * (lead_bad / lead_ok);
}

DualFrame dual_frame(const LaxBundle& b, const Coupling& g) {
    require_M_tilde(g);
    const Spectrum s = spectrum_of(b);
    const int n = b.n();
    const int N = 2 * n;
    const Coupling gh = hat_coupling(g);
    CMatrix top(N, n);
    for (int a = 0; a < n; ++a) top.col(a) = s.eig.basis.col(N - 1 - a);

    DualFrame f;
    f.theta_hat = s.theta_hat;
    f.Theta_hat = doubled(s.theta_hat);
    f.y_hat = diagonalizer_from_basis(b, s.theta_hat, top);
    f.F_hat = dual_f(b, s.theta_hat, f.y_hat);
    f.z_hat.resize(n);
    f.u_hat.resize(n);
    f.lambda_hat.resize(n);
    for (int c = 0; c < n; ++c) {
        f.z_hat(c) = f.F_hat(c) * std::conj(f.F_hat(n + c));
        f.u_hat(c) = u_product(s.theta_hat, gh.mu, gh.nu, c);
        f.lambda_hat(c) = 2.0 * std::log(f.F_hat(c).real()) - std::log(f.u_hat(c));
    }
    RVector e2L(N);
    for (int k = 0; k < N; ++k) e2L(k) = std::exp(2.0 * b.Lambda(k));
    f.L_hat = f.y_hat.adjoint() * e2L.asDiagonal() * f.y_hat;
    return f;
}

DualFrame dual_frame(const PhasePoint& p, const Coupling& g) { return dual_frame(lax_matrix(p, g), g); }

PhasePoint duality_map(const PhasePoint& p, const Coupling& g) {
    const DualFrame f = dual_frame(p, g);
    return {f.theta_hat, f.lambda_hat};
}

DualLaxCheck dual_lax(const PhasePoint& p, const Coupling& g) {
    const DualFrame f = dual_frame(p, g);
    const Coupling gh = hat_coupling(g);
    DualLaxCheck out;
    out.L_hat = f.L_hat;
    out.L_hat_entries = lax_entries(f.F_hat, f.Theta_hat, gh.mu, gh.nu);
    out.L_ghat_at_psi = lax_matrix(PhasePoint{f.theta_hat, f.lambda_hat}, gh).L;
    const double scale = max_abs(out.L_hat);
    out.entries_residual = max_abs(out.L_hat - out.L_hat_entries) / scale;
    out.theorem_residual = max_abs(out.L_hat - out.L_ghat_at_psi) / scale;
    out.det = out.L_hat.determinant();
    return out;
}

IdentityResiduals minor_identity_residuals(const RVector& th, const CVector& z_hat, const Coupling& gh) {
    require_ordered_angles(th);
    const int n = static_cast<int>(th.size());
    const double sm = std::sin(gh.mu), smn = std::sin(gh.mu - gh.nu);
    IdentityResiduals r;
    for (int c = 0; c < n; ++c) {
        cplx omega = 1.0;
        for (int d = 0; d < n; ++d) {
            if (d == c) continue;
            const double dm = th(c) - th(d), dp = th(c) + th(d);
            omega *= std::sinh(dm) * std::sinh(dp) / (std::sinh(I * gh.mu + dm) * std::sinh(I * gh.mu + dp));
        }
        const cplx w = omega * z_hat(c);
        const double t2 = 2.0 * th(c);
        const cplx sp = std::sinh(I * gh.mu + t2), sq = std::sinh(I * gh.mu - t2);
        const cplx l1 = sm / sp * w, l2 = sm / sq * std::conj(w), l3 = smn / sp, l4 = smn / sq;
        const double lscale = std::max({std::abs(l1), std::abs(l2), std::abs(l3), std::abs(l4)});
        r.linear = std::max(r.linear, std::abs(l1 + l2 + l3 + l4) / lscale);

        const double sh2 = std::sinh(t2) * std::sinh(t2);
        const double q1 = sh2 * std::norm(w), q2 = sm * smn * 2.0 * w.real();
        const double rhs = sm * sm + smn * smn + sh2;
        const double qscale = std::max({std::abs(q1), std::abs(q2), rhs});
        r.quadratic = std::max(r.quadratic, std::abs(q1 - q2 - rhs) / qscale);
    }
    return r;
}

IdentityResiduals minor_identity_residuals(const DualFrame& f, const Coupling& g_hat) {
    return minor_identity_residuals(f.theta_hat, f.z_hat, g_hat);
}

}  // namespace diejen

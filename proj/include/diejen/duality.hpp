#pragma once

#include "diejen/lax.hpp"

namespace diejen {

struct DualFrame {
    RVector theta_hat;  // descending positive, length n
    RVector Theta_hat;  // (theta_hat, -theta_hat)
    CMatrix y_hat;      // unitary, y* C y = C, columns carry e^{2 Theta_hat}
    CVector F_hat;      // e^{-Theta_hat} y_hat^{-1} e^{Lambda} F
    CVector z_hat;      // F_hat_c conj(F_hat_{n+c})
    RVector u_hat;      // closed form, > 1
    RVector lambda_hat; // 2 ln F_hat_c - ln u_hat_c
    CMatrix L_hat;      // y_hat^{-1} e^{2 Lambda} y_hat
    int n() const { return static_cast<int>(theta_hat.size()); }
};

// Spectral angles: half logs of the eigenvalues of L above 1, descending.
RVector dual_angles(const LaxBundle& b);

// Phase-fixed diagonalizer from an orthonormal set of eigenvectors for e^{2 theta_hat_a}
// (columns a = 0..n-1 of top_basis). The columns for e^{-2 theta_hat_a} are C times these.
CMatrix diagonalizer_from_basis(const LaxBundle& b, const RVector& theta_hat, const CMatrix& top_basis);
CMatrix diagonalizer(const LaxBundle& b, const Coupling& g);

CVector dual_f(const LaxBundle& b, const RVector& theta_hat, const CMatrix& y_hat);

// Closed form of z_hat_c at the spectral angles with the negated couplings g_hat.
cplx dual_z_closed_form(const RVector& theta_hat, const Coupling& g_hat, int c);
// Rejected sign branch of the same product; solves the same pair of relations.
cplx dual_z_rejected_branch(const RVector& theta_hat, const Coupling& g_hat, int c);

DualFrame dual_frame(const LaxBundle& b, const Coupling& g);
DualFrame dual_frame(const PhasePoint& p, const Coupling& g);

// Psi^g(p) = (theta_hat, lambda_hat).
PhasePoint duality_map(const PhasePoint& p, const Coupling& g);

struct DualLaxCheck {
    CMatrix L_hat;           // y_hat^{-1} e^{2 Lambda} y_hat
    CMatrix L_hat_entries;   // entry formula from (F_hat, Theta_hat, g_hat)
    CMatrix L_ghat_at_psi;   // L^{g_hat} evaluated at Psi^g(p)
    double entries_residual; // relative to max|L_hat|
    double theorem_residual; // relative to max|L_hat|
    cplx det;
};

DualLaxCheck dual_lax(const PhasePoint& p, const Coupling& g);

struct IdentityResiduals {
    double linear = 0.0;
    double quadratic = 0.0;
};

// Linear and quadratic relations obeyed by z_hat; each residual is normalized by the
// largest term of its relation. Uses z_hat from the frame (built from F_hat).
IdentityResiduals minor_identity_residuals(const DualFrame& f, const Coupling& g_hat);
IdentityResiduals minor_identity_residuals(const RVector& theta_hat, const CVector& z_hat, const Coupling& g_hat);

}  // namespace diejen

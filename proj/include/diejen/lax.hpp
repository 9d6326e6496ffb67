#pragma once

#include "diejen/phase_space.hpp"

namespace diejen {

inline constexpr double sinh_floor = 1e-12;  // smallest admissible |sinh(i mu + Lambda_k - Lambda_l)|

struct LaxBundle {
    CVector z;       // z_a, length n
    RVector u;       // u_a = |z_a|
    CVector F;       // length N = 2n
    RVector Lambda;  // (lambda, -lambda)
    CMatrix L;
    CMatrix C;       // [[0, 1], [1, 0]] in n x n blocks
    double H = 0.0;  // sum_a cosh(theta_a) u_a
    int n() const { return static_cast<int>(z.size()); }
};

// Coefficients at positions xi for coupling (mu, nu); shared with the dual side, where the
// positions are the spectral angles and the couplings are negated.
cplx z_product(const RVector& xi, double mu, double nu, int a);
double u_product(const RVector& xi, double mu, double nu, int a);

cplx z_coeff(const PhasePoint& p, const Coupling& g, int a);
double u_coeff(const PhasePoint& p, const Coupling& g, int a);
CVector f_vector(const PhasePoint& p, const Coupling& g);
double hamiltonian(const PhasePoint& p, const Coupling& g);

CMatrix swap_matrix(int n);  // C
CMatrix reversal_matrix(int m);  // anti-identity R_m

// L_kl = (i sin mu F_k conj(F_l) + i sin(mu - nu) C_kl) / sinh(i mu + Lambda_k - Lambda_l).
CMatrix lax_entries(const CVector& F, const RVector& Lambda, double mu, double nu);

LaxBundle lax_matrix(const PhasePoint& p, const Coupling& g);

// max-entry modulus of e^{i mu} e^L L e^-L - e^{-i mu} e^-L L e^L - 2i sin mu F F* - 2i sin(mu - nu) C
double commutation_residual(const LaxBundle& b, const Coupling& g);
double commutation_residual(const CMatrix& L, const CVector& F, const RVector& Lambda, const Coupling& g);

double trace_power_observable(const LaxBundle& b, int k);

// Input cap shared by constructors that exponentiate coordinates.
void require_representable(const PhasePoint& p);

}  // namespace diejen

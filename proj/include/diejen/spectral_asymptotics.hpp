#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "diejen/numerics.hpp"

namespace diejen {

enum class FlowKind { exponential, linear };

struct FlowSpec {
    CMatrix M;
    CVector d;  // diagonal of D, Re strictly decreasing
    FlowKind kind = FlowKind::exponential;
    int N() const { return static_cast<int>(d.size()); }
};

// Throws invalid_input / degenerate when the spec leaves its family.
void validate_spec(const FlowSpec& s);

std::vector<cplx> m_coeffs(const CMatrix& M);
std::vector<cplx> p_coeffs(const CMatrix& M);
std::vector<cplx> alpha_coeffs(const CMatrix& M, const CVector& d);

// Eigenvalues of M exp(tD) or M + tD, descending modulus. The exponential kind goes through
// compound matrices, which keeps every eigenvalue to relative accuracy; the modulus ordering
// is required to be unambiguous (relative gap 1e-8).
std::vector<cplx> flow_eigenvalues(const FlowSpec& s, double t);

// Centered direct eigensolve of M exp(t(D - dbar)), multiplied back by exp(t dbar).
std::vector<cplx> flow_eigenvalues_direct(const FlowSpec& s, double t);

// rho_j(t) = lambda_j(t) / (m_j e^{t d_j}) - 1 without forming the eigenvalues.
std::vector<cplx> relative_remainders(const FlowSpec& s, double t);

struct AsymptoticReport {
    std::vector<double> mu;  // Re(d_j - d_{j+1})
    double R = 0.0;
    std::vector<cplx> m, p, alpha;
    std::vector<double> t;
    std::vector<std::vector<cplx>> rho;   // [time][j]: rho_j (A1) or r_j (A2)
    std::vector<double> fitted_orders;    // A1: decay rate of the second-order remainder; A2: log-log order with alpha
    std::vector<double> fitted_orders_without_alpha;  // A2 only
    std::vector<cplx> p_two_point;        // A1: p_j recovered from rho at the two largest grid times
    double p_rel_error = 0.0;
    std::map<std::string, bool> verdicts;
    bool pass() const;
};

// Remainders below this modulus are at the rounding floor and are left out of fits.
inline constexpr double remainder_floor = 1e-17;

AsymptoticReport verify_theorem_a1(const FlowSpec& s, const std::vector<double>& t_grid,
                                   const std::vector<double>& p_times = {8.0, 10.0});
AsymptoticReport verify_theorem_a2(const FlowSpec& s, const std::vector<double>& t_grid);

struct SpecBounds {
    double gap_lo = 1.8, gap_hi = 2.2;  // Re(d_j - d_{j+1})
    double imag = 0.1;                  // |Im d_j|
    double diag_shift = 3.0;            // added to the diagonal of M
    double min_minor = 0.1;             // smallest admissible |pi_j| (exponential kind)
};

// Defaults for the linear kind: entries of M in the unit box and gaps wide enough that the
// 1/t^3 term is small against the 1/t^2 term from t = 10 on, except near rows where the
// latter nearly cancels.
inline SpecBounds linear_spec_bounds() { return {4.0, 5.0, 0.5, 0.0, 0.0}; }

// Default grids: the remainders of the exponential flow reach the extended-precision floor
// near t = 12 at the default gaps.
std::vector<double> default_a1_grid();
std::vector<double> default_a2_grid();

FlowSpec sample_spec(int N, FlowKind kind, std::uint64_t seed, const SpecBounds& b = {});

}  // namespace diejen

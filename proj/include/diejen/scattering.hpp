#pragma once

#include <vector>

#include "diejen/dynamics.hpp"

namespace diejen {

// Shift function at ordered positive xi (c is 0-based).
double delta_shift(const RVector& xi, const Coupling& g, int c);
RVector delta_shift(const RVector& xi, const Coupling& g);

struct AsymptoticData {
    RVector theta_plus, theta_minus;
    RVector lambda_plus, lambda_minus;    // closed forms (primary values)
    RVector lambda_plus_minor;            // 1/2 ln m_a(L_tilde)
    RVector lambda_minus_minor;           // 1/2 ln m_a(R L_tilde R)
    RVector delta;                        // Delta(theta_hat)
    double sum_residual = 0.0;            // max |lambda+ + lambda- - Delta|
    double minor_residual = 0.0;          // max over both signs of |minor route - closed form|
};

AsymptoticData asymptotic_data(const PhasePoint& p, const Coupling& g);

// Upsilon_+- and their inverses on (positions, rapidities) pairs.
AsymptoticPoint upsilon(const PhasePoint& q, const Coupling& g, int sign);
PhasePoint upsilon_inverse(const AsymptoticPoint& z, const Coupling& g);

AsymptoticPoint wave_map(const PhasePoint& p, const Coupling& g, int sign);
AsymptoticPoint wave_map_factorized(const PhasePoint& p, const Coupling& g, int sign);  // Upsilon o Psi

AsymptoticPoint scattering_map(const AsymptoticPoint& zeta, const Coupling& g);
AsymptoticPoint scattering_map_composite(const AsymptoticPoint& zeta, const Coupling& g);  // Upsilon_+ o Upsilon_-^{-1}
AsymptoticPoint inverse_scattering_map(const AsymptoticPoint& zeta, const Coupling& g);

struct DecayFit {
    double rate = 0.0;       // -slope of ln|r| vs |t|; +inf when every point is clamped
    double rms = 0.0;        // rms deviation of ln|r| from the fitted line
    int used = 0;            // points above the clamp that entered the fit
};

// Least squares on the upper half of the grid, excluding |r| below the clamp.
DecayFit fit_exponential_decay(const std::vector<double>& t, const std::vector<double>& r, double clamp = 1e-14);

struct ResidualTrace {
    std::vector<double> t;
    Eigen::MatrixXd E;  // (time index, particle)
    Eigen::MatrixXd G;
    std::vector<DecayFit> E_fit, G_fit;  // per particle; rate +inf when the floor is reached early
    DecayFit E_sup_fit, G_sup_fit;       // of max_a |E_a|, max_a |G_a|
    double min_gap = 0.0;                // smallest gap of the diagonal of 2 sinh(Theta_plus)
    double onset = 0.0;                  // first |t| with sup residual below 10% of its first value
    bool monotone_after_onset = false;
};

// Twelve equally spaced times up to min(24 / R, 0.9 max_time), R the minimal gap above:
// long enough for the upper half to sit in the exponential regime, short enough to stay
// clear of the rounding floor and of the flow exponent cap.
std::vector<double> default_trace_grid(const PhasePoint& p, const Coupling& g);

// Negative grids trace the mirrored asymptotics towards (lambda-, theta-).
ResidualTrace residual_trace(const PhasePoint& p, const Coupling& g, const std::vector<double>& t_grid);

}  // namespace diejen

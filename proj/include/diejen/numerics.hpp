#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace diejen {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

inline constexpr cplx I{0.0, 1.0};

enum class ErrorKind {
    invalid_input,  // malformed arguments, violated preconditions
    coupling,       // coupling outside the required regularity class
    degenerate,     // spectral or positional degeneracy at working precision
    convergence,    // solver or integrator failure
    overflow,       // exponent beyond the representable cap
    stencil,        // finite-difference stencil leaves phase space
    fit,            // too few usable points for a decay fit
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

struct HermitianEigen {
    RVector eigenvalues;  // ascending
    CMatrix basis;        // unitary, columns are eigenvectors
};

struct GeneralEigen {
    std::vector<cplx> eigenvalues;  // descending modulus, then real part, then imaginary part
};

double max_abs(const CMatrix& a);

// Symmetrizes before solving; asymmetry above 1e-12 relative is rejected.
HermitianEigen hermitian_eig(const CMatrix& a);

GeneralEigen general_eig(const CMatrix& a);

// pi_j = det of the upper-left j x j block, j = 1..N.
std::vector<cplx> leading_principal_minors(const CMatrix& m);

// Determinant of the submatrix on the given (0-based, strictly increasing) rows and columns.
cplx minor(const CMatrix& m, const std::vector<int>& rows, const std::vector<int>& cols);

// Closed form of det[sinh(i alpha)/sinh(i alpha + xi_k - eta_l)].
cplx hyperbolic_cauchy_det(double alpha, const std::vector<double>& xi, const std::vector<double>& eta);

// All k-subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<int>> combinations(int n, int k);

// Spectrum of Z Z* for Z = diag(exp(row_log)) U diag(exp(col_log)), evaluated through
// compound matrices so that every eigenvalue keeps relative accuracy regardless of the
// dynamic range of the scalings. Column scalings may depend on a parameter t with
// d(col_log)/dt = col_rate; the derivative of each log eigenvalue is returned as well.
struct GradedSpectrum {
    RVector log_eigenvalues;  // descending, count entries
    RVector log_rates;        // d/dt of log_eigenvalues
    RVector dominance;        // per compound order: second / first eigenvalue of the compound Gram
};

GradedSpectrum graded_gram_spectrum(const RVector& row_log, const CMatrix& u, const RVector& col_log,
                                    const RVector& col_rate, int count);

}  // namespace diejen

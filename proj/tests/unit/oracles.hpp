#pragma once

// Reference computations that share no code with the library.

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using cplx = std::complex<double>;

// Laplace expansion along the first row.
inline cplx cofactor_det(const Eigen::MatrixXcd& a) {
    const int n = static_cast<int>(a.rows());
    if (n == 0) return 1.0;
    if (n == 1) return a(0, 0);
    cplx sum = 0.0;
    for (int j = 0; j < n; ++j) {
        Eigen::MatrixXcd sub(n - 1, n - 1);
        for (int r = 1; r < n; ++r)
            for (int c = 0, cc = 0; c < n; ++c)
                if (c != j) sub(r - 1, cc++) = a(r, c);
        sum += ((j % 2) ? -1.0 : 1.0) * a(0, j) * cofactor_det(sub);
    }
    return sum;
}

// Eigenvalues of [[a, b], [conj b, c]] with a, c real, ascending.
inline std::pair<double, double> hermitian2(double a, cplx b, double c) {
    const double m = 0.5 * (a + c), r = std::sqrt(0.25 * (a - c) * (a - c) + std::norm(b));
    return {m - r, m + r};
}

// Roots of z^2 - tr z + det, larger modulus first.
inline std::pair<cplx, cplx> quadratic_roots(cplx tr, cplx det) {
    const cplx s = std::sqrt(tr * tr - 4.0 * det);
    cplx a = 0.5 * (tr + s), b = 0.5 * (tr - s);
    if (std::abs(b) > std::abs(a)) std::swap(a, b);
    return {a, b};
}

}  // namespace oracle

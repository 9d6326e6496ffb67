#include "diejen/numerics.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace diejen {

namespace {

void require_square(const CMatrix& a, const char* who) {
    if (a.rows() < 1 || a.rows() != a.cols())
        throw Error(ErrorKind::invalid_input, std::string(who) + ": matrix must be square and non-empty");
}

void require_finite(const CMatrix& a, const char* who) {
    if (!a.allFinite()) throw Error(ErrorKind::invalid_input, std::string(who) + ": non-finite entry");
}

// Gaussian elimination with partial pivoting on a k x k row-major buffer (destroyed).
cplx det_in_place(cplx* a, int k) {
    cplx det = 1.0;
    for (int c = 0; c < k; ++c) {
        int piv = c;
        double best = std::abs(a[c * k + c]);
        for (int r = c + 1; r < k; ++r) {
            const double v = std::abs(a[r * k + c]);
            if (v > best) {
                best = v;
                piv = r;
            }
        }
        if (best == 0.0) return 0.0;
        if (piv != c) {
            for (int j = c; j < k; ++j) std::swap(a[c * k + j], a[piv * k + j]);
            det = -det;
        }
        const cplx p = a[c * k + c];
        det *= p;
        for (int r = c + 1; r < k; ++r) {
            const cplx f = a[r * k + c] / p;
            if (f == 0.0) continue;
            for (int j = c + 1; j < k; ++j) a[r * k + j] -= f * a[c * k + j];
        }
    }
    return det;
}

cplx minor_unchecked(const CMatrix& m, const std::vector<int>& rows, const std::vector<int>& cols) {
    const int k = static_cast<int>(rows.size());
    cplx buf[64];
    std::vector<cplx> heap;
    cplx* a = buf;
    if (k * k > 64) {
        heap.resize(static_cast<size_t>(k * k));
        a = heap.data();
    }
    for (int r = 0; r < k; ++r)
        for (int c = 0; c < k; ++c) a[r * k + c] = m(rows[r], cols[c]);
    return det_in_place(a, k);
}

}  // namespace

double max_abs(const CMatrix& a) {
    return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

HermitianEigen hermitian_eig(const CMatrix& a) {
    require_square(a, "hermitian_eig");
    require_finite(a, "hermitian_eig");
    const double scale = std::max(1.0, max_abs(a));
    const double asym = max_abs(a - a.adjoint());
    if (asym > 1e-12 * scale)
        throw Error(ErrorKind::invalid_input, "hermitian_eig: input not Hermitian (asymmetry " + std::to_string(asym) + ")");
    const CMatrix sym = 0.5 * (a + a.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(sym);
    if (es.info() != Eigen::Success) throw Error(ErrorKind::convergence, "hermitian_eig: solver did not converge");
    return {es.eigenvalues(), es.eigenvectors()};
}

GeneralEigen general_eig(const CMatrix& a) {
    require_square(a, "general_eig");
    require_finite(a, "general_eig");
    Eigen::ComplexEigenSolver<CMatrix> es(a, false);
    if (es.info() != Eigen::Success) throw Error(ErrorKind::convergence, "general_eig: solver did not converge");
    std::vector<cplx> ev(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    std::sort(ev.begin(), ev.end(), [](const cplx& x, const cplx& y) {
        const double ax = std::abs(x), ay = std::abs(y);
        if (ax != ay) return ax > ay;
        if (x.real() != y.real()) return x.real() > y.real();
        return x.imag() > y.imag();
    });
    return {std::move(ev)};
}

std::vector<cplx> leading_principal_minors(const CMatrix& m) {
    require_square(m, "leading_principal_minors");
    const int n = static_cast<int>(m.rows());
    std::vector<cplx> out;
    out.reserve(static_cast<size_t>(n));
    for (int j = 1; j <= n; ++j) {
        std::vector<int> idx(static_cast<size_t>(j));
        for (int i = 0; i < j; ++i) idx[static_cast<size_t>(i)] = i;
        out.push_back(minor_unchecked(m, idx, idx));
    }
    return out;
}

cplx minor(const CMatrix& m, const std::vector<int>& rows, const std::vector<int>& cols) {
    if (rows.empty() || rows.size() != cols.size())
        throw Error(ErrorKind::invalid_input, "minor: index lists must be non-empty and of equal length");
    auto check = [](const std::vector<int>& idx, Eigen::Index bound) {
        for (size_t i = 0; i < idx.size(); ++i) {
            if (idx[i] < 0 || idx[i] >= bound || (i > 0 && idx[i] <= idx[i - 1]))
                throw Error(ErrorKind::invalid_input, "minor: indices must be strictly increasing and in range");
        }
    };
    check(rows, m.rows());
    check(cols, m.cols());
    return minor_unchecked(m, rows, cols);
}

cplx hyperbolic_cauchy_det(double alpha, const std::vector<double>& xi, const std::vector<double>& eta) {
    if (xi.size() != eta.size() || xi.empty())
        throw Error(ErrorKind::invalid_input, "hyperbolic_cauchy_det: xi and eta must have equal positive length");
    if (std::abs(std::sin(alpha)) < 1e-15) throw Error(ErrorKind::invalid_input, "hyperbolic_cauchy_det: sin(alpha) = 0");
    const size_t m = xi.size();
    const cplx s = std::sinh(I * alpha);
    cplx num = std::pow(s, static_cast<int>(m));
    for (size_t k = 0; k < m; ++k)
        for (size_t l = k + 1; l < m; ++l) num *= std::sinh(xi[k] - xi[l]) * std::sinh(eta[l] - eta[k]);
    cplx den = 1.0;
    for (size_t k = 0; k < m; ++k)
        for (size_t l = 0; l < m; ++l) {
            const cplx d = std::sinh(I * alpha + xi[k] - eta[l]);
            if (std::abs(d) < 1e-12) throw Error(ErrorKind::degenerate, "hyperbolic_cauchy_det: singular denominator");
            den *= d;
        }
    return num / den;
}

std::vector<std::vector<int>> combinations(int n, int k) {
    std::vector<std::vector<int>> out;
    if (k < 0 || k > n) return out;
    std::vector<int> c(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) c[static_cast<size_t>(i)] = i;
    while (true) {
        out.push_back(c);
        int i = k - 1;
        while (i >= 0 && c[static_cast<size_t>(i)] == n - k + i) --i;
        if (i < 0) break;
        ++c[static_cast<size_t>(i)];
        for (int j = i + 1; j < k; ++j) c[static_cast<size_t>(j)] = c[static_cast<size_t>(j - 1)] + 1;
    }
    return out;
}

GradedSpectrum graded_gram_spectrum(const RVector& row_log, const CMatrix& u, const RVector& col_log,
                                    const RVector& col_rate, int count) {
    require_square(u, "graded_gram_spectrum");
    const int n = static_cast<int>(u.rows());
    if (row_log.size() != n || col_log.size() != n || col_rate.size() != n || count < 1 || count > n)
        throw Error(ErrorKind::invalid_input, "graded_gram_spectrum: inconsistent sizes");

    // log of the product of the k largest eigenvalues of Z Z*, and its t-derivative
    RVector log_prod(count + 1), rate_prod(count + 1), dominance(count);
    log_prod(0) = 0.0;
    rate_prod(0) = 0.0;
    for (int k = 1; k <= count; ++k) {
        const auto sets = combinations(n, k);
        const int m = static_cast<int>(sets.size());
        RVector rl(m), cl(m), cr(m);
        for (int s = 0; s < m; ++s) {
            rl(s) = cl(s) = cr(s) = 0.0;
            for (int i : sets[static_cast<size_t>(s)]) {
                rl(s) += row_log(i);
                cl(s) += col_log(i);
                cr(s) += col_rate(i);
            }
        }
        const double rmax = rl.maxCoeff(), cmax = cl.maxCoeff();
        CMatrix c(m, m);
        for (int a = 0; a < m; ++a) {
            const double wr = rl(a) - rmax;
            for (int b = 0; b < m; ++b) {
                const double w = std::exp(wr + cl(b) - cmax);
                c(a, b) = w == 0.0 ? cplx(0.0) : w * minor_unchecked(u, sets[static_cast<size_t>(a)], sets[static_cast<size_t>(b)]);
            }
        }
        const CMatrix gram = c.adjoint() * c;
        Eigen::SelfAdjointEigenSolver<CMatrix> es(gram);
        if (es.info() != Eigen::Success) throw Error(ErrorKind::convergence, "graded_gram_spectrum: solver did not converge");
        const double top = es.eigenvalues()(m - 1);
        if (!(top > 0.0)) throw Error(ErrorKind::degenerate, "graded_gram_spectrum: vanishing compound spectrum");
        dominance(k - 1) = m > 1 ? es.eigenvalues()(m - 2) / top : 0.0;
        const auto v = es.eigenvectors().col(m - 1);
        double rate = 0.0;
        for (int b = 0; b < m; ++b) rate += std::norm(v(b)) * cr(b);
        log_prod(k) = std::log(top) + 2.0 * (rmax + cmax);
        rate_prod(k) = 2.0 * rate;
    }
    GradedSpectrum out{RVector(count), RVector(count), dominance};
    for (int k = 1; k <= count; ++k) {
        out.log_eigenvalues(k - 1) = log_prod(k) - log_prod(k - 1);
        out.log_rates(k - 1) = rate_prod(k) - rate_prod(k - 1);
    }
    return out;
}

}  // namespace diejen

#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "cvsep/matrix.hpp"
#include "cvsep/tolerances.hpp"

// Dense decompositions via Jacobi iterations. The matrices handled here
// are tiny (at most a few dozen rows), where cyclic Jacobi is both simple
// and accurate; no attempt is made at blocked or large-scale variants.
// Complex inputs are reduced to the real case through real_embedding(),
// which exactly doubles the spectrum.

namespace cvsep {

/// Singular values sorted nonincreasing, all >= 0.
struct SingularSpectrum {
    std::vector<double> values;

    double sum() const { return std::accumulate(values.begin(), values.end(), 0.0); }
};

struct SvdResult {
    RealMatrix u;               // rows x k, orthonormal columns (zero column where sigma = 0)
    std::vector<double> sigma;  // k = min(rows, cols), nonincreasing
    RealMatrix v;               // cols x k, orthonormal columns
};

struct SymEigResult {
    std::vector<double> values; // ascending
    RealMatrix vectors;         // orthogonal, column k pairs with values[k]
};

namespace detail {

inline void require_finite(const RealMatrix& m, const char* who) {
    if (!m.is_finite()) throw std::invalid_argument(std::string(who) + ": non-finite entries");
}

inline void require_finite(const ComplexMatrix& m, const char* who) {
    if (!m.is_finite()) throw std::invalid_argument(std::string(who) + ": non-finite entries");
}

inline constexpr int max_jacobi_sweeps = 64;

// One-sided Jacobi on the columns of a (rows >= cols assumed by caller).
// Optionally accumulates the applied rotations into v (cols x cols).
inline void one_sided_jacobi(RealMatrix& a, RealMatrix* v) {
    const std::size_t m = a.rows(), n = a.cols();
    for (int sweep = 0; sweep < max_jacobi_sweeps; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double alpha = 0, beta = 0, g = 0;
                for (std::size_t i = 0; i < m; ++i) {
                    alpha += a(i, p) * a(i, p);
                    beta += a(i, q) * a(i, q);
                    g += a(i, p) * a(i, q);
                }
                if (std::abs(g) <= tol::jacobi_convergence * std::sqrt(alpha * beta)) continue;
                rotated = true;
                const double zeta = (beta - alpha) / (2 * g);
                const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::hypot(1.0, zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                for (std::size_t i = 0; i < m; ++i) {
                    const double x = a(i, p), y = a(i, q);
                    a(i, p) = c * x - s * y;
                    a(i, q) = s * x + c * y;
                }
                if (v) {
                    for (std::size_t i = 0; i < n; ++i) {
                        const double x = (*v)(i, p), y = (*v)(i, q);
                        (*v)(i, p) = c * x - s * y;
                        (*v)(i, q) = s * x + c * y;
                    }
                }
            }
        }
        if (!rotated) return;
    }
    throw std::runtime_error("svd: Jacobi iteration did not converge");
}

} // namespace detail

/// Singular values of a real matrix, nonincreasing.
inline SingularSpectrum singular_values(const RealMatrix& m) {
    detail::require_finite(m, "singular_values");
    if (m.rows() == 0 || m.cols() == 0) return {};
    RealMatrix a = m.rows() >= m.cols() ? m : m.transposed();
    detail::one_sided_jacobi(a, nullptr);
    std::vector<double> vals(a.cols());
    for (std::size_t j = 0; j < a.cols(); ++j) {
        double s = 0;
        for (std::size_t i = 0; i < a.rows(); ++i) s += a(i, j) * a(i, j);
        vals[j] = std::sqrt(s);
    }
    std::sort(vals.begin(), vals.end(), std::greater<>());
    return {std::move(vals)};
}

/// Singular values of a complex matrix via the real embedding, which
/// carries each value twice.
inline SingularSpectrum singular_values(const ComplexMatrix& m) {
    detail::require_finite(m, "singular_values");
    if (m.rows() == 0 || m.cols() == 0) return {};
    const SingularSpectrum doubled = singular_values(real_embedding(m));
    std::vector<double> vals;
    vals.reserve(doubled.values.size() / 2);
    for (std::size_t k = 0; k < doubled.values.size(); k += 2) vals.push_back(doubled.values[k]);
    return {std::move(vals)};
}

/// Full SVD of a real matrix: m = u * diag(sigma) * v^T.
inline SvdResult svd(const RealMatrix& m) {
    detail::require_finite(m, "svd");
    const bool flip = m.rows() < m.cols();
    RealMatrix a = flip ? m.transposed() : m;
    RealMatrix v = RealMatrix::identity(a.cols());
    detail::one_sided_jacobi(a, &v);

    const std::size_t k = a.cols();
    std::vector<double> sigma(k);
    for (std::size_t j = 0; j < k; ++j) {
        double s = 0;
        for (std::size_t i = 0; i < a.rows(); ++i) s += a(i, j) * a(i, j);
        sigma[j] = std::sqrt(s);
    }
    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return sigma[i] > sigma[j]; });

    RealMatrix u(a.rows(), k), vperm(v.rows(), k);
    std::vector<double> sorted(k);
    for (std::size_t out = 0; out < k; ++out) {
        const std::size_t j = order[out];
        sorted[out] = sigma[j];
        if (sigma[j] > 0) {
            for (std::size_t i = 0; i < a.rows(); ++i) u(i, out) = a(i, j) / sigma[j];
        }
        for (std::size_t i = 0; i < v.rows(); ++i) vperm(i, out) = v(i, j);
    }
    if (flip) return {std::move(vperm), std::move(sorted), std::move(u)};
    return {std::move(u), std::move(sorted), std::move(vperm)};
}

/// Trace norm (sum of singular values). For square m it dominates |trace(m)|.
inline double trace_norm(const RealMatrix& m) { return singular_values(m).sum(); }
inline double trace_norm(const ComplexMatrix& m) { return singular_values(m).sum(); }

namespace detail {

inline void require_symmetric(const RealMatrix& m, const char* who) {
    if (m.rows() != m.cols()) throw std::invalid_argument(std::string(who) + ": matrix not square");
    const double scale = std::max(1.0, m.max_abs());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = i + 1; j < m.cols(); ++j)
            if (std::abs(m(i, j) - m(j, i)) > tol::symmetry * scale)
                throw std::invalid_argument(std::string(who) + ": matrix not symmetric");
}

} // namespace detail

/// Eigendecomposition of a real symmetric matrix by cyclic Jacobi.
/// Input must be symmetric within tol::symmetry (relative to its scale).
inline SymEigResult sym_eig(const RealMatrix& input) {
    detail::require_finite(input, "sym_eig");
    detail::require_symmetric(input, "sym_eig");
    const std::size_t n = input.rows();

    RealMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = 0.5 * (input(i, j) + input(j, i));
    RealMatrix v = RealMatrix::identity(n);
    const double scale = a.frobenius_norm();

    for (int sweep = 0; sweep < detail::max_jacobi_sweeps; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                const double thresh =
                    tol::jacobi_convergence * std::max(std::abs(a(p, p)) + std::abs(a(q, q)), scale);
                if (std::abs(apq) <= thresh) continue;
                rotated = true;
                const double zeta = (a(q, q) - a(p, p)) / (2 * apq);
                const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::hypot(1.0, zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                for (std::size_t i = 0; i < n; ++i) {
                    const double x = a(i, p), y = a(i, q);
                    a(i, p) = c * x - s * y;
                    a(i, q) = s * x + c * y;
                }
                for (std::size_t j = 0; j < n; ++j) {
                    const double x = a(p, j), y = a(q, j);
                    a(p, j) = c * x - s * y;
                    a(q, j) = s * x + c * y;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    const double x = v(i, p), y = v(i, q);
                    v(i, p) = c * x - s * y;
                    v(i, q) = s * x + c * y;
                }
            }
        }
        if (!rotated) {
            std::vector<std::size_t> order(n);
            std::iota(order.begin(), order.end(), 0);
            std::sort(order.begin(), order.end(),
                      [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });
            SymEigResult r;
            r.values.resize(n);
            r.vectors = RealMatrix(n, n);
            for (std::size_t out = 0; out < n; ++out) {
                r.values[out] = a(order[out], order[out]);
                for (std::size_t i = 0; i < n; ++i) r.vectors(i, out) = v(i, order[out]);
            }
            return r;
        }
    }
    throw std::runtime_error("sym_eig: Jacobi iteration did not converge");
}

/// Eigenvalues of a real symmetric matrix, ascending.
inline std::vector<double> sym_eigvals(const RealMatrix& m) { return sym_eig(m).values; }

/// Eigenvalues of a complex Hermitian matrix, ascending. Uses the real
/// embedding; each eigenvalue of the input shows up twice there.
inline std::vector<double> hermitian_eigvals(const ComplexMatrix& m) {
    detail::require_finite(m, "hermitian_eigvals");
    if (m.rows() != m.cols())
        throw std::invalid_argument("hermitian_eigvals: matrix not square");
    const double scale = std::max(1.0, m.max_abs());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = i; j < m.cols(); ++j)
            if (std::abs(m(i, j) - std::conj(m(j, i))) > tol::symmetry * scale)
                throw std::invalid_argument("hermitian_eigvals: matrix not Hermitian");
    const std::vector<double> doubled = sym_eigvals(real_embedding(m));
    std::vector<double> vals;
    vals.reserve(doubled.size() / 2);
    for (std::size_t k = 0; k < doubled.size(); k += 2) vals.push_back(doubled[k]);
    return vals;
}

} // namespace cvsep

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>

#include "cvsep/decomp.hpp"
#include "cvsep/matrix.hpp"
#include "cvsep/tolerances.hpp"

// The Horodecki-Lewenstein family of PPT entangled two-mode states,
//
//   rho = (|Psi><Psi| + sum_{n>=1} sum_{m>n} |Psi_mn><Psi_mn|) / A,
//   |Psi>    = sum_n a^n |n,n>,
//   |Psi_mn> = c^m a^n |n,m> + c^-m a^m |m,n>,     0 < a < c < 1,
//
// with A the full-space normalization. Fock labels start at 1 as in the
// family's definition; storage is 0-based with the +1 shift confined to
// the element() accessor.

namespace cvsep {

struct HLParams {
    double a = 0;
    double c = 0;

    void validate() const {
        if (!std::isfinite(a) || !std::isfinite(c) || !(0.0 < a && a < c && c < 1.0))
            throw std::invalid_argument("HLParams: require 0 < a < c < 1");
    }
};

/// Normalization A by direct series summation, grouped by the larger
/// Fock label m so partial sums are cheap:
///   A = sum_n a^2n + sum_{m>=2} [ c^2m sum_{n<m} a^2n + (m-1) (a/c)^2m ].
inline double hl_normalization_series(const HLParams& p, double term_tolerance = 1e-17) {
    p.validate();
    const double a2 = p.a * p.a, c2 = p.c * p.c, q = a2 / c2;

    double sum = 0.0;
    double an = a2; // a^2n
    while (true) {
        sum += an;
        if (an < term_tolerance * std::max(1.0, sum)) break;
        an *= a2;
    }

    double inner = a2;      // sum_{n<m} a^2n, starts at m = 2
    double cm = c2 * c2;    // c^2m
    double qm = q * q;      // (a/c)^2m
    for (std::size_t m = 2;; ++m) {
        const double term = cm * inner + static_cast<double>(m - 1) * qm;
        sum += term;
        if (term < term_tolerance * std::max(1.0, sum)) break;
        if (m > 50'000'000)
            throw std::runtime_error("hl_normalization_series: series failed to converge");
        inner += std::pow(a2, static_cast<double>(m));
        cm *= c2;
        qm *= q;
    }
    return sum;
}

/// Normalization A in closed form,
///   A = a^2/(1-a^2) + c^2 (ac)^2 / [(1-c^2)(1-a^2 c^2)] + q^2/(1-q)^2
/// with q = (a/c)^2. Cross-checked against the series on every call;
/// disagreement indicates a bug and throws.
inline double hl_normalization(const HLParams& p) {
    p.validate();
    const double a2 = p.a * p.a, c2 = p.c * p.c;
    const double ac2 = a2 * c2;
    const double q = a2 / c2;
    const double closed = a2 / (1.0 - a2) + c2 * ac2 / ((1.0 - c2) * (1.0 - ac2))
                          + q * q / ((1.0 - q) * (1.0 - q));
    const double series = hl_normalization_series(p);
    if (std::abs(closed - series) > tol::normalization_crosscheck * std::abs(closed))
        throw std::runtime_error("hl_normalization: closed form disagrees with series");
    return closed;
}

/// The family's density matrix restricted to Fock labels 1..N on both
/// modes, kept at the full-space normalization (so the trace is < 1).
/// Stored as the N^2 x N^2 matrix over the composite index; entries are
/// real for real (a, c) but the element type stays complex to match the
/// general two-mode block layout.
class TruncatedDensityBlock {
public:
    TruncatedDensityBlock(std::size_t levels, ComplexMatrix elements, double norm_a)
        : levels_(levels), rho_(std::move(elements)), norm_a_(norm_a) {
        if (levels_ < 2) throw std::invalid_argument("TruncatedDensityBlock: need at least 2 levels");
        const std::size_t d = levels_ * levels_;
        if (rho_.rows() != d || rho_.cols() != d)
            throw std::invalid_argument("TruncatedDensityBlock: matrix must be N^2 x N^2");
        if (!rho_.is_finite())
            throw std::invalid_argument("TruncatedDensityBlock: non-finite entries");
        const double scale = std::max(1.0, rho_.max_abs());
        for (std::size_t r = 0; r < d; ++r)
            for (std::size_t c = r; c < d; ++c)
                if (std::abs(rho_(r, c) - std::conj(rho_(c, r))) > tol::symmetry * scale)
                    throw std::invalid_argument("TruncatedDensityBlock: matrix not Hermitian");
    }

    std::size_t levels() const { return levels_; }
    const ComplexMatrix& matrix() const { return rho_; }
    double norm_a() const { return norm_a_; }

    /// <i,j| rho |k,l> with 1-based Fock labels.
    std::complex<double> element(std::size_t i, std::size_t j, std::size_t k, std::size_t l) const {
        return rho_(row_index(i, j), row_index(k, l));
    }

    double trace() const {
        double t = 0;
        for (std::size_t r = 0; r < rho_.rows(); ++r) t += rho_(r, r).real();
        return t;
    }

    /// Smallest eigenvalue; >= -1e-12 for any correctly assembled block.
    double min_eigenvalue() const { return hermitian_eigvals(rho_).front(); }

    /// Largest |element(i,j;k,l) - element(i,l;k,j)|; identically zero
    /// for the family, which is invariant under partial transposition.
    double partial_transpose_asymmetry() const {
        double worst = 0;
        for (std::size_t i = 1; i <= levels_; ++i)
            for (std::size_t j = 1; j <= levels_; ++j)
                for (std::size_t k = 1; k <= levels_; ++k)
                    for (std::size_t l = 1; l <= levels_; ++l)
                        worst = std::max(worst, std::abs(element(i, j, k, l) - element(i, l, k, j)));
        return worst;
    }

private:
    std::size_t row_index(std::size_t i, std::size_t j) const {
        if (i < 1 || i > levels_ || j < 1 || j > levels_)
            throw std::out_of_range("TruncatedDensityBlock: Fock label out of range");
        return (i - 1) * levels_ + (j - 1);
    }

    std::size_t levels_;
    ComplexMatrix rho_;
    double norm_a_;
};

/// Assemble the truncated block. |Psi><Psi| contributes a^(i+k) at
/// (i,i;k,k); each |Psi_mn><Psi_mn| with n < m <= N contributes the 2x2
/// block [[c^2m a^2n, a^(n+m)], [a^(n+m), c^-2m a^2m]] on {|n,m>,|m,n>};
/// terms with m > N never meet the truncated indices. Everything is
/// divided by the full-space A.
inline TruncatedDensityBlock hl_truncated_block(const HLParams& p, std::size_t levels) {
    p.validate();
    if (levels < 2) throw std::invalid_argument("hl_truncated_block: need at least 2 levels");
    const double norm_a = hl_normalization(p);
    const std::size_t d = levels * levels;
    ComplexMatrix rho(d, d);
    const auto at = [&](std::size_t i, std::size_t j) -> std::size_t {
        return (i - 1) * levels + (j - 1);
    };

    for (std::size_t i = 1; i <= levels; ++i)
        for (std::size_t k = 1; k <= levels; ++k)
            rho(at(i, i), at(k, k)) += std::pow(p.a, static_cast<double>(i + k));

    for (std::size_t n = 1; n <= levels; ++n)
        for (std::size_t m = n + 1; m <= levels; ++m) {
            const double cm = std::pow(p.c, static_cast<double>(m));
            const double amp_nm = cm * std::pow(p.a, static_cast<double>(n));
            const double amp_mn = std::pow(p.a, static_cast<double>(m)) / cm;
            rho(at(n, m), at(n, m)) += amp_nm * amp_nm;
            rho(at(n, m), at(m, n)) += amp_nm * amp_mn;
            rho(at(m, n), at(n, m)) += amp_mn * amp_nm;
            rho(at(m, n), at(m, n)) += amp_mn * amp_mn;
        }

    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c) rho(r, c) /= norm_a;
    return TruncatedDensityBlock(levels, std::move(rho), norm_a);
}

} // namespace cvsep

#pragma once

#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cvsep/decomp.hpp"
#include "cvsep/matrix.hpp"
#include "cvsep/tolerances.hpp"

namespace cvsep {

// Covariance-matrix convention used throughout this library
// -----------------------------------------------------------
// Quadratures obey [x, p] = i and are ordered mode by mode as
// (x1, p1, x2, p2, ...). The stored matrix is
//
//     gamma_jk = 2 <Delta r_j Delta r_k>_sym,
//
// i.e. twice the symmetrized covariance, so the vacuum state has
// gamma = identity and <(Delta x)^2> = gamma_xx / 2. A matrix gamma is a
// physical quantum covariance matrix iff gamma + i*Omega >= 0, with
// Omega the direct sum of [[0,1],[-1,0]] blocks.

/// Symplectic form for n modes in (x1,p1,...) ordering.
inline RealMatrix symplectic_form(std::size_t n_modes) {
    RealMatrix o(2 * n_modes, 2 * n_modes);
    for (std::size_t k = 0; k < n_modes; ++k) {
        o(2 * k, 2 * k + 1) = 1.0;
        o(2 * k + 1, 2 * k) = -1.0;
    }
    return o;
}

/// Second moments of an n-mode state. Means are optional and only enter
/// through moment assembly; all criteria depend on central moments alone.
class CovarianceMatrix {
public:
    CovarianceMatrix(std::size_t n_modes, RealMatrix gamma, std::vector<double> mean = {})
        : n_modes_(n_modes), gamma_(std::move(gamma)), mean_(std::move(mean)) {
        if (n_modes_ == 0) throw std::invalid_argument("CovarianceMatrix: need at least one mode");
        if (gamma_.rows() != 2 * n_modes_ || gamma_.cols() != 2 * n_modes_)
            throw std::invalid_argument("CovarianceMatrix: gamma must be 2n x 2n");
        if (!gamma_.is_finite()) throw std::invalid_argument("CovarianceMatrix: non-finite entries");
        detail::require_symmetric(gamma_, "CovarianceMatrix");
        if (mean_.empty()) mean_.assign(2 * n_modes_, 0.0);
        if (mean_.size() != 2 * n_modes_)
            throw std::invalid_argument("CovarianceMatrix: mean must have length 2n");
        for (double v : mean_)
            if (!std::isfinite(v)) throw std::invalid_argument("CovarianceMatrix: non-finite mean");
    }

    std::size_t n_modes() const { return n_modes_; }
    const RealMatrix& gamma() const { return gamma_; }
    const std::vector<double>& mean() const { return mean_; }

    static std::size_t x_index(std::size_t mode) { return 2 * mode; }
    static std::size_t p_index(std::size_t mode) { return 2 * mode + 1; }

    /// Symmetrized covariance <r_i r_j> - <r_i><r_j> = gamma_ij / 2.
    double covariance(std::size_t i, std::size_t j) const {
        if (i >= 2 * n_modes_ || j >= 2 * n_modes_)
            throw std::out_of_range("covariance: quadrature index out of range");
        return gamma_(i, j) / 2.0;
    }

    double variance(std::size_t i) const { return covariance(i, i); }

    /// gamma + i*Omega >= -tol.
    bool is_physical(double tolerance = tol::physicality) const {
        ComplexMatrix h = to_complex(gamma_);
        const RealMatrix omega = symplectic_form(n_modes_);
        for (std::size_t i = 0; i < h.rows(); ++i)
            for (std::size_t j = 0; j < h.cols(); ++j)
                h(i, j) += std::complex<double>(0.0, omega(i, j));
        const auto eigs = hermitian_eigvals(h);
        return eigs.front() >= -tolerance;
    }

private:
    std::size_t n_modes_;
    RealMatrix gamma_;
    std::vector<double> mean_;
};

/// Split into subsystem A = first modes_a modes, B = the rest. Callers
/// wanting a different grouping reorder modes first.
struct ModePartition {
    std::size_t modes_a = 1;
    std::size_t modes_b = 1;

    std::size_t total() const { return modes_a + modes_b; }

    void validate(const CovarianceMatrix& cov) const {
        if (modes_a == 0 || modes_b == 0)
            throw std::invalid_argument("ModePartition: both sides need at least one mode");
        if (total() != cov.n_modes())
            throw std::invalid_argument("ModePartition: sides do not add up to the mode count");
    }
};

/// Quadrature weights (a_1..a_2M | b_1..b_2N) multiplying the local
/// operators x and p of each mode, A side then B side.
struct WeightVector {
    std::vector<double> a;
    std::vector<double> b;

    void validate(const ModePartition& part) const {
        if (a.size() != 2 * part.modes_a || b.size() != 2 * part.modes_b)
            throw std::invalid_argument("WeightVector: lengths must be 2M and 2N");
        auto check = [](const std::vector<double>& v, const char* side) {
            double mx = 0;
            for (double x : v) {
                if (!std::isfinite(x)) throw std::invalid_argument("WeightVector: non-finite entry");
                mx = std::max(mx, std::abs(x));
            }
            if (mx == 0.0)
                throw std::invalid_argument(std::string("WeightVector: all-zero ") + side + " side");
        };
        check(a, "A");
        check(b, "B");
    }
};

// ---------------------------------------------------------------------
// Built-in states

/// n-mode vacuum: gamma = identity.
inline CovarianceMatrix vacuum_state(std::size_t n_modes) {
    return CovarianceMatrix(n_modes, RealMatrix::identity(2 * n_modes));
}

/// Two-mode squeezed vacuum with squeezing parameter r: diagonal blocks
/// cosh(2r) I, off-diagonal block sinh(2r) diag(1,-1). The x quadratures
/// are correlated and the p quadratures anticorrelated, so x1 - x2 and
/// p1 + p2 carry the reduced noise e^(-2r).
inline CovarianceMatrix two_mode_squeezed_vacuum(double r) {
    if (!std::isfinite(r)) throw std::invalid_argument("two_mode_squeezed_vacuum: non-finite r");
    const double ch = std::cosh(2 * r), sh = std::sinh(2 * r);
    RealMatrix g(4, 4);
    g(0, 0) = g(1, 1) = g(2, 2) = g(3, 3) = ch;
    g(0, 2) = g(2, 0) = sh;
    g(1, 3) = g(3, 1) = -sh;
    return CovarianceMatrix(2, std::move(g));
}

/// The 2x2-mode bound entangled Gaussian state of Werner and Wolf:
/// PPT across the 2:2 split yet entangled. Four modes, zero mean.
inline CovarianceMatrix werner_wolf_state() {
    RealMatrix g{
        {2, 0, 0, 0, 1, 0, 0, 0},
        {0, 1, 0, 0, 0, 0, 0, -1},
        {0, 0, 2, 0, 0, 0, -1, 0},
        {0, 0, 0, 1, 0, -1, 0, 0},
        {1, 0, 0, 0, 2, 0, 0, 0},
        {0, 0, 0, -1, 0, 4, 0, 0},
        {0, 0, -1, 0, 0, 0, 2, 0},
        {0, -1, 0, 0, 0, 0, 0, 4},
    };
    return CovarianceMatrix(4, std::move(g));
}

/// Weights used in the worked 2:2 example on the Werner-Wolf state.
inline WeightVector werner_wolf_example_weights() {
    const double h = std::sqrt(2.0) / 2.0;
    return {{h, 1.0, h, 1.0}, {1.0, h, 1.0, h}};
}

/// Resolve a builtin state name: "werner-wolf", "vacuum<n>" (e.g.
/// "vacuum4"), or "tmsv:r=<x>".
inline CovarianceMatrix make_builtin_state(std::string_view name) {
    if (name == "werner-wolf") return werner_wolf_state();
    if (name.rfind("vacuum", 0) == 0) {
        const std::string_view digits = name.substr(6);
        std::size_t n = 0;
        const auto [ptr, ec] = std::from_chars(digits.begin(), digits.end(), n);
        if (ec != std::errc{} || ptr != digits.end() || n == 0)
            throw std::invalid_argument("builtin: bad mode count in '" + std::string(name) + "'");
        return vacuum_state(n);
    }
    if (name.rfind("tmsv:r=", 0) == 0) {
        const std::string arg(name.substr(7));
        std::size_t used = 0;
        double r = 0;
        try {
            r = std::stod(arg, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("builtin: bad squeezing value in '" + std::string(name) + "'");
        }
        if (used != arg.size())
            throw std::invalid_argument("builtin: bad squeezing value in '" + std::string(name) + "'");
        return two_mode_squeezed_vacuum(r);
    }
    throw std::invalid_argument("builtin: unknown state '" + std::string(name) + "'");
}

} // namespace cvsep

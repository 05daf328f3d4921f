#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "cvsep/covariance.hpp"
#include "cvsep/decomp.hpp"
#include "cvsep/report.hpp"
#include "cvsep/tolerances.hpp"

// Covariance-based separability criteria. Each check returns a
// CriterionReport whose violation is positive exactly when the bound a
// separable state must obey is broken; see report.hpp.

namespace cvsep {

namespace detail {

inline void require_two_mode(const CovarianceMatrix& cov, const char* who) {
    if (cov.n_modes() != 2)
        throw std::invalid_argument(std::string(who) + ": criterion defined for two-mode states");
}

// Shared arithmetic behind the weighted-quadrature trace-norm criterion:
// cross-covariance block and local variances at a fixed partition.
struct WeightedQuadratureData {
    RealMatrix cross;             // 2M x 2N, <Delta A_i Delta B_j> without weights
    std::vector<double> vars_a;   // quadrature variances, A side
    std::vector<double> vars_b;   // B side

    WeightedQuadratureData(const CovarianceMatrix& cov, const ModePartition& part) {
        const std::size_t da = 2 * part.modes_a, db = 2 * part.modes_b;
        cross = RealMatrix(da, db);
        for (std::size_t i = 0; i < da; ++i)
            for (std::size_t j = 0; j < db; ++j) cross(i, j) = cov.gamma()(i, da + j) / 2.0;
        vars_a.resize(da);
        vars_b.resize(db);
        for (std::size_t i = 0; i < da; ++i) vars_a[i] = cov.variance(i);
        for (std::size_t j = 0; j < db; ++j) vars_b[j] = cov.variance(da + j);
    }

    RealMatrix weighted_cross(const std::vector<double>& a, const std::vector<double>& b) const {
        RealMatrix c(cross.rows(), cross.cols());
        for (std::size_t i = 0; i < cross.rows(); ++i)
            for (std::size_t j = 0; j < cross.cols(); ++j) c(i, j) = a[i] * cross(i, j) * b[j];
        return c;
    }

    // sum_i a_i^2 Var(A_i) - sum_k |a_{2k-1} a_{2k}|, and likewise for b.
    static double bracket(const std::vector<double>& w, const std::vector<double>& vars) {
        double s = 0;
        for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * w[i] * vars[i];
        for (std::size_t k = 0; k + 1 < w.size(); k += 2) s -= std::abs(w[k] * w[k + 1]);
        return s;
    }

    double bracket_a(const std::vector<double>& a) const { return bracket(a, vars_a); }
    double bracket_b(const std::vector<double>& b) const { return bracket(b, vars_b); }
};

} // namespace detail

/// Covariance matrix of the weighted local quadratures,
/// C_ij = a_i b_j (<A_i B_j> - <A_i><B_j>). Mean-independent.
inline RealMatrix build_c_matrix(const CovarianceMatrix& cov, const ModePartition& part,
                                 const WeightVector& w) {
    part.validate(cov);
    w.validate(part);
    return detail::WeightedQuadratureData(cov, part).weighted_cross(w.a, w.b);
}

/// Trace-norm criterion for an M:N split with weighted quadratures:
/// separable states obey ||C||^2 <= [sum Var(A_i) - U_A][sum Var(B_j) - U_B]
/// with U_A = sum |a_{2k-1} a_{2k}| (and U_B likewise). A negative
/// bracket signals a sub-uncertainty marginal; the report is then
/// flagged "unphysical-marginal" instead of counting as a detection.
inline CriterionReport prop1a_check(const CovarianceMatrix& cov, const ModePartition& part,
                                    const WeightVector& w, double tolerance = tol::detection) {
    part.validate(cov);
    w.validate(part);
    const detail::WeightedQuadratureData data(cov, part);

    const double tn = trace_norm(data.weighted_cross(w.a, w.b));
    const double bracket_a = data.bracket_a(w.a);
    const double bracket_b = data.bracket_b(w.b);

    CriterionReport r;
    r.criterion = "prop1a";
    r.lhs = tn * tn;
    r.rhs = bracket_a * bracket_b;
    r.violation = r.lhs - r.rhs;
    if (bracket_a < 0.0 || bracket_b < 0.0) {
        r.flag = "unphysical-marginal";
        r.detected = false;
    } else {
        r.detected = r.violation > tolerance;
    }
    r.add_parameter("bracket_a", bracket_a);
    r.add_parameter("bracket_b", bracket_b);
    r.add_parameter("trace_norm_c", tn);
    return r;
}

/// Sign pairing for the two-mode specialization below: the sign applied
/// to the <p1 p2> covariance inside the first square. Both pairings are
/// valid separability conditions; `best` evaluates both and keeps the
/// stronger, which equals the exact ||C||^2 of the underlying 2x2 block.
enum class SignChoice { plus, minus, best };

/// Two-mode specialization of the trace-norm criterion (1:1 split, unit
/// weights folded in): separable states obey
///   [Cov(x1,x2) -/+ Cov(p1,p2)]^2 + [Cov(x1,p2) +/- Cov(p1,x2)]^2
///     <= [Var(x1)+Var(p1)-1][Var(x2)+Var(p2)-1].
inline CriterionReport prop1b_check(const CovarianceMatrix& cov,
                                    SignChoice sign = SignChoice::best,
                                    double tolerance = tol::detection) {
    detail::require_two_mode(cov, "prop1b_check");
    const double cxx = cov.covariance(0, 2), cpp = cov.covariance(1, 3);
    const double cxp = cov.covariance(0, 3), cpx = cov.covariance(1, 2);
    const double lhs_plus = (cxx + cpp) * (cxx + cpp) + (cxp - cpx) * (cxp - cpx);
    const double lhs_minus = (cxx - cpp) * (cxx - cpp) + (cxp + cpx) * (cxp + cpx);

    double lhs = 0;
    double sign_used = 0;
    switch (sign) {
        case SignChoice::plus: lhs = lhs_plus; sign_used = +1; break;
        case SignChoice::minus: lhs = lhs_minus; sign_used = -1; break;
        case SignChoice::best:
            lhs = std::max(lhs_plus, lhs_minus);
            sign_used = lhs_plus >= lhs_minus ? +1 : -1;
            break;
    }

    CriterionReport r;
    r.criterion = "prop1b";
    r.lhs = lhs;
    r.rhs = (cov.variance(0) + cov.variance(1) - 1.0) * (cov.variance(2) + cov.variance(3) - 1.0);
    r.violation = r.lhs - r.rhs;
    r.detected = r.violation > tolerance;
    r.add_parameter("sign", sign_used);
    return r;
}

/// EPR-type sum criterion: with u = |a| x1 + x2/a and v = |a| p1 - p2/a,
/// separable states obey Var(u) + Var(v) >= a^2 + 1/a^2. Detection means
/// falling below the bound.
inline CriterionReport duan_check(const CovarianceMatrix& cov, double a,
                                  double tolerance = tol::detection) {
    detail::require_two_mode(cov, "duan_check");
    if (a == 0.0 || !std::isfinite(a)) throw std::invalid_argument("duan_check: a must be nonzero");
    const double s = a > 0 ? 1.0 : -1.0;
    const double var_u = a * a * cov.variance(0) + cov.variance(2) / (a * a)
                         + 2.0 * s * cov.covariance(0, 2);
    const double var_v = a * a * cov.variance(1) + cov.variance(3) / (a * a)
                         - 2.0 * s * cov.covariance(1, 3);

    CriterionReport r;
    r.criterion = "duan";
    r.lhs = var_u + var_v;
    r.rhs = a * a + 1.0 / (a * a);
    r.violation = r.rhs - r.lhs;
    r.detected = r.violation > tolerance;
    r.add_parameter("a", a);
    r.add_parameter("var_u", var_u);
    r.add_parameter("var_v", var_v);
    return r;
}

/// Product criterion: with u = a1 x1 + a2 x2 and v = b1 p1 + b2 p2,
/// separable states obey Var(u) Var(v) >= (|a1 b1| + |a2 b2|)^2 / 4.
inline CriterionReport mancini_check(const CovarianceMatrix& cov, double a1, double a2, double b1,
                                     double b2, double tolerance = tol::detection) {
    detail::require_two_mode(cov, "mancini_check");
    for (double v : {a1, a2, b1, b2})
        if (!std::isfinite(v)) throw std::invalid_argument("mancini_check: non-finite parameter");
    if (a1 == 0.0 && a2 == 0.0 && b1 == 0.0 && b2 == 0.0)
        throw std::invalid_argument("mancini_check: all parameters zero");
    const double var_u = a1 * a1 * cov.variance(0) + a2 * a2 * cov.variance(2)
                         + 2.0 * a1 * a2 * cov.covariance(0, 2);
    const double var_v = b1 * b1 * cov.variance(1) + b2 * b2 * cov.variance(3)
                         + 2.0 * b1 * b2 * cov.covariance(1, 3);
    const double bound = std::abs(a1 * b1) + std::abs(a2 * b2);

    CriterionReport r;
    r.criterion = "mancini";
    r.lhs = var_u * var_v;
    r.rhs = 0.25 * bound * bound;
    r.violation = r.rhs - r.lhs;
    r.detected = r.violation > tolerance;
    r.add_parameter("a1", a1);
    r.add_parameter("a2", a2);
    r.add_parameter("b1", b1);
    r.add_parameter("b2", b2);
    return r;
}

/// Strengthened EPR-type sum criterion: same u, v as the Duan check but
/// with bound a^2 + 1/a^2 + M^2, where M compares the two marginal
/// uncertainty surpluses. Requires both marginal sums Var(x)+Var(p) >= 1;
/// below that the report is flagged "inapplicable".
inline CriterionReport tlur_check(const CovarianceMatrix& cov, double a,
                                  double tolerance = tol::detection) {
    detail::require_two_mode(cov, "tlur_check");
    if (a == 0.0 || !std::isfinite(a)) throw std::invalid_argument("tlur_check: a must be nonzero");
    const double surplus1 = cov.variance(0) + cov.variance(1) - 1.0;
    const double surplus2 = cov.variance(2) + cov.variance(3) - 1.0;

    CriterionReport r = duan_check(cov, a, tolerance);
    r.criterion = "tlur";
    r.parameters.clear();
    if (surplus1 < -tol::physicality || surplus2 < -tol::physicality) {
        r.flag = "inapplicable";
        r.detected = false;
        r.add_parameter("a", a);
        return r;
    }
    const double m = std::abs(a) * std::sqrt(std::max(surplus1, 0.0))
                     - std::sqrt(std::max(surplus2, 0.0)) / std::abs(a);
    r.rhs += m * m;
    r.violation = r.rhs - r.lhs;
    r.detected = r.violation > tolerance;
    r.add_parameter("a", a);
    r.add_parameter("m", m);
    return r;
}

/// Symplectic spectrum of a 2n x 2n covariance matrix: the n moduli of
/// the eigenvalues of i Omega gamma, each of which occurs twice; the
/// deduplicated list is returned ascending. All values >= 1 iff gamma is
/// a physical quantum covariance matrix.
inline std::vector<double> symplectic_eigenvalues(const RealMatrix& gamma) {
    if (gamma.rows() != gamma.cols() || gamma.rows() % 2 != 0)
        throw std::invalid_argument("symplectic_eigenvalues: gamma must be 2n x 2n");
    const std::size_t n = gamma.rows() / 2;
    const SymEigResult eig = sym_eig(gamma);
    const double scale = std::max(1.0, std::abs(eig.values.back()));
    if (eig.values.front() < -tol::physicality * scale)
        throw std::domain_error("symplectic_eigenvalues: gamma is not positive semidefinite");

    // sqrt(gamma) * Omega * sqrt(gamma) is antisymmetric with singular
    // values {nu_k, nu_k}; read the spectrum off its SVD.
    RealMatrix root(2 * n, 2 * n);
    for (std::size_t i = 0; i < 2 * n; ++i)
        for (std::size_t j = 0; j < 2 * n; ++j) {
            double s = 0;
            for (std::size_t k = 0; k < 2 * n; ++k)
                s += eig.vectors(i, k) * std::sqrt(std::max(eig.values[k], 0.0)) * eig.vectors(j, k);
            root(i, j) = s;
        }
    const RealMatrix k = root * symplectic_form(n) * root;
    const SingularSpectrum sv = singular_values(k);
    std::vector<double> nu(n);
    for (std::size_t i = 0; i < n; ++i) nu[i] = sv.values[2 * i];
    std::reverse(nu.begin(), nu.end());
    return nu;
}

inline std::vector<double> symplectic_eigenvalues(const CovarianceMatrix& cov) {
    return symplectic_eigenvalues(cov.gamma());
}

/// PPT test. Partial transposition acts on gamma as the sign flip of
/// every B-side momentum: Lambda gamma Lambda. The state is NPT (and the
/// criterion detects) iff the flipped matrix has a symplectic eigenvalue
/// below 1.
inline CriterionReport gaussian_ppt_check(const CovarianceMatrix& cov, const ModePartition& part,
                                          double tolerance = tol::detection) {
    part.validate(cov);
    const std::size_t d = 2 * cov.n_modes();
    std::vector<double> flip(d, 1.0);
    for (std::size_t m = part.modes_a; m < part.total(); ++m)
        flip[CovarianceMatrix::p_index(m)] = -1.0;
    RealMatrix g = cov.gamma();
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) g(i, j) *= flip[i] * flip[j];

    const std::vector<double> nu = symplectic_eigenvalues(g);

    CriterionReport r;
    r.criterion = "ppt";
    r.lhs = nu.front();
    r.rhs = 1.0;
    r.violation = r.rhs - r.lhs;
    r.detected = r.violation > tolerance;
    r.add_parameter("min_symplectic_eigenvalue", nu.front());
    return r;
}

} // namespace cvsep

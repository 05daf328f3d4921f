#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "cvsep/matrix.hpp"

namespace cvsep {

/// Trace-orthonormal Hermitian operator basis on an N-level space:
/// identity/sqrt(N) followed by the N^2-1 SU(N) generators over sqrt(2).
/// For N = 2 the generators are the Pauli matrices, for N = 3 the
/// Gell-Mann matrices, in the conventional order (for each k = 2..N: the
/// symmetric and antisymmetric pair couplers (j,k) for j < k, then the
/// k-th diagonal generator).
struct OperatorBasis {
    std::size_t levels = 0;
    std::vector<ComplexMatrix> operators;
};

inline OperatorBasis su_n_basis(std::size_t levels) {
    if (levels < 2) throw std::invalid_argument("su_n_basis: need at least 2 levels");
    const std::size_t n = levels;
    OperatorBasis basis;
    basis.levels = n;
    basis.operators.reserve(n * n);

    ComplexMatrix ident(n, n);
    for (std::size_t i = 0; i < n; ++i) ident(i, i) = 1.0 / std::sqrt(static_cast<double>(n));
    basis.operators.push_back(std::move(ident));

    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (std::size_t k = 2; k <= n; ++k) {
        for (std::size_t j = 1; j < k; ++j) {
            ComplexMatrix sym(n, n);
            sym(j - 1, k - 1) = inv_sqrt2;
            sym(k - 1, j - 1) = inv_sqrt2;
            basis.operators.push_back(std::move(sym));

            ComplexMatrix anti(n, n);
            anti(j - 1, k - 1) = std::complex<double>(0.0, -inv_sqrt2);
            anti(k - 1, j - 1) = std::complex<double>(0.0, inv_sqrt2);
            basis.operators.push_back(std::move(anti));
        }
        ComplexMatrix diag(n, n);
        const double scale = std::sqrt(1.0 / static_cast<double>(k * (k - 1)));
        for (std::size_t j = 1; j < k; ++j) diag(j - 1, j - 1) = scale;
        diag(k - 1, k - 1) = -scale * static_cast<double>(k - 1);
        basis.operators.push_back(std::move(diag));
    }
    return basis;
}

} // namespace cvsep

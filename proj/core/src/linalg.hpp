#pragma once

#include <cstddef>
#include <vector>

namespace loadsift::detail {

// Dense symmetric helpers for the tiny (10x10) normal-equation systems.
// Matrices are row-major n*n vectors.

/// In-place Cholesky, lower triangle. Returns false on a non-positive pivot.
bool cholesky_factor(std::vector<double>& a, std::size_t n);

/// Solves L L^T x = b given the Cholesky factor.
std::vector<double> cholesky_solve(const std::vector<double>& chol, std::size_t n,
                                   const std::vector<double>& b);

/// Symmetric LDL^T with diagonal pivoting. For a PSD Gram matrix the pivot
/// sequence exposes the numerical rank and which columns collapsed.
struct PivotedLdlt {
    std::vector<double> lower;  // unit lower factor, permuted ordering
    std::vector<double> pivots; // D diagonal in elimination order
    std::vector<std::size_t> perm;  // perm[k] = original index eliminated at k
    std::size_t rank = 0;
    double max_pivot = 0.0;
};

PivotedLdlt pivoted_ldlt(std::vector<double> a, std::size_t n,
                         double rel_tol = 1e-13);

/// Solves P A P^T = L D L^T given a full-rank factorization.
std::vector<double> ldlt_solve(const PivotedLdlt& f, std::size_t n,
                               const std::vector<double>& b);

double one_norm(const std::vector<double>& a, std::size_t n);

} // namespace loadsift::detail

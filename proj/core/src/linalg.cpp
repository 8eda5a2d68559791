#include "linalg.hpp"

#include <algorithm>
#include <cmath>

namespace loadsift::detail {

bool cholesky_factor(std::vector<double>& a, std::size_t n) {
    for (std::size_t j = 0; j < n; ++j) {
        double d = a[j * n + j];
        for (std::size_t k = 0; k < j; ++k) d -= a[j * n + k] * a[j * n + k];
        if (!(d > 0.0)) return false;
        const double root = std::sqrt(d);
        a[j * n + j] = root;
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = a[i * n + j];
            for (std::size_t k = 0; k < j; ++k) s -= a[i * n + k] * a[j * n + k];
            a[i * n + j] = s / root;
        }
    }
    // Zero the strict upper triangle so the factor is unambiguous.
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) a[i * n + j] = 0.0;
    return true;
}

std::vector<double> cholesky_solve(const std::vector<double>& chol, std::size_t n,
                                   const std::vector<double>& b) {
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = b[i];
        for (std::size_t k = 0; k < i; ++k) s -= chol[i * n + k] * y[k];
        y[i] = s / chol[i * n + i];
    }
    std::vector<double> x(n);
    for (std::size_t ii = n; ii-- > 0;) {
        double s = y[ii];
        for (std::size_t k = ii + 1; k < n; ++k) s -= chol[k * n + ii] * x[k];
        x[ii] = s / chol[ii * n + ii];
    }
    return x;
}

PivotedLdlt pivoted_ldlt(std::vector<double> a, std::size_t n, double rel_tol) {
    PivotedLdlt f;
    f.perm.resize(n);
    for (std::size_t i = 0; i < n; ++i) f.perm[i] = i;
    f.pivots.assign(n, 0.0);

    for (std::size_t i = 0; i < n; ++i)
        f.max_pivot = std::max(f.max_pivot, a[i * n + i]);
    const double cutoff = f.max_pivot * rel_tol;

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        for (std::size_t j = k + 1; j < n; ++j)
            if (a[j * n + j] > a[p * n + p]) p = j;
        if (p != k) {
            for (std::size_t c = 0; c < n; ++c) std::swap(a[k * n + c], a[p * n + c]);
            for (std::size_t r = 0; r < n; ++r) std::swap(a[r * n + k], a[r * n + p]);
            std::swap(f.perm[k], f.perm[p]);
        }
        const double d = a[k * n + k];
        f.pivots[k] = d;
        if (!(d > cutoff) || !(d > 0.0)) {
            f.rank = k;
            f.lower = std::move(a);
            return f;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            const double l = a[i * n + k] / d;
            for (std::size_t j = k + 1; j <= i; ++j)
                a[i * n + j] -= l * a[k * n + j];
            a[i * n + k] = l;
        }
        // Keep symmetry in the untouched part for later pivot searches.
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) a[i * n + j] = a[j * n + i];
    }
    f.rank = n;
    f.lower = std::move(a);
    return f;
}

std::vector<double> ldlt_solve(const PivotedLdlt& f, std::size_t n,
                               const std::vector<double>& b) {
    // Permute, forward-substitute through unit L, divide by D, back-substitute.
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = b[f.perm[i]];
        for (std::size_t k = 0; k < i; ++k) s -= f.lower[i * n + k] * y[k];
        y[i] = s;
    }
    for (std::size_t i = 0; i < n; ++i) y[i] /= f.pivots[i];
    std::vector<double> z(n);
    for (std::size_t ii = n; ii-- > 0;) {
        double s = y[ii];
        for (std::size_t k = ii + 1; k < n; ++k) s -= f.lower[k * n + ii] * z[k];
        z[ii] = s;
    }
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[f.perm[i]] = z[i];
    return x;
}

double one_norm(const std::vector<double>& a, std::size_t n) {
    double norm = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        double col = 0.0;
        for (std::size_t i = 0; i < n; ++i) col += std::abs(a[i * n + j]);
        norm = std::max(norm, col);
    }
    return norm;
}

} // namespace loadsift::detail

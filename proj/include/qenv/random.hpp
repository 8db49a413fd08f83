#pragma once

#include <cstdint>
#include <random>

#include "qenv/matrix.hpp"

namespace qenv {

/// Deterministic seed derivation for independent subtasks (restarts,
/// samples). splitmix64 applied to the combined words.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
    std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Matrix of independent standard complex Gaussians.
inline ComplexMatrix complex_ginibre(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    ComplexMatrix g(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            g(r, c) = cplx(gauss(rng), gauss(rng));
    return g;
}

namespace detail {

// Modified Gram-Schmidt QR of a square matrix, returning Q with the
// R diagonal normalized real positive. On a complex Ginibre input this
// convention makes Q Haar distributed.
inline ComplexMatrix mgs_orthonormalize(ComplexMatrix a) {
    const std::size_t n = a.rows();
    for (std::size_t j = 0; j < a.cols(); ++j) {
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t k = 0; k < j; ++k) {
                cplx proj = 0.0;
                for (std::size_t r = 0; r < n; ++r) proj += std::conj(a(r, k)) * a(r, j);
                for (std::size_t r = 0; r < n; ++r) a(r, j) -= proj * a(r, k);
            }
        }
        double norm = 0.0;
        for (std::size_t r = 0; r < n; ++r) norm += std::norm(a(r, j));
        norm = std::sqrt(norm);
        if (norm < 1e-12)
            throw std::runtime_error("mgs_orthonormalize: rank-deficient input");
        for (std::size_t r = 0; r < n; ++r) a(r, j) /= norm;
    }
    return a;
}

} // namespace detail

/// Haar-distributed random unitary, deterministic for a fixed seed.
inline ComplexMatrix haar_random_unitary(std::size_t dim, std::uint64_t seed) {
    if (dim < 1) throw std::invalid_argument("haar_random_unitary: dim must be >= 1");
    std::mt19937_64 rng(seed);
    return detail::mgs_orthonormalize(complex_ginibre(dim, dim, rng));
}

/// Extends an isometry (orthonormal columns, rows >= cols) to a square
/// unitary whose leading columns equal the input entrywise. Completion
/// columns come from Gram-Schmidt against the standard basis, picking at
/// each step the candidate with the largest residual.
inline ComplexMatrix complete_isometry(const ComplexMatrix& v) {
    const std::size_t n = v.rows();
    const std::size_t k = v.cols();
    if (k > n) throw std::invalid_argument("complete_isometry: more columns than rows");
    const ComplexMatrix gram = v.adjoint() * v;
    if (distance_frobenius(gram, ComplexMatrix::identity(k)) > 1e-10)
        throw std::invalid_argument("complete_isometry: columns not orthonormal");

    ComplexMatrix u(n, n);
    for (std::size_t c = 0; c < k; ++c)
        for (std::size_t r = 0; r < n; ++r) u(r, c) = v(r, c);

    std::vector<cplx> col(n);
    for (std::size_t c = k; c < n; ++c) {
        double best_norm = -1.0;
        std::vector<cplx> best(n);
        for (std::size_t cand = 0; cand < n; ++cand) {
            for (std::size_t r = 0; r < n; ++r) col[r] = (r == cand) ? cplx(1.0) : cplx(0.0);
            for (int pass = 0; pass < 2; ++pass) {
                for (std::size_t j = 0; j < c; ++j) {
                    cplx proj = 0.0;
                    for (std::size_t r = 0; r < n; ++r) proj += std::conj(u(r, j)) * col[r];
                    for (std::size_t r = 0; r < n; ++r) col[r] -= proj * u(r, j);
                }
            }
            double nn = 0.0;
            for (std::size_t r = 0; r < n; ++r) nn += std::norm(col[r]);
            if (nn > best_norm) {
                best_norm = nn;
                best = col;
            }
        }
        const double norm = std::sqrt(best_norm);
        if (norm < 1e-12)
            throw std::runtime_error("complete_isometry: completion failed");
        for (std::size_t r = 0; r < n; ++r) u(r, c) = best[r] / norm;
    }
    return u;
}

} // namespace qenv

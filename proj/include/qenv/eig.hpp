#pragma once

#include <algorithm>
#include <numeric>
#include <span>

#include "qenv/matrix.hpp"

namespace qenv {

/// Eigendecomposition of a Hermitian matrix, eigenvalues sorted descending,
/// eigenvectors stored as orthonormal columns.
struct HermitianEigen {
    std::vector<double> eigenvalues;
    ComplexMatrix eigenvectors;
};

namespace detail {

inline double offdiag_frobenius(const ComplexMatrix& m) {
    double s = 0.0;
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            if (r != c) s += std::norm(m(r, c));
    return std::sqrt(s);
}

} // namespace detail

/// Cyclic Jacobi eigendecomposition for Hermitian matrices. The input is
/// symmetrized first; entries more than `herm_tol` away from Hermiticity
/// are rejected. Converges when the off-diagonal Frobenius mass drops
/// below 1e-13 * ||M||_F, with a hard cap of 100 sweeps.
inline HermitianEigen hermitian_eig(const ComplexMatrix& m, double herm_tol = 1e-10) {
    if (!m.is_square()) throw std::invalid_argument("hermitian_eig: matrix not square");
    const std::size_t n = m.rows();

    // Symmetrize while measuring the Hermiticity defect in one pass.
    ComplexMatrix a(n, n);
    double defect2 = 0.0;
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            const cplx sym = 0.5 * (m(r, c) + std::conj(m(c, r)));
            defect2 += std::norm(m(r, c) - std::conj(m(c, r)));
            a(r, c) = sym;
        }
    if (std::sqrt(defect2) > herm_tol * std::max(1.0, m.frobenius_norm()))
        throw std::invalid_argument("hermitian_eig: matrix not Hermitian within tolerance");

    ComplexMatrix v = ComplexMatrix::identity(n);
    const double stop = 1e-13 * std::max(1e-300, a.frobenius_norm());

    for (int sweep = 0; sweep < 100; ++sweep) {
        if (detail::offdiag_frobenius(a) <= stop) break;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cplx apq = a(p, q);
                // sqrt(norm) instead of abs: no overflow at this scale and
                // it avoids the libm hypot call in the innermost loop.
                const double d = std::sqrt(std::norm(apq));
                if (d <= 1e-300) continue;
                // phase e^{i phi} with a(p,q) * e^{i phi} real positive
                const cplx phase = std::conj(apq) / d;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double theta = (aqq - app) / (2.0 * d);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                // Rotation R restricted to the (p,q) plane:
                //   R_pp = c, R_pq = s, R_qp = -s*phase, R_qq = c*phase.
                const cplx rqp = -s * phase;
                const cplx rqq = c * phase;
                for (std::size_t i = 0; i < n; ++i) {
                    const cplx aip = a(i, p), aiq = a(i, q);
                    a(i, p) = aip * c + aiq * rqp;
                    a(i, q) = aip * s + aiq * rqq;
                }
                for (std::size_t j = 0; j < n; ++j) {
                    const cplx apj = a(p, j), aqj = a(q, j);
                    a(p, j) = c * apj + std::conj(rqp) * aqj;
                    a(q, j) = s * apj + std::conj(rqq) * aqj;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const cplx vip = v(i, p), viq = v(i, q);
                    v(i, p) = vip * c + viq * rqp;
                    v(i, q) = vip * s + viq * rqq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return a(i, i).real() > a(j, j).real(); });

    HermitianEigen out;
    out.eigenvalues.resize(n);
    out.eigenvectors = ComplexMatrix(n, n);
    for (std::size_t c = 0; c < n; ++c) {
        out.eigenvalues[c] = a(order[c], order[c]).real();
        for (std::size_t r = 0; r < n; ++r) out.eigenvectors(r, c) = v(r, order[c]);
    }
    return out;
}

/// Hermitian generator from a packed real vector of length dim^2:
/// the first dim entries are the diagonal, the remaining dim(dim-1)
/// entries are (re, im) pairs for the strict upper triangle in row-major
/// order.
inline ComplexMatrix hermitian_from_vector(std::span<const double> v, std::size_t dim) {
    if (v.size() != dim * dim)
        throw std::invalid_argument("hermitian_from_vector: expected dim^2 entries");
    ComplexMatrix h(dim, dim);
    std::size_t idx = 0;
    for (std::size_t i = 0; i < dim; ++i) h(i, i) = v[idx++];
    for (std::size_t p = 0; p < dim; ++p)
        for (std::size_t q = p + 1; q < dim; ++q) {
            const double re = v[idx++];
            const double im = v[idx++];
            h(p, q) = cplx(re, im);
            h(q, p) = cplx(re, -im);
        }
    return h;
}

/// exp(iH) for the Hermitian H packed in v; always exactly unitary up to
/// the eigendecomposition residual.
inline ComplexMatrix unitary_from_generator(std::span<const double> v, std::size_t dim) {
    const ComplexMatrix h = hermitian_from_vector(v, dim);
    const HermitianEigen eig = hermitian_eig(h, 1e-9);
    ComplexMatrix phased = eig.eigenvectors;
    for (std::size_t c = 0; c < dim; ++c) {
        const cplx phase = std::exp(cplx(0.0, eig.eigenvalues[c]));
        for (std::size_t r = 0; r < dim; ++r) phased(r, c) *= phase;
    }
    // phased * V^dag, with the adjoint read in place.
    ComplexMatrix u(dim, dim);
    for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t k = 0; k < dim; ++k) {
            const cplx prk = phased(r, k);
            for (std::size_t c = 0; c < dim; ++c)
                u(r, c) += prk * std::conj(eig.eigenvectors(c, k));
        }
    return u;
}

inline ComplexMatrix unitary_from_generator(const std::vector<double>& v, std::size_t dim) {
    return unitary_from_generator(std::span<const double>(v), dim);
}

} // namespace qenv

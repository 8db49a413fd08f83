#pragma once

#include "qenv/eig.hpp"
#include "qenv/matrix.hpp"

namespace qenv {

struct ChoiMatrix;

/// A completely positive trace-preserving map in Kraus form: in_dim n,
/// out_dim m and a nonempty list of m x n operation elements.
struct QuantumChannel {
    std::size_t in_dim = 0;
    std::size_t out_dim = 0;
    std::vector<ComplexMatrix> kraus;

    QuantumChannel() = default;
    QuantumChannel(std::size_t n, std::size_t m, std::vector<ComplexMatrix> ops)
        : in_dim(n), out_dim(m), kraus(std::move(ops)) {
        if (kraus.empty()) throw std::invalid_argument("QuantumChannel: empty Kraus list");
        for (const auto& a : kraus)
            if (a.rows() != out_dim || a.cols() != in_dim)
                throw std::invalid_argument("QuantumChannel: Kraus operator shape mismatch");
    }

    static QuantumChannel identity(std::size_t n) {
        return QuantumChannel(n, n, {ComplexMatrix::identity(n)});
    }
};

/// Choi fingerprint J = sum_ij E_ij (x) chi(E_ij), input-index factor
/// first, unnormalized (trace = n for trace-preserving maps).
struct ChoiMatrix {
    std::size_t n = 0;
    std::size_t m = 0;
    ComplexMatrix matrix;
};

inline ComplexMatrix apply(const QuantumChannel& ch, const ComplexMatrix& rho) {
    if (rho.rows() != ch.in_dim || rho.cols() != ch.in_dim)
        throw std::invalid_argument("apply: state dimension mismatch");
    ComplexMatrix out(ch.out_dim, ch.out_dim);
    for (const auto& a : ch.kraus) out += a * rho * a.adjoint();
    return out;
}

inline ChoiMatrix choi(const QuantumChannel& ch) {
    const std::size_t n = ch.in_dim, m = ch.out_dim;
    ComplexMatrix j(n * m, n * m);
    // J[(i,r),(j,c)] = sum_k A_k[r,i] conj(A_k[c,j])
    for (const auto& a : ch.kraus)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t r = 0; r < m; ++r) {
                const cplx ari = a(r, i);
                if (ari == cplx(0.0, 0.0)) continue;
                for (std::size_t jj = 0; jj < n; ++jj)
                    for (std::size_t c = 0; c < m; ++c)
                        j(i * m + r, jj * m + c) += ari * std::conj(a(c, jj));
            }
    return ChoiMatrix{n, m, std::move(j)};
}

inline double trace_preservation_residual(const QuantumChannel& ch) {
    ComplexMatrix s(ch.in_dim, ch.in_dim);
    for (const auto& a : ch.kraus) s += a.adjoint() * a;
    return distance_frobenius(s, ComplexMatrix::identity(ch.in_dim));
}

inline bool is_trace_preserving(const QuantumChannel& ch, double tol = 1e-9) {
    if (tol <= 0.0) throw std::invalid_argument("is_trace_preserving: tol must be positive");
    return trace_preservation_residual(ch) <= tol;
}

inline double min_choi_eigenvalue(const ChoiMatrix& j) {
    const HermitianEigen eig = hermitian_eig(j.matrix);
    return eig.eigenvalues.back();
}

inline bool is_completely_positive(const ChoiMatrix& j, double tol = 1e-9) {
    if (tol <= 0.0) throw std::invalid_argument("is_completely_positive: tol must be positive");
    return min_choi_eigenvalue(j) >= -tol;
}

inline bool is_completely_positive(const QuantumChannel& ch, double tol = 1e-9) {
    return is_completely_positive(choi(ch), tol);
}

/// Canonical Kraus extraction: reshape Choi eigenvectors scaled by the
/// square-rooted eigenvalues, discarding eigenvalues below tol.
inline QuantumChannel kraus_from_choi(const ChoiMatrix& j, double tol = 1e-10) {
    const std::size_t n = j.n, m = j.m;
    const HermitianEigen eig = hermitian_eig(j.matrix);
    if (eig.eigenvalues.back() < -tol)
        throw std::invalid_argument("kraus_from_choi: Choi matrix is not positive semidefinite");
    std::vector<ComplexMatrix> ops;
    for (std::size_t k = 0; k < eig.eigenvalues.size(); ++k) {
        if (eig.eigenvalues[k] < tol) continue;
        const double w = std::sqrt(eig.eigenvalues[k]);
        ComplexMatrix a(m, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t r = 0; r < m; ++r)
                a(r, i) = w * eig.eigenvectors(i * m + r, k);
        ops.push_back(std::move(a));
    }
    if (ops.empty()) ops.push_back(ComplexMatrix::zero(m, n));
    return QuantumChannel(n, m, std::move(ops));
}

/// Number of Choi eigenvalues above tol: the minimal number of operation
/// elements.
inline std::size_t kraus_rank(const QuantumChannel& ch, double tol = 1e-10) {
    if (tol <= 0.0) throw std::invalid_argument("kraus_rank: tol must be positive");
    const HermitianEigen eig = hermitian_eig(choi(ch).matrix);
    std::size_t count = 0;
    for (double v : eig.eigenvalues)
        if (v > tol) ++count;
    return count;
}

/// Sufficient extremality condition: Kraus rank at most the output
/// dimension.
inline bool is_extremal_rank_condition(const QuantumChannel& ch, double tol = 1e-10) {
    return kraus_rank(ch, tol) <= ch.out_dim;
}

/// Unitary remixing of the operation elements, B_i = sum_j u_ij A_j.
/// The operator list is zero-padded to the side of u; the channel itself
/// is unchanged.
inline QuantumChannel mix_kraus(const QuantumChannel& ch, const ComplexMatrix& u) {
    if (!u.is_square() || u.rows() < ch.kraus.size())
        throw std::invalid_argument("mix_kraus: mixing matrix too small");
    if (distance_frobenius(u.adjoint() * u, ComplexMatrix::identity(u.rows())) > 1e-10)
        throw std::invalid_argument("mix_kraus: mixing matrix not unitary");
    const std::size_t p = u.rows();
    std::vector<ComplexMatrix> mixed(p, ComplexMatrix::zero(ch.out_dim, ch.in_dim));
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t jj = 0; jj < ch.kraus.size(); ++jj) {
            const cplx w = u(i, jj);
            if (w == cplx(0.0, 0.0)) continue;
            mixed[i] += w * ch.kraus[jj];
        }
    return QuantumChannel(ch.in_dim, ch.out_dim, std::move(mixed));
}

/// Frobenius distance between Choi fingerprints divided by the input
/// dimension; zero exactly when the maps coincide.
inline double channel_distance(const QuantumChannel& a, const QuantumChannel& b) {
    if (a.in_dim != b.in_dim || a.out_dim != b.out_dim)
        throw std::invalid_argument("channel_distance: dimension mismatch");
    return distance_frobenius(choi(a).matrix, choi(b).matrix) / static_cast<double>(a.in_dim);
}

/// Von Neumann measurement in the computational basis: Kraus operators
/// are the n rank-1 projectors.
inline QuantumChannel von_neumann_channel(std::size_t n) {
    if (n < 1) throw std::invalid_argument("von_neumann_channel: n must be >= 1");
    std::vector<ComplexMatrix> ops;
    for (std::size_t i = 0; i < n; ++i) {
        ComplexMatrix p(n, n);
        p(i, i) = 1.0;
        ops.push_back(std::move(p));
    }
    return QuantumChannel(n, n, std::move(ops));
}

} // namespace qenv

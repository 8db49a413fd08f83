#pragma once

#include <utility>

#include "qenv/channel.hpp"
#include "qenv/random.hpp"

namespace qenv {

/// Spectrum of the initial environment state. The eigenbasis is fixed to
/// the computational basis; any other eigenbasis is absorbed into the
/// joint unitary.
struct EnvironmentSpec {
    std::size_t dim = 1;
    std::vector<double> spectrum;

    EnvironmentSpec() : spectrum{1.0} {}
    EnvironmentSpec(std::size_t d, std::vector<double> lambda)
        : dim(d), spectrum(std::move(lambda)) {
        if (dim < 1 || spectrum.size() != dim)
            throw std::invalid_argument("EnvironmentSpec: spectrum length must equal dim");
        double sum = 0.0;
        for (std::size_t j = 0; j < dim; ++j) {
            if (spectrum[j] < 0.0)
                throw std::invalid_argument("EnvironmentSpec: negative eigenvalue");
            if (j > 0 && spectrum[j] > spectrum[j - 1] + 1e-12)
                throw std::invalid_argument("EnvironmentSpec: spectrum not sorted descending");
            sum += spectrum[j];
        }
        if (std::abs(sum - 1.0) > 1e-12)
            throw std::invalid_argument("EnvironmentSpec: spectrum does not sum to 1");
    }

    static EnvironmentSpec pure(std::size_t d) {
        std::vector<double> lambda(d, 0.0);
        lambda[0] = 1.0;
        EnvironmentSpec env;
        env.dim = d;
        env.spectrum = std::move(lambda);
        return env;
    }
};

/// Physical implementation of a channel: environment spectrum plus a
/// joint unitary on system (x) environment, system factor first.
struct DilationModel {
    std::size_t n = 1;
    std::size_t m = 1;
    EnvironmentSpec env;
    ComplexMatrix unitary;

    DilationModel() = default;
    DilationModel(std::size_t n_, std::size_t m_, EnvironmentSpec env_, ComplexMatrix u)
        : n(n_), m(m_), env(std::move(env_)), unitary(std::move(u)) {
        const std::size_t side = n * env.dim;
        if (!unitary.is_square() || unitary.rows() != side)
            throw std::invalid_argument("DilationModel: unitary side must be n*d");
        if (side % m != 0)
            throw std::invalid_argument("DilationModel: m must divide n*d");
        if (distance_frobenius(unitary.adjoint() * unitary, ComplexMatrix::identity(side)) > 1e-10)
            throw std::invalid_argument("DilationModel: matrix not unitary");
    }
};

/// Operation elements grouped by environment eigenvalue: block j holds
/// the n*d/m operators A_jk, constrained by
/// sum_k A_ik^dag A_jk = delta_ij lambda_i 1_n.
struct GroupedKraus {
    std::size_t n = 1;
    std::size_t m = 1;
    std::vector<double> lambda;
    std::vector<std::vector<ComplexMatrix>> blocks;

    QuantumChannel flatten() const {
        std::vector<ComplexMatrix> ops;
        for (const auto& block : blocks)
            for (const auto& a : block) ops.push_back(a);
        return QuantumChannel(n, m, std::move(ops));
    }
};

/// Grouped operation elements A_jk = sqrt(lambda_j) <e_k| U |j> read off
/// the joint unitary by block-reshaping its columns. The output space is
/// regrouped as H_m (x) H_{nd/m} by lexicographic index split.
inline GroupedKraus induced_channel(const DilationModel& dm) {
    const std::size_t n = dm.n, m = dm.m, d = dm.env.dim;
    if ((n * d) % m != 0)
        throw std::invalid_argument("induced_channel: m must divide n*d");
    const std::size_t traced = n * d / m;
    GroupedKraus gk;
    gk.n = n;
    gk.m = m;
    gk.lambda = dm.env.spectrum;
    gk.blocks.resize(d);
    for (std::size_t j = 0; j < d; ++j) {
        const double w = std::sqrt(dm.env.spectrum[j]);
        gk.blocks[j].reserve(traced);
        for (std::size_t k = 0; k < traced; ++k) {
            ComplexMatrix a(m, n);
            for (std::size_t r = 0; r < m; ++r)
                for (std::size_t s = 0; s < n; ++s)
                    a(r, s) = w * dm.unitary(r * traced + k, s * d + j);
            gk.blocks[j].push_back(std::move(a));
        }
    }
    return gk;
}

/// Residual of the grouped-Kraus constraint:
/// max_ij || sum_k A_ik^dag A_jk - delta_ij lambda_i 1_n ||_F.
inline double verify_env_constraint(const GroupedKraus& gk) {
    const std::size_t d = gk.blocks.size();
    if (gk.lambda.size() != d)
        throw std::invalid_argument("verify_env_constraint: lambda/block count mismatch");
    const std::size_t per_block = d == 0 ? 0 : gk.blocks[0].size();
    for (const auto& block : gk.blocks)
        if (block.size() != per_block)
            throw std::invalid_argument("verify_env_constraint: ragged blocks");
    double worst = 0.0;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            ComplexMatrix s(gk.n, gk.n);
            for (std::size_t k = 0; k < per_block; ++k)
                s += gk.blocks[i][k].adjoint() * gk.blocks[j][k];
            if (i == j)
                s -= gk.lambda[i] * ComplexMatrix::identity(gk.n);
            worst = std::max(worst, s.frobenius_norm());
        }
    return worst;
}

/// Pure-state dilation: stack the Kraus operators into an isometry
/// V|psi> = sum_k A_k|psi> (x) |e_k>, complete it to a unitary, and
/// initialize the environment in |0><0|. The Kraus list is zero-padded
/// to the least d with m | n*d.
inline DilationModel stinespring_from_kraus(const QuantumChannel& ch) {
    if (!is_trace_preserving(ch, 1e-9))
        throw std::invalid_argument("stinespring_from_kraus: channel not trace-preserving");
    const std::size_t n = ch.in_dim, m = ch.out_dim;
    std::size_t d = ch.kraus.size();
    while ((n * d) % m != 0) ++d;
    const std::size_t traced = n * d / m;

    ComplexMatrix v(n * d, n);
    for (std::size_t k = 0; k < ch.kraus.size(); ++k)
        for (std::size_t r = 0; r < m; ++r)
            for (std::size_t s = 0; s < n; ++s)
                v(r * traced + k, s) = ch.kraus[k](r, s);

    const ComplexMatrix w = complete_isometry(v);

    // Permute columns so that column s of the isometry sits at the env
    // basis slot |s>(x)|0>, i.e. column index s*d.
    ComplexMatrix u(n * d, n * d);
    std::vector<bool> taken(n * d, false);
    for (std::size_t s = 0; s < n; ++s) {
        for (std::size_t r = 0; r < n * d; ++r) u(r, s * d) = w(r, s);
        taken[s * d] = true;
    }
    std::size_t next = n;
    for (std::size_t c = 0; c < n * d; ++c) {
        if (taken[c]) continue;
        for (std::size_t r = 0; r < n * d; ++r) u(r, c) = w(r, next);
        ++next;
    }
    return DilationModel(n, m, EnvironmentSpec::pure(d), std::move(u));
}

/// Parameter count of maps implementable with a d-dimensional pure
/// environment: 2n^2 d - (nd/m)^2 - n^2, defined only when m divides nd.
inline long long param_count_pure(long long n, long long m, long long d) {
    if (n < 1 || m < 1 || d < 1)
        throw std::invalid_argument("param_count_pure: dimensions must be positive");
    if ((n * d) % m != 0)
        throw std::invalid_argument("param_count_pure: m must divide n*d");
    return 2 * n * n * d - (n * d / m) * (n * d / m) - n * n;
}

/// Dimension of the full map space: n^2 (m^2 - 1).
inline long long param_count_tcp(long long n, long long m) {
    if (n < 1 || m < 1)
        throw std::invalid_argument("param_count_tcp: dimensions must be positive");
    return n * n * (m * m - 1);
}

/// Lower and upper parameter-count bounds for a d-dimensional mixed
/// environment. The upper bound (pure count at d^2) is capped at the
/// full-space dimension, which any subset is bounded by.
inline std::pair<long long, long long> mix_param_bounds(long long n, long long m, long long d) {
    const long long lower = param_count_pure(n, m, d);
    if ((n * d * d) % m != 0)
        throw std::invalid_argument("mix_param_bounds: m must divide n*d^2");
    // Past d^2 = m^2 the pure count leaves the meaningful range, so the
    // effective purifying dimension is clamped there (the full space is
    // an upper bound on any subset dimension).
    const long long upper =
        d * d >= m * m ? param_count_tcp(n, m) : param_count_pure(n, m, d * d);
    return {lower, upper};
}

} // namespace qenv

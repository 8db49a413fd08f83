#pragma once

#include "qenv/dilation.hpp"
#include "qenv/optim.hpp"

namespace qenv {

/// Outcome of a multistart environment search. A success is a
/// certificate: rebuilding the dilation from the returned parameters
/// reproduces best_residual. A failure is evidence at this budget only.
struct SearchResult {
    double best_residual = std::numeric_limits<double>::infinity();
    std::vector<double> best_unitary_params;
    std::vector<double> best_spectrum;
    bool success = false;
    std::size_t evals_used = 0;
    std::vector<double> per_restart_residuals;
};

namespace detail {

// Simplex map for the environment spectrum: d-1 unconstrained reals
// through a normalized exponential transform, sorted descending.
inline std::vector<double> spectrum_from_params(std::span<const double> t, std::size_t d) {
    std::vector<double> lambda(d);
    double mx = 0.0; // implicit d-th coordinate is 0
    for (double v : t) mx = std::max(mx, v);
    double sum = 0.0;
    for (std::size_t j = 0; j + 1 < d; ++j) {
        lambda[j] = std::exp(t[j] - mx);
        sum += lambda[j];
    }
    lambda[d - 1] = std::exp(-mx);
    sum += lambda[d - 1];
    for (auto& l : lambda) l /= sum;
    std::sort(lambda.begin(), lambda.end(), std::greater<double>());
    return lambda;
}

inline DilationModel dilation_from_params(std::size_t n, std::size_t m, std::size_t d,
                                          std::span<const double> params) {
    const std::size_t gen = (n * d) * (n * d);
    if (params.size() != gen + d - 1)
        throw std::invalid_argument("dilation_from_params: wrong parameter count");
    ComplexMatrix u = unitary_from_generator(params.subspan(0, gen), n * d);
    std::vector<double> lambda = spectrum_from_params(params.subspan(gen), d);
    EnvironmentSpec env;
    env.dim = d;
    env.spectrum = std::move(lambda);
    DilationModel dm;
    dm.n = n;
    dm.m = m;
    dm.env = std::move(env);
    dm.unitary = std::move(u);
    return dm;
}

} // namespace detail

/// Squared Choi Frobenius distance between the target and the channel
/// induced by the parameterized d-dimensional dilation. Smooth and
/// nonnegative in the parameters.
inline double dilation_objective(const ChoiMatrix& target, std::size_t d,
                                 std::span<const double> params) {
    const std::size_t n = target.n, m = target.m;
    if ((n * d) % m != 0)
        throw std::invalid_argument("dilation_objective: m must divide n*d");
    const std::size_t gen = (n * d) * (n * d);
    if (params.size() != gen + d - 1)
        throw std::invalid_argument("dilation_objective: wrong parameter count");
    const ComplexMatrix u = unitary_from_generator(params.subspan(0, gen), n * d);
    const std::vector<double> lambda = detail::spectrum_from_params(params.subspan(gen), d);
    const std::size_t traced = n * d / m;
    // Choi entry of the induced channel, accumulated in place:
    // J[(i,r),(j,c)] = sum_{j',k} lambda_j' U[r*t+k, i*d+j'] conj(U[c*t+k, j*d+j']).
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t r = 0; r < m; ++r)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t c = 0; c < m; ++c) {
                    cplx entry(0.0, 0.0);
                    for (std::size_t jp = 0; jp < d; ++jp)
                        for (std::size_t k = 0; k < traced; ++k)
                            entry += lambda[jp] * u(r * traced + k, i * d + jp) *
                                     std::conj(u(c * traced + k, j * d + jp));
                    s += std::norm(entry - target.matrix(i * m + r, j * m + c));
                }
    return s;
}

inline double dilation_objective(const ChoiMatrix& target, std::size_t d,
                                 const std::vector<double>& params) {
    return dilation_objective(target, d, std::span<const double>(params));
}

/// Multistart search for a d-dimensional mixed-environment dilation of
/// the target channel. Deterministic given cfg.seed; the restart loop
/// stops early once a certificate is found.
inline SearchResult search_environment(const QuantumChannel& target, std::size_t d,
                                       const SearchConfig& cfg) {
    if ((target.in_dim * d) % target.out_dim != 0)
        throw std::invalid_argument("search_environment: m must divide n*d");
    const ChoiMatrix tj = choi(target);
    const std::size_t dim = (target.in_dim * d) * (target.in_dim * d) + d - 1;
    Objective f = [&tj, d](const std::vector<double>& p) {
        return dilation_objective(tj, d, p);
    };
    const MultistartResult res = multistart_minimize(f, dim, cfg);

    SearchResult out;
    out.best_residual = res.best_value;
    out.success = res.best_value <= cfg.success_tol;
    out.evals_used = res.evals_used;
    out.per_restart_residuals = res.per_restart_values;
    const std::size_t gen = (target.in_dim * d) * (target.in_dim * d);
    out.best_unitary_params.assign(res.best_point.begin(), res.best_point.begin() + gen);
    out.best_spectrum = detail::spectrum_from_params(
        std::span<const double>(res.best_point).subspan(gen), d);
    return out;
}

/// Rebuilds the dilation from a search result and returns the achieved
/// squared Choi distance, for independent re-verification of successes.
inline double reverify_search_result(const QuantumChannel& target, std::size_t d,
                                     const SearchResult& res) {
    ComplexMatrix u = unitary_from_generator(res.best_unitary_params, target.in_dim * d);
    EnvironmentSpec env;
    env.dim = d;
    env.spectrum = res.best_spectrum;
    DilationModel dm;
    dm.n = target.in_dim;
    dm.m = target.out_dim;
    dm.env = std::move(env);
    dm.unitary = std::move(u);
    const double dist =
        distance_frobenius(choi(induced_channel(dm).flatten()).matrix, choi(target).matrix);
    return dist * dist;
}

/// Smallest environment dimension up to d_max whose search succeeds,
/// together with all per-dimension results. Returns d_max + 1 when every
/// dimension fails; a success is a certificate, minimality is evidence.
inline std::pair<std::size_t, std::vector<SearchResult>>
minimal_env_dimension(const QuantumChannel& target, std::size_t d_max, const SearchConfig& cfg) {
    if (d_max < 1) throw std::invalid_argument("minimal_env_dimension: d_max must be >= 1");
    std::vector<SearchResult> results;
    for (std::size_t d = 1; d <= d_max; ++d) {
        if ((target.in_dim * d) % target.out_dim != 0) continue;
        SearchConfig sub = cfg;
        sub.seed = derive_seed(cfg.seed, d);
        results.push_back(search_environment(target, d, sub));
        if (results.back().success) return {d, std::move(results)};
    }
    return {d_max + 1, std::move(results)};
}

/// Haar-random channel: a random unitary on system (x) m^2-dimensional
/// pure environment, reduced to its nm operation elements.
inline QuantumChannel sample_random_channel(std::size_t n, std::size_t m, std::uint64_t seed) {
    if (n < 1 || m < 1)
        throw std::invalid_argument("sample_random_channel: dimensions must be positive");
    const std::size_t d = m * m;
    DilationModel dm;
    dm.n = n;
    dm.m = m;
    dm.env = EnvironmentSpec::pure(d);
    dm.unitary = haar_random_unitary(n * d, seed);
    // Only the lambda_1 = 1 block is nonzero for a pure environment,
    // giving the expected n*m operation elements.
    GroupedKraus gk = induced_channel(dm);
    return QuantumChannel(n, m, std::move(gk.blocks[0]));
}

/// Per-sample outcome record for the random-sampling experiment.
struct FractionExperiment {
    double fraction = 0.0;
    std::vector<std::uint64_t> sample_seeds;
    std::vector<SearchResult> results;
};

/// Fraction of Haar-random qubit channels implementable with a
/// d-dimensional environment at the given budget.
inline FractionExperiment qubit_fraction_experiment(std::size_t count, const SearchConfig& cfg,
                                                    std::size_t d = 2) {
    if (count < 1) throw std::invalid_argument("qubit_fraction_experiment: count must be >= 1");
    FractionExperiment out;
    std::size_t successes = 0;
    for (std::size_t i = 0; i < count; ++i) {
        const std::uint64_t sample_seed = derive_seed(cfg.seed, 2 * i);
        const QuantumChannel ch = sample_random_channel(2, 2, sample_seed);
        SearchConfig sub = cfg;
        sub.seed = derive_seed(cfg.seed, 2 * i + 1);
        SearchResult res = search_environment(ch, d, sub);
        if (res.success) ++successes;
        out.sample_seeds.push_back(sample_seed);
        out.results.push_back(std::move(res));
    }
    out.fraction = static_cast<double>(successes) / static_cast<double>(count);
    return out;
}

} // namespace qenv

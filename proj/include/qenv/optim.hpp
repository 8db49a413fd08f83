#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <random>

#include "qenv/random.hpp"

namespace qenv {

using Objective = std::function<double(const std::vector<double>&)>;

/// Budget and seed for a multistart search.
struct SearchConfig {
    std::size_t restarts = 200;
    std::size_t max_evals_per_restart = 20000;
    double success_tol = 1e-8;
    std::uint64_t seed = 1234;
};

namespace detail {

struct NmResult {
    std::vector<double> point;
    double value = std::numeric_limits<double>::infinity();
    std::size_t evals = 0;
};

// Nelder-Mead with standard coefficients (reflection 1, expansion 2,
// contraction 1/2, shrink 1/2). Stops when the simplex diameter falls
// below 1e-12 or the evaluation budget runs out.
inline NmResult nelder_mead(const Objective& f, const std::vector<double>& x0,
                            double scale, std::size_t max_evals) {
    const std::size_t dim = x0.size();
    std::vector<std::vector<double>> simplex(dim + 1, x0);
    for (std::size_t i = 0; i < dim; ++i) simplex[i + 1][i] += scale;

    // Unevaluated vertices (exhausted budget) must never look optimal.
    std::vector<double> values(dim + 1, std::numeric_limits<double>::infinity());
    std::size_t evals = 0;
    for (std::size_t i = 0; i <= dim && evals < max_evals; ++i) {
        values[i] = f(simplex[i]);
        ++evals;
    }

    auto order = [&]() {
        for (std::size_t i = 1; i <= dim; ++i) {
            std::vector<double> px = std::move(simplex[i]);
            double pv = values[i];
            std::size_t j = i;
            while (j > 0 && values[j - 1] > pv) {
                simplex[j] = std::move(simplex[j - 1]);
                values[j] = values[j - 1];
                --j;
            }
            simplex[j] = std::move(px);
            values[j] = pv;
        }
    };
    auto diameter = [&]() {
        double worst = 0.0;
        for (std::size_t i = 1; i <= dim; ++i) {
            double d2 = 0.0;
            for (std::size_t k = 0; k < dim; ++k) {
                const double diff = simplex[i][k] - simplex[0][k];
                d2 += diff * diff;
            }
            worst = std::max(worst, d2);
        }
        return std::sqrt(worst);
    };

    order();
    std::vector<double> centroid(dim), xr(dim), xtry(dim);
    while (evals < max_evals && diameter() >= 1e-12) {
        for (std::size_t k = 0; k < dim; ++k) {
            double s = 0.0;
            for (std::size_t i = 0; i < dim; ++i) s += simplex[i][k];
            centroid[k] = s / static_cast<double>(dim);
        }
        for (std::size_t k = 0; k < dim; ++k)
            xr[k] = centroid[k] + (centroid[k] - simplex[dim][k]);
        const double fr = f(xr);
        ++evals;

        if (fr < values[0]) {
            for (std::size_t k = 0; k < dim; ++k)
                xtry[k] = centroid[k] + 2.0 * (centroid[k] - simplex[dim][k]);
            const double fe = f(xtry);
            ++evals;
            if (fe < fr) {
                simplex[dim] = xtry;
                values[dim] = fe;
            } else {
                simplex[dim] = xr;
                values[dim] = fr;
            }
        } else if (fr < values[dim - 1]) {
            simplex[dim] = xr;
            values[dim] = fr;
        } else {
            const bool outside = fr < values[dim];
            const std::vector<double>& base = outside ? xr : simplex[dim];
            for (std::size_t k = 0; k < dim; ++k)
                xtry[k] = centroid[k] + 0.5 * (base[k] - centroid[k]);
            const double fc = f(xtry);
            ++evals;
            if (fc < (outside ? fr : values[dim])) {
                simplex[dim] = xtry;
                values[dim] = fc;
            } else {
                for (std::size_t i = 1; i <= dim && evals < max_evals; ++i) {
                    for (std::size_t k = 0; k < dim; ++k)
                        simplex[i][k] = simplex[0][k] + 0.5 * (simplex[i][k] - simplex[0][k]);
                    values[i] = f(simplex[i]);
                    ++evals;
                }
            }
        }
        order();
    }
    return NmResult{simplex[0], values[0], evals};
}

} // namespace detail

struct MultistartResult {
    double best_value = std::numeric_limits<double>::infinity();
    std::vector<double> best_point;
    std::size_t evals_used = 0;
    std::vector<double> per_restart_values;
};

/// Multistart Nelder-Mead over [-pi, pi]^dim. Each restart owns a seed
/// derived from (cfg.seed, restart index) and runs one descent at initial
/// scale 0.5 until the simplex collapses or the per-restart budget runs
/// out. When `stop_on_success` is set the restart loop ends as soon as a
/// value at or below cfg.success_tol is found.
inline MultistartResult multistart_minimize(const Objective& f, std::size_t dim,
                                            const SearchConfig& cfg,
                                            bool stop_on_success = true) {
    MultistartResult out;
    for (std::size_t r = 0; r < cfg.restarts; ++r) {
        std::mt19937_64 rng(derive_seed(cfg.seed, r));
        std::uniform_real_distribution<double> uni(-M_PI, M_PI);
        std::vector<double> x(dim);
        for (auto& xi : x) xi = uni(rng);

        detail::NmResult nm = detail::nelder_mead(f, x, 0.5, cfg.max_evals_per_restart);
        out.evals_used += nm.evals;
        out.per_restart_values.push_back(nm.value);
        if (nm.value < out.best_value) {
            out.best_value = nm.value;
            out.best_point = std::move(nm.point);
        }
        if (stop_on_success && out.best_value <= cfg.success_tol) break;
    }
    return out;
}

} // namespace qenv

#pragma once

#include <array>

#include "qenv/optim.hpp"
#include "qenv/search.hpp"

namespace qenv {

/// Real coordinates x1..x24 packing the unitary-combination coefficients
/// a0..a3, b0..b3, c0..c3 as consecutive (re, im) pairs.
struct PolySystemPoint {
    std::array<double, 24> coords{};
};

namespace detail {

using CVec2 = std::array<cplx, 2>;

// Inner product, conjugate-linear in the left (bra) slot.
inline cplx braket(const CVec2& x, const CVec2& y) {
    return std::conj(x[0]) * y[0] + std::conj(x[1]) * y[1];
}

} // namespace detail

/// Sum of squared moduli of the eleven constraint expressions g1..g11 of
/// the two-Pauli unitary-combination system. Zero exactly at a solution;
/// the system provably has none, so the value is bounded away from zero.
inline double two_pauli_poly_residual(const PolySystemPoint& p) {
    std::array<cplx, 4> a, b, c;
    for (std::size_t k = 0; k < 4; ++k) {
        a[k] = cplx(p.coords[2 * k], p.coords[2 * k + 1]);
        b[k] = cplx(p.coords[8 + 2 * k], p.coords[8 + 2 * k + 1]);
        c[k] = cplx(p.coords[16 + 2 * k], p.coords[16 + 2 * k + 1]);
    }
    const double rs2 = 1.0 / std::sqrt(2.0);
    const detail::CVec2 u0{rs2 * (a[0] + c[0]), rs2 * (a[1] + c[1])};
    const detail::CVec2 u1{rs2 * (a[2] + c[2]), rs2 * (a[3] + c[3])};
    const detail::CVec2 w0{rs2 * (c[0] - a[0]), rs2 * (c[1] - a[1])};
    const detail::CVec2 w1{rs2 * (c[2] - a[2]), rs2 * (c[3] - a[3])};
    const detail::CVec2 v0{b[0], b[1]};
    const detail::CVec2 v1{b[2], b[3]};

    using detail::braket;
    const std::array<cplx, 11> g{
        braket(v0, w0) + braket(u0, v0),
        braket(v1, w1) + braket(u1, v1),
        braket(v0, w1) + braket(u0, v1),
        braket(w0, v1) + braket(v0, u1),
        braket(u0, u0) - braket(w0, w0),
        braket(u1, u1) - braket(w1, w1),
        braket(u0, u0) + braket(u1, u1) - 1.0,
        braket(v0, v0) + braket(v1, v1) - 1.0,
        braket(u0, v0) + braket(u1, v1),
        braket(u0, w0) + braket(u1, w1),
        braket(u0, u1) - braket(w0, w1),
    };
    double s = 0.0;
    for (const cplx& gj : g) s += std::norm(gj);
    return s;
}

/// Multistart minimization of the polynomial-system residual. Inverted
/// success semantics: success means the residual stayed above
/// cfg.success_tol in every restart, i.e. no restart came close to a
/// solution.
inline SearchResult two_pauli_infeasibility(const SearchConfig& cfg) {
    Objective f = [](const std::vector<double>& x) {
        PolySystemPoint p;
        std::copy(x.begin(), x.end(), p.coords.begin());
        return two_pauli_poly_residual(p);
    };
    const MultistartResult res = multistart_minimize(f, 24, cfg, /*stop_on_success=*/false);
    SearchResult out;
    out.best_residual = res.best_value;
    out.best_unitary_params = res.best_point;
    out.evals_used = res.evals_used;
    out.per_restart_residuals = res.per_restart_values;
    out.success = res.best_value > cfg.success_tol;
    return out;
}

} // namespace qenv

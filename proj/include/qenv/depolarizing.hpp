#pragma once

#include <array>
#include <tuple>

#include "qenv/dilation.hpp"
#include "qenv/optim.hpp"

namespace qenv {

/// Probability 4-vector over the Pauli conjugations (1, sx, sy, sz).
struct GeneralizedDepolarizing {
    std::array<double, 4> eps{1.0, 0.0, 0.0, 0.0};

    GeneralizedDepolarizing() = default;
    explicit GeneralizedDepolarizing(std::array<double, 4> e) : eps(e) {
        double sum = 0.0;
        for (double v : eps) {
            if (v < 0.0)
                throw std::invalid_argument("GeneralizedDepolarizing: negative weight");
            sum += v;
        }
        if (std::abs(sum - 1.0) > 1e-12)
            throw std::invalid_argument("GeneralizedDepolarizing: weights do not sum to 1");
    }
};

/// Cube coordinates of a generalized depolarizing channel; valid points
/// lie in the tetrahedron with vertices (1,1,1), (1,-1,-1), (-1,1,-1),
/// (-1,-1,1).
struct TetraPoint {
    double x = 0.0, y = 0.0, z = 0.0;
};

/// Angles of the generalized root-SWAP interaction.
struct QubitEnvAngles {
    double theta = 0.0, phi1 = 0.0, phi2 = 0.0;
};

/// Mixing parameter of the two-Pauli channel, 0 <= x <= 1.
struct TwoPauliParam {
    double x = 0.0;
    explicit TwoPauliParam(double x_) : x(x_) {
        if (x < 0.0 || x > 1.0)
            throw std::invalid_argument("TwoPauliParam: x must lie in [0, 1]");
    }
};

inline QuantumChannel channel_from_epsilon(const GeneralizedDepolarizing& e) {
    const std::array<ComplexMatrix, 4> paulis{ComplexMatrix::identity(2), pauli_x(),
                                              pauli_y(), pauli_z()};
    std::vector<ComplexMatrix> ops;
    for (std::size_t i = 0; i < 4; ++i)
        if (e.eps[i] > 0.0) ops.push_back(std::sqrt(e.eps[i]) * paulis[i]);
    if (ops.empty()) throw std::invalid_argument("channel_from_epsilon: all weights zero");
    return QuantumChannel(2, 2, std::move(ops));
}

inline TetraPoint tetra_from_epsilon(const GeneralizedDepolarizing& e) {
    const auto& [e1, e2, e3, e4] = e.eps;
    return TetraPoint{e1 + e2 - e3 - e4, e1 - e2 + e3 - e4, e1 - e2 - e3 + e4};
}

inline GeneralizedDepolarizing epsilon_from_tetra(const TetraPoint& p) {
    const std::array<double, 4> eps{(1.0 + p.x + p.y + p.z) / 4.0, (1.0 + p.x - p.y - p.z) / 4.0,
                                    (1.0 - p.x + p.y - p.z) / 4.0, (1.0 - p.x - p.y + p.z) / 4.0};
    for (std::size_t i = 0; i < 4; ++i)
        if (eps[i] < -1e-12)
            throw std::invalid_argument("epsilon_from_tetra: point outside tetrahedron, eps" +
                                        std::to_string(i + 1) + " negative");
    std::array<double, 4> clipped = eps;
    for (double& v : clipped) v = std::max(v, 0.0);
    return GeneralizedDepolarizing(clipped);
}

/// Generalized root-SWAP interaction on system (x) environment, both
/// qubits, system index first.
inline ComplexMatrix unitary_from_angles(const QubitEnvAngles& a) {
    const cplx et = std::exp(cplx(0.0, a.theta));
    const double c1 = std::cos(a.phi1), s1 = std::sin(a.phi1);
    const double c2 = std::cos(a.phi2), s2 = std::sin(a.phi2);
    const cplx i1(0.0, 1.0);
    ComplexMatrix u(4, 4);
    u(0, 0) = et * c1;
    u(0, 3) = i1 * et * s1;
    u(1, 1) = c2;
    u(1, 2) = i1 * s2;
    u(2, 1) = i1 * s2;
    u(2, 2) = c2;
    u(3, 0) = i1 * et * s1;
    u(3, 3) = et * c1;
    return u;
}

/// Depolarizing weights realized by unitary_from_angles acting on a
/// maximally mixed environment qubit. The labeling agrees with
/// channel_from_epsilon with no relabeling (verified in tests against
/// the induced dilation channel).
inline GeneralizedDepolarizing epsilon_from_angles(const QubitEnvAngles& a) {
    const double c1 = std::cos(a.phi1), s1 = std::sin(a.phi1);
    const double c2 = std::cos(a.phi2), s2 = std::sin(a.phi2);
    const double ct = std::cos(a.theta);
    std::array<double, 4> eps{(c1 * c1 + c2 * c2 + 2.0 * c1 * c2 * ct) / 4.0,
                              (s1 * s1 + s2 * s2 + 2.0 * s1 * s2 * ct) / 4.0,
                              (s1 * s1 + s2 * s2 - 2.0 * s1 * s2 * ct) / 4.0,
                              (c1 * c1 + c2 * c2 - 2.0 * c1 * c2 * ct) / 4.0};
    for (double& v : eps) v = std::max(v, 0.0);
    GeneralizedDepolarizing out;
    out.eps = eps;
    return out;
}

/// Depolarizing-line point reached by the m-th root of SWAP on a
/// maximally mixed environment.
inline GeneralizedDepolarizing root_swap_epsilon(unsigned m) {
    if (m < 1) throw std::invalid_argument("root_swap_epsilon: m must be >= 1");
    const double s = std::sin(M_PI / (2.0 * m));
    const double w = s * s / 4.0;
    return GeneralizedDepolarizing({1.0 - 3.0 * w, w, w, w});
}

/// Two-Pauli channel weights (x, (1-x)/2, (1-x)/2, 0); the global phase
/// on the sy element is dropped.
inline GeneralizedDepolarizing two_pauli_epsilon(const TwoPauliParam& p) {
    return GeneralizedDepolarizing({p.x, (1.0 - p.x) / 2.0, (1.0 - p.x) / 2.0, 0.0});
}

/// Explicit mixed-qutrit dilation of a generalized depolarizing channel:
/// d = 3 with lambda_3 = 0 and an empty third block. Pauli labels and the
/// correction-term sign follow the convention check recorded in the tests:
/// relative to channel_from_epsilon's (1, sx, sy, sz) labeling the sy/sz
/// roles of the source assignment are swapped, which fixes the cross-row
/// term of the grouped-Kraus constraint.
inline GroupedKraus qutrit_construction(const GeneralizedDepolarizing& e) {
    const auto& [e1, e2, e3, e4] = e.eps;
    // Ratio terms are defined as 0 whenever the numerator vanishes, which
    // keeps the construction total on the closed simplex.
    auto ratio = [](double num, double den) { return num == 0.0 ? 0.0 : num / den; };

    const ComplexMatrix id2 = ComplexMatrix::identity(2);
    const ComplexMatrix sx = pauli_x(), sy = pauli_y(), sz = pauli_z();
    const ComplexMatrix zero = ComplexMatrix::zero(2, 2);
    const cplx i1(0.0, 1.0);

    GroupedKraus gk;
    gk.n = 2;
    gk.m = 2;
    gk.lambda = {e1 + e3, e2 + e4, 0.0};
    gk.blocks.resize(3, std::vector<ComplexMatrix>(3, zero));

    if (e1 * e2 >= e3 * e4) {
        const double r = ratio(e3 * e4, e1);
        gk.blocks[0][1] = std::sqrt(e3) * sy;
        gk.blocks[0][2] = std::sqrt(e1) * id2;
        gk.blocks[1][0] = std::sqrt(std::max(e2 - r, 0.0)) * sx;
        gk.blocks[1][1] = std::sqrt(e4) * sz;
        gk.blocks[1][2] = (-i1 * std::sqrt(r)) * sx;
    } else {
        const double r = ratio(e1 * e2, e3);
        gk.blocks[0][1] = std::sqrt(e1) * id2;
        gk.blocks[0][2] = std::sqrt(e3) * sy;
        gk.blocks[1][0] = std::sqrt(std::max(e4 - r, 0.0)) * sz;
        gk.blocks[1][1] = std::sqrt(e2) * sx;
        gk.blocks[1][2] = (i1 * std::sqrt(r)) * sz;
    }
    return gk;
}

/// Multistart test of whether a depolarizing channel lies in the image of
/// epsilon_from_angles. A true answer is a certificate (re-verifiable at
/// the returned angles); a false answer is evidence at this budget only.
inline std::tuple<bool, QubitEnvAngles, double>
qubit_membership(const GeneralizedDepolarizing& e, double tol, const SearchConfig& budget) {
    if (tol <= 0.0) throw std::invalid_argument("qubit_membership: tol must be positive");
    Objective f = [&e](const std::vector<double>& a) {
        const GeneralizedDepolarizing got =
            epsilon_from_angles(QubitEnvAngles{a[0], a[1], a[2]});
        double s = 0.0;
        for (std::size_t i = 0; i < 4; ++i) {
            const double d = got.eps[i] - e.eps[i];
            s += d * d;
        }
        return std::sqrt(s);
    };
    SearchConfig cfg = budget;
    cfg.success_tol = tol;
    const MultistartResult res = multistart_minimize(f, 3, cfg);
    const QubitEnvAngles best{res.best_point[0], res.best_point[1], res.best_point[2]};
    return {res.best_value <= tol, best, res.best_value};
}

/// Uniform grid over the angle cube, mapped through the solution family
/// into tetrahedron coordinates; suitable for point-cloud export.
inline std::vector<std::tuple<QubitEnvAngles, GeneralizedDepolarizing, TetraPoint>>
solution_set_sweep(std::size_t resolution) {
    if (resolution < 2)
        throw std::invalid_argument("solution_set_sweep: resolution must be >= 2");
    std::vector<std::tuple<QubitEnvAngles, GeneralizedDepolarizing, TetraPoint>> out;
    out.reserve(resolution * resolution * resolution);
    const double step = 2.0 * M_PI / static_cast<double>(resolution - 1);
    for (std::size_t it = 0; it < resolution; ++it)
        for (std::size_t i1 = 0; i1 < resolution; ++i1)
            for (std::size_t i2 = 0; i2 < resolution; ++i2) {
                const QubitEnvAngles a{it * step, i1 * step, i2 * step};
                const GeneralizedDepolarizing e = epsilon_from_angles(a);
                out.emplace_back(a, e, tetra_from_epsilon(e));
            }
    return out;
}

} // namespace qenv

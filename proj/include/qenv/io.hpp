#pragma once

#include <cstdio>
#include <fstream>
#include <string>

#include <json.hpp>

#include "qenv/depolarizing.hpp"
#include "qenv/dilation.hpp"
#include "qenv/search.hpp"

namespace qenv {

/// Structurally valid input that fails a physics-level check (e.g. the
/// trace-preservation constraint). Distinct from malformed-file errors.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed or schema-violating input file.
struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace io {

using nlohmann::json;

inline json complex_to_json(const cplx& z) { return json::array({z.real(), z.imag()}); }

inline cplx complex_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw FormatError("expected complex entry as [re, im]");
    return cplx(j[0].get<double>(), j[1].get<double>());
}

inline json matrix_to_json(const ComplexMatrix& m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline ComplexMatrix matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty()) throw FormatError("expected matrix as array of rows");
    const std::size_t rows = j.size();
    const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
    if (cols == 0) throw FormatError("matrix rows must be nonempty arrays");
    ComplexMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        if (!j[r].is_array() || j[r].size() != cols)
            throw FormatError("ragged matrix rows");
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = complex_from_json(j[r][c]);
    }
    if (!m.is_finite()) throw FormatError("non-finite matrix entry");
    return m;
}

inline json channel_to_json(const QuantumChannel& ch) {
    json ops = json::array();
    for (const auto& a : ch.kraus) ops.push_back(matrix_to_json(a));
    return json{{"in_dim", ch.in_dim}, {"out_dim", ch.out_dim}, {"kraus", std::move(ops)}};
}

/// Parses the channel JSON schema and enforces the trace-preservation
/// constraint at `tp_tol`.
inline QuantumChannel channel_from_json(const json& j, double tp_tol = 1e-9) {
    if (!j.is_object() || !j.contains("in_dim") || !j.contains("out_dim") || !j.contains("kraus"))
        throw FormatError("channel JSON must carry in_dim, out_dim and kraus");
    if (!j["in_dim"].is_number_unsigned() || !j["out_dim"].is_number_unsigned())
        throw FormatError("channel dimensions must be positive integers");
    const std::size_t n = j["in_dim"].get<std::size_t>();
    const std::size_t m = j["out_dim"].get<std::size_t>();
    if (n < 1 || m < 1) throw FormatError("channel dimensions must be positive");
    if (!j["kraus"].is_array() || j["kraus"].empty())
        throw FormatError("kraus must be a nonempty array");
    std::vector<ComplexMatrix> ops;
    for (const auto& opj : j["kraus"]) {
        ComplexMatrix a = matrix_from_json(opj);
        if (a.rows() != m || a.cols() != n)
            throw FormatError("Kraus operator must be out_dim x in_dim");
        ops.push_back(std::move(a));
    }
    QuantumChannel ch(n, m, std::move(ops));
    const double res = trace_preservation_residual(ch);
    if (res > tp_tol)
        throw ValidationError("trace-preservation residual " + std::to_string(res) +
                              " exceeds tolerance");
    return ch;
}

inline json dilation_to_json(const DilationModel& dm) {
    return json{{"n", dm.n},
                {"m", dm.m},
                {"spectrum", dm.env.spectrum},
                {"unitary", matrix_to_json(dm.unitary)}};
}

inline DilationModel dilation_from_json(const json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("m") || !j.contains("spectrum") ||
        !j.contains("unitary"))
        throw FormatError("dilation JSON must carry n, m, spectrum and unitary");
    const std::size_t n = j["n"].get<std::size_t>();
    const std::size_t m = j["m"].get<std::size_t>();
    std::vector<double> spectrum = j["spectrum"].get<std::vector<double>>();
    ComplexMatrix u = matrix_from_json(j["unitary"]);
    const std::size_t d = spectrum.size();
    try {
        EnvironmentSpec env(d, std::move(spectrum));
        return DilationModel(n, m, std::move(env), std::move(u));
    } catch (const std::invalid_argument& e) {
        throw ValidationError(e.what());
    }
}

inline json config_to_json(const SearchConfig& cfg) {
    return json{{"restarts", cfg.restarts},
                {"max_evals_per_restart", cfg.max_evals_per_restart},
                {"success_tol", cfg.success_tol},
                {"seed", cfg.seed}};
}

inline json search_report_to_json(const QuantumChannel& target, std::size_t d,
                                  const SearchConfig& cfg, const SearchResult& res) {
    return json{{"target", channel_to_json(target)},
                {"d", d},
                {"config", config_to_json(cfg)},
                {"best_residual", res.best_residual},
                {"success", res.success},
                {"per_restart", res.per_restart_residuals},
                {"best_unitary_params", res.best_unitary_params},
                {"best_spectrum", res.best_spectrum}};
}

/// Point-cloud CSV export, one row per grid point, 17 significant digits.
inline void write_sweep_csv(
    std::ostream& os,
    const std::vector<std::tuple<QubitEnvAngles, GeneralizedDepolarizing, TetraPoint>>& cloud) {
    os << "theta,phi1,phi2,eps1,eps2,eps3,eps4,x,y,z\n";
    char buf[32];
    auto put = [&](double v, char sep) {
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        os << buf << sep;
    };
    for (const auto& [a, e, p] : cloud) {
        put(a.theta, ',');
        put(a.phi1, ',');
        put(a.phi2, ',');
        for (double v : e.eps) put(v, ',');
        put(p.x, ',');
        put(p.y, ',');
        put(p.z, '\n');
    }
}

} // namespace io
} // namespace qenv

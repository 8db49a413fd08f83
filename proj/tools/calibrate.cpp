// One-off calibration of the two-Pauli residual floors recorded in
// include/qenv/calibration.hpp. Runs long multistart minimizations and
// prints the observed minima.

#include <cstdio>

#include "qenv/depolarizing.hpp"
#include "qenv/search.hpp"
#include "qenv/two_pauli.hpp"

int main(int argc, char** argv) {
    std::size_t restarts = 2000;
    if (argc > 1) restarts = std::stoul(argv[1]);

    qenv::SearchConfig cfg;
    cfg.restarts = restarts;
    cfg.success_tol = 1e-12; // keep every restart running to convergence

    double dilation_floor = std::numeric_limits<double>::infinity();
    for (double x : {0.1, 0.5, 0.9}) {
        const qenv::QuantumChannel ch =
            qenv::channel_from_epsilon(qenv::two_pauli_epsilon(qenv::TwoPauliParam(x)));
        const qenv::SearchResult res = qenv::search_environment(ch, 2, cfg);
        std::printf("two-pauli x=%.1f d=2: best residual %.6e (%zu evals)\n", x,
                    res.best_residual, res.evals_used);
        dilation_floor = std::min(dilation_floor, res.best_residual);
    }
    std::printf("dilation floor (min over x): %.6e\n", dilation_floor);

    const qenv::SearchResult poly = qenv::two_pauli_infeasibility(cfg);
    std::printf("polynomial system: best residual %.6e (%zu evals)\n", poly.best_residual,
                poly.evals_used);
    return 0;
}

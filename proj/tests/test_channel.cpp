#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "qenv/channel.hpp"
#include "qenv/depolarizing.hpp"
#include "qenv/random.hpp"
#include "qenv/search.hpp"

using namespace qenv;

namespace {

ComplexMatrix random_density(std::size_t n, std::mt19937_64& rng) {
    const ComplexMatrix g = complex_ginibre(n, n, rng);
    ComplexMatrix rho = g * g.adjoint();
    rho *= cplx(1.0 / rho.trace().real(), 0.0);
    return rho;
}

QuantumChannel complete_depolarizing() {
    return channel_from_epsilon(GeneralizedDepolarizing({0.25, 0.25, 0.25, 0.25}));
}

} // namespace

TEST_CASE("apply") {
    std::mt19937_64 rng(3);
    const ComplexMatrix rho = random_density(2, rng);

    CHECK(distance_frobenius(apply(QuantumChannel::identity(2), rho), rho) < 1e-15);

    const ComplexMatrix out = apply(complete_depolarizing(), rho);
    CHECK(distance_frobenius(out, 0.5 * ComplexMatrix::identity(2)) < 1e-14);

    const QuantumChannel flip(2, 2, {pauli_x()});
    const ComplexMatrix zero_state = basis_vector(2, 0) * basis_vector(2, 0).adjoint();
    const ComplexMatrix one_state = basis_vector(2, 1) * basis_vector(2, 1).adjoint();
    CHECK(distance_frobenius(apply(flip, zero_state), one_state) < 1e-15);

    CHECK_THROWS_AS(apply(flip, ComplexMatrix::identity(3)), std::invalid_argument);
}

TEST_CASE("choi") {
    SECTION("identity channel is 2|Omega><Omega|") {
        const ChoiMatrix j = choi(QuantumChannel::identity(2));
        ComplexMatrix omega(4, 1);
        omega(0, 0) = omega(3, 0) = 1.0;
        CHECK(distance_frobenius(j.matrix, omega * omega.adjoint()) < 1e-15);
        CHECK(std::abs(j.matrix.trace() - cplx(2.0)) < 1e-14);
    }
    SECTION("complete depolarizing is I4/2") {
        const ChoiMatrix j = choi(complete_depolarizing());
        CHECK(distance_frobenius(j.matrix, 0.5 * ComplexMatrix::identity(4)) < 1e-14);
    }
    SECTION("two-pauli has rank 3") {
        const QuantumChannel ch =
            channel_from_epsilon(two_pauli_epsilon(TwoPauliParam(0.5)));
        CHECK(kraus_rank(ch) == 3);
    }
}

TEST_CASE("trace preservation check") {
    CHECK(is_trace_preserving(complete_depolarizing(), 1e-12));
    const QuantumChannel deficient(2, 2, {0.9 * ComplexMatrix::identity(2)});
    CHECK_FALSE(is_trace_preserving(deficient, 1e-9));
    CHECK(is_trace_preserving(sample_random_channel(2, 2, 7), 1e-9));
}

TEST_CASE("complete positivity") {
    CHECK(is_completely_positive(complete_depolarizing()));
    // Choi of the transpose map is the SWAP matrix, eigenvalue -1.
    ComplexMatrix swap(4, 4);
    swap(0, 0) = swap(1, 2) = swap(2, 1) = swap(3, 3) = 1.0;
    CHECK_FALSE(is_completely_positive(ChoiMatrix{2, 2, swap}, 1e-9));
    const ChoiMatrix zero{2, 2, ComplexMatrix(4, 4)};
    CHECK(is_completely_positive(zero));
}

TEST_CASE("kraus_from_choi") {
    SECTION("identity round trip") {
        const QuantumChannel ch = kraus_from_choi(choi(QuantumChannel::identity(2)));
        CHECK(ch.kraus.size() == 1);
        CHECK(channel_distance(ch, QuantumChannel::identity(2)) < 1e-12);
    }
    SECTION("I4/2 extracts four operators") {
        const QuantumChannel ch = kraus_from_choi(ChoiMatrix{2, 2, 0.5 * ComplexMatrix::identity(4)});
        CHECK(ch.kraus.size() == 4);
        CHECK(channel_distance(ch, complete_depolarizing()) < 1e-9);
    }
    SECTION("two-pauli extracts exactly 3") {
        const QuantumChannel tp = channel_from_epsilon(two_pauli_epsilon(TwoPauliParam(0.5)));
        const QuantumChannel ch = kraus_from_choi(choi(tp), 1e-10);
        CHECK(ch.kraus.size() == 3);
        CHECK(channel_distance(ch, tp) < 1e-9);
    }
    SECTION("rejects non-CP input") {
        ComplexMatrix swap(4, 4);
        swap(0, 0) = swap(1, 2) = swap(2, 1) = swap(3, 3) = 1.0;
        CHECK_THROWS_AS(kraus_from_choi(ChoiMatrix{2, 2, swap}, 1e-10), std::invalid_argument);
    }
    SECTION("round trip on random channels") {
        for (std::uint64_t s = 0; s < 10; ++s) {
            const QuantumChannel ch = sample_random_channel(2, 2, 100 + s);
            const QuantumChannel back = kraus_from_choi(choi(ch));
            CHECK(channel_distance(back, ch) < 1e-9);
            CHECK(back.kraus.size() <= 4);
        }
    }
}

TEST_CASE("kraus_rank and extremality") {
    CHECK(kraus_rank(QuantumChannel::identity(2)) == 1);
    CHECK(kraus_rank(complete_depolarizing()) == 4);
    CHECK(kraus_rank(channel_from_epsilon(GeneralizedDepolarizing({0.4, 0.3, 0.2, 0.1}))) == 4);

    CHECK(is_extremal_rank_condition(von_neumann_channel(2)));
    CHECK(is_extremal_rank_condition(QuantumChannel::identity(2)));
    CHECK_FALSE(is_extremal_rank_condition(complete_depolarizing()));
}

TEST_CASE("mix_kraus") {
    const QuantumChannel dep = complete_depolarizing();
    SECTION("identity mixing") {
        const QuantumChannel mixed = mix_kraus(dep, ComplexMatrix::identity(4));
        for (std::size_t i = 0; i < 4; ++i)
            CHECK(distance_frobenius(mixed.kraus[i], dep.kraus[i]) < 1e-15);
    }
    SECTION("global phase on a single operator") {
        ComplexMatrix phase(1, 1);
        phase(0, 0) = std::exp(cplx(0.0, 0.7));
        const QuantumChannel id = QuantumChannel::identity(2);
        CHECK(channel_distance(mix_kraus(id, phase), id) < 1e-14);
    }
    SECTION("choi invariance under random mixing") {
        for (std::uint64_t s = 0; s < 20; ++s) {
            const ComplexMatrix u = haar_random_unitary(4, 500 + s);
            const QuantumChannel mixed = mix_kraus(dep, u);
            CHECK(channel_distance(mixed, dep) < 1e-11);
            CHECK(kraus_rank(mixed) == kraus_rank(dep));
        }
    }
    SECTION("rejects non-unitary") {
        CHECK_THROWS_AS(mix_kraus(dep, 2.0 * ComplexMatrix::identity(4)),
                        std::invalid_argument);
    }
}

TEST_CASE("channel_distance") {
    const QuantumChannel id = QuantumChannel::identity(2);
    const QuantumChannel flip(2, 2, {pauli_x()});
    CHECK(channel_distance(id, id) == 0.0);
    CHECK(channel_distance(id, flip) == Catch::Approx(std::sqrt(2.0)));
    CHECK(channel_distance(id, flip) == Catch::Approx(channel_distance(flip, id)));

    // distance zero implies identical action
    std::mt19937_64 rng(31);
    const QuantumChannel a = sample_random_channel(2, 2, 77);
    const QuantumChannel b = mix_kraus(a, haar_random_unitary(4, 78));
    REQUIRE(channel_distance(a, b) < 1e-11);
    for (int t = 0; t < 20; ++t) {
        const ComplexMatrix rho = random_density(2, rng);
        CHECK(distance_frobenius(apply(a, rho), apply(b, rho)) < 1e-9);
    }

    CHECK_THROWS_AS(channel_distance(id, von_neumann_channel(3)), std::invalid_argument);
}

TEST_CASE("von_neumann_channel") {
    std::mt19937_64 rng(41);
    const ComplexMatrix rho = random_density(2, rng);
    const ComplexMatrix out = apply(von_neumann_channel(2), rho);
    CHECK(std::abs(out(0, 0) - rho(0, 0)) < 1e-15);
    CHECK(std::abs(out(1, 1) - rho(1, 1)) < 1e-15);
    CHECK(std::abs(out(0, 1)) < 1e-15);
    CHECK(kraus_rank(von_neumann_channel(3)) == 3);
    CHECK(is_trace_preserving(von_neumann_channel(3), 1e-12));
}

TEST_CASE("trace preserved on random states") {
    std::mt19937_64 rng(53);
    const QuantumChannel ch = sample_random_channel(2, 2, 9);
    for (int t = 0; t < 100; ++t) {
        const ComplexMatrix rho = random_density(2, rng);
        CHECK(std::abs(apply(ch, rho).trace() - rho.trace()) < 1e-10);
    }
}

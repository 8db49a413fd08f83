#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "qenv/io.hpp"
#include "qenv/search.hpp"

using namespace qenv;
using nlohmann::json;

TEST_CASE("channel JSON round trip") {
    const QuantumChannel ch = sample_random_channel(2, 2, 123);
    const json j = io::channel_to_json(ch);
    const QuantumChannel back = io::channel_from_json(j);
    CHECK(channel_distance(ch, back) < 1e-12);
}

TEST_CASE("channel JSON rejects bad inputs") {
    CHECK_THROWS_AS(io::channel_from_json(json::parse("{}")), FormatError);
    CHECK_THROWS_AS(io::channel_from_json(json{{"in_dim", 2}, {"out_dim", 2},
                                               {"kraus", json::array()}}),
                    FormatError);
    // wrong operator shape
    json bad = io::channel_to_json(QuantumChannel::identity(2));
    bad["in_dim"] = 3;
    CHECK_THROWS_AS(io::channel_from_json(bad), FormatError);
    // trace-preservation failure is a validation error, not a format error
    json deficient = io::channel_to_json(QuantumChannel(2, 2, {0.9 * ComplexMatrix::identity(2)}));
    CHECK_THROWS_AS(io::channel_from_json(deficient), ValidationError);
    // non-finite entry
    json inf_entry = io::channel_to_json(QuantumChannel::identity(2));
    inf_entry["kraus"][0][0][0][0] = std::numeric_limits<double>::infinity();
    CHECK_THROWS(io::channel_from_json(inf_entry));
}

TEST_CASE("dilation JSON round trip") {
    const DilationModel dm = stinespring_from_kraus(sample_random_channel(2, 2, 321));
    const json j = io::dilation_to_json(dm);
    const DilationModel back = io::dilation_from_json(j);
    CHECK(distance_frobenius(back.unitary, dm.unitary) < 1e-12);
    CHECK(back.env.spectrum == dm.env.spectrum);

    json bad = j;
    bad["spectrum"] = std::vector<double>{0.5, 0.4};
    CHECK_THROWS_AS(io::dilation_from_json(bad), ValidationError);
}

TEST_CASE("search report schema") {
    SearchConfig cfg;
    cfg.restarts = 2;
    const QuantumChannel ch = QuantumChannel::identity(2);
    const SearchResult res = search_environment(ch, 1, cfg);
    const json j = io::search_report_to_json(ch, 1, cfg, res);
    CHECK(j.contains("target"));
    CHECK(j["d"] == 1);
    CHECK(j["config"]["restarts"] == 2);
    CHECK(j["best_residual"].is_number());
    CHECK(j["success"].is_boolean());
    CHECK(j["per_restart"].is_array());
}

TEST_CASE("sweep CSV format") {
    std::ostringstream os;
    io::write_sweep_csv(os, solution_set_sweep(2));
    const std::string csv = os.str();
    std::istringstream is(csv);
    std::string header;
    std::getline(is, header);
    CHECK(header == "theta,phi1,phi2,eps1,eps2,eps3,eps4,x,y,z");
    std::size_t rows = 0;
    std::string line;
    while (std::getline(is, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 8);

    // byte-identical across runs
    std::ostringstream os2;
    io::write_sweep_csv(os2, solution_set_sweep(2));
    CHECK(os2.str() == csv);
}

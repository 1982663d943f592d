#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>

#include "eprnet/errors.hpp"
#include "eprnet/io.hpp"
#include "eprnet/network.hpp"
#include "eprnet/spectra.hpp"
#include "eprnet/state_space.hpp"
#include "eprnet/synthesis.hpp"
#include "test_util.hpp"

using namespace eprnet;
using eprnet::testing::random_unitary;

namespace {

NopaParams default_params() { return NopaParams{}.normalized(); }

std::string temp_path(const std::string& name) { return "/tmp/eprnet_test_" + name; }

std::vector<std::string> split_lines(const std::string& s) {
    std::vector<std::string> lines;
    std::istringstream in(s);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

}  // namespace

TEST_CASE("significant-digit rounding") {
    CHECK(round_sig15(M_PI) == doctest::Approx(3.14159265358979).epsilon(1e-16));
    CHECK(round_sig15(0.0) == 0.0);
    CHECK(round_sig15(-1.5) == -1.5);
    // Idempotent: a value already on the 15-digit grid survives unchanged.
    const double v = round_sig15(4.18238574753981e-8);
    CHECK(round_sig15(v) == v);
    CHECK(round_db3(-26.23456) == doctest::Approx(-26.235).epsilon(1e-15));
    CHECK(round_db3(-73.7861) == doctest::Approx(-73.786).epsilon(1e-15));
}

TEST_CASE("network JSON round trip") {
    SUBCASE("the published table round-trips exactly") {
        const PassiveNetwork net = lm_paper_network();
        const PassiveNetwork back = network_from_json(network_to_json(net));
        CHECK((back.entries - net.entries).cwiseAbs().maxCoeff() == 0.0);
        CHECK(back.label == net.label);
    }
    SUBCASE("random unitaries survive within serialization precision") {
        std::mt19937_64 rng(77);
        for (int trial = 0; trial < 5; ++trial) {
            const PassiveNetwork net = make_network(random_unitary(rng));
            const PassiveNetwork back = network_from_json(network_to_json(net));
            CHECK((back.entries - net.entries).cwiseAbs().maxCoeff() < 1e-12);
        }
    }
    SUBCASE("file save/load round trip") {
        const std::string path = temp_path("net.json");
        save_network(cfb_network(), path);
        const PassiveNetwork back = load_network(path);
        CHECK((back.entries - cfb_network().entries).cwiseAbs().maxCoeff() == 0.0);
        std::remove(path.c_str());
    }
}

TEST_CASE("report JSON carries rounded presentation values") {
    const StateSpace ss = build_state_space(cfb_network(), default_params());
    const SqueezingReport rep = two_mode_squeezing(ss, 0.0);
    const nlohmann::json j = report_to_json(rep);
    CHECK(j.at("db").get<double>() == -26.235);
    CHECK(j.at("entangled").get<bool>());
    CHECK(j.at("v_total").get<double>() == doctest::Approx(rep.v_total).epsilon(1e-14));
    const SqueezingReport back = report_from_json(j);
    CHECK(back.v_plus == doctest::Approx(rep.v_plus).epsilon(1e-14));
    CHECK(back.omega == rep.omega);
    CHECK(back.entangled == rep.entangled);
}

TEST_CASE("synthesis JSON round trip preserves the factor list") {
    const SynthesisReport rep = decompose(lm_paper_network());
    const SynthesisReport back = synthesis_from_json(synthesis_to_json(rep));
    REQUIRE(back.factors.size() == rep.factors.size());
    CHECK(back.left_to_right == rep.left_to_right);
    for (std::size_t k = 0; k < rep.factors.size(); ++k) {
        CHECK(back.factors[k].i == rep.factors[k].i);
        CHECK(back.factors[k].j == rep.factors[k].j);
        CHECK(back.factors[k].kind == rep.factors[k].kind);
        CHECK((back.factors[k].block - rep.factors[k].block).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(back.factors[k].alpha.has_value() == rep.factors[k].alpha.has_value());
        if (rep.factors[k].alpha) {
            CHECK(*back.factors[k].alpha == doctest::Approx(*rep.factors[k].alpha).epsilon(1e-14));
        }
    }
    // The parsed list still reassembles the published network.
    const PassiveNetwork rebuilt = reconstruct(back.factors, back.left_to_right);
    CHECK((rebuilt.entries - lm_paper_network().entries).cwiseAbs().maxCoeff() < 1e-9);

    const std::string path = temp_path("synth.json");
    save_synthesis(rep, path);
    const SynthesisReport loaded = load_synthesis(path);
    CHECK(loaded.factors.size() == rep.factors.size());
    std::remove(path.c_str());
}

TEST_CASE("optimization summary reports the last accepted iterate") {
    OptimizationResult res;
    res.status = OptimizerStatus::Converged;
    res.result = cfb_network();
    res.trace.push_back({0, 2.4e-3, -26.2, 0.19, 1.0, 0});
    res.trace.push_back({3, 4.18e-8, -73.8, 9.1e-4, 0.0625, 0});
    const nlohmann::json j = optimization_summary_to_json(res);
    CHECK(j.at("status").get<std::string>() == "converged");
    CHECK(j.at("iterations").get<int>() == 3);
    CHECK(j.at("v0").get<double>() == doctest::Approx(4.18e-8).epsilon(1e-12));
}

TEST_CASE("sweep CSV has the documented shape and skips resonant rows") {
    const StateSpace ss = build_state_space(cfb_network(), default_params());
    auto pts = sweep_spectrum(ss, 0.5 * ss.gamma_ref, 4);
    const std::string csv = sweep_to_csv(pts);
    auto lines = split_lines(csv);
    REQUIRE(lines.size() == 5);
    CHECK(lines[0] == "omega_rad_s,v_plus,v_minus,v_total,db,entangled");
    CHECK(lines[1].substr(0, 2) == "0,");
    CHECK(lines[1].back() == '1');  // entangled flag serializes as 0/1

    // Flag one point resonant: its row must disappear.
    pts[2].resonant = true;
    const auto pruned = split_lines(sweep_to_csv(pts));
    CHECK(pruned.size() == 4);
}

TEST_CASE("trace CSV lists one row per accepted iterate") {
    std::vector<IterationRecord> trace;
    trace.push_back({0, 2.4e-3, -26.2, 0.19, 1.0, 0});
    trace.push_back({1, 6.9e-7, -61.6, 0.19, 0.125, 3});
    const auto lines = split_lines(trace_to_csv(trace));
    REQUIRE(lines.size() == 3);
    CHECK(lines[0] == "iter,v0,db,z_norm,rho,feasibility_rejections");
    CHECK(lines[1].substr(0, 2) == "0,");
    CHECK(lines[2].back() == '3');
}

TEST_CASE("parse errors are reported as ParseError") {
    SUBCASE("malformed JSON text") {
        const std::string path = temp_path("bad.json");
        write_text_file(path, "{ not json ]");
        CHECK_THROWS_AS(load_network(path), ParseError);
        std::remove(path.c_str());
    }
    SUBCASE("missing file") { CHECK_THROWS_AS(read_text_file("/tmp/definitely_missing_eprnet"), ParseError); }
    SUBCASE("wrong matrix shape") {
        nlohmann::json j = network_to_json(cfb_network());
        j["entries"].erase(0);
        CHECK_THROWS_AS(network_from_json(j), ParseError);
    }
    SUBCASE("unknown factor kind or order") {
        nlohmann::json j = synthesis_to_json(decompose(cfb_network()));
        nlohmann::json bad_kind = j;
        bad_kind["factors"][0]["kind"] = "mirror";
        CHECK_THROWS_AS(synthesis_from_json(bad_kind), ParseError);
        nlohmann::json bad_order = j;
        bad_order["order"] = "sideways";
        CHECK_THROWS_AS(synthesis_from_json(bad_order), ParseError);
    }
    SUBCASE("bad mode indices") {
        nlohmann::json j = synthesis_to_json(decompose(cfb_network()));
        j["factors"][0]["i"] = 5;
        j["factors"][0]["j"] = 2;  // i >= j violates the canonical layout
        CHECK_THROWS_AS(synthesis_from_json(j), ParseError);
    }
}

TEST_CASE("network resolution accepts built-ins and paths") {
    CHECK(resolve_network("cfb").label == "cfb");
    CHECK(resolve_network("lm-paper").label == "lm-paper");
    const std::string path = temp_path("resolve.json");
    save_network(lm_paper_network(), path);
    CHECK((resolve_network(path).entries - lm_paper_network().entries).cwiseAbs().maxCoeff() ==
          0.0);
    std::remove(path.c_str());
    CHECK_THROWS_AS(resolve_network("/tmp/definitely_missing_eprnet.json"), ParseError);
}

TEST_CASE("JSON serialization is deterministic") {
    const std::string a = network_to_json(lm_paper_network()).dump(2);
    const std::string b = network_to_json(lm_paper_network()).dump(2);
    CHECK(a == b);
    const std::string s1 = synthesis_to_json(decompose(lm_paper_network())).dump(2);
    const std::string s2 = synthesis_to_json(decompose(lm_paper_network())).dump(2);
    CHECK(s1 == s2);
}

#include <doctest.h>

#include "config.hpp"
#include "manifest.hpp"

using namespace logbesov;
using namespace logbesov::cli;

TEST_CASE("exponent tokens") {
    CHECK(parse_exponent("inf") == kInf);
    CHECK(parse_exponent("Infinity") == kInf);
    CHECK(parse_exponent("2.5") == 2.5);
    CHECK_THROWS_AS(parse_exponent("2.5x"), std::invalid_argument);
    CHECK_THROWS_AS(parse_exponent(""), std::invalid_argument);
    CHECK(parse_list("0,0.5,inf") == std::vector<double>{0.0, 0.5, kInf});
    CHECK(parse_int_list("3,4,7") == std::vector<int>{3, 4, 7});
    CHECK_THROWS_AS(parse_int_list("3,4.5"), std::invalid_argument);
    CHECK(jnum(kInf) == "inf");
    CHECK(jnum(1.5) == 1.5);
}

TEST_CASE("inflate config defaults and spelling") {
    const InflateJob d = parse_inflate_config(nlohmann::json::object());
    REQUIRE(d.family.size() == 5);
    CHECK(d.family.front().m == 2);
    CHECK(d.family.back().m == 6);
    CHECK(d.family.front().K_A == desk_preset(2).K_A);
    CHECK(d.q == kInf);
    CHECK(d.delta_sweep.empty());

    const InflateJob j = parse_inflate_config(nlohmann::json::parse(
        R"({"m-range": [3, 4], "sigma-list": [0.25, "inf"], "q": "4", "t-rule": "literal", "variant": "large-q"})"));
    REQUIRE(j.family.size() == 2);
    CHECK(j.q == 4.0);
    CHECK(j.sigmas == std::vector<double>{0.25, kInf});
    CHECK(j.family[0].t_rule == TimeRule::literal);
    CHECK(j.family[1].K_B.size() == 1);
    CHECK(j.normalized["variant"] == "large-q");

    const InflateJob g = parse_inflate_config(nlohmann::json::parse(R"({"preset": "grid", "delta_sweep": [1e-3, 2e-3]})"));
    REQUIRE(g.family.size() == 1);
    CHECK(g.family[0].N == 64);
    CHECK(g.delta_sweep.size() == 2);

    const InflateJob e = parse_inflate_config(nlohmann::json::parse(R"({"K_A": [7, 8], "K_B": [3, 6], "R": 4})"));
    REQUIRE(e.family.size() == 1);
    CHECK(e.family[0].R == 4);
}

TEST_CASE("inflate config rejects bad input") {
    auto bad = [](const char* text) { return parse_inflate_config(nlohmann::json::parse(text)); };
    CHECK_THROWS_AS(bad(R"({"sigmas": [0]})"), std::invalid_argument);
    CHECK_THROWS_AS(bad(R"({"m_range": [4, 2]})"), std::invalid_argument);
    CHECK_THROWS_AS(bad(R"({"m_range": [2, 3], "m-range": [2, 3]})"), std::invalid_argument);
    CHECK_THROWS_AS(bad(R"({"K_A": [7, 8]})"), std::invalid_argument);
    CHECK_THROWS_AS(bad(R"({"eps": 0.9})"), std::invalid_argument);
    CHECK_THROWS_AS(bad(R"({"q": 0.5})"), std::invalid_argument);
    CHECK_THROWS_AS(bad(R"({"n": 2})"), std::invalid_argument);
    CHECK_THROWS_AS(bad(R"({"preset": "huge"})"), std::invalid_argument);
    CHECK_THROWS_AS(bad(R"({"delta_sweep": [0.001, -1]})"), std::invalid_argument);
    CHECK_THROWS_AS(bad(R"([1, 2])"), std::invalid_argument);
    CHECK_THROWS_AS(load_json_file("/nonexistent/cfg.json"), std::invalid_argument);
}

TEST_CASE("SHA-256 digests") {
    CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

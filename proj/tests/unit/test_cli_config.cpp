#include "doctest.h"

#include <cstdlib>

#include "config.hpp"

using namespace diejen;
using namespace diejen::cli;

TEST_CASE("time grids") {
    const auto a = parse_t_grid("0:0.5:2");
    REQUIRE(a.size() == 5);
    CHECK(a.back() == 2.0);
    const auto b = parse_t_grid("4,6,8.5");
    REQUIRE(b.size() == 3);
    CHECK(b[2] == 8.5);
    CHECK(parse_t_grid("-1:0.5:1").size() == 5);
    CHECK_THROWS_AS(parse_t_grid("0:0:1"), ConfigError);
    CHECK_THROWS_AS(parse_t_grid("a,b"), ConfigError);
    CHECK_THROWS_AS(parse_t_grid(""), ConfigError);
}

TEST_CASE("config files fill only what the flags leave open") {
    RunConfig cfg;
    cfg.n = 4;
    apply_json(cfg, Json::parse(R"({"n": 3, "mu": 0.9, "t": "0:1:2", "format": "json"})"), {"n"});
    CHECK(cfg.n == 4);
    CHECK(cfg.mu == 0.9);
    CHECK(cfg.t_grid.size() == 3);
    CHECK(cfg.format == "json");
    apply_json(cfg, Json::parse(R"({"t": [1, 2]})"), {});
    CHECK(cfg.t_grid.size() == 2);
    CHECK_THROWS_AS(apply_json(cfg, Json::parse(R"({"bogus": 1})"), {}), ConfigError);
    CHECK_THROWS_AS(apply_json(cfg, Json::parse(R"([1])"), {}), ConfigError);
    CHECK_THROWS_AS(apply_json(cfg, Json::parse(R"({"n": "three"})"), {}), ConfigError);
    CHECK_THROWS_AS(load_config_file(cfg, "/nonexistent/config.json", {}), ConfigError);
}

TEST_CASE("validation") {
    RunConfig cfg;
    CHECK_NOTHROW(validate(cfg));
    cfg.n = 9;
    CHECK_THROWS_AS(validate(cfg), ConfigError);
    cfg = {};
    cfg.format = "xml";
    CHECK_THROWS_AS(validate(cfg), ConfigError);
    cfg = {};
    cfg.tol_scale = 0.0;
    CHECK_THROWS_AS(validate(cfg), ConfigError);
    cfg = {};
    cfg.method = "euler";
    CHECK_THROWS_AS(validate(cfg), ConfigError);
}

TEST_CASE("thread count from the environment") {
    ::setenv("DIEJEN_THREADS", "3", 1);
    CHECK(thread_count() == 3);
    ::setenv("DIEJEN_THREADS", "zero", 1);
    CHECK_THROWS_AS(thread_count(), ConfigError);
    ::unsetenv("DIEJEN_THREADS");
    CHECK(thread_count() >= 1);
}

#pragma once

#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "diejen/serialize.hpp"

namespace diejen::cli {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string command;
    int n = 2;
    double mu = 0.7;
    double nu = 0.4;
    std::uint64_t seed = 1;
    int points = 20;
    std::vector<double> t_grid;  // empty: command default
    double tol_scale = 1.0;
    std::string out;             // empty: stdout
    std::string format = "csv";
    std::string method = "both"; // flow: projection | rk | both
    std::string kind = "exponential";
    int N = 3;
    bool dump_frame = false;
    double step = default_fd_step;
};

// "a:h:b" (start, step, stop inclusive) or a comma-separated list.
std::vector<double> parse_t_grid(const std::string& text);

// Keys present in the file fill the config unless the same flag was given explicitly.
void apply_json(RunConfig& cfg, const Json& j, const std::set<std::string>& explicit_keys);
void load_config_file(RunConfig& cfg, const std::string& path, const std::set<std::string>& explicit_keys);

void validate(const RunConfig& cfg);

// DIEJEN_THREADS, defaulting to the hardware concurrency (at least 1).
int thread_count();

}  // namespace diejen::cli

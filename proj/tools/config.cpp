#include "config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

namespace diejen::cli {

namespace {

double parse_number(const std::string& s) {
    size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw ConfigError("invalid number in time grid: '" + s + "'");
    }
    if (used != s.size() || !std::isfinite(v)) throw ConfigError("invalid number in time grid: '" + s + "'");
    return v;
}

template <class T>
T get(const Json& j, const char* key) {
    try {
        return j.at(key).get<T>();
    } catch (const Json::exception&) {
        throw ConfigError(std::string("config key '") + key + "' has the wrong type");
    }
}

}  // namespace

std::vector<double> parse_t_grid(const std::string& text) {
    if (text.empty()) throw ConfigError("empty time grid");
    std::vector<double> out;
    if (text.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::stringstream ss(text);
        for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
        if (parts.size() != 3) throw ConfigError("time range must read start:step:stop");
        const double a = parse_number(parts[0]), h = parse_number(parts[1]), b = parse_number(parts[2]);
        if (!(h > 0.0) || b < a) throw ConfigError("time range needs a positive step and stop >= start");
        const double count = std::floor((b - a) / h + 1e-9);
        if (count > 1e6) throw ConfigError("time range has too many points");
        for (int k = 0; k <= static_cast<int>(count); ++k) out.push_back(a + k * h);
        return out;
    }
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ',');) out.push_back(parse_number(p));
    return out;
}

void apply_json(RunConfig& cfg, const Json& j, const std::set<std::string>& explicit_keys) {
    if (!j.is_object()) throw ConfigError("config file must hold a JSON object");
    static const std::set<std::string> known = {"n",   "mu",     "nu",     "seed", "points", "t",         "tol_scale",
                                                "out", "format", "method", "kind", "N",      "dump_frame", "step"};
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!known.count(it.key())) throw ConfigError("unknown config key '" + it.key() + "'");
    auto take = [&](const char* key) { return j.contains(key) && !explicit_keys.count(key); };
    if (take("n")) cfg.n = get<int>(j, "n");
    if (take("mu")) cfg.mu = get<double>(j, "mu");
    if (take("nu")) cfg.nu = get<double>(j, "nu");
    if (take("seed")) cfg.seed = get<std::uint64_t>(j, "seed");
    if (take("points")) cfg.points = get<int>(j, "points");
    if (take("tol_scale")) cfg.tol_scale = get<double>(j, "tol_scale");
    if (take("out")) cfg.out = get<std::string>(j, "out");
    if (take("format")) cfg.format = get<std::string>(j, "format");
    if (take("method")) cfg.method = get<std::string>(j, "method");
    if (take("kind")) cfg.kind = get<std::string>(j, "kind");
    if (take("N")) cfg.N = get<int>(j, "N");
    if (take("dump_frame")) cfg.dump_frame = get<bool>(j, "dump_frame");
    if (take("step")) cfg.step = get<double>(j, "step");
    if (take("t")) {
        const Json& t = j.at("t");
        if (t.is_string())
            cfg.t_grid = parse_t_grid(t.get<std::string>());
        else if (t.is_array())
            cfg.t_grid = get<std::vector<double>>(j, "t");
        else
            throw ConfigError("config key 't' must be a string or an array");
    }
}

void load_config_file(RunConfig& cfg, const std::string& path, const std::set<std::string>& explicit_keys) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    Json j;
    try {
        j = Json::parse(in);
    } catch (const Json::exception& e) {
        throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
    }
    apply_json(cfg, j, explicit_keys);
}

void validate(const RunConfig& cfg) {
    if (cfg.n < 1 || cfg.n > 8) throw ConfigError("--n must lie in 1..8");
    if (cfg.N < 2 || cfg.N > 8) throw ConfigError("--N must lie in 2..8");
    if (cfg.points < 1) throw ConfigError("--points must be positive");
    if (!(cfg.tol_scale > 0.0) || !std::isfinite(cfg.tol_scale)) throw ConfigError("--tol-scale must be positive");
    if (!(cfg.step > 0.0) || !std::isfinite(cfg.step)) throw ConfigError("--step must be positive");
    if (!std::isfinite(cfg.mu) || !std::isfinite(cfg.nu)) throw ConfigError("couplings must be finite");
    if (cfg.format != "csv" && cfg.format != "json") throw ConfigError("--format must be csv or json");
    if (cfg.method != "projection" && cfg.method != "rk" && cfg.method != "both")
        throw ConfigError("--method must be projection, rk or both");
    if (cfg.kind != "exponential" && cfg.kind != "linear") throw ConfigError("--kind must be exponential or linear");
    for (double t : cfg.t_grid)
        if (!std::isfinite(t)) throw ConfigError("time grid entries must be finite");
}

int thread_count() {
    if (const char* env = std::getenv("DIEJEN_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v >= 1) return static_cast<int>(std::min(v, 256L));
        throw ConfigError("DIEJEN_THREADS must be a positive integer");
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace diejen::cli

#include "mgfas/config.hpp"

#include "mgfas/errors.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

namespace mgfas {

using nlohmann::json;

namespace {

[[noreturn]] void bad_type(const std::string& key, const char* want) {
    throw ConfigError("config key '" + key + "' must be " + want);
}

int get_int(const std::string& key, const json& v) {
    if (!v.is_number_integer()) bad_type(key, "an integer");
    return v.get<int>();
}

double get_real(const std::string& key, const json& v) {
    if (!v.is_number()) bad_type(key, "a number");
    return v.get<double>();
}

std::string get_string(const std::string& key, const json& v) {
    if (!v.is_string()) bad_type(key, "a string");
    return v.get<std::string>();
}

std::vector<int> get_int_list(const std::string& key, const json& v) {
    if (v.is_number_integer()) return {v.get<int>()};
    if (!v.is_array()) bad_type(key, "an integer or a list of integers");
    std::vector<int> out;
    for (const json& e : v) {
        if (!e.is_number_integer()) bad_type(key, "an integer or a list of integers");
        out.push_back(e.get<int>());
    }
    return out;
}

} // namespace

void RunConfig::validate() const {
    if (dim != 2 && dim != 3) throw ConfigError("dim must be 2 or 3");
    for (int n : sizes)
        if (n < 2 || (n & (n - 1)) != 0) throw ConfigError("size " + std::to_string(n) + " is not a power of two >= 2");
    if (dt < 0.0) throw ConfigError("dt must be positive");
    if (dt_levels < 2) throw ConfigError("dt_levels must be at least 2");
    if (re < 0.0) throw ConfigError("re must be positive");
    if (t_end < 0.0) throw ConfigError("t_end must be positive");
    if (!(steady_tol > 0.0)) throw ConfigError("steady_tol must be positive");
    if (max_steps < 0) throw ConfigError("max_steps must be non-negative");
    if (!(tol > 0.0)) throw ConfigError("tol must be positive");
    if (kmax < 0) throw ConfigError("kmax must be positive");
    if (smooth_steps < 1) throw ConfigError("smooth-steps must be at least 1");
    if (mesh_level < 0) throw ConfigError("mesh-level must be non-negative");
    parse_shape(smoother);
    parse_sequence(sequence);
    if (order != 1 && order != 2) throw ConfigError("order must be 1 or 2");
    parse_schedule_mode(schedule);
    if (threads < 0) throw ConfigError("threads must be non-negative");
    for (int t : scaling_threads)
        if (t < 1) throw ConfigError("scaling_threads entries must be positive");
    if (repeats < 1) throw ConfigError("repeats must be at least 1");
}

FasParams RunConfig::fas_params(int n, int default_kmax) const {
    FasParams p;
    p.tol = tol;
    p.kmax = kmax == 0 ? default_kmax : kmax;
    p.s = smooth_steps;
    p.mesh_level = mesh_level == 0 ? FasParams::full_depth(n) : mesh_level;
    if (p.mesh_level > FasParams::full_depth(n))
        throw ConfigError("mesh-level " + std::to_string(mesh_level) + " is too deep for size " + std::to_string(n));
    return p;
}

SweepPlan RunConfig::plan() const { return SweepPlan::make(parse_shape(smoother), parse_sequence(sequence), dim); }

ScheduleMode RunConfig::schedule_mode() const { return parse_schedule_mode(schedule); }

std::string RunConfig::canonical() const {
    json j;
    j["experiment"] = experiment;
    j["mode"] = mode;
    j["dim"] = dim;
    j["sizes"] = sizes;
    j["dt"] = dt;
    j["dt_levels"] = dt_levels;
    j["re"] = re;
    j["t_end"] = t_end;
    j["steady_tol"] = steady_tol;
    j["max_steps"] = max_steps;
    j["tol"] = tol;
    j["kmax"] = kmax;
    j["smooth_steps"] = smooth_steps;
    j["mesh_level"] = mesh_level;
    j["smoother"] = smoother;
    j["sequence"] = sequence;
    j["order"] = order;
    j["schedule"] = schedule;
    j["threads"] = threads;
    j["scaling_threads"] = scaling_threads;
    j["repeats"] = repeats;
    j["seed"] = seed;
    j["strict"] = strict;
    return j.dump();
}

std::string RunConfig::hash() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : canonical()) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void apply_json(RunConfig& cfg, const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string& k = it.key();
        const json& v = it.value();
        if (v.is_object()) throw ConfigError("config key '" + k + "' must not be an object");
        if (k == "experiment") cfg.experiment = get_string(k, v);
        else if (k == "mode") cfg.mode = get_string(k, v);
        else if (k == "dim") cfg.dim = get_int(k, v);
        else if (k == "sizes" || k == "size") cfg.sizes = get_int_list(k, v);
        else if (k == "dt") cfg.dt = get_real(k, v);
        else if (k == "dt_levels") cfg.dt_levels = get_int(k, v);
        else if (k == "re") cfg.re = get_real(k, v);
        else if (k == "t_end") cfg.t_end = get_real(k, v);
        else if (k == "steady_tol") cfg.steady_tol = get_real(k, v);
        else if (k == "max_steps") cfg.max_steps = get_int(k, v);
        else if (k == "tol") cfg.tol = get_real(k, v);
        else if (k == "kmax") cfg.kmax = get_int(k, v);
        else if (k == "smooth_steps") cfg.smooth_steps = get_int(k, v);
        else if (k == "mesh_level") cfg.mesh_level = get_int(k, v);
        else if (k == "smoother") cfg.smoother = get_string(k, v);
        else if (k == "sequence") cfg.sequence = get_string(k, v);
        else if (k == "order") cfg.order = get_int(k, v);
        else if (k == "schedule") cfg.schedule = get_string(k, v);
        else if (k == "threads") cfg.threads = get_int(k, v);
        else if (k == "scaling_threads") cfg.scaling_threads = get_int_list(k, v);
        else if (k == "repeats") cfg.repeats = get_int(k, v);
        else if (k == "seed") {
            if (!v.is_number_unsigned()) bad_type(k, "a non-negative integer");
            cfg.seed = v.get<std::uint64_t>();
        } else if (k == "out") cfg.out = get_string(k, v);
        else if (k == "ghia") cfg.ghia = get_string(k, v);
        else if (k == "strict") {
            if (!v.is_boolean()) bad_type(k, "a boolean");
            cfg.strict = v.get<bool>();
        } else
            throw ConfigError("unknown config key '" + k + "'");
    }
}

void apply_json_file(RunConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    apply_json(cfg, ss.str());
}

} // namespace mgfas

#include "rossby/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "rossby/error.hpp"

namespace rossby {

using nlohmann::json;

const char* to_string(InitKind kind) {
    switch (kind) {
        case InitKind::single_mode: return "single_mode";
        case InitKind::random_spectrum: return "random_spectrum";
        case InitKind::triad: return "triad";
    }
    return "?";
}

InitKind parse_init_kind(std::string_view name) {
    if (name == "single_mode") return InitKind::single_mode;
    if (name == "random_spectrum") return InitKind::random_spectrum;
    if (name == "triad") return InitKind::triad;
    throw Error(Errc::config, "unknown init '" + std::string(name) + "' (single_mode, random_spectrum, triad)");
}

void SimulationConfig::validate() const {
    auto fail = [](const std::string& m) { throw Error(Errc::config, m); };
    if (n_modes < 8 || n_modes % 2 != 0) fail("n_modes must be even and >= 8");
    if (!(k_max > 0.0)) fail("k_max must be positive");
    if (!(xi_over_r0 >= 0.0)) fail("xi_over_r0 must be non-negative");
    if (!std::isfinite(v_r_over_cs)) fail("v_r_over_cs must be finite");
    if (!(dt > 0.0)) fail("dt must be positive");
    if (!(t_final >= 0.0)) fail("t_final must be non-negative");
    if (output_every < 1) fail("output_every must be >= 1");
    if (!(amplitude >= 0.0)) fail("amplitude must be non-negative");
    if (!(k_peak > 0.0)) fail("k_peak must be positive");
    if (!(triad_tol >= 0.0)) fail("triad_tol must be non-negative");
}

namespace {

json parse_object(std::string_view text) {
    if (text.find_first_not_of(" \t\r\n") == std::string_view::npos) return json::object();
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(Errc::config, std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw Error(Errc::config, "config must be a JSON object");
    return doc;
}

double number(const json& v, const std::string& key) {
    if (!v.is_number()) throw Error(Errc::config, "config key '" + key + "' must be numeric");
    return v.get<double>();
}

long long integer(const json& v, const std::string& key) {
    if (v.is_number_integer()) return v.get<long long>();
    if (v.is_number_float()) {
        const double d = v.get<double>();
        if (d == std::floor(d) && std::abs(d) < 9e15) return static_cast<long long>(d);
    }
    throw Error(Errc::config, "config key '" + key + "' must be an integer");
}

}  // namespace

std::string apply_overrides(std::string_view json_text, const std::vector<std::string>& overrides) {
    json doc = parse_object(json_text);
    for (const std::string& item : overrides) {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0)
            throw Error(Errc::config, "override '" + item + "' is not of the form key=value");
        const std::string key = item.substr(0, eq);
        const std::string value = item.substr(eq + 1);
        try {
            doc[key] = json::parse(value);
        } catch (const json::parse_error&) {
            doc[key] = value;
        }
    }
    return doc.dump();
}

SimulationConfig parse_simulation_config(std::string_view json_text) {
    const json doc = parse_object(json_text);
    SimulationConfig c;
    for (const auto& [key, v] : doc.items()) {
        if (key == "n_modes") c.n_modes = static_cast<int>(integer(v, key));
        else if (key == "k_max") c.k_max = number(v, key);
        else if (key == "xi_over_r0") c.xi_over_r0 = number(v, key);
        else if (key == "v_r_over_cs") c.v_r_over_cs = number(v, key);
        else if (key == "dt") c.dt = number(v, key);
        else if (key == "t_final") c.t_final = number(v, key);
        else if (key == "seed") {
            const long long s = integer(v, key);
            if (s < 0) throw Error(Errc::config, "config key 'seed' must be non-negative");
            c.seed = static_cast<std::uint64_t>(s);
        } else if (key == "init") {
            if (!v.is_string()) throw Error(Errc::config, "config key 'init' must be a string");
            c.init = parse_init_kind(v.get<std::string>());
        } else if (key == "output_every") c.output_every = static_cast<int>(integer(v, key));
        else if (key == "amplitude") c.amplitude = number(v, key);
        else if (key == "k_peak") c.k_peak = number(v, key);
        else if (key == "triad_tol") c.triad_tol = number(v, key);
        else throw Error(Errc::config, "unknown config key '" + key + "'");
    }
    c.validate();
    return c;
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::io, "cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace rossby

#include "crn/harness/config.hpp"

#include <cmath>
#include <fstream>

#include "crn/errors.hpp"

namespace crn::harness {

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("config: cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config: " + path + ": " + e.what());
    }
}

void require_keys(const json& obj, std::initializer_list<const char*> allowed,
                  const std::string& context) {
    if (!obj.is_object())
        throw ConfigError("config: " + context + " must be a JSON object");
    for (const auto& item : obj.items()) {
        bool ok = false;
        for (const char* key : allowed)
            if (item.key() == key) {
                ok = true;
                break;
            }
        if (!ok)
            throw ConfigError("config: unknown key '" + item.key() + "' in " + context);
    }
}

double get_double(const json& obj, const char* key, double fallback) {
    if (!obj.contains(key))
        return fallback;
    if (!obj.at(key).is_number())
        throw ConfigError(std::string("config: '") + key + "' must be a number");
    return obj.at(key).get<double>();
}

long long get_int(const json& obj, const char* key, long long fallback) {
    if (!obj.contains(key))
        return fallback;
    if (!obj.at(key).is_number_integer())
        throw ConfigError(std::string("config: '") + key + "' must be an integer");
    return obj.at(key).get<long long>();
}

std::vector<double> AlphaGrid::points() const {
    if (!(step > 0.0) || stop < start)
        throw ConfigError("config: malformed alpha grid");
    std::vector<double> out;
    const long long n = static_cast<long long>(std::floor((stop - start) / step + 0.5));
    out.reserve(static_cast<std::size_t>(n) + 1);
    for (long long i = 0; i <= n; ++i)
        out.push_back(start + static_cast<double>(i) * step);
    if (out.back() > stop + 1e-12)
        out.pop_back();
    return out;
}

AlphaGrid AlphaGrid::from_json(const json& obj, const AlphaGrid& fallback) {
    if (obj.is_null())
        return fallback;
    require_keys(obj, {"start", "stop", "step"}, "alpha_grid");
    AlphaGrid g = fallback;
    g.start = get_double(obj, "start", g.start);
    g.stop = get_double(obj, "stop", g.stop);
    g.step = get_double(obj, "step", g.step);
    return g;
}

void AlphaGrid::echo(CsvWriter& csv) const {
    csv.meta("alpha_start", start);
    csv.meta("alpha_stop", stop);
    csv.meta("alpha_step", step);
}

Point parse_point(const json& value, const std::string& context) {
    if (!value.is_array() || value.size() != 2 || !value[0].is_number() ||
        !value[1].is_number())
        throw ConfigError("config: " + context + " must be [x, y]");
    return Point{value[0].get<double>(), value[1].get<double>()};
}

PowerModel parse_power_model(const json& obj, const PowerModel& fallback) {
    if (obj.is_null())
        return fallback;
    require_keys(obj,
                 {"mu0", "sigma0_sq", "sigma_s_sq", "k0", "a", "l0", "tau_tx", "tau_co",
                  "ps_idle_prob"},
                 "model");
    PowerModel m = fallback;
    m.mu0 = get_double(obj, "mu0", m.mu0);
    m.sigma0_sq = get_double(obj, "sigma0_sq", m.sigma0_sq);
    m.sigma_s_sq = get_double(obj, "sigma_s_sq", m.sigma_s_sq);
    m.k0 = get_double(obj, "k0", m.k0);
    m.path_exp = get_double(obj, "a", m.path_exp);
    m.l0 = get_double(obj, "l0", m.l0);
    m.tau_tx = get_double(obj, "tau_tx", m.tau_tx);
    m.tau_co = get_double(obj, "tau_co", m.tau_co);
    m.ps_idle_prob = get_double(obj, "ps_idle_prob", m.ps_idle_prob);
    if (!m.valid())
        throw ConfigError("config: power model violates sigma_s > sigma_0 > 0");
    return m;
}

Scene parse_scene(const json& obj, const Scene& fallback) {
    if (obj.is_null())
        return fallback;
    require_keys(obj, {"ps", "tx", "coop", "b_tx", "kappa"}, "scene");
    Scene s = fallback;
    if (obj.contains("ps")) {
        if (obj.at("ps").is_null())
            s.ps.reset();
        else
            s.ps = parse_point(obj.at("ps"), "scene.ps");
    }
    if (obj.contains("tx"))
        s.tx = parse_point(obj.at("tx"), "scene.tx");
    if (obj.contains("coop")) {
        s.nodes.clear();
        for (const auto& p : obj.at("coop"))
            s.nodes.push_back(parse_point(p, "scene.coop[]"));
    }
    s.b_tx = get_double(obj, "b_tx", s.b_tx);
    s.kappa = get_double(obj, "kappa", s.kappa);
    if (!s.valid())
        throw ConfigError("config: scene requires kappa > 0 and b_tx >= 0");
    return s;
}

GridSpec parse_grid(const json& obj, const GridSpec& fallback) {
    if (obj.is_null())
        return fallback;
    require_keys(obj, {"n_radial", "n_angular", "r_max"}, "grid");
    GridSpec g = fallback;
    g.n_radial = static_cast<int>(get_int(obj, "n_radial", g.n_radial));
    g.n_angular = static_cast<int>(get_int(obj, "n_angular", g.n_angular));
    g.r_max = get_double(obj, "r_max", g.r_max);
    if (g.n_radial <= 0 || g.n_angular <= 0)
        throw ConfigError("config: grid resolution must be positive");
    return g;
}

void echo_power_model(CsvWriter& csv, const PowerModel& model) {
    csv.meta("model.mu0", model.mu0);
    csv.meta("model.sigma0_sq", model.sigma0_sq);
    csv.meta("model.sigma_s_sq", model.sigma_s_sq);
    csv.meta("model.k0", model.k0);
    csv.meta("model.a", model.path_exp);
    csv.meta("model.l0", model.l0);
    csv.meta("model.tau_tx", model.tau_tx);
    csv.meta("model.tau_co", model.tau_co);
    csv.meta("model.ps_idle_prob", model.ps_idle_prob);
}

void echo_scene(CsvWriter& csv, const Scene& scene) {
    if (scene.ps)
        csv.meta("scene.ps", fmt_double(scene.ps->x) + " " + fmt_double(scene.ps->y));
    else
        csv.meta("scene.ps", "none");
    csv.meta("scene.tx", fmt_double(scene.tx.x) + " " + fmt_double(scene.tx.y));
    for (std::size_t i = 0; i < scene.nodes.size(); ++i)
        csv.meta("scene.coop." + std::to_string(i),
                 fmt_double(scene.nodes[i].x) + " " + fmt_double(scene.nodes[i].y));
    csv.meta("scene.b_tx", scene.b_tx);
    csv.meta("scene.kappa", scene.kappa);
}

void echo_grid(CsvWriter& csv, const GridSpec& grid) {
    csv.meta("grid.n_radial", static_cast<long long>(grid.n_radial));
    csv.meta("grid.n_angular", static_cast<long long>(grid.n_angular));
    csv.meta("grid.r_max", grid.r_max);
}

} // namespace crn::harness

#pragma once

// Run configuration: one JSON document, SI units, strict schema.
//
// {
//   "fiber":          {"n_core": 1.4712, "n_clad": 1.4659, "core_radius_m": 4.1e-6},
//   "wavelength_nm":  1550,
//   "families":       ["physical", "gauge", "ghost"],   // empty or absent: all
//   "m_max":          2,
//   "gravity":        {"phi0": 0.0, "g_m_s2": 9.81},
//   "mode_diagram":   {"v_min": 0.5, "v_max": 6.0, "points": 111},
//   "interferometer": {"layout": "mach-zehnder", "arm_length_m": 1e5,
//                      "height_difference_m": 1.0}
//                  or {"layout": "time-bin", "delay_a_m": 10, "delay_b_m": 10,
//                      "height_difference_m": 1.0}
//   "format":         "json" | "csv",
//   "output":         "path"
// }

#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "../errors.hpp"
#include "../fiber_types.hpp"
#include "../gravity.hpp"
#include "../units.hpp"

namespace gbfiber::cli {

using nlohmann::json;

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Format { Json, Csv };
enum class Layout { MachZehnder, TimeBin };

struct InterferometerConfig {
    Layout layout = Layout::MachZehnder;
    // internal units (um)
    double arm_length = 0.0;
    double delay_a = 0.0;
    double delay_b = 0.0;
    double height_difference = 0.0;
};

struct DiagramConfig {
    double v_min = 0.5;
    double v_max = 6.0;
    int points = 111;
};

struct RunConfig {
    fiber::FiberSpec fiber;
    double wavelength_nm = 1550.0;
    std::vector<fiber::ModeFamily> families{fiber::ModeFamily::Physical, fiber::ModeFamily::Gauge,
                                            fiber::ModeFamily::Ghost};
    int m_max = 2;
    // g_acc in 1/um
    gravity::PotentialContext gravity;
    DiagramConfig diagram;
    std::optional<InterferometerConfig> interferometer;
    Format format = Format::Json;
    std::string output;

    double omega() const { return units::wavelength_nm_to_omega(wavelength_nm); }
};

namespace detail {

inline void allow_keys(const json& obj, const std::string& where, std::set<std::string> keys) {
    if (!obj.is_object()) throw ConfigError(where + ": expected an object");
    for (const auto& [k, v] : obj.items())
        if (!keys.count(k)) throw ConfigError(where + ": unknown key '" + k + "'");
}

inline double number(const json& obj, const std::string& key, const std::string& where) {
    const auto& v = obj.at(key);
    if (!v.is_number()) throw ConfigError(where + "." + key + ": expected a number");
    return v.get<double>();
}

inline double number_or(const json& obj, const std::string& key, const std::string& where,
                        double fallback) {
    return obj.contains(key) ? number(obj, key, where) : fallback;
}

inline int integer(const json& obj, const std::string& key, const std::string& where) {
    const auto& v = obj.at(key);
    if (!v.is_number_integer()) throw ConfigError(where + "." + key + ": expected an integer");
    return v.get<int>();
}

inline std::string text(const json& obj, const std::string& key, const std::string& where) {
    const auto& v = obj.at(key);
    if (!v.is_string()) throw ConfigError(where + "." + key + ": expected a string");
    return v.get<std::string>();
}

inline void require(const json& obj, const std::string& key, const std::string& where) {
    if (!obj.contains(key)) throw ConfigError(where + ": missing key '" + key + "'");
}

inline fiber::ModeFamily parse_family(const std::string& s) {
    if (s == "physical") return fiber::ModeFamily::Physical;
    if (s == "gauge") return fiber::ModeFamily::Gauge;
    if (s == "ghost") return fiber::ModeFamily::Ghost;
    throw ConfigError("families: unknown family '" + s + "'");
}

inline InterferometerConfig parse_interferometer(const json& j) {
    const std::string where = "interferometer";
    if (!j.is_object()) throw ConfigError(where + ": expected an object");
    require(j, "layout", where);
    const auto layout = text(j, "layout", where);
    InterferometerConfig c;
    if (layout == "mach-zehnder") {
        allow_keys(j, where, {"layout", "arm_length_m", "height_difference_m"});
        require(j, "arm_length_m", where);
        require(j, "height_difference_m", where);
        c.layout = Layout::MachZehnder;
        c.arm_length = units::metres_to_um(number(j, "arm_length_m", where));
        if (!(c.arm_length > 0.0)) throw ConfigError(where + ".arm_length_m must be positive");
    } else if (layout == "time-bin") {
        allow_keys(j, where, {"layout", "delay_a_m", "delay_b_m", "height_difference_m"});
        for (const char* k : {"delay_a_m", "delay_b_m", "height_difference_m"}) require(j, k, where);
        c.layout = Layout::TimeBin;
        c.delay_a = units::metres_to_um(number(j, "delay_a_m", where));
        c.delay_b = units::metres_to_um(number(j, "delay_b_m", where));
        if (!(c.delay_a > 0.0 && c.delay_b > 0.0))
            throw ConfigError(where + ": delay lengths must be positive");
    } else {
        throw ConfigError(where + ".layout: expected 'mach-zehnder' or 'time-bin'");
    }
    c.height_difference = units::metres_to_um(number(j, "height_difference_m", where));
    return c;
}

} // namespace detail

inline Format parse_format(const std::string& s) {
    if (s == "json") return Format::Json;
    if (s == "csv") return Format::Csv;
    throw ConfigError("format: expected 'json' or 'csv'");
}

inline RunConfig parse_config(const json& j) {
    using namespace detail;
    allow_keys(j, "config", {"fiber", "wavelength_nm", "families", "m_max", "gravity",
                             "mode_diagram", "interferometer", "format", "output"});
    RunConfig c;
    if (j.contains("fiber")) {
        const auto& f = j.at("fiber");
        allow_keys(f, "fiber", {"n_core", "n_clad", "core_radius_m"});
        c.fiber.n_core = number_or(f, "n_core", "fiber", c.fiber.n_core);
        c.fiber.n_clad = number_or(f, "n_clad", "fiber", c.fiber.n_clad);
        if (f.contains("core_radius_m"))
            c.fiber.core_radius = units::metres_to_um(number(f, "core_radius_m", "fiber"));
    }
    try {
        c.fiber.validate();
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
    c.wavelength_nm = number_or(j, "wavelength_nm", "config", c.wavelength_nm);
    if (!(c.wavelength_nm > 0.0)) throw ConfigError("wavelength_nm must be positive");
    if (j.contains("families")) {
        const auto& fams = j.at("families");
        if (!fams.is_array()) throw ConfigError("families: expected an array");
        if (!fams.empty()) {
            c.families.clear();
            for (const auto& f : fams) {
                if (!f.is_string()) throw ConfigError("families: expected strings");
                const auto fam = parse_family(f.get<std::string>());
                for (auto existing : c.families)
                    if (existing == fam) throw ConfigError("families: duplicate entry");
                c.families.push_back(fam);
            }
        }
    }
    if (j.contains("m_max")) c.m_max = integer(j, "m_max", "config");
    if (c.m_max < 0 || c.m_max > specfun::kMaxOrder - 1)
        throw ConfigError("m_max must lie in [0, 24]");
    if (j.contains("gravity")) {
        const auto& g = j.at("gravity");
        allow_keys(g, "gravity", {"phi0", "g_m_s2"});
        c.gravity.phi0 = number_or(g, "phi0", "gravity", 0.0);
        c.gravity.g_acc = units::acceleration_to_geometric(number_or(g, "g_m_s2", "gravity", 0.0));
    }
    try {
        c.gravity.validate(c.fiber.core_radius);
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
    if (j.contains("mode_diagram")) {
        const auto& d = j.at("mode_diagram");
        allow_keys(d, "mode_diagram", {"v_min", "v_max", "points"});
        c.diagram.v_min = number_or(d, "v_min", "mode_diagram", c.diagram.v_min);
        c.diagram.v_max = number_or(d, "v_max", "mode_diagram", c.diagram.v_max);
        if (d.contains("points")) c.diagram.points = integer(d, "points", "mode_diagram");
    }
    if (!(c.diagram.v_min > 0.1 && c.diagram.v_max <= 12.0 && c.diagram.v_min <= c.diagram.v_max))
        throw ConfigError("mode_diagram: V range must lie within (0.1, 12]");
    if (c.diagram.points < 1 || (c.diagram.points == 1) != (c.diagram.v_min == c.diagram.v_max))
        throw ConfigError("mode_diagram.points: need one point for a single V, else at least two");
    if (j.contains("interferometer")) c.interferometer = parse_interferometer(j.at("interferometer"));
    if (j.contains("format")) c.format = parse_format(text(j, "format", "config"));
    if (j.contains("output")) c.output = text(j, "output", "config");
    return c;
}

inline json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
}

inline RunConfig load_config(const std::string& path) { return parse_config(read_json(path)); }

} // namespace gbfiber::cli

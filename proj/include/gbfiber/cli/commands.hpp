#pragma once

// Subcommands mode-diagram, solve and interfere. Each returns the complete
// output document as text.

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "../errors.hpp"
#include "../fiber_modes.hpp"
#include "../gravity.hpp"
#include "../interferometry.hpp"
#include "config.hpp"
#include "output.hpp"

namespace gbfiber::cli {

struct DiagramRow {
    fiber::ModeFamily family;
    int m;
    int kappa;
    double V;
    double b;
};

inline std::vector<double> v_grid(const DiagramConfig& d) {
    if (d.points == 1) return {d.v_min};
    std::vector<double> v;
    for (int k = 0; k < d.points; ++k)
        v.push_back(d.v_min + (d.v_max - d.v_min) * k / (d.points - 1));
    return v;
}

inline std::vector<DiagramRow> mode_diagram_rows(const RunConfig& cfg) {
    const double scale = cfg.fiber.core_radius * std::sqrt(cfg.fiber.contrast());
    std::vector<DiagramRow> rows;
    for (double V : v_grid(cfg.diagram)) {
        for (auto fam : cfg.families)
            for (int m = 0; m <= cfg.m_max; ++m)
                for (const auto& s : fiber::solve_modes(cfg.fiber, V / scale, m, fam))
                    rows.push_back({fam, m, s.key.kappa, V, s.point.b});
    }
    return rows;
}

inline std::string cmd_mode_diagram(const RunConfig& cfg) {
    const auto rows = mode_diagram_rows(cfg);
    if (cfg.format == Format::Csv) {
        CsvWriter w({"family", "m", "kappa", "V", "b"});
        for (const auto& r : rows)
            w.row({fiber::to_string(r.family), std::to_string(r.m), std::to_string(r.kappa),
                   format_double(r.V), format_double(r.b)});
        return w.str();
    }
    auto out = nlohmann::json::array();
    for (const auto& r : rows)
        out.push_back({{"family", fiber::to_string(r.family)}, {"m", r.m}, {"kappa", r.kappa},
                       {"V", r.V}, {"b", r.b}});
    return to_json_text(out);
}

inline nlohmann::json matrix_json(const fiber::CoeffMatrix& q) {
    auto rows = nlohmann::json::array();
    for (const auto& row : q) {
        auto r = nlohmann::json::array();
        for (const auto& v : row) r.push_back(complex_json(v));
        rows.push_back(r);
    }
    return rows;
}

struct GaugeCheck {
    double residual = 0.0;
    std::complex<double> chi_over_a_t{};
};

// Physical and gauge modes: max|chi| / max|A|. Ghost modes: the deviation of
// chi from (2 i beta^2 / omega) A_t, relative to max|A|.
inline GaugeCheck gauge_check(const fiber::ModeSolution& mode) {
    const auto grid = fiber::default_grid(mode.fiber.core_radius);
    const auto f = fiber::evaluate_field(mode, grid);
    GaugeCheck g;
    if (mode.key.family != fiber::ModeFamily::Ghost) {
        g.residual = fiber::gauge_residual(f);
        return g;
    }
    const std::complex<double> expect(0.0, 2.0 * mode.point.beta * mode.point.beta / mode.point.omega);
    double dev = 0.0, amp = 0.0;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        dev = std::max(dev, std::abs(f.chi[k] - expect * f.a_t[k]));
        for (const auto* c : {&f.a_t, &f.a_par, &f.a_plus, &f.a_minus})
            amp = std::max(amp, std::abs((*c)[k]));
    }
    g.residual = dev / amp;
    const auto s = fiber::sample_field(mode, 0.5 * mode.fiber.core_radius);
    g.chi_over_a_t = s.chi / s.a[fiber::kT];
    return g;
}

inline std::vector<fiber::ModeSolution> solve_all(const RunConfig& cfg) {
    std::vector<fiber::ModeSolution> modes;
    for (auto fam : cfg.families)
        for (int m = 0; m <= cfg.m_max; ++m)
            for (const auto& s : fiber::solve_modes(cfg.fiber, cfg.omega(), m, fam)) {
                auto mode = fiber::build_mode(cfg.fiber, s);
                if (cfg.gravity.phi0 != 0.0)
                    mode = gravity::apply_uniform_potential(mode, cfg.gravity.phi0);
                modes.push_back(mode);
            }
    return modes;
}

inline nlohmann::json solve_record(const fiber::ModeSolution& mode) {
    const bool physical = mode.key.family == fiber::ModeFamily::Physical;
    const auto check = gauge_check(mode);
    nlohmann::json r = {
        {"family", fiber::to_string(mode.key.family)},
        {"m", mode.key.m},
        {"kappa", mode.key.kappa},
        {"potential", mode.potential},
        {"omega", mode.point.omega},
        {"beta", mode.point.beta},
        {"b", mode.point.b},
        {"V", mode.point.V},
        {"U", mode.point.U},
        {"W", mode.point.W},
        {"n_eff", mode.point.effective_index()},
        {"q", matrix_json(mode.coeffs.q)},
        {"p", matrix_json(mode.coeffs.p)},
        {"norm_factor", mode.coeffs.norm_factor},
        {"integral_name", physical ? "I1" : "I2"},
        {"integral", mode.coeffs.integral},
        {"chi_residual", check.residual},
    };
    if (mode.key.family == fiber::ModeFamily::Ghost) r["chi_over_a_t"] = complex_json(check.chi_over_a_t);
    return r;
}

inline std::string cmd_solve(const RunConfig& cfg) {
    if (cfg.format != Format::Json) throw ConfigError("solve: only the json format is supported");
    auto out = nlohmann::json::array();
    for (const auto& mode : solve_all(cfg)) out.push_back(solve_record(mode));
    return to_json_text(out);
}

// Effective index of the fundamental (m = 1, kappa = 1) physical mode.
inline double fundamental_index(const RunConfig& cfg) {
    const auto modes = fiber::solve_modes(cfg.fiber, cfg.omega(), 1, fiber::ModeFamily::Physical);
    if (modes.empty()) throw IntegrityError("no fundamental mode found");
    return modes.front().point.effective_index();
}

inline nlohmann::json interfere_result(const RunConfig& cfg) {
    if (!cfg.interferometer) throw ConfigError("interfere: config has no 'interferometer' section");
    const auto& ic = *cfg.interferometer;
    const double omega = cfg.omega();
    const double n_bar = fundamental_index(cfg);
    const double g = cfg.gravity.g_acc;
    if (ic.layout == Layout::MachZehnder) {
        const double dpsi = gravity::gravitational_phase_shift(n_bar, omega, g, ic.arm_length,
                                                               ic.height_difference);
        return {{"layout", "mach-zehnder"},
                {"wavelength_nm", cfg.wavelength_nm},
                {"n_bar", n_bar},
                {"delta_psi", dpsi},
                {"p1", interferometry::single_photon_probability(dpsi)},
                {"p2", interferometry::two_photon_probability(dpsi)}};
    }
    const double beta = gravity::killing_beta(n_bar, omega);
    const double phi_b = cfg.gravity.phi0;
    const double phi_a = cfg.gravity.at(ic.height_difference);
    interferometry::TimeBinSpec tb;
    tb.beta_a = gravity::killing_unmap(beta, phi_a);
    tb.beta_b = gravity::killing_unmap(beta, phi_b);
    tb.length_a = ic.delay_a;
    tb.length_b = ic.delay_b;
    tb.delta_phi = phi_a - phi_b;
    const auto p = interferometry::time_bin_probabilities(tb);
    return {{"layout", "time-bin"},
            {"wavelength_nm", cfg.wavelength_nm},
            {"n_bar", n_bar},
            {"beta_a", tb.beta_a},
            {"beta_b", tb.beta_b},
            {"delta_phi", tb.delta_phi},
            {"phase", interferometry::time_bin_phase(tb)},
            {"p_a", p.p_a},
            {"p_b", p.p_b}};
}

inline std::string cmd_interfere(const RunConfig& cfg) {
    const auto r = interfere_result(cfg);
    if (cfg.format == Format::Json) return to_json_text(r);
    std::vector<std::string> header, fields;
    for (const auto& [k, v] : r.items()) {
        header.push_back(k);
        fields.push_back(v.is_string() ? v.get<std::string>() : format_double(v.get<double>()));
    }
    CsvWriter w(header);
    w.row(fields);
    return w.str();
}

namespace detail {

inline void expect_number(const nlohmann::json& r, const char* key) {
    if (!r.contains(key) || !r.at(key).is_number())
        throw IntegrityError(std::string("output record: '") + key + "' must be a number");
}

inline void expect_matrix(const nlohmann::json& r, const char* key) {
    const auto bad = IntegrityError(std::string("output record: '") + key + "' must be 2x4 complex");
    if (!r.contains(key) || !r.at(key).is_array() || r.at(key).size() != 2) throw bad;
    for (const auto& row : r.at(key)) {
        if (!row.is_array() || row.size() != 4) throw bad;
        for (const auto& z : row)
            if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number()) throw bad;
    }
}

} // namespace detail

// Checks a parsed solve document against the record schema.
inline void validate_solve_output(const nlohmann::json& doc) {
    if (!doc.is_array()) throw IntegrityError("solve output must be an array");
    for (const auto& r : doc) {
        if (!r.is_object()) throw IntegrityError("solve output: records must be objects");
        const auto fam = r.value("family", std::string{});
        if (fam != "physical" && fam != "gauge" && fam != "ghost")
            throw IntegrityError("solve output: bad family");
        for (const char* k : {"m", "kappa"})
            if (!r.contains(k) || !r.at(k).is_number_integer())
                throw IntegrityError(std::string("solve output: '") + k + "' must be an integer");
        for (const char* k : {"potential", "omega", "beta", "b", "V", "U", "W", "n_eff",
                              "norm_factor", "integral", "chi_residual"})
            detail::expect_number(r, k);
        detail::expect_matrix(r, "q");
        detail::expect_matrix(r, "p");
        const auto name = r.value("integral_name", std::string{});
        if (name != (fam == "physical" ? "I1" : "I2"))
            throw IntegrityError("solve output: integral_name does not match the family");
        if ((fam == "ghost") != r.contains("chi_over_a_t"))
            throw IntegrityError("solve output: chi_over_a_t is reported for ghost modes only");
    }
}

inline void validate_interfere_output(const nlohmann::json& doc) {
    if (!doc.is_object()) throw IntegrityError("interfere output must be an object");
    const auto layout = doc.value("layout", std::string{});
    std::vector<const char*> keys{"wavelength_nm", "n_bar"};
    if (layout == "mach-zehnder")
        keys.insert(keys.end(), {"delta_psi", "p1", "p2"});
    else if (layout == "time-bin")
        keys.insert(keys.end(), {"beta_a", "beta_b", "delta_phi", "phase", "p_a", "p_b"});
    else
        throw IntegrityError("interfere output: bad layout");
    for (const char* k : keys) detail::expect_number(doc, k);
    if (doc.size() != keys.size() + 1) throw IntegrityError("interfere output: unexpected keys");
}

} // namespace gbfiber::cli

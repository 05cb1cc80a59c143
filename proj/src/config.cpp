// config.cpp: scenario presets and the INI-style run configuration format

#include "photocorr/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <optional>
#include <sstream>

namespace photocorr {

namespace {

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

[[noreturn]] void fail(int line, const std::string& what) {
    throw ConfigError("line " + std::to_string(line) + ": " + what);
}

double parse_double_or(int line, const std::string& key, const std::string& value) {
    const std::string v = trim(value);
    char* end = nullptr;
    const double d = std::strtod(v.c_str(), &end);
    if (v.empty() || end != v.c_str() + v.size())
        fail(line, "cannot parse number '" + v + "' for key '" + key + "'");
    return d;
}

int parse_int_or(int line, const std::string& key, const std::string& value) {
    const double d = parse_double_or(line, key, value);
    const int i = static_cast<int>(d);
    if (static_cast<double>(i) != d)
        fail(line, "key '" + key + "' needs an integer, got '" + trim(value) + "'");
    return i;
}

bool parse_bool_or(int line, const std::string& key, const std::string& value) {
    const std::string v = trim(value);
    if (v == "true") return true;
    if (v == "false") return false;
    fail(line, "key '" + key + "' needs true or false, got '" + v + "'");
}

std::vector<double> parse_double_list(int line, const std::string& key, const std::string& value) {
    std::vector<double> out;
    for (const std::string& part : split(value, ',')) out.push_back(parse_double_or(line, key, part));
    return out;
}

ContourRequest parse_contour_request(int line, const std::string& text) {
    const auto parts = split(text, ':');
    if (parts.size() != 3)
        fail(line, "contour request '" + trim(text) + "' is not field:level:value or field:ratio:value");
    ContourRequest req;
    try {
        req.field = field_kind_from_name(trim(parts[0]));
    } catch (const std::invalid_argument& e) {
        fail(line, e.what());
    }
    const std::string kind = trim(parts[1]);
    if (kind == "level")
        req.kind = ContourKind::LevelSet;
    else if (kind == "ratio")
        req.kind = ContourKind::RatioThreshold;
    else
        fail(line, "contour request kind must be level or ratio, got '" + kind + "'");
    req.level = parse_double_or(line, "requests", parts[2]);
    return req;
}

std::string render_contour_request(const ContourRequest& req) {
    return field_name(req.field) + ":" +
           (req.kind == ContourKind::LevelSet ? "level" : "ratio") + ":" + fmt_double(req.level);
}

bool positions_equal(const std::vector<Eigen::Vector3d>& a, const std::vector<Eigen::Vector3d>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i].x() != b[i].x() || a[i].y() != b[i].y() || a[i].z() != b[i].z()) return false;
    return true;
}

bool specs_equal(const SystemSpec& a, const SystemSpec& b) {
    return a.n_atoms == b.n_atoms && a.scheme.kind == b.scheme.kind &&
           positions_equal(a.positions, b.positions) && a.omega_p == b.omega_p &&
           a.omega_c == b.omega_c && a.gamma_c == b.gamma_c && a.interaction == b.interaction &&
           a.rri.mode == b.rri.mode && a.rri.v_nn == b.rri.v_nn &&
           a.rri.c6_ghz_um6 == b.rri.c6_ghz_um6 && a.rri.lambda_p_um == b.rri.lambda_p_um &&
           a.rri.gamma_p_hz == b.rri.gamma_p_hz;
}

// Spacings between consecutive atoms of an x-axis chain; the only geometry
// the text format expresses.
std::vector<double> chain_spacings(const SystemSpec& spec) {
    std::vector<double> out;
    for (std::size_t i = 0; i + 1 < spec.positions.size(); ++i) {
        const Eigen::Vector3d& a = spec.positions[i];
        const Eigen::Vector3d& b = spec.positions[i + 1];
        if (a.y() != 0.0 || a.z() != 0.0 || b.y() != 0.0 || b.z() != 0.0 || b.x() <= a.x())
            throw ConfigError("emit_config: positions must be an increasing x-axis chain");
        out.push_back(b.x() - a.x());
    }
    if (!spec.positions.empty()) {
        const Eigen::Vector3d& a = spec.positions.front();
        if (a.x() != 0.0 || a.y() != 0.0 || a.z() != 0.0)
            throw ConfigError("emit_config: chain must start at the origin");
    }
    return out;
}

RunConfig base_config() {
    RunConfig c;
    c.spec.n_atoms = 1;
    c.spec.positions = {Eigen::Vector3d::Zero()};
    c.spec.omega_p = 0.01;
    return c;
}

RunConfig ddi_fig2_config() {
    RunConfig c = base_config();
    c.scenario = "ddi_fig2";
    c.spec.n_atoms = 4;
    c.spec.positions = equidistant_chain(4, 1.0);
    c.spec.omega_p = 0.01;
    c.spec.interaction = InteractionKind::Ddi;
    c.contours = {{FieldKind::C2, ContourKind::LevelSet, 0.0},
                  {FieldKind::C4, ContourKind::LevelSet, 0.0},
                  {FieldKind::C3, ContourKind::RatioThreshold, 10.0}};
    return c;
}

RunConfig rri_fig6_config() {
    RunConfig c = base_config();
    c.scenario = "rri_fig6";
    c.spec.n_atoms = 4;
    c.spec.scheme.kind = SchemeKind::ThreeLevelLadder;
    c.spec.positions = equidistant_chain(4, 5.0);
    c.spec.omega_p = 0.01;
    c.spec.omega_c = 1.0;
    c.spec.gamma_c = 0.05;
    c.spec.interaction = InteractionKind::Rri;
    c.spec.rri.mode = RriCouplingSpec::Mode::Dimensionless;
    c.spec.rri.v_nn = 2.34095;
    c.contours = {{FieldKind::C2, ContourKind::LevelSet, 0.0},
                  {FieldKind::C4, ContourKind::LevelSet, 0.0},
                  {FieldKind::C3, ContourKind::RatioThreshold, 5.0}};
    return c;
}

RunConfig ddi_random_config() {
    RunConfig c = ddi_fig2_config();
    c.scenario = "ddi_random";
    c.spec.positions = chain_positions({1.3, 0.6, 0.4});
    return c;
}

RunConfig scaling_fig8a_config() {
    RunConfig c = ddi_fig2_config();
    c.scenario = "scaling_fig8a";
    c.contours.clear();
    c.fields = {FieldKind::G2};
    c.scaling_s1 = 1.0;
    c.scaling_s2 = 1.5;
    return c;
}

RunConfig rri_ratio_fig8b_config() {
    RunConfig c = rri_fig6_config();
    c.scenario = "rri_ratio_fig8b";
    c.contours.clear();
    c.fields = {FieldKind::G2};
    c.rabi_omega_c_1 = 0.01;
    c.rabi_omega_c_2 = 0.05;
    return c;
}

}  // namespace

bool operator==(const RunConfig& a, const RunConfig& b) {
    return a.scenario == b.scenario && specs_equal(a.spec, b.spec) &&
           a.grid_points == b.grid_points && a.fields == b.fields && a.contours == b.contours &&
           a.output_dir == b.output_dir && a.workers == b.workers &&
           a.emit_heatmaps == b.emit_heatmaps && a.dump_rho == b.dump_rho &&
           a.dump_liouvillian == b.dump_liouvillian && a.scaling_s1 == b.scaling_s1 &&
           a.scaling_s2 == b.scaling_s2 && a.disable_interaction == b.disable_interaction &&
           a.rabi_omega_c_1 == b.rabi_omega_c_1 && a.rabi_omega_c_2 == b.rabi_omega_c_2;
}

std::vector<std::string> scenario_names() {
    return {"ddi_fig2", "rri_fig6", "ddi_random", "scaling_fig8a", "rri_ratio_fig8b"};
}

RunConfig scenario_config(const std::string& name) {
    if (name == "ddi_fig2") return ddi_fig2_config();
    if (name == "rri_fig6") return rri_fig6_config();
    if (name == "ddi_random") return ddi_random_config();
    if (name == "scaling_fig8a") return scaling_fig8a_config();
    if (name == "rri_ratio_fig8b") return rri_ratio_fig8b_config();
    std::string msg = "unknown scenario '" + name + "'; available:";
    for (const std::string& s : scenario_names()) msg += " " + s;
    throw ConfigError(msg);
}

RunConfig parse_config(const std::string& text) {
    struct Entry {
        int line;
        std::string section, key, value;
    };
    std::vector<Entry> entries;
    {
        std::istringstream in(text);
        std::string raw;
        std::string section;
        int line = 0;
        while (std::getline(in, raw)) {
            ++line;
            const std::string s = trim(raw);
            if (s.empty() || s[0] == '#' || s[0] == ';') continue;
            if (s.front() == '[') {
                if (s.back() != ']') fail(line, "unterminated section header");
                section = trim(s.substr(1, s.size() - 2));
                if (section.empty()) fail(line, "empty section name");
                continue;
            }
            const auto eq = s.find('=');
            if (eq == std::string::npos) fail(line, "expected key = value");
            if (section.empty()) fail(line, "key before any [section] header");
            entries.push_back({line, section, trim(s.substr(0, eq)), trim(s.substr(eq + 1))});
        }
    }

    // The scenario selection seeds every other default, so resolve it first
    // regardless of where it appears in the file.
    RunConfig cfg = base_config();
    bool scenario_seen = false;
    for (const Entry& e : entries) {
        if (e.section == "run" && e.key == "scenario") {
            if (scenario_seen) fail(e.line, "duplicate scenario key");
            try {
                cfg = scenario_config(e.value);
            } catch (const ConfigError& err) {
                fail(e.line, err.what());
            }
            scenario_seen = true;
        }
    }

    std::optional<int> n_atoms_override;
    std::optional<double> uniform_spacing;
    std::optional<std::vector<double>> spacing_list;
    int geometry_line = 0;

    for (const Entry& e : entries) {
        const int ln = e.line;
        const std::string& k = e.key;
        const std::string& v = e.value;
        if (e.section == "run") {
            if (k == "scenario") continue;
            if (k == "grid") {
                cfg.grid_points = parse_int_or(ln, k, v);
            } else if (k == "fields") {
                std::vector<FieldKind> kinds;
                if (!trim(v).empty()) {
                    for (const std::string& part : split(v, ',')) {
                        try {
                            kinds.push_back(field_kind_from_name(trim(part)));
                        } catch (const std::invalid_argument& err) {
                            fail(ln, err.what());
                        }
                    }
                }
                cfg.fields = kinds;
            } else if (k == "workers") {
                cfg.workers = parse_int_or(ln, k, v);
            } else if (k == "output_dir") {
                cfg.output_dir = v;
            } else if (k == "emit_heatmaps") {
                cfg.emit_heatmaps = parse_bool_or(ln, k, v);
            } else if (k == "dump_rho") {
                cfg.dump_rho = parse_bool_or(ln, k, v);
            } else if (k == "dump_liouvillian") {
                cfg.dump_liouvillian = parse_bool_or(ln, k, v);
            } else {
                fail(ln, "unknown key '" + k + "' in [run]");
            }
        } else if (e.section == "system") {
            if (k == "scheme") {
                if (v == "two_level")
                    cfg.spec.scheme.kind = SchemeKind::TwoLevel;
                else if (v == "ladder")
                    cfg.spec.scheme.kind = SchemeKind::ThreeLevelLadder;
                else
                    fail(ln, "scheme must be two_level or ladder, got '" + v + "'");
            } else if (k == "n_atoms") {
                n_atoms_override = parse_int_or(ln, k, v);
                geometry_line = ln;
            } else if (k == "spacing") {
                uniform_spacing = parse_double_or(ln, k, v);
                geometry_line = ln;
            } else if (k == "spacings") {
                spacing_list = parse_double_list(ln, k, v);
                geometry_line = ln;
            } else if (k == "omega_p") {
                cfg.spec.omega_p = parse_double_or(ln, k, v);
            } else if (k == "omega_c") {
                cfg.spec.omega_c = parse_double_or(ln, k, v);
            } else if (k == "gamma_c") {
                cfg.spec.gamma_c = parse_double_or(ln, k, v);
            } else if (k == "interaction") {
                if (v == "none")
                    cfg.spec.interaction = InteractionKind::None;
                else if (v == "ddi")
                    cfg.spec.interaction = InteractionKind::Ddi;
                else if (v == "rri")
                    cfg.spec.interaction = InteractionKind::Rri;
                else
                    fail(ln, "interaction must be none, ddi or rri, got '" + v + "'");
            } else if (k == "rri_mode") {
                if (v == "dimensionless")
                    cfg.spec.rri.mode = RriCouplingSpec::Mode::Dimensionless;
                else if (v == "physical")
                    cfg.spec.rri.mode = RriCouplingSpec::Mode::Physical;
                else
                    fail(ln, "rri_mode must be dimensionless or physical, got '" + v + "'");
            } else if (k == "v_nn") {
                cfg.spec.rri.v_nn = parse_double_or(ln, k, v);
            } else if (k == "c6_ghz_um6") {
                cfg.spec.rri.c6_ghz_um6 = parse_double_or(ln, k, v);
            } else if (k == "lambda_p_um") {
                cfg.spec.rri.lambda_p_um = parse_double_or(ln, k, v);
            } else if (k == "gamma_p_hz") {
                cfg.spec.rri.gamma_p_hz = parse_double_or(ln, k, v);
            } else {
                fail(ln, "unknown key '" + k + "' in [system]");
            }
        } else if (e.section == "contours") {
            if (k == "requests") {
                std::vector<ContourRequest> reqs;
                const std::string body = trim(v);
                if (!body.empty())
                    for (const std::string& part : split(v, ','))
                        reqs.push_back(parse_contour_request(ln, part));
                cfg.contours = reqs;
            } else {
                fail(ln, "unknown key '" + k + "' in [contours]");
            }
        } else if (e.section == "scaling") {
            if (k == "s1")
                cfg.scaling_s1 = parse_double_or(ln, k, v);
            else if (k == "s2")
                cfg.scaling_s2 = parse_double_or(ln, k, v);
            else if (k == "disable_interaction")
                cfg.disable_interaction = parse_bool_or(ln, k, v);
            else
                fail(ln, "unknown key '" + k + "' in [scaling]");
        } else if (e.section == "rabi") {
            if (k == "omega_c_1")
                cfg.rabi_omega_c_1 = parse_double_or(ln, k, v);
            else if (k == "omega_c_2")
                cfg.rabi_omega_c_2 = parse_double_or(ln, k, v);
            else
                fail(ln, "unknown key '" + k + "' in [rabi]");
        } else if (e.section == "report") {
            // manifests echo their configuration above a [report] section;
            // skipping it lets a manifest parse back to its inputs
            continue;
        } else {
            fail(ln, "unknown section [" + e.section + "]");
        }
    }

    if (spacing_list) {
        if (n_atoms_override &&
            *n_atoms_override != static_cast<int>(spacing_list->size()) + 1)
            fail(geometry_line, "n_atoms contradicts the spacings list length");
        cfg.spec.positions = chain_positions(*spacing_list);
        cfg.spec.n_atoms = static_cast<int>(cfg.spec.positions.size());
    } else if (uniform_spacing) {
        const int n = n_atoms_override.value_or(cfg.spec.n_atoms);
        if (n < 1) fail(geometry_line, "n_atoms must be >= 1");
        cfg.spec.positions = equidistant_chain(n, *uniform_spacing);
        cfg.spec.n_atoms = n;
    } else if (n_atoms_override) {
        fail(geometry_line, "n_atoms override needs a spacing or spacings key");
    }

    if (cfg.grid_points < 2)
        throw ConfigError("validation error: grid must have at least 2 points");
    if (cfg.workers < 1) throw ConfigError("validation error: workers must be >= 1");
    if (cfg.fields.empty()) throw ConfigError("validation error: fields list is empty");
    if (cfg.scaling_s1 <= 0.0 || cfg.scaling_s2 <= 0.0 || cfg.scaling_s1 > cfg.scaling_s2)
        throw ConfigError("validation error: scaling needs 0 < s1 <= s2");
    if (cfg.rabi_omega_c_1 < 0.0 || cfg.rabi_omega_c_2 < 0.0)
        throw ConfigError("validation error: rabi omega_c values must be >= 0");
    try {
        validate_spec(cfg.spec);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("validation error: ") + e.what());
    }
    return cfg;
}

std::string emit_config(const RunConfig& config) {
    std::ostringstream out;
    out << "[run]\n";
    if (!config.scenario.empty()) out << "scenario = " << config.scenario << "\n";
    out << "grid = " << config.grid_points << "\n";
    out << "fields = ";
    for (std::size_t i = 0; i < config.fields.size(); ++i)
        out << (i ? ", " : "") << field_name(config.fields[i]);
    out << "\n";
    out << "workers = " << config.workers << "\n";
    out << "output_dir = " << config.output_dir << "\n";
    out << "emit_heatmaps = " << (config.emit_heatmaps ? "true" : "false") << "\n";
    out << "dump_rho = " << (config.dump_rho ? "true" : "false") << "\n";
    out << "dump_liouvillian = " << (config.dump_liouvillian ? "true" : "false") << "\n";

    out << "\n[system]\n";
    out << "scheme = "
        << (config.spec.scheme.kind == SchemeKind::TwoLevel ? "two_level" : "ladder") << "\n";
    const std::vector<double> spacings = chain_spacings(config.spec);
    if (!spacings.empty()) {
        out << "spacings = ";
        for (std::size_t i = 0; i < spacings.size(); ++i)
            out << (i ? ", " : "") << fmt_double(spacings[i]);
        out << "\n";
    }
    out << "omega_p = " << fmt_double(config.spec.omega_p) << "\n";
    if (config.spec.scheme.kind == SchemeKind::ThreeLevelLadder) {
        out << "omega_c = " << fmt_double(config.spec.omega_c) << "\n";
        out << "gamma_c = " << fmt_double(config.spec.gamma_c) << "\n";
    }
    out << "interaction = "
        << (config.spec.interaction == InteractionKind::None
                ? "none"
                : config.spec.interaction == InteractionKind::Ddi ? "ddi" : "rri")
        << "\n";
    if (config.spec.interaction == InteractionKind::Rri) {
        out << "rri_mode = "
            << (config.spec.rri.mode == RriCouplingSpec::Mode::Dimensionless ? "dimensionless"
                                                                             : "physical")
            << "\n";
        out << "v_nn = " << fmt_double(config.spec.rri.v_nn) << "\n";
        out << "c6_ghz_um6 = " << fmt_double(config.spec.rri.c6_ghz_um6) << "\n";
        out << "lambda_p_um = " << fmt_double(config.spec.rri.lambda_p_um) << "\n";
        out << "gamma_p_hz = " << fmt_double(config.spec.rri.gamma_p_hz) << "\n";
    }

    out << "\n[contours]\n";
    out << "requests = ";
    for (std::size_t i = 0; i < config.contours.size(); ++i)
        out << (i ? ", " : "") << render_contour_request(config.contours[i]);
    out << "\n";

    out << "\n[scaling]\n";
    out << "s1 = " << fmt_double(config.scaling_s1) << "\n";
    out << "s2 = " << fmt_double(config.scaling_s2) << "\n";
    out << "disable_interaction = " << (config.disable_interaction ? "true" : "false") << "\n";

    out << "\n[rabi]\n";
    out << "omega_c_1 = " << fmt_double(config.rabi_omega_c_1) << "\n";
    out << "omega_c_2 = " << fmt_double(config.rabi_omega_c_2) << "\n";
    return out.str();
}

}  // namespace photocorr

#include "nls/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace nls {

using nlohmann::json;

namespace {

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!allowed.count(it.key()))
            throw ValidationError("config: unknown key '" + it.key() + "' in " + where);
}

double need_number(const json& obj, const std::string& key, const std::string& where) {
    if (!obj.contains(key)) throw ValidationError("config: missing '" + key + "' in " + where);
    if (!obj[key].is_number()) throw ValidationError("config: '" + where + "." + key + "' must be a number");
    return obj[key].get<double>();
}

double opt_number(const json& obj, const std::string& key, double fallback, const std::string& where) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_number()) throw ValidationError("config: '" + where + "." + key + "' must be a number");
    return obj[key].get<double>();
}

TimeFunction parse_time_function(const json& v, const std::string& where, bool require_real = false) {
    if (!v.is_object()) throw ValidationError("config: " + where + " must be an object with 'const' or 'table'");
    reject_unknown(v, {"const", "table"}, where);
    if (v.contains("const")) {
        const auto& c = v["const"];
        if (!c.is_array() || c.size() != 2 || !c[0].is_number() || !c[1].is_number())
            throw ValidationError("config: " + where + ".const must be [re, im]");
        const Complex value(c[0].get<double>(), c[1].get<double>());
        if (require_real && std::abs(value.imag()) > 1e-12 * std::max(1.0, std::abs(value.real())))
            throw ValidationError("config: " + where + " must be real valued");
        return TimeFunction(value);
    }
    if (v.contains("table")) {
        const auto& tbl = v["table"];
        if (!tbl.is_array() || tbl.size() < 2)
            throw ValidationError("config: " + where + ".table needs at least two [t, re, im] rows");
        std::vector<std::pair<double, Complex>> rows;
        for (const auto& row : tbl) {
            if (!row.is_array() || row.size() != 3)
                throw ValidationError("config: " + where + ".table rows must be [t, re, im]");
            const Complex value(row[1].get<double>(), row[2].get<double>());
            if (require_real && std::abs(value.imag()) > 1e-12 * std::max(1.0, std::abs(value.real())))
                throw ValidationError("config: " + where + " must be real valued");
            rows.emplace_back(row[0].get<double>(), value);
        }
        return TimeFunction(std::move(rows));
    }
    throw ValidationError("config: " + where + " needs 'const' or 'table'");
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace

double RunConfig::nu_expected() const {
    if (example) return example->nu;
    return boundary.rho;
}

double RunConfig::resolved_x_max() const {
    if (grid.x_max > 0.0) return grid.x_max;
    return std::max(60.0 / std::min(nu_expected(), boundary.rho), 40.0);
}

std::vector<double> RunConfig::z_grid() const {
    return symmetric_z_grid(boundary.rho, grid.z_max * boundary.rho, grid.z_nodes);
}

ScatteringOptions RunConfig::scattering_options() const { return {}; }

GlmOptions RunConfig::glm_options() const {
    GlmOptions g;
    g.base_panels = grid.glm_panels;
    g.tail_cutoff = grid.glm_tail_cutoff;
    return g;
}

void RunConfig::refine(int k) {
    for (int i = 0; i < k; ++i) {
        grid.steps *= 2;
        grid.glm_panels *= 2;
    }
}

RunConfig parse_config_text(const std::string& text, const std::string& origin) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError("config: " + origin + ": " + e.what());
    }
    if (!root.is_object()) throw ParseError("config: top level must be an object");
    reject_unknown(root, {"boundary", "grid", "potential", "source", "times", "tolerances", "output"},
                   "top level");

    RunConfig cfg;

    if (!root.contains("potential") || !root["potential"].is_object())
        throw ValidationError("config: missing 'potential' object");
    const json& pot = root["potential"];
    reject_unknown(pot, {"example", "file"}, "potential");
    if (pot.contains("example") == pot.contains("file"))
        throw ValidationError("config: potential needs exactly one of 'example' or 'file'");

    if (pot.contains("example")) {
        const json& ex = pot["example"];
        reject_unknown(ex, {"rho", "nu", "c", "alpha_minus", "alpha_plus"}, "potential.example");
        const double rho = need_number(ex, "rho", "potential.example");
        const double nu = need_number(ex, "nu", "potential.example");
        const double c = need_number(ex, "c", "potential.example");
        const double am = opt_number(ex, "alpha_minus", 0.0, "potential.example");
        if (!(rho > 0.0)) throw ValidationError("config: potential.example.rho must be positive");
        if (!(nu > 0.0 && nu < rho))
            throw ValidationError("config: potential.example.nu must satisfy 0 < nu < rho");
        if (!(c > 0.0)) throw ValidationError("config: potential.example.c must be positive");
        const double ap = ex.contains("alpha_plus") ? need_number(ex, "alpha_plus", "potential.example")
                                                    : matched_alpha_plus(am, rho, nu);
        cfg.example = ExampleParams(rho, nu, c, am, ap);
        cfg.boundary = cfg.example->boundary();
        if (root.contains("boundary"))
            throw ValidationError("config: 'boundary' is derived from potential.example; remove it");
    } else {
        cfg.potential_file = pot["file"].get<std::string>();
        if (!root.contains("boundary") || !root["boundary"].is_object())
            throw ValidationError("config: file potentials need a 'boundary' object");
        const json& b = root["boundary"];
        reject_unknown(b, {"rho", "alpha_minus", "alpha_plus"}, "boundary");
        const double rho = need_number(b, "rho", "boundary");
        if (!(rho > 0.0)) throw ValidationError("config: boundary.rho must be positive");
        cfg.boundary = BoundaryData(rho, need_number(b, "alpha_minus", "boundary"),
                                    need_number(b, "alpha_plus", "boundary"));
    }

    if (root.contains("grid")) {
        const json& g = root["grid"];
        reject_unknown(g, {"x_max", "steps", "z_max", "z_nodes", "glm_panels", "glm_tail_cutoff",
                           "recon_half_width", "recon_points"},
                       "grid");
        cfg.grid.x_max = opt_number(g, "x_max", 0.0, "grid");
        cfg.grid.steps = static_cast<int>(opt_number(g, "steps", 4000, "grid"));
        cfg.grid.z_max = opt_number(g, "z_max", 40.0, "grid");
        cfg.grid.z_nodes = static_cast<int>(opt_number(g, "z_nodes", 4000, "grid"));
        cfg.grid.glm_panels = static_cast<int>(opt_number(g, "glm_panels", 192, "grid"));
        cfg.grid.glm_tail_cutoff = opt_number(g, "glm_tail_cutoff", 1e-10, "grid");
        cfg.grid.recon_half_width = opt_number(g, "recon_half_width", 0.0, "grid");
        cfg.grid.recon_points = static_cast<int>(opt_number(g, "recon_points", 161, "grid"));
        if (cfg.grid.steps < 16) throw ValidationError("config: grid.steps too small");
        if (cfg.grid.z_nodes < 8 || cfg.grid.z_nodes % 4 != 0)
            throw ValidationError("config: grid.z_nodes must be a multiple of 4 (>= 8)");
        if (cfg.grid.glm_panels < 8 || cfg.grid.glm_panels % 2 != 0)
            throw ValidationError("config: grid.glm_panels must be even (>= 8)");
        if (cfg.grid.recon_points < 5 || cfg.grid.recon_points % 2 == 0)
            throw ValidationError("config: grid.recon_points must be odd (>= 5)");
    }

    if (root.contains("source")) {
        const json& s = root["source"];
        reject_unknown(s, {"case", "terms"}, "source");
        if (!s.contains("case") || !s["case"].is_string())
            throw ValidationError("config: source.case must be \"A\" or \"B\"");
        const std::string cs = s["case"].get<std::string>();
        if (cs != "A" && cs != "B") throw ValidationError("config: source.case must be \"A\" or \"B\"");
        cfg.source.kind = cs == "A" ? SourceCase::A : SourceCase::B;
        if (s.contains("terms")) {
            if (!s["terms"].is_array()) throw ValidationError("config: source.terms must be an array");
            int idx = 0;
            for (const auto& term : s["terms"]) {
                const std::string where = "source.terms[" + std::to_string(idx) + "]";
                SourceTerm st;
                if (cfg.source.kind == SourceCase::A) {
                    reject_unknown(term, {"A", "alpha"}, where);
                    if (term.contains("A")) st.A = parse_time_function(term["A"], where + ".A");
                    if (term.contains("alpha")) st.alpha = parse_time_function(term["alpha"], where + ".alpha");
                } else {
                    reject_unknown(term, {"B", "beta"}, where);
                    if (term.contains("B")) st.B = parse_time_function(term["B"], where + ".B", /*require_real=*/true);
                    if (term.contains("beta")) st.beta = parse_time_function(term["beta"], where + ".beta");
                }
                cfg.source.terms.push_back(std::move(st));
                ++idx;
            }
        }
    }

    if (root.contains("times")) {
        if (!root["times"].is_array()) throw ValidationError("config: times must be an array of numbers");
        for (const auto& t : root["times"]) {
            if (!t.is_number()) throw ValidationError("config: times entries must be numbers");
            const double tv = t.get<double>();
            if (tv < 0.0) throw ValidationError("config: times entries must be >= 0");
            cfg.times.push_back(tv);
        }
    }
    if (cfg.times.empty()) cfg.times.push_back(0.0);

    if (root.contains("tolerances")) {
        const json& tol = root["tolerances"];
        reject_unknown(tol, {"boundary"}, "tolerances");
        cfg.boundary_tol = opt_number(tol, "boundary", 1e-6, "tolerances");
    }

    if (root.contains("output")) {
        const json& o = root["output"];
        reject_unknown(o, {"dir"}, "output");
        if (o.contains("dir")) cfg.output_dir = o["dir"].get<std::string>();
    }

    std::ostringstream hash_src;
    hash_src << root.dump();
    std::ostringstream hash_hex;
    hash_hex << std::hex << fnv1a(hash_src.str());
    cfg.config_hash = hash_hex.str();
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("config: cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str(), path);
}

}  // namespace nls

#include "nls/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace nls {

using nlohmann::json;

const char* kVersion = "0.1.0";

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw NlsError("io: cannot open '" + path + "' for writing");
    return out;
}

}  // namespace

std::string time_tag(double t) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", t);
    return buf;
}

void write_field_csv(const std::string& path, const PotentialField& field) {
    auto out = open_out(path);
    out << "x,re_u,im_u,abs_u\n";
    for (int i = 0; i < field.grid().n; ++i) {
        const Complex u = field[i];
        out << format_double(field.grid().x(i)) << ',' << format_double(u.real()) << ','
            << format_double(u.imag()) << ',' << format_double(std::abs(u)) << '\n';
    }
}

void write_field_dat(const std::string& path, const PotentialField& field) {
    auto out = open_out(path);
    out << "# x re_u im_u abs_u\n";
    for (int i = 0; i < field.grid().n; ++i) {
        const Complex u = field[i];
        out << format_double(field.grid().x(i)) << ' ' << format_double(u.real()) << ' '
            << format_double(u.imag()) << ' ' << format_double(std::abs(u)) << '\n';
    }
}

void write_scattering_csv(const std::string& path, const ScatteringData& sd) {
    auto out = open_out(path);
    out << "z,re_a,im_a,re_b,im_b,re_r,im_r\n";
    for (const auto& s : sd.continuous) {
        out << format_double(s.z) << ',' << format_double(s.a.real()) << ',' << format_double(s.a.imag())
            << ',' << format_double(s.b.real()) << ',' << format_double(s.b.imag()) << ','
            << format_double(s.r.real()) << ',' << format_double(s.r.imag()) << '\n';
    }
}

void write_discrete_json(const std::string& path, const ScatteringData& sd) {
    json j;
    j["time"] = sd.time;
    j["rho"] = sd.boundary.rho;
    j["alpha_minus"] = sd.boundary.alpha_minus;
    j["alpha_plus"] = sd.boundary.alpha_plus;
    j["eigenvalues"] = json::array();
    j["norming_constants"] = json::array();
    j["a_dot_z"] = json::array();
    j["a_dot_xi"] = json::array();
    for (std::size_t k = 0; k < sd.n_eigen(); ++k) {
        j["eigenvalues"].push_back(sd.eigenvalues[k]);
        j["norming_constants"].push_back({sd.norming[k].real(), sd.norming[k].imag()});
        if (k < sd.a_dot_z.size()) j["a_dot_z"].push_back({sd.a_dot_z[k].real(), sd.a_dot_z[k].imag()});
        if (k < sd.a_dot_xi.size()) j["a_dot_xi"].push_back({sd.a_dot_xi[k].real(), sd.a_dot_xi[k].imag()});
    }
    auto out = open_out(path);
    out << j.dump(2) << '\n';
}

void write_reports_json(const std::string& path, const std::vector<ResidualReport>& reports) {
    json j = json::array();
    for (const auto& r : reports) {
        json e;
        e["name"] = r.name;
        e["dx"] = r.dx;
        e["dt"] = r.dt;
        e["max_residual"] = r.max_residual;
        e["l2_residual"] = r.l2_residual;
        if (r.convergence_rate) e["convergence_rate"] = *r.convergence_rate;
        j.push_back(e);
    }
    auto out = open_out(path);
    out << j.dump(2) << '\n';
}

void write_sidecar(const std::string& data_path, const RunConfig& cfg) {
    json j;
    j["config_hash"] = cfg.config_hash;
    j["version"] = kVersion;
    j["tolerances"] = {{"boundary", cfg.boundary_tol}, {"glm_tail_cutoff", cfg.grid.glm_tail_cutoff}};
    auto out = open_out(data_path + ".meta.json");
    out << j.dump(2) << '\n';
}

void write_gnuplot_script(const std::string& path, const std::vector<std::string>& dat_files) {
    auto out = open_out(path);
    out << "set grid\nset xlabel 'x'\nset ylabel '|u|'\n";
    out << "plot ";
    for (std::size_t i = 0; i < dat_files.size(); ++i) {
        out << "'" << dat_files[i] << "' using 1:4 with lines title '" << dat_files[i] << "'";
        if (i + 1 < dat_files.size()) out << ", \\\n     ";
    }
    out << '\n';
}

PotentialField load_potential_csv(const std::string& path, const BoundaryData& boundary, double time,
                                  double boundary_tol) {
    std::ifstream in(path);
    if (!in) throw ParseError("io: cannot open potential file '" + path + "'");
    std::vector<double> xs;
    std::vector<Complex> us;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#' || line[0] == 'x') continue;
        std::istringstream ss(line);
        std::string tok;
        double vals[3];
        for (int k = 0; k < 3; ++k) {
            if (!std::getline(ss, tok, ','))
                throw ParseError("io: " + path + ":" + std::to_string(lineno) + ": expected x,re,im");
            try {
                vals[k] = std::stod(tok);
            } catch (...) {
                throw ParseError("io: " + path + ":" + std::to_string(lineno) + ": bad number '" + tok + "'");
            }
        }
        xs.push_back(vals[0]);
        us.emplace_back(vals[1], vals[2]);
    }
    if (xs.size() < 3) throw ParseError("io: " + path + ": need at least three samples");
    const double dx = xs[1] - xs[0];
    for (std::size_t i = 1; i < xs.size(); ++i)
        if (std::abs(xs[i] - xs[i - 1] - dx) > 1e-9 * std::max(1.0, std::abs(dx)))
            throw ParseError("io: " + path + ": grid must be uniform");
    int n = static_cast<int>(xs.size());
    if ((n - 1) % 2 != 0) {  // drop the last sample to get an even interval count
        xs.pop_back();
        us.pop_back();
        --n;
    }
    return PotentialField(Grid(xs.front(), dx, n), std::move(us), boundary, time, boundary_tol);
}

}  // namespace nls

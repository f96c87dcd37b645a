#include "nls/pipeline.hpp"

#include <cstring>
#include <filesystem>
#include <fstream>

#include "nls/evolution.hpp"
#include "nls/io.hpp"
#include "nls/scattering.hpp"
#include "nls/sources.hpp"
#include "nls/verify.hpp"

namespace nls {

namespace fs = std::filesystem;

Command command_from_name(const std::string& name) {
    if (name == "direct") return Command::Direct;
    if (name == "evolve") return Command::Evolve;
    if (name == "inverse") return Command::Inverse;
    if (name == "simulate") return Command::Simulate;
    if (name == "verify") return Command::Verify;
    if (name == "example") return Command::Example;
    throw ValidationError("unknown command '" + name + "'");
}

PotentialField build_initial_field(const RunConfig& cfg) {
    const double X = cfg.resolved_x_max();
    const Grid grid = Grid::symmetric(X, 2 * cfg.grid.steps + 1);
    if (cfg.example) {
        const ExampleParams& p = *cfg.example;
        return PotentialField::sample([&](double x) { return example_initial(x, p); }, grid,
                                      cfg.boundary, 0.0, cfg.boundary_tol);
    }
    return load_potential_csv(*cfg.potential_file, cfg.boundary, 0.0, cfg.boundary_tol);
}

namespace {

double example_g(const RunConfig& cfg, double t) {
    if (cfg.source.terms.empty()) return 0.0;
    const SourceTerm& term = cfg.source.terms.front();
    if (cfg.source.kind == SourceCase::A) {
        ExampleSourceA src;
        src.A1 = term.A;
        src.alpha1 = term.alpha;
        return example_g_case_a(src, t);
    }
    ExampleSourceB src;
    src.beta1 = term.beta;
    src.B1 = term.B;
    return example_g_case_b(src, t);
}

Grid recon_grid(const RunConfig& cfg) {
    double half = cfg.grid.recon_half_width;
    if (half <= 0.0) half = std::min(12.0 / cfg.nu_expected(), 0.8 * cfg.resolved_x_max());
    return Grid::symmetric(half, cfg.grid.recon_points);
}

struct OutPaths {
    fs::path dir;
    std::string at(const std::string& name) const { return (dir / name).string(); }
};

OutPaths prepare_out(const std::string& out_dir) {
    OutPaths p{fs::path(out_dir)};
    std::error_code ec;
    fs::create_directories(p.dir, ec);
    if (ec) throw NlsError("io: cannot create output directory '" + out_dir + "': " + ec.message());
    return p;
}

void emit_field(const OutPaths& out, const RunConfig& cfg, const PotentialField& f, double t,
                std::vector<std::string>& dat_files, const std::string& prefix = "u_t") {
    const std::string base = prefix + time_tag(t);
    write_field_csv(out.at(base + ".csv"), f);
    write_sidecar(out.at(base + ".csv"), cfg);
    write_field_dat(out.at(base + ".dat"), f);
    write_sidecar(out.at(base + ".dat"), cfg);
    dat_files.push_back(base + ".dat");
}

void emit_scattering(const OutPaths& out, const RunConfig& cfg, const ScatteringData& sd, double t) {
    const std::string base = "scattering_t" + time_tag(t);
    write_scattering_csv(out.at(base + ".csv"), sd);
    write_sidecar(out.at(base + ".csv"), cfg);
    write_discrete_json(out.at("discrete_t" + time_tag(t) + ".json"), sd);
    write_sidecar(out.at("discrete_t" + time_tag(t) + ".json"), cfg);
}

}  // namespace

void run_command(Command cmd, const RunConfig& cfg, const std::string& out_dir) {
    const OutPaths out = prepare_out(out_dir.empty() ? cfg.output_dir : out_dir);
    std::vector<std::string> dat_files;

    if (cmd == Command::Example) {
        if (!cfg.example) throw ValidationError("example command needs potential.example");
        const ExampleParams& p = *cfg.example;
        const Grid grid = recon_grid(cfg);
        for (double t : cfg.times) {
            const double g = example_g(cfg, t);
            const PotentialField f = PotentialField::sample(
                [&](double x) { return example_u(x, t, p, g); }, grid, cfg.boundary, t, 1e-2);
            emit_field(out, cfg, f, t, dat_files);
        }
        write_gnuplot_script(out.at("plot.plt"), dat_files);
        write_sidecar(out.at("plot.plt"), cfg);
        return;
    }

    const PotentialField u0 = build_initial_field(cfg);
    const ScatteringOptions sopts = cfg.scattering_options();
    const GlmOptions gopts = cfg.glm_options();

    if (cmd == Command::Direct) {
        const ScatteringData sd0 = direct_scattering(u0, cfg.z_grid(), sopts);
        emit_scattering(out, cfg, sd0, 0.0);
        return;
    }

    if (cmd == Command::Evolve) {
        const ScatteringData sd0 = direct_scattering(u0, cfg.z_grid(), sopts);
        for (double t : cfg.times)
            emit_scattering(out, cfg, evolve_scattering_data(sd0, t, cfg.source), t);
        return;
    }

    if (cmd == Command::Inverse || cmd == Command::Simulate) {
        const ScatteringData sd0 = direct_scattering(u0, cfg.z_grid(), sopts);
        if (cmd == Command::Simulate) emit_scattering(out, cfg, sd0, 0.0);
        const Grid rgrid = recon_grid(cfg);
        for (double t : cfg.times) {
            const ScatteringData sdt = evolve_scattering_data(sd0, t, cfg.source);
            if (cmd == Command::Simulate && t != 0.0) emit_scattering(out, cfg, sdt, t);
            const PotentialField rec = reconstruct_field(sdt, t, rgrid, gopts);
            emit_field(out, cfg, rec, t, dat_files);
            if (cmd == Command::Simulate && !cfg.source.terms.empty()) {
                // source RHS on the scattering step grid at time t
                const PotentialField ut = cfg.example
                                              ? PotentialField::sample(
                                                    [&](double x) {
                                                        return example_u(x, t, *cfg.example, example_g(cfg, t));
                                                    },
                                                    u0.grid(), cfg.boundary, t, cfg.boundary_tol)
                                              : u0;
                const auto eig = find_eigenvalues(ut, sopts);
                const auto pairs = cfg.source.kind == SourceCase::A
                                       ? build_sources_case_a(ut, eig, cfg.source, t, sopts)
                                       : build_sources_case_b(ut, eig, cfg.source, t, sopts);
                const auto rhs = source_rhs(pairs);
                const Grid sg = pairs.front().sgrid;
                const std::string base = "source_rhs_t" + time_tag(t);
                std::ofstream rhs_out(out.at(base + ".csv"));
                if (!rhs_out) throw NlsError("io: cannot open '" + out.at(base + ".csv") + "'");
                rhs_out << "x,re,im\n";
                for (int i = 0; i < sg.n; ++i)
                    rhs_out << format_double(sg.x(i)) << ',' << format_double(rhs[static_cast<std::size_t>(i)].real())
                            << ',' << format_double(rhs[static_cast<std::size_t>(i)].imag()) << '\n';
                rhs_out.close();
                write_sidecar(out.at(base + ".csv"), cfg);
            }
        }
        write_gnuplot_script(out.at("plot.plt"), dat_files);
        write_sidecar(out.at("plot.plt"), cfg);
        return;
    }

    if (cmd == Command::Verify) {
        const ScatteringData sd0 = direct_scattering(u0, cfg.z_grid(), sopts);
        std::vector<ResidualReport> reports = invariant_suite(u0, sd0, sopts);

        const double t_check = cfg.times.back();
        std::function<Complex(double)> ref;
        if (cfg.example) {
            const ExampleParams p = *cfg.example;
            const double g = example_g(cfg, t_check);
            ref = [p, t_check, g](double x) { return example_u(x, t_check, p, g); };
        }
        const RoundtripResult rt = roundtrip_check(u0, cfg.source, t_check, cfg.z_grid(), recon_grid(cfg),
                                                   ref, sopts, gopts);
        reports.push_back(rt.field_report);
        for (const auto& r : rt.data_reports) reports.push_back(r);

        const auto tf = trace_formula_check(sd0);
        ResidualReport trace;
        trace.name = "trace_formula_a";
        trace.max_residual = tf.max_rel_err_a;
        reports.push_back(trace);
        ResidualReport theta;
        theta.name = "theta_relation";
        theta.max_residual = tf.theta_residual;
        reports.push_back(theta);

        write_reports_json(out.at("reports.json"), reports);
        write_sidecar(out.at("reports.json"), cfg);
        return;
    }

    throw ValidationError("run_command: unhandled command");
}

int classify_error(const std::exception& e, std::string& error_class) {
    if (dynamic_cast<const ValidationError*>(&e) || dynamic_cast<const ParseError*>(&e)) {
        error_class = dynamic_cast<const ParseError*>(&e) ? "parse" : "validation";
        return 1;
    }
    if (const auto* n = dynamic_cast<const NlsError*>(&e)) {
        if (std::strncmp(n->what(), "io:", 3) == 0) {
            error_class = "io";
            return 3;
        }
        error_class = "numerical";
        return 2;
    }
    error_class = "internal";
    return 3;
}

}  // namespace nls

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "nls/parallel.hpp"
#include "nls/pipeline.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Inverse scattering pipeline for the defocusing field equation with a self-consistent "
                 "source on a plane-wave background"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    int threads = 0;
    int refine = 0;

    const std::vector<std::string> names = {"direct", "evolve", "inverse", "simulate", "verify", "example"};
    const std::vector<std::string> descs = {
        "compute scattering data of the initial potential",
        "evolve scattering data to each output time",
        "reconstruct the field from evolved scattering data",
        "direct + evolve + inverse, plus source terms",
        "run residual and invariant reports",
        "write the closed-form example fields"};
    for (std::size_t i = 0; i < names.size(); ++i) {
        auto* sub = app.add_subcommand(names[i], descs[i]);
        sub->add_option("--config", config_path, "JSON run configuration")->required();
        sub->add_option("--out", out_dir, "output directory (default: config output.dir)");
        sub->add_option("--threads", threads, "worker threads (default: NLS_IST_THREADS or all)");
        sub->add_option("--seed-grid-refine", refine, "halve grid steps k times")
            ->check(CLI::Range(0, 6));
    }

    CLI11_PARSE(app, argc, argv);
    const std::string cmd_name = app.get_subcommands().front()->get_name();

    if (threads > 0) {
        nls::set_thread_count(threads);
    } else if (const char* env = std::getenv("NLS_IST_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) nls::set_thread_count(n);
    }

    try {
        nls::RunConfig cfg = nls::load_config(config_path);
        cfg.refine(refine);
        nls::run_command(nls::command_from_name(cmd_name), cfg, out_dir);
    } catch (const std::exception& e) {
        std::string error_class;
        const int code = nls::classify_error(e, error_class);
        nlohmann::json err;
        err["error"] = error_class;
        err["message"] = e.what();
        err["exit"] = code;
        std::cerr << err.dump() << std::endl;
        return code;
    }
    return 0;
}

#ifndef NLS_CONFIG_HPP
#define NLS_CONFIG_HPP

#include <optional>
#include <string>
#include <vector>

#include "nls/closed_form.hpp"
#include "nls/evolution.hpp"
#include "nls/glm.hpp"
#include "nls/jost.hpp"

namespace nls {

// Run configuration loaded from JSON. Unknown keys are rejected; validation
// failures name the offending field. Time functions are either
// {"const": [re, im]} or {"table": [[t, re, im], ...]}.
struct GridConfig {
    double x_max = 0.0;   // 0 = derive from the potential (max(60/nu, 40))
    int steps = 4000;     // RK4 steps over [-x_max, x_max]
    double z_max = 40.0;  // in units of rho
    int z_nodes = 4000;
    int glm_panels = 192;
    double glm_tail_cutoff = 1e-10;
    double recon_half_width = 0.0;  // 0 = derive (min(12/nu, 0.8 x_max))
    int recon_points = 161;
};

struct RunConfig {
    std::optional<ExampleParams> example;
    std::optional<std::string> potential_file;
    BoundaryData boundary;
    GridConfig grid;
    SourceSpec source;
    std::vector<double> times;
    double boundary_tol = 1e-6;
    std::string output_dir = "out";
    std::string config_hash;

    double resolved_x_max() const;
    double nu_expected() const;
    std::vector<double> z_grid() const;
    ScatteringOptions scattering_options() const;
    GlmOptions glm_options() const;
    // halve grid steps k times (--seed-grid-refine)
    void refine(int k);
};

RunConfig load_config(const std::string& path);
RunConfig parse_config_text(const std::string& text, const std::string& origin = "<memory>");

}  // namespace nls

#endif

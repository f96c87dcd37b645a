#ifndef NLS_VERIFY_HPP
#define NLS_VERIFY_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nls/glm.hpp"
#include "nls/sources.hpp"

namespace nls {

// Residual and invariant computations. Reports are value objects; residuals
// are measured on the interior 80% of the grid to keep truncation-boundary
// contamination out of the norms.

struct ResidualReport {
    std::string name;
    double dx = 0.0, dt = 0.0;
    double max_residual = 0.0;
    double l2_residual = 0.0;
    std::optional<double> convergence_rate;  // from two refinement levels
};

// i u_t - 2 u |u|^2 + u_xx = rhs, central differences in t and x.
ResidualReport pde_residual(const Grid& grid, const std::vector<Complex>& u_prev,
                            const std::vector<Complex>& u_mid, const std::vector<Complex>& u_next,
                            const std::vector<Complex>& rhs_mid, double dt);

// Same, with the right-hand side assembled from source pairs at the middle
// time slice.
ResidualReport pde_residual(const Grid& grid, const std::vector<Complex>& u_prev,
                            const std::vector<Complex>& u_mid, const std::vector<Complex>& u_next,
                            const std::vector<SourcePair>& pairs, double dt);

// First-order system residuals for a source pair at xi_n (central x stencil).
ResidualReport linear_system_residual(const SourcePair& pair, const std::vector<Complex>& u_on_sgrid,
                                      double xi_n);

// Scattering invariants recomputed from the field and its data; reports,
// never throws.
std::vector<ResidualReport> invariant_suite(const PotentialField& field, const ScatteringData& sd,
                                            const ScatteringOptions& opts = {});

// direct -> evolve -> reconstruct, compared against a reference field when
// one is available, otherwise against re-scattered data consistency.
struct RoundtripResult {
    ResidualReport field_report;
    std::vector<ResidualReport> data_reports;
};
RoundtripResult roundtrip_check(const PotentialField& u0, const SourceSpec& spec, double t,
                                const std::vector<double>& z_grid, const Grid& recon_grid,
                                const std::function<Complex(double)>& reference_u_at_t = nullptr,
                                const ScatteringOptions& scat_opts = {}, const GlmOptions& glm_opts = {});

}  // namespace nls

#endif
